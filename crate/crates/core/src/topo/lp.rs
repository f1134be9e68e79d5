//! Exact linear programming: two-phase simplex with Bland's rule over the
//! rationals.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Rational),
}

struct Tableau {
    /// Rows `[a | b]`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len() - 1)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pr = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pr) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Maximise `c·x` over the columns in `allowed`; `None` when unbounded.
    fn run(&mut self, c: &[Rational], allowed: usize) -> Option<Rational> {
        let w = self.width();
        loop {
            let mut enter = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut r = c[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    r -= &c[b] * &self.rows[i][j];
                }
                if r.is_positive() {
                    enter = Some(j);
                    break;
                }
            }
            let Some(j) = enter else {
                let mut v = Rational::zero();
                for (i, &b) in self.basis.iter().enumerate() {
                    v += &c[b] * &self.rows[i][w];
                }
                return Some(v);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][j].is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][w] / &self.rows[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave?;
            self.pivot(r, j);
        }
    }
}

/// Maximise `c·x` subject to `a x = b`, `x >= 0`.
pub fn lp_maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let neg = bi.is_negative();
        let mut row: Vec<Rational> = ai.iter().map(|x| if neg { -x } else { x.clone() }).collect();
        row.resize(n, Rational::zero());
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if neg { -bi } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
    };
    let mut phase1 = vec![Rational::zero(); n + m];
    for x in phase1.iter_mut().skip(n) {
        *x = -Rational::one();
    }
    let v = t.run(&phase1, n + m).expect("phase one is bounded");
    if v.is_negative() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    for row in t.rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.truncate(n);
        row.push(rhs);
    }
    match t.run(c, n) {
        Some(v) => LpOutcome::Optimal(v),
        None => LpOutcome::Unbounded,
    }
}
