//! Straight realization of an order complex on rational points, with exact
//! detection of simplices that meet improperly.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::lp::{lp_maximize, LpOutcome};
use super::OrderComplex;
use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    /// Simplex indices whose points are affinely dependent.
    pub degenerate: Vec<usize>,
    /// Pairs of simplex indices whose intersection is not a common face.
    pub improper_pairs: Vec<(usize, usize)>,
}

impl Realization {
    pub fn to_json(&self, cx: &OrderComplex) -> Value {
        let name = |i: usize| -> Vec<&str> { cx.simplices[i].iter().map(|&v| cx.vertices[v].id.as_str()).collect() };
        json!({
            "degenerate": self.degenerate.iter().map(|&i| name(i)).collect::<Vec<_>>(),
            "improper_pairs": self.improper_pairs.iter().map(|&(a, b)| json!([name(a), name(b)])).collect::<Vec<_>>(),
        })
    }
}

fn affine_rank(points: &[&Vec<Rational>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let mut m: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let cols = points[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[rank][c];
                let pr = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether two nondegenerate simplices meet outside the hull of their common
/// vertices: maximise the weight on unshared vertices over all pairs of
/// convex combinations naming the same point.
fn meets_improperly(p: &[Vec<Rational>], s: &[usize], t: &[usize]) -> bool {
    let n = p[s[0]].len();
    let shared: BTreeSet<usize> = s.iter().filter(|v| t.contains(v)).copied().collect();
    let vars = s.len() + t.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 0..n {
        let mut row = Vec::with_capacity(vars);
        row.extend(s.iter().map(|&v| p[v][k].clone()));
        row.extend(t.iter().map(|&v| -p[v][k].clone()));
        a.push(row);
        b.push(Rational::zero());
    }
    let mut sum_s = vec![Rational::zero(); vars];
    let mut sum_t = vec![Rational::zero(); vars];
    for i in 0..s.len() {
        sum_s[i] = Rational::one();
    }
    for i in 0..t.len() {
        sum_t[s.len() + i] = Rational::one();
    }
    a.push(sum_s);
    b.push(Rational::one());
    a.push(sum_t);
    b.push(Rational::one());
    let c: Vec<Rational> = s
        .iter()
        .chain(t)
        .map(|v| if shared.contains(v) { Rational::zero() } else { Rational::one() })
        .collect();
    match lp_maximize(&a, &b, &c) {
        LpOutcome::Optimal(v) => !v.is_zero(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("weights are bounded by one"),
    }
}

/// Realize every simplex as the convex hull of its vertices' points
/// (`points`, or the complex's own coordinates).
pub fn realize(cx: &OrderComplex, points: Option<&[Vec<Rational>]>) -> Result<Realization> {
    let p: &[Vec<Rational>] = match points {
        Some(p) => p,
        None => cx
            .coords
            .as_deref()
            .ok_or_else(|| Error::MissingData("no coordinates for the vertices".into()))?,
    };
    if p.len() != cx.vertices.len() {
        return Err(Error::Precondition("one point per vertex needed".into()));
    }
    if let Some(q) = p.iter().find(|q| q.len() != p[0].len()) {
        return Err(Error::VarCountMismatch(q.len(), p[0].len()));
    }
    let mut degenerate = Vec::new();
    for (i, s) in cx.simplices.iter().enumerate() {
        let pts: Vec<&Vec<Rational>> = s.iter().map(|&v| &p[v]).collect();
        if affine_rank(&pts) + 1 < s.len() {
            degenerate.push(i);
        }
    }
    let bad: BTreeSet<usize> = degenerate.iter().copied().collect();
    let mut improper_pairs = Vec::new();
    for i in 0..cx.simplices.len() {
        for j in i + 1..cx.simplices.len() {
            if bad.contains(&i) || bad.contains(&j) {
                continue;
            }
            let (s, t) = (&cx.simplices[i], &cx.simplices[j]);
            let face = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|v| b.contains(v));
            if face(s, t) || face(t, s) {
                continue;
            }
            if meets_improperly(p, s, t) {
                improper_pairs.push((i, j));
            }
        }
    }
    Ok(Realization {
        degenerate,
        improper_pairs,
    })
}
