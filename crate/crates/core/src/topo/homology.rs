//! Integer simplicial homology through Smith normal form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::OrderComplex;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per degree.
    pub torsion: Vec<Vec<BigInt>>,
}

impl HomologyResult {
    pub fn to_json(&self) -> Value {
        let t: Vec<Vec<String>> = self
            .torsion
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        json!({ "betti": self.betti, "torsion": t })
    }

    pub fn from_json(v: &Value) -> Result<HomologyResult> {
        let schema = |m: &str| Error::Schema(m.to_string());
        let betti = v
            .get("betti")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("homology needs \"betti\""))?
            .iter()
            .map(|x| x.as_u64().map(|b| b as usize).ok_or_else(|| schema("betti numbers are integers")))
            .collect::<Result<_>>()?;
        let torsion = v
            .get("torsion")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("homology needs \"torsion\""))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| schema("torsion rows are lists"))?
                    .iter()
                    .map(|x| {
                        x.as_str()
                            .and_then(|s| s.parse::<BigInt>().ok())
                            .or_else(|| x.as_i64().map(BigInt::from))
                            .ok_or_else(|| schema("torsion entries are integers"))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Ok(HomologyResult { betti, torsion })
    }

    /// Betti numbers without trailing zeros.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }
}

/// Nonzero diagonal entries of the Smith normal form of `a`, each dividing
/// the next.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

/// Boundary matrix from `d`-simplices to `(d-1)`-simplices.
pub fn boundary_matrix(cx: &OrderComplex, d: usize) -> Vec<Vec<BigInt>> {
    let lower = cx.simplices_of_dim(d - 1);
    let upper = cx.simplices_of_dim(d);
    let pos: HashMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = vec![vec![BigInt::zero(); upper.len()]; lower.len()];
    for (j, s) in upper.iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
            let sign = if skip % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            m[pos[&face]][j] = sign;
        }
    }
    m
}

/// Homology of `cx` in degrees `0..=top` (or `0..=maxdeg`). The reduced
/// variant augments degree 0. An empty complex gives empty lists.
pub fn homology(cx: &OrderComplex, maxdeg: Option<usize>, reduced: bool) -> HomologyResult {
    let f = cx.f_vector();
    if f.is_empty() {
        return HomologyResult {
            betti: Vec::new(),
            torsion: Vec::new(),
        };
    }
    let top = maxdeg.map_or(f.len() - 1, |m| m.min(f.len() - 1));
    // invariant factors of the boundary out of each degree
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    for (d, slot) in factors.iter_mut().enumerate().skip(1) {
        if d < f.len() {
            *slot = smith_diagonal(boundary_matrix(cx, d));
        }
    }
    let mut betti = Vec::with_capacity(top + 1);
    let mut torsion = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let rank_out = if k == 0 { usize::from(reduced) } else { factors[k].len() };
        let rank_in = factors[k + 1].len();
        betti.push(f[k] - rank_out - rank_in);
        torsion.push(factors[k + 1].iter().filter(|x| !x.is_one()).cloned().collect());
    }
    HomologyResult { betti, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topo::Vertex;

    fn complex(n: usize, facets: &[&[usize]]) -> OrderComplex {
        let mut s = std::collections::BTreeSet::new();
        for f in facets {
            let k = f.len();
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                s.insert(face);
            }
        }
        let mut cx = OrderComplex {
            vertices: (0..n).map(|i| Vertex { id: i.to_string(), dim: 0 }).collect(),
            simplices: s.into_iter().collect(),
            coords: None,
        };
        cx.canonicalize();
        cx
    }

    #[test]
    fn smith_of_small_matrices() {
        let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(smith_diagonal(m(&[&[2, 4], &[6, 8]])), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(smith_diagonal(m(&[&[2, 0], &[0, 3]])), vec![BigInt::from(1), BigInt::from(6)]);
        assert!(smith_diagonal(m(&[&[0, 0]])).is_empty());
    }

    #[test]
    fn circle_and_sphere() {
        let circle = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(homology(&circle, None, false).betti, vec![1, 1]);
        assert_eq!(homology(&circle, None, true).betti, vec![0, 1]);
        let sphere = complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        assert_eq!(homology(&sphere, None, false).betti, vec![1, 0, 1]);
        assert_eq!(homology(&sphere, Some(1), false).betti, vec![1, 0]);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        // six-vertex triangulation of RP^2
        let facets: [[usize; 3]; 10] = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ];
        let shifted: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
        let refs: Vec<&[usize]> = shifted.iter().map(Vec::as_slice).collect();
        let rp2 = complex(6, &refs);
        let h = homology(&rp2, None, false);
        assert_eq!(h.betti, vec![1, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigInt::from(2)]);
    }

    #[test]
    fn empty_complex() {
        let h = homology(&OrderComplex::empty(), None, false);
        assert!(h.betti.is_empty() && h.torsion.is_empty());
    }
}
