//! Collins projection: coefficients, reducta, principal subresultant
//! coefficients of each reductum with its derivative and of reducta pairs.

use crate::arith::{psc, MultiPoly};
use crate::error::Result;

/// Projection sets for every level; `levels[k]` holds polynomials in
/// `x1..x(k+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionSet {
    pub levels: Vec<Vec<MultiPoly>>,
}

impl ProjectionSet {
    pub fn level(&self, k: usize) -> &[MultiPoly] {
        &self.levels[k - 1]
    }
}

/// Normalize, take square-free parts, drop constants and duplicates.
pub fn normalize_set<'a>(ps: impl IntoIterator<Item = &'a MultiPoly>) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for p in ps {
        if p.is_zero() || p.is_constant() {
            continue;
        }
        let q = p.squarefree_part();
        if !q.is_constant() && !out.contains(&q) {
            out.push(q);
        }
    }
    out
}

/// Successive reducta of `f` in `var` that still have positive degree,
/// stopping after the first one whose leading coefficient is a constant.
fn reducta(f: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= 1 {
        out.push(r.clone());
        if r.leading_coeff_in(var).is_constant() {
            break;
        }
        r = r.reductum_in(var);
    }
    out
}

/// Project polynomials in `x1..x(var+1)` to `x1..x(var)`.
pub fn project_level(fs: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>> {
    let mut raw: Vec<MultiPoly> = Vec::new();
    let reds: Vec<Vec<MultiPoly>> = fs.iter().map(|f| reducta(f, var)).collect();
    for (f, red) in fs.iter().zip(&reds) {
        raw.extend(f.coeffs_in(var).into_iter().filter(|c| !c.is_zero()));
        for r in red {
            let d = r.degree_in(var) as usize;
            if d < 2 {
                continue;
            }
            let dr = r.derivative(var)?;
            let lc = r.leading_coeff_in(var);
            for j in 0..=d - 2 {
                let p = psc(r, &dr, var, j)?;
                raw.push(p.exact_div(&lc).unwrap_or(p));
            }
        }
    }
    for a in 0..fs.len() {
        for b in a + 1..fs.len() {
            for r1 in &reds[a] {
                for r2 in &reds[b] {
                    let m = r1.degree_in(var).min(r2.degree_in(var)) as usize;
                    for j in 0..m {
                        raw.push(psc(r1, r2, var, j)?);
                    }
                }
            }
        }
    }
    Ok(normalize_set(&raw))
}

/// All projection levels. Level `n` is the normalized input.
pub fn full_projection(f: &[MultiPoly], n: usize) -> Result<ProjectionSet> {
    let mut levels = vec![Vec::new(); n];
    let top: Vec<MultiPoly> = normalize_set(f);
    levels[n - 1] = top;
    for k in (1..n).rev() {
        let below = project_level(&levels[k], k)?;
        // polynomials that already live in fewer variables pass through the
        // coefficient rule, so nothing else needs to be carried down
        levels[k - 1] = below;
    }
    Ok(ProjectionSet { levels })
}
