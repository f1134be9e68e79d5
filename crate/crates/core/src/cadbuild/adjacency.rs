//! Subadjacency, level by level.
//!
//! Level 1 is interval incidence. Above a base pair `D' ⪯ D` (with a point
//! `p*` of `D'` in the closure of `D`) every section over `D` is tracked along
//! cylindrical paths in `D` approaching `p*`; the limits, placed into the
//! stack over `p*`, say which cells over `D'` each cell over `D` reaches.
//! Several path variants are used so that limits depending on the direction
//! of approach widen the reached range instead of being missed.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One};
use rayon::prelude::*;

use super::track::{track_section, variant_start, Limit, PathSpec, TrackConfig, TrackOutcome};
use super::{merged_roots, sector_sample, CadTree, CellIndex};
use crate::arith::{Point, Rational, RealAlgebraic};
use crate::error::{Error, Result};

/// `lower ⪯ upper`: the lower cell meets the closure of the upper one.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjPair {
    pub lower: CellIndex,
    pub upper: CellIndex,
    /// The whole lower cell lies in the closure of the upper one.
    pub full: bool,
    /// A point of the lower cell in the closure of the upper one.
    pub target: Point,
    /// Path variant that reaches `target`.
    pub variant: usize,
}

pub const VARIANTS: usize = 2;

/// A tracked limit placed in the stack over the target point.
#[derive(Clone, Debug)]
struct Placed {
    /// Stack position (0 and `2r+2` stand for minus and plus infinity).
    pos: usize,
    value: Option<RealAlgebraic>,
    approx: f64,
}

fn place(out: &TrackOutcome, roots: &[RealAlgebraic]) -> Placed {
    let r = roots.len();
    match (&out.limit, &out.exact) {
        (Limit::PlusInfinity, _) => Placed {
            pos: 2 * r + 2,
            value: None,
            approx: f64::INFINITY,
        },
        (Limit::MinusInfinity, _) => Placed {
            pos: 0,
            value: None,
            approx: f64::NEG_INFINITY,
        },
        (Limit::Finite(v), Some(x)) => {
            let below = roots.iter().take_while(|q| q.compare(x) == Ordering::Less).count();
            let pos = if roots.get(below).is_some_and(|q| q.compare(x) == Ordering::Equal) {
                2 * below + 2
            } else {
                2 * below + 1
            };
            Placed {
                pos,
                value: Some(x.clone()),
                approx: *v,
            }
        }
        (Limit::Finite(v), None) => {
            let close = |q: &RealAlgebraic| (q.to_f64() - v).abs() <= 1e-7 * 1f64.max(v.abs());
            let mut pos = 2 * roots.iter().filter(|q| q.to_f64() < *v && !close(q)).count() + 1;
            let mut value = None;
            if let Some(i) = roots.iter().position(close) {
                pos = 2 * i + 2;
                value = Some(roots[i].clone());
            }
            Placed {
                pos,
                value,
                approx: *v,
            }
        }
    }
}

fn rational_of(v: f64) -> Rational {
    Rational::from_f64(v).unwrap_or_else(|| Rational::from_integer(BigInt::from(0)))
}

/// A rational strictly inside sector `i` (between roots `i-1` and `i`) of the
/// stack `roots` and, where possible, inside `(lo, hi)`.
fn point_in_sector(roots: &[RealAlgebraic], i: usize, lo: f64, hi: f64) -> Rational {
    let fallback = sector_sample(roots, i);
    let cand = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => rational_of((lo + hi) / 2.0),
        (true, false) => rational_of(lo + 1.0),
        (false, true) => rational_of(hi - 1.0),
        (false, false) => return fallback,
    };
    let above = i == 0 || roots[i - 1].cmp_rational(&cand) == Ordering::Less;
    let below = i == roots.len() || roots[i].cmp_rational(&cand) == Ordering::Greater;
    if above && below {
        cand
    } else {
        fallback
    }
}

struct LevelResult {
    pairs: Vec<AdjPair>,
    divergent: Vec<CellIndex>,
    unconverged: Vec<CellIndex>,
}

fn extend(base: &[usize], p: usize) -> CellIndex {
    let mut v = base.to_vec();
    v.push(p);
    v
}

fn within_stack(cad: &CadTree, base: &[usize]) -> Vec<AdjPair> {
    let len = cad.stack(base).len();
    let mut out = Vec::new();
    for p in (2..len).step_by(2) {
        let lower = extend(base, p);
        let target = cad.cells[&lower].sample.clone();
        for q in [p - 1, p + 1] {
            out.push(AdjPair {
                lower: lower.clone(),
                upper: extend(base, q),
                full: true,
                target: target.clone(),
                variant: 0,
            });
        }
    }
    out
}

fn across(cad: &CadTree, bp: &AdjPair, cfg: &TrackConfig) -> Result<LevelResult> {
    let k = bp.lower.len() + 1;
    let d = &bp.upper;
    let dl = &bp.lower;
    let star = &bp.target;
    let lower_stack = cad.stack(dl);
    let (merged, _) = merged_roots(cad.lifting_polys(k), k - 1, star, &lower_stack.nullified)?;
    let rts: Vec<RealAlgebraic> = merged.into_iter().map(|m| m.0).collect();
    if rts.len() != lower_stack.roots.len() {
        return Err(Error::AmbiguousMatch {
            a: super::index_id(dl),
            b: super::index_id(d),
            detail: format!(
                "stack over the approach point has {} roots, the cell's stack has {}",
                rts.len(),
                lower_stack.roots.len()
            ),
        });
    }
    let rp = rts.len();
    let top = 2 * rp + 2;
    let r = cad.stack(d).roots.len();
    let mut divergent = Vec::new();
    let mut unconverged = Vec::new();
    // placed[v][j] for sections j = 1..=r, with virtual ends at 0 and r+1
    let mut placed: Vec<Vec<Placed>> = Vec::with_capacity(VARIANTS);
    for v in 0..VARIANTS {
        let mut start = variant_start(cad, d, v, VARIANTS)?;
        start.push(Rational::one());
        let spec = PathSpec {
            start,
            target: star.clone(),
        };
        let mut row = vec![Placed {
            pos: 0,
            value: None,
            approx: f64::NEG_INFINITY,
        }];
        for j in 1..=r {
            let sec = extend(d, 2 * j);
            let out = track_section(cad, &sec, &spec, cfg)?;
            if matches!(out.limit, Limit::PlusInfinity | Limit::MinusInfinity) {
                divergent.push(sec.clone());
            } else if !out.converged {
                unconverged.push(sec.clone());
            }
            row.push(place(&out, &rts));
        }
        row.push(Placed {
            pos: top,
            value: None,
            approx: f64::INFINITY,
        });
        placed.push(row);
    }
    let mut pairs = Vec::new();
    for p in 1..=2 * r + 1 {
        let upper = extend(d, p);
        // section j sits at position 2j; sector between sections j and j+1 at 2j+1
        let (jl, jh) = if p % 2 == 0 { (p / 2, p / 2) } else { ((p - 1) / 2, (p + 1) / 2) };
        let lo = placed.iter().map(|row| row[jl].pos).min().unwrap();
        let hi = placed.iter().map(|row| row[jh].pos).max().unwrap();
        for q in lo.max(1)..=hi.min(2 * rp + 1) {
            let full = bp.full && if q % 2 == 0 { lo <= q && q <= hi } else { lo < q && q < hi };
            // a variant whose own range reaches q supplies the witness point
            let v = (0..VARIANTS)
                .find(|&v| placed[v][jl].pos <= q && q <= placed[v][jh].pos)
                .unwrap_or(0);
            let (a, b) = (&placed[v][jl], &placed[v][jh]);
            let y = if q % 2 == 0 {
                rts[q / 2 - 1].clone()
            } else if jl == jh {
                match &a.value {
                    Some(x) => x.clone(),
                    None => RealAlgebraic::from_rational(point_in_sector(&rts, (q - 1) / 2, a.approx, a.approx)),
                }
            } else {
                let i = (q - 1) / 2;
                let lo_v = if i > 0 { a.approx.max(rts[i - 1].to_f64()) } else { a.approx };
                let hi_v = if i < rp { b.approx.min(rts[i].to_f64()) } else { b.approx };
                RealAlgebraic::from_rational(point_in_sector(&rts, i, lo_v, hi_v))
            };
            pairs.push(AdjPair {
                lower: extend(dl, q),
                upper: upper.clone(),
                full,
                target: star.pushed(y),
                variant: v,
            });
        }
    }
    Ok(LevelResult {
        pairs,
        divergent,
        unconverged,
    })
}

/// Compute the full subadjacency relation and store it in the tree. Sections
/// found to diverge, and the sectors next to them, are marked unbounded along
/// with everything above them.
pub fn compute_subadjacency(cad: &mut CadTree, cfg: &TrackConfig) -> Result<Vec<CellIndex>> {
    let mut all: Vec<AdjPair> = within_stack(cad, &[]);
    let mut unconverged_all = Vec::new();
    for k in 2..=cad.nvars {
        let mut level: Vec<AdjPair> = Vec::new();
        let bases: Vec<CellIndex> = cad.cells_at(k - 1).map(|c| c.index.clone()).collect();
        for b in &bases {
            level.extend(within_stack(cad, b));
        }
        let base_pairs: Vec<&AdjPair> = all.iter().filter(|p| p.lower.len() == k - 1).collect();
        let results: Vec<LevelResult> = base_pairs
            .par_iter()
            .map(|bp| across(cad, bp, cfg))
            .collect::<Result<_>>()?;
        let mut unbounded: BTreeSet<CellIndex> = BTreeSet::new();
        for res in results {
            level.extend(res.pairs);
            for s in res.divergent {
                let p = *s.last().unwrap();
                let base = &s[..s.len() - 1];
                unbounded.insert(extend(base, p - 1));
                unbounded.insert(extend(base, p + 1));
                unbounded.insert(s);
            }
            unconverged_all.extend(res.unconverged);
        }
        for idx in unbounded {
            if let Some(c) = cad.cells.get_mut(&idx) {
                c.bounded = false;
            }
        }
        all.extend(level);
    }
    // unboundedness is inherited by every cell above an unbounded one
    let flags: Vec<(CellIndex, bool)> = cad
        .cells
        .keys()
        .map(|idx| {
            let b = (1..=idx.len()).all(|l| cad.cells[&idx[..l].to_vec()].bounded);
            (idx.clone(), b)
        })
        .collect();
    for (idx, b) in flags {
        cad.cells.get_mut(&idx).unwrap().bounded = b;
    }
    all.sort_by(|a, b| (&a.lower, &a.upper).cmp(&(&b.lower, &b.upper)));
    all.dedup_by(|a, b| a.lower == b.lower && a.upper == b.upper);
    cad.adjacency = Some(all);
    unconverged_all.sort();
    unconverged_all.dedup();
    Ok(unconverged_all)
}
