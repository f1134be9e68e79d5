//! Properties read off a constructed decomposition: reducedness,
//! well-basedness and whether sections extend continuously to the closure
//! of their base.

use std::collections::BTreeMap;

use num_traits::One;
use serde_json::{json, Value};

use super::{PropertyReport, Status};
use crate::arith::{rational_to_string, sign_at, MultiPoly, Rational};
use crate::cadbuild::{
    index_id, track_polyline, track_section, variant_start, CadTree, Limit, PathSpec, Region, TrackConfig,
    TrackOutcome,
};
use crate::error::{Error, Result};

fn check_nvars(cad: &CadTree, f: &[MultiPoly]) -> Result<()> {
    match f.iter().find(|p| p.nvars() != cad.nvars) {
        Some(p) => Err(Error::VarCountMismatch(p.nvars(), cad.nvars)),
        None => Ok(()),
    }
}

/// Every top-level section lies in the zero set of some `f`.
pub fn check_reduced(cad: &CadTree, f: &[MultiPoly]) -> Result<PropertyReport> {
    check_nvars(cad, f)?;
    let mut rep = PropertyReport::new("reduced", false);
    for c in cad.top_cells().into_iter().filter(|c| c.is_section()) {
        let mut vanishes = false;
        for p in f {
            if sign_at(p, &c.sample)? == 0 {
                vanishes = true;
                break;
            }
        }
        let witness = (!vanishes).then(|| json!({ "section": c.id() }));
        rep.record(&c.id(), Status::from_bool(vanishes), witness);
    }
    if rep.cells.is_empty() {
        rep.notes.push("no sections".into());
    }
    Ok(rep)
}

/// `f` vanishes on the whole cylinder over the base cell with sample
/// `base`: each of its coefficients in the last variable vanishes there.
fn nullified_over(f: &MultiPoly, var: usize, base: &crate::arith::Point) -> Result<bool> {
    for c in f.coeffs_in(var) {
        if !c.is_zero() && sign_at(&c, base)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A section over `D` is bad when some `f` is nullified over `D`. Entries
/// are per top-level section; a nullified pair over a stack without sections
/// is harmless and only noted.
pub fn check_well_based(cad: &CadTree, f: &[MultiPoly]) -> Result<PropertyReport> {
    check_nvars(cad, f)?;
    let n = cad.nvars;
    let mut rep = PropertyReport::new("wellbased", false);
    let bases: Vec<(Vec<usize>, crate::arith::Point)> = if n == 1 {
        vec![(Vec::new(), crate::arith::Point::default())]
    } else {
        cad.cells_at(n - 1).map(|c| (c.index.clone(), c.sample.clone())).collect()
    };
    for (base, sample) in bases {
        let mut bad = Vec::new();
        for (i, p) in f.iter().enumerate() {
            if nullified_over(p, n - 1, &sample)? {
                bad.push(i);
            }
        }
        let st = cad.stack(&base);
        let base_id = if base.is_empty() { "root".to_string() } else { index_id(&base) };
        if !bad.is_empty() && st.roots.is_empty() {
            rep.notes.push(format!(
                "f{} nullified over {} whose stack has no sections",
                bad[0] + 1,
                base_id
            ));
        }
        for r in 1..=st.roots.len() {
            let mut idx = base.clone();
            idx.push(2 * r);
            let id = index_id(&idx);
            match bad.first() {
                None => rep.record(&id, Status::True, None),
                Some(&i) => rep.record(
                    &id,
                    Status::False,
                    Some(json!({ "base": base_id, "poly": f[i].to_string(), "section": id })),
                ),
            }
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathLimit {
    /// Boundary point label: the lower cell id or the endpoint coordinates.
    pub target: String,
    pub path: usize,
    pub limit: f64,
    pub error: f64,
    pub converged: bool,
    /// Exact stack value the limit snapped to, as decimal approximation.
    pub exact: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionAudit {
    pub section: String,
    pub extendable: bool,
    pub limits: Vec<PathLimit>,
    /// `(target, limit a, limit b)` for the first disagreement.
    pub witness: Option<(String, f64, f64)>,
}

impl ExtensionAudit {
    fn decide(section: String, limits: Vec<PathLimit>, tol: f64) -> Self {
        let mut by_target: BTreeMap<&str, Vec<&PathLimit>> = BTreeMap::new();
        for l in &limits {
            by_target.entry(&l.target).or_default().push(l);
        }
        let mut witness = None;
        for (t, ls) in &by_target {
            let first = ls[0];
            let bad = ls.iter().find(|l| {
                !l.converged
                    || !l.limit.is_finite()
                    || (l.limit - first.limit).abs() > tol * 1f64.max(first.limit.abs())
            });
            if let Some(b) = bad {
                witness = Some((t.to_string(), first.limit, b.limit));
                break;
            }
        }
        ExtensionAudit {
            section,
            extendable: witness.is_none(),
            limits,
            witness,
        }
    }

    /// Largest error estimate over all tracked paths.
    pub fn max_error(&self) -> f64 {
        self.limits.iter().fold(0f64, |m, l| m.max(l.error))
    }

    pub fn to_json(&self) -> Value {
        let num = |v: f64| if v.is_finite() { json!(v) } else { json!(v.to_string()) };
        let limits: Vec<Value> = self
            .limits
            .iter()
            .map(|l| {
                json!({
                    "target": l.target,
                    "path": l.path,
                    "limit": num(l.limit),
                    "error": num(l.error),
                    "converged": l.converged,
                    "exact": l.exact,
                })
            })
            .collect();
        json!({
            "section": self.section,
            "extendable": self.extendable,
            "limits": limits,
            "witness": self.witness.as_ref().map(|(t, a, b)| json!({"target": t, "limits": [num(*a), num(*b)]})),
        })
    }
}

fn path_limit(target: String, path: usize, out: TrackOutcome) -> PathLimit {
    let limit = match out.limit {
        Limit::Finite(v) => v,
        Limit::PlusInfinity => f64::INFINITY,
        Limit::MinusInfinity => f64::NEG_INFINITY,
    };
    PathLimit {
        target,
        path,
        limit,
        error: out.error,
        converged: out.converged,
        exact: out.exact.map(|r| r.to_f64()),
    }
}

/// Track the section `index` toward a point of every boundary cell of its
/// base, along `paths` cylindrical paths each. Extendable iff the limits
/// toward each point agree within `tol` (relative above 1).
pub fn audit_section_extension(cad: &CadTree, index: &[usize], paths: usize, tol: f64) -> Result<ExtensionAudit> {
    let cell = cad.cell(index)?;
    if !cell.is_section() {
        return Err(Error::Precondition(format!("{} is not a section", cell.id())));
    }
    if !cell.bounded {
        return Err(Error::Precondition(format!("{} is unbounded", cell.id())));
    }
    let base = cell.parent();
    if base.is_empty() {
        return Ok(ExtensionAudit::decide(cell.id(), Vec::new(), tol));
    }
    let adj = cad
        .adjacency
        .as_ref()
        .ok_or_else(|| Error::MissingData("subadjacency not computed".into()))?;
    let cfg = TrackConfig::default();
    let mut limits = Vec::new();
    for pair in adj.iter().filter(|p| p.upper == base && p.lower.len() == base.len()) {
        for v in 0..paths.max(1) {
            let mut start = variant_start(cad, base, v, paths.max(1))?;
            start.push(Rational::one());
            let spec = PathSpec {
                start,
                target: pair.target.clone(),
            };
            let out = track_section(cad, index, &spec, &cfg)?;
            limits.push(path_limit(index_id(&pair.lower), v, out));
        }
    }
    Ok(ExtensionAudit::decide(cell.id(), limits, tol))
}

/// The same audit for a root function given by `h` (root number `root` in
/// the last variable) over `region`, along explicit polylines. Paths with
/// the same endpoint are compared.
pub fn audit_polyline_extension(
    h: &MultiPoly,
    root: usize,
    region: Option<&Region>,
    paths: &[Vec<Vec<Rational>>],
    tol: f64,
) -> Result<ExtensionAudit> {
    let cfg = TrackConfig::default();
    let mut limits = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let end = p.last().ok_or_else(|| Error::Precondition("empty path".into()))?;
        let label = format!(
            "({})",
            end.iter().map(rational_to_string).collect::<Vec<_>>().join(", ")
        );
        let out = track_polyline(h, root, p, region, &cfg)?;
        limits.push(path_limit(label, i, out));
    }
    Ok(ExtensionAudit::decide(format!("root {root} of {h}"), limits, tol))
}
