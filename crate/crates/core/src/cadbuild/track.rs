//! Numeric continuation of section roots toward boundary points.
//!
//! Paths are cylindrical: at a sector level the coordinate moves linearly from
//! a start value toward the target and is clamped into the band between the
//! bounding roots (shrunk by a margin that vanishes with the path parameter);
//! at a section level the coordinate is the exact root over the point built so
//! far. Probe points use the parameter `s = 2^-i`, and the tracked values are
//! extrapolated with iterated Aitken acceleration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{merged_roots, CadTree, Formula, Kind};
use crate::arith::{
    roots_over, to_f64, FiberRoots, MultiPoly, Point, Rational, RealAlgebraic,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct TrackConfig {
    /// Convergence tolerance on successive extrapolated values.
    pub tol: f64,
    pub min_steps: usize,
    pub max_steps: usize,
}

impl Default for TrackConfig {
    fn default() -> Self {
        TrackConfig {
            tol: 1e-9,
            min_steps: 6,
            max_steps: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Limit {
    Finite(f64),
    PlusInfinity,
    MinusInfinity,
}

impl Limit {
    pub fn value(&self) -> f64 {
        match self {
            Limit::Finite(v) => *v,
            Limit::PlusInfinity => f64::INFINITY,
            Limit::MinusInfinity => f64::NEG_INFINITY,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TrackOutcome {
    pub limit: Limit,
    /// Exact stack value the limit snapped to, when one was certified.
    pub exact: Option<RealAlgebraic>,
    /// Error estimate for finite limits.
    pub error: f64,
    pub steps: usize,
    /// False when the values neither converged nor diverged within budget;
    /// `limit` then holds the last estimate.
    pub converged: bool,
    pub values: Vec<f64>,
}

/// A cylindrical path inside one cell: start coordinates for sector levels
/// and the limit point it approaches.
#[derive(Clone, Debug)]
pub struct PathSpec {
    pub start: Vec<Rational>,
    pub target: Point,
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

fn pow2_inv(i: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << i)
}

/// Rational within `w` of `a`.
fn approx(a: &RealAlgebraic, w: &Rational) -> Rational {
    match a.as_rational() {
        Some(r) => r.clone(),
        None => a.refine(w).midpoint(),
    }
}

/// Rational lower bound on the gap between consecutive roots, capped at 1.
fn gap_bound(lo: Option<&RealAlgebraic>, hi: Option<&RealAlgebraic>) -> Rational {
    match (lo, hi) {
        (Some(a), Some(b)) => {
            let (mut a, mut b) = (a.clone(), b.clone());
            while a.hi() >= b.lo() {
                a.bisect();
                b.bisect();
            }
            let g = b.lo() - a.hi();
            g.min(Rational::one())
        }
        _ => Rational::one(),
    }
}

fn sector_coord(
    lo: Option<&RealAlgebraic>,
    hi: Option<&RealAlgebraic>,
    start: &Rational,
    target: &RealAlgebraic,
    s: &Rational,
) -> Rational {
    let margin = s / Rational::from_integer(4.into()) * gap_bound(lo, hi);
    let w = &margin / Rational::from_integer(4.into());
    let tw = (s * s) * (s * s) / Rational::from_integer(16.into());
    let tau = approx(target, &tw);
    let mut x = s * start + (Rational::one() - s) * tau;
    if let Some(a) = lo {
        let lower = match a.as_rational() {
            Some(r) => r + &margin / two(),
            None => a.refine(&w).hi() + &margin / two(),
        };
        if x < lower {
            x = lower;
        }
    }
    if let Some(b) = hi {
        let upper = match b.as_rational() {
            Some(r) => r - &margin / two(),
            None => b.refine(&w).lo() - &margin / two(),
        };
        if x > upper {
            x = upper;
        }
    }
    x
}

/// Point at parameter `s` in `(0, 1]` on the cylindrical path through the
/// cell `index`.
pub fn path_point(cad: &CadTree, index: &[usize], spec: &PathSpec, s: &Rational) -> Result<Point> {
    let mut pt = Point::default();
    for l in 1..=index.len() {
        let base = &index[..l - 1];
        let pos = index[l - 1];
        let st = cad
            .stacks
            .get(base)
            .ok_or_else(|| Error::UnknownCell(super::index_id(base)))?;
        let (merged, _) = merged_roots(cad.lifting_polys(l), l - 1, &pt, &st.nullified)?;
        if merged.len() != st.roots.len() {
            return Err(Error::PathLeavesCell(format!(
                "stack over {:?} has {} roots instead of {} at parameter {s}",
                pt.to_f64(),
                merged.len(),
                st.roots.len()
            )));
        }
        let roots: Vec<RealAlgebraic> = merged.into_iter().map(|m| m.0).collect();
        let coord = match Kind::of_position(pos) {
            Kind::Section => roots[pos / 2 - 1].clone(),
            Kind::Sector => {
                let j = (pos - 1) / 2;
                let lo = if j > 0 { Some(&roots[j - 1]) } else { None };
                let hi = roots.get(j);
                RealAlgebraic::from_rational(sector_coord(
                    lo,
                    hi,
                    &spec.start[l - 1],
                    &spec.target.coords[l - 1],
                    s,
                ))
            }
        };
        pt = pt.pushed(coord);
    }
    Ok(pt)
}

/// Start coordinates for path variant `v` of `variants`: the cell sample
/// nudged upward at every sector level.
pub fn variant_start(cad: &CadTree, index: &[usize], v: usize, variants: usize) -> Result<Vec<Rational>> {
    let cell = cad.cell(index)?;
    let mut out = Vec::with_capacity(index.len());
    for l in 1..=index.len() {
        let pos = index[l - 1];
        let c = &cell.sample.coords[l - 1];
        if pos % 2 == 0 {
            out.push(c.midpoint());
            continue;
        }
        let st = &cad.stacks[&index[..l - 1]];
        let j = (pos - 1) / 2;
        let lo = if j > 0 { st.roots.get(j - 1) } else { None };
        let gap = gap_bound(lo, st.roots.get(j));
        let base = c.as_rational().cloned().unwrap_or_else(|| c.midpoint());
        let shift = gap * Rational::new(BigInt::from(v), BigInt::from(4 * variants.max(1)));
        out.push(base + shift);
    }
    Ok(out)
}

/// Points inside the cell near its sample, one per variant.
pub fn interior_probes(cad: &CadTree, index: &[usize], count: usize) -> Result<Vec<Point>> {
    let cell = cad.cell(index)?;
    let mut out = Vec::with_capacity(count);
    for v in 1..=count {
        let spec = PathSpec {
            start: variant_start(cad, index, v, count)?,
            target: cell.sample.clone(),
        };
        out.push(path_point(cad, index, &spec, &Rational::new(BigInt::one(), BigInt::from(2)))?);
    }
    Ok(out)
}

fn aitken(a: f64, b: f64, c: f64) -> f64 {
    let d = c - 2.0 * b + a;
    if d == 0.0 || !d.is_finite() {
        return c;
    }
    let v = c - (c - b) * (c - b) / d;
    if v.is_finite() {
        v
    } else {
        c
    }
}

/// Iterated Aitken estimate from a raw sequence.
fn extrapolate(raw: &[f64]) -> f64 {
    let mut row: Vec<f64> = raw.to_vec();
    for _ in 0..3 {
        if row.len() < 3 {
            break;
        }
        row = row.windows(3).map(|w| aitken(w[0], w[1], w[2])).collect();
    }
    *row.last().unwrap()
}

struct Sequence {
    values: Vec<f64>,
    estimates: Vec<f64>,
}

enum Verdict {
    Converged(f64, f64),
    Diverged(i8),
    Continue,
}

impl Sequence {
    fn new() -> Self {
        Sequence {
            values: Vec::new(),
            estimates: Vec::new(),
        }
    }

    fn push(&mut self, v: f64, cfg: &TrackConfig) -> Verdict {
        self.values.push(v);
        let window = &self.values[self.values.len().saturating_sub(12)..];
        let e = extrapolate(window);
        self.estimates.push(e);
        let n = self.values.len();
        if n >= 5 {
            let t = &self.values[n - 5..];
            let growing = t.windows(2).all(|w| w[1].abs() > 1.1 * w[0].abs());
            if growing && t[4].abs() > 1e6 {
                return Verdict::Diverged(if t[4] > 0.0 { 1 } else { -1 });
            }
        }
        if n < cfg.min_steps.max(3) {
            return Verdict::Continue;
        }
        let k = self.estimates.len();
        let (a, b, c) = (self.estimates[k - 3], self.estimates[k - 2], self.estimates[k - 1]);
        let scale = 1f64.max(c.abs());
        // raw steps must not be growing, or a blow-up could pass for a limit
        let v = &self.values[n - 3..];
        let settling = (v[2] - v[1]).abs() <= (v[1] - v[0]).abs() + 1e-15 * scale;
        if settling && (c - b).abs() <= cfg.tol * scale && (b - a).abs() <= cfg.tol * scale {
            return Verdict::Converged(c, (c - b).abs().max((b - a).abs()));
        }
        Verdict::Continue
    }

    fn finish_unconverged(self, steps: usize) -> TrackOutcome {
        let last = *self.estimates.last().unwrap_or(&f64::NAN);
        TrackOutcome {
            limit: Limit::Finite(last),
            exact: None,
            error: f64::INFINITY,
            steps,
            converged: false,
            values: self.values,
        }
    }
}

/// Snap a numeric limit to the nearest real root of one of `polys` over
/// `target` (variable `var`), skipping polynomials nullified there.
fn snap(polys: &[&MultiPoly], var: usize, target: &Point, value: f64, slack: f64) -> Result<Option<RealAlgebraic>> {
    let mut best: Option<(f64, RealAlgebraic)> = None;
    for h in polys {
        if let FiberRoots::Roots(rs) = roots_over(h, var, target)? {
            for r in rs {
                let d = (r.to_f64() - value).abs();
                if best.as_ref().is_none_or(|b| d < b.0) {
                    best = Some((d, r));
                }
            }
        }
    }
    Ok(best.and_then(|(d, r)| (d <= slack * 1f64.max(value.abs())).then_some(r)))
}

/// Follow the section cell `index` along the cylindrical path through its base
/// cell approaching `spec.target`.
pub fn track_section(cad: &CadTree, index: &[usize], spec: &PathSpec, cfg: &TrackConfig) -> Result<TrackOutcome> {
    let k = index.len();
    let pos = index[k - 1];
    if pos % 2 == 1 {
        return Err(Error::Precondition(format!(
            "cell {} is not a section",
            super::index_id(index)
        )));
    }
    let mut seq = Sequence::new();
    for i in 1..=cfg.max_steps {
        let s = pow2_inv(i);
        let pt = path_point(cad, index, spec, &s)?;
        let v = pt.coords[k - 1].to_f64();
        match seq.push(v, cfg) {
            Verdict::Continue => {}
            Verdict::Diverged(sg) => {
                return Ok(TrackOutcome {
                    limit: if sg > 0 { Limit::PlusInfinity } else { Limit::MinusInfinity },
                    exact: None,
                    error: 0.0,
                    steps: i,
                    converged: true,
                    values: seq.values,
                })
            }
            Verdict::Converged(l, err) => {
                let st = &cad.stacks[&index[..k - 1]];
                let lift = cad.lifting_polys(k);
                let polys: Vec<&MultiPoly> = st.root_polys[pos / 2 - 1].iter().map(|&j| &lift[j]).collect();
                let exact = snap(&polys, k - 1, &spec.target, l, 1e-6)?;
                let error = match &exact {
                    Some(r) => (r.to_f64() - l).abs(),
                    None => err,
                };
                return Ok(TrackOutcome {
                    limit: Limit::Finite(l),
                    exact,
                    error,
                    steps: i,
                    converged: true,
                    values: seq.values,
                });
            }
        }
    }
    Ok(seq.finish_unconverged(cfg.max_steps))
}

/// Base region given by sign conditions on named polynomials.
#[derive(Clone, Debug)]
pub struct Region {
    pub formula: Formula,
    pub polys: Vec<MultiPoly>,
}

impl Region {
    pub fn contains(&self, p: &[Rational]) -> bool {
        let signs: Vec<i8> = self
            .polys
            .iter()
            .map(|f| {
                let mut q = p.to_vec();
                q.resize(f.nvars().max(p.len()), Rational::zero());
                crate::arith::sign_of(&f.eval(&q))
            })
            .collect();
        self.formula.eval(&signs)
    }
}

/// Track root number `root` (0-based, ascending) of `h` in its last variable
/// over a polyline in the base that ends at the boundary point `q`. Probe
/// points approach `q` geometrically along the last segment; every probe and
/// a few points on earlier segments are checked against `region`.
pub fn track_polyline(
    h: &MultiPoly,
    root: usize,
    waypoints: &[Vec<Rational>],
    region: Option<&Region>,
    cfg: &TrackConfig,
) -> Result<TrackOutcome> {
    if waypoints.len() < 2 {
        return Err(Error::Precondition("a path needs a start and an end point".into()));
    }
    let var = h.nvars() - 1;
    let q = waypoints.last().unwrap();
    let check = |p: &[Rational]| -> Result<()> {
        if let Some(r) = region {
            if !r.contains(p) {
                let v: Vec<f64> = p.iter().map(to_f64).collect();
                return Err(Error::PathLeavesCell(format!("probe {v:?} violates {}", r.formula)));
            }
        }
        Ok(())
    };
    for seg in waypoints.windows(2).take(waypoints.len() - 2) {
        for k in 0..=8 {
            let t = Rational::new(BigInt::from(k), BigInt::from(8));
            let p: Vec<Rational> = seg[0]
                .iter()
                .zip(&seg[1])
                .map(|(a, b)| a + (b - a) * &t)
                .collect();
            check(&p)?;
        }
    }
    let from = &waypoints[waypoints.len() - 2];
    let mut seq = Sequence::new();
    for i in 0..=cfg.max_steps {
        let s = pow2_inv(i);
        let p: Vec<Rational> = q.iter().zip(from).map(|(qv, a)| qv + (a - qv) * &s).collect();
        check(&p)?;
        let pt = Point::from_rationals(&p);
        let v = match roots_over(h, var, &pt)? {
            FiberRoots::Roots(rs) if rs.len() > root => rs[root].to_f64(),
            _ => {
                return Err(Error::PathLeavesCell(format!(
                    "root {root} of {h} does not exist over {:?}",
                    pt.to_f64()
                )))
            }
        };
        match seq.push(v, cfg) {
            Verdict::Continue => {}
            Verdict::Diverged(sg) => {
                return Ok(TrackOutcome {
                    limit: if sg > 0 { Limit::PlusInfinity } else { Limit::MinusInfinity },
                    exact: None,
                    error: 0.0,
                    steps: i,
                    converged: true,
                    values: seq.values,
                })
            }
            Verdict::Converged(l, err) => {
                let exact = snap(&[h], var, &Point::from_rationals(q), l, 1e-6)?;
                let error = match &exact {
                    Some(r) => (r.to_f64() - l).abs(),
                    None => err,
                };
                return Ok(TrackOutcome {
                    limit: Limit::Finite(l),
                    exact,
                    error,
                    steps: i,
                    converged: true,
                    values: seq.values,
                });
            }
        }
    }
    Ok(seq.finish_unconverged(cfg.max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly, rat};
    use crate::cadbuild::build_cad;

    #[test]
    fn aitken_on_geometric() {
        let raw: Vec<f64> = (1..12).map(|i| 3.0 + 0.5f64.powi(i)).collect();
        assert!((extrapolate(&raw) - 3.0).abs() < 1e-12);
        let sq: Vec<f64> = (1..30).map(|i| 0.5f64.powi(i).sqrt()).collect();
        assert!(extrapolate(&sq).abs() < 1e-9);
    }

    #[test]
    fn circle_arc_to_endpoint() {
        let cad = build_cad(&[parse_poly("x1^2 + x2^2 - 1", Some(2)).unwrap()], 2).unwrap();
        // upper arc over (-1, 1) is cell 3.4; approach x1 = 1
        let spec = PathSpec {
            start: variant_start(&cad, &[3, 4], 0, 1).unwrap(),
            target: Point::from_ints(&[1]),
        };
        let out = track_section(&cad, &[3, 4], &spec, &TrackConfig::default()).unwrap();
        assert!(out.converged);
        assert_eq!(out.exact.unwrap().as_rational(), Some(&rat(0, 1)));
        assert!(out.error < 1e-9);
    }

    #[test]
    fn whitney_polyline_limits() {
        let h = parse_poly("x1^2*x3 - x2^2", Some(3)).unwrap();
        let region = Region {
            formula: Formula::parse("f1 > 0 & f2 < 0 & f3 > 0 & f4 > 0").unwrap(),
            polys: ["x1", "x1 - 1", "x2 + x1", "x1 - x2"]
                .iter()
                .map(|s| parse_poly(s, Some(3)).unwrap())
                .collect(),
        };
        let cfg = TrackConfig::default();
        let a = track_polyline(&h, 0, &[vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(0, 1)]], Some(&region), &cfg);
        // the endpoint itself is outside the open region, so only probes with s > 0 are checked
        let a = a.unwrap();
        assert!((a.limit.value() - 0.0).abs() < 1e-9);
        let b = track_polyline(&h, 0, &[vec![rat(1, 2), rat(1, 4)], vec![rat(0, 1), rat(0, 1)]], Some(&region), &cfg)
            .unwrap();
        assert!((b.limit.value() - 0.25).abs() < 1e-9);
    }

    #[test]
    fn polyline_leaving_region_is_an_error() {
        let h = parse_poly("x2", Some(2)).unwrap();
        let region = Region {
            formula: Formula::parse("f1 > 0").unwrap(),
            polys: vec![parse_poly("x1", Some(2)).unwrap()],
        };
        let r = track_polyline(&h, 0, &[vec![rat(-1, 1)], vec![rat(1, 1)]], Some(&region), &TrackConfig::default());
        assert!(matches!(r, Err(Error::PathLeavesCell(_))));
    }
}
