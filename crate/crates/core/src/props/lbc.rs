//! Sampling probe for local boundary connectivity.
//!
//! For each radius in a geometric schedule, points are drawn uniformly on the
//! sphere `S(p, eps)`, pulled onto the cell's defining equations by
//! Gauss-Newton (the sphere equation included), and kept when they satisfy
//! the cell's conditions. Components of `C ∩ S(p, eps)` are counted on a
//! proximity graph whose edges must also pass a midpoint test, so that two
//! sheets meeting only in the closure are not joined through the gap. The
//! verdict is heuristic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::Status;
use crate::arith::{to_f64, MultiPoly};
use crate::cadbuild::{CadTree, CellIndex, Formula, RelOp};
use crate::error::{Error, Result};

/// A polynomial with floating-point coefficients and its gradient.
#[derive(Clone, Debug)]
pub struct FPoly {
    terms: Vec<(f64, Vec<u32>)>,
    grad: Vec<Vec<(f64, Vec<u32>)>>,
}

fn eval_terms(terms: &[(f64, Vec<u32>)], x: &[f64]) -> f64 {
    terms
        .iter()
        .map(|(c, e)| e.iter().zip(x).fold(*c, |acc, (&k, &v)| acc * v.powi(k as i32)))
        .sum()
}

impl FPoly {
    pub fn new(p: &MultiPoly, nvars: usize) -> Self {
        let terms: Vec<(f64, Vec<u32>)> = p
            .terms()
            .map(|(m, c)| {
                let mut e = m.clone();
                e.resize(nvars, 0);
                (to_f64(c), e)
            })
            .collect();
        let grad = (0..nvars)
            .map(|v| {
                terms
                    .iter()
                    .filter(|(_, e)| e[v] > 0)
                    .map(|(c, e)| {
                        let mut d = e.clone();
                        d[v] -= 1;
                        (c * e[v] as f64, d)
                    })
                    .collect()
            })
            .collect();
        FPoly { terms, grad }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        eval_terms(&self.terms, x)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.grad.iter().map(|t| eval_terms(t, x)).collect()
    }

    /// Coefficients (low to high) in variable `var` after substituting
    /// `prefix` for the variables before it.
    fn univariate(&self, var: usize, prefix: &[f64]) -> Vec<f64> {
        let mut out = Vec::new();
        for (c, e) in &self.terms {
            let k = e[var] as usize;
            if out.len() <= k {
                out.resize(k + 1, 0.0);
            }
            out[k] += e[..var].iter().zip(prefix).fold(*c, |acc, (&d, &v)| acc * v.powi(d as i32));
        }
        out
    }
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * x + a)
}

/// Real roots of a univariate polynomial (coefficients low to high), found
/// by bisection between the critical points.
pub fn real_roots_f64(c: &[f64]) -> Vec<f64> {
    let scale = c.iter().fold(0f64, |m, a| m.max(a.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c = c.to_vec();
    while c.len() > 1 && c.last().unwrap().abs() <= 1e-13 * scale {
        c.pop();
    }
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![-c[0] / c[1]];
    }
    let lc = c[d];
    let bound = 1.0 + c[..d].iter().fold(0f64, |m, a| m.max((a / lc).abs()));
    let deriv: Vec<f64> = (1..=d).map(|k| c[k] * k as f64).collect();
    let mut knots = vec![-bound];
    knots.extend(real_roots_f64(&deriv).into_iter().filter(|x| x.abs() < bound));
    knots.push(bound);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (horner(&c, a), horner(&c, b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = horner(&c, m);
            if fa * fm <= 0.0 {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        roots.push(0.5 * (a + b));
    }
    // double roots at critical points show up as near-zero values there
    for &x in &knots[1..knots.len() - 1] {
        let tol = 1e-10 * c.iter().enumerate().map(|(k, a)| a.abs() * x.abs().powi(k as i32)).sum::<f64>();
        if horner(&c, x).abs() <= tol && !roots.iter().any(|r| (r - x).abs() <= 1e-6 * 1f64.max(x.abs())) {
            roots.push(x);
        }
    }
    roots.sort_by(f64::total_cmp);
    // bisection lands within about sqrt(machine eps) of a double root
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-6 * 1f64.max(a.abs()));
    roots
}

/// Point-set view of a cell for sampling.
pub trait CellShape: Sync {
    fn ambient(&self) -> usize;
    fn dim(&self) -> usize;
    /// Equations the cell lies on; samples are pulled onto them.
    fn equations(&self) -> &[FPoly];
    fn contains(&self, q: &[f64]) -> bool;
    /// Estimated distance from `q` (a point of the cell) to the part of the
    /// cell's frontier cut out by its strict conditions.
    fn margin(&self, q: &[f64]) -> f64;
}

/// Cell given by a conjunction of sign conditions.
pub struct FormulaShape {
    n: usize,
    dim: usize,
    formula: Formula,
    polys: Vec<FPoly>,
    eqs: Vec<FPoly>,
}

impl FormulaShape {
    pub fn new(formula: Formula, polys: &[MultiPoly], n: usize, dim: usize) -> Result<Self> {
        formula.check_refs(polys.len())?;
        let fp: Vec<FPoly> = polys.iter().map(|p| FPoly::new(p, n)).collect();
        let mut eqs = Vec::new();
        if let Formula::And(v) = &formula {
            for f in v {
                if let Formula::Atom(i, RelOp::Eq) = f {
                    eqs.push(fp[*i].clone());
                }
            }
        } else if let Formula::Atom(i, RelOp::Eq) = &formula {
            eqs.push(fp[*i].clone());
        }
        Ok(FormulaShape {
            n,
            dim,
            formula,
            polys: fp,
            eqs,
        })
    }
}

/// Orthonormal basis of the span of the equation gradients at `q`.
fn normal_basis(eqs: &[FPoly], q: &[f64]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for e in eqs {
        let mut v = e.gradient(q);
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
        }
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            basis.push(v.into_iter().map(|x| x / n).collect());
        }
    }
    basis
}

/// Length of `g` with its components along `normals` removed.
fn tangent_norm(mut g: Vec<f64>, normals: &[Vec<f64>]) -> f64 {
    for b in normals {
        let d: f64 = g.iter().zip(b).map(|(x, y)| x * y).sum();
        g.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
    }
    g.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Sign with a zero band scaled by the gradient, and the linearised
/// distance to the zero set measured within the cell's equations.
fn fsign(f: &FPoly, q: &[f64], normals: &[Vec<f64>]) -> (i8, f64) {
    let v = f.eval(q);
    let grad = f.gradient(q);
    let g: f64 = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
    let t = tangent_norm(grad, normals);
    let dist = if t > 0.0 { v.abs() / t } else { f64::INFINITY };
    if v.abs() <= 1e-9 * (1.0 + g) {
        (0, 0.0)
    } else if v > 0.0 {
        (1, dist)
    } else {
        (-1, dist)
    }
}

impl CellShape for FormulaShape {
    fn ambient(&self) -> usize {
        self.n
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn equations(&self) -> &[FPoly] {
        &self.eqs
    }

    fn contains(&self, q: &[f64]) -> bool {
        let signs: Vec<i8> = self.polys.iter().map(|f| fsign(f, q, &[]).0).collect();
        self.formula.eval(&signs)
    }

    fn margin(&self, q: &[f64]) -> f64 {
        let normals = normal_basis(&self.eqs, q);
        let sd: Vec<(i8, f64)> = self.polys.iter().map(|f| fsign(f, q, &normals)).collect();
        let mut signs: Vec<i8> = sd.iter().map(|x| x.0).collect();
        let mut best = f64::INFINITY;
        for (i, &(s, d)) in sd.iter().enumerate() {
            if s == 0 || d >= best {
                continue;
            }
            // only zero sets where the formula actually changes count
            signs[i] = 0;
            if !self.formula.eval(&signs) {
                best = d;
            }
            signs[i] = s;
        }
        best
    }
}

/// A cell of a decomposition, located by floating-point root isolation in
/// each stack.
pub struct CadShape<'a> {
    cad: &'a CadTree,
    index: CellIndex,
    levels: Vec<Vec<FPoly>>,
    eqs: Vec<FPoly>,
}

impl<'a> CadShape<'a> {
    pub fn new(cad: &'a CadTree, index: &[usize]) -> Result<Self> {
        cad.cell(index)?;
        let n = cad.nvars;
        let levels: Vec<Vec<FPoly>> = (1..=index.len())
            .map(|k| cad.lifting_polys(k).iter().map(|p| FPoly::new(p, n)).collect())
            .collect();
        let mut eqs = Vec::new();
        for k in 1..=index.len() {
            let pos = index[k - 1];
            if pos % 2 == 0 {
                let st = cad.stack(&index[..k - 1]);
                let j = st.root_polys[pos / 2 - 1][0];
                eqs.push(levels[k - 1][j].clone());
            }
        }
        Ok(CadShape {
            cad,
            index: index.to_vec(),
            levels,
            eqs,
        })
    }
}

impl CellShape for CadShape<'_> {
    fn ambient(&self) -> usize {
        self.cad.nvars
    }

    fn dim(&self) -> usize {
        self.index.iter().filter(|&&p| p % 2 == 1).count()
    }

    fn equations(&self) -> &[FPoly] {
        &self.eqs
    }

    fn contains(&self, q: &[f64]) -> bool {
        self.locate(q).is_some()
    }

    fn margin(&self, q: &[f64]) -> f64 {
        self.locate(q).unwrap_or(0.0)
    }
}

impl CadShape<'_> {
    /// Estimated distance from `q` to the roots bounding its sector
    /// coordinates, measured along the cell's equations, or `None` when `q`
    /// is outside the cell.
    fn locate(&self, q: &[f64]) -> Option<f64> {
        let normals = normal_basis(&self.eqs, q);
        let mut gap = f64::INFINITY;
        for k in 1..=self.index.len() {
            let st = self.cad.stack(&self.index[..k - 1]);
            // (root, polynomial it came from)
            let mut roots: Vec<(f64, usize)> = Vec::new();
            for (i, f) in self.levels[k - 1].iter().enumerate() {
                if st.nullified.contains(&i) {
                    continue;
                }
                roots.extend(real_roots_f64(&f.univariate(k - 1, &q[..k - 1])).into_iter().map(|r| (r, i)));
            }
            roots.sort_by(|a, b| a.0.total_cmp(&b.0));
            roots.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-9 * 1f64.max(a.0.abs()));
            if roots.len() != st.roots.len() {
                return None;
            }
            let x = q[k - 1];
            let pos = self.index[k - 1];
            if pos % 2 == 0 {
                let r = roots[pos / 2 - 1].0;
                if (x - r).abs() > 1e-7 * 1f64.max(r.abs()) {
                    return None;
                }
                continue;
            }
            let j = (pos - 1) / 2;
            let mut bounding = Vec::new();
            if j > 0 {
                if x <= roots[j - 1].0 {
                    return None;
                }
                bounding.push(roots[j - 1]);
            }
            if j < roots.len() {
                if x >= roots[j].0 {
                    return None;
                }
                bounding.push(roots[j]);
            }
            for (r, i) in bounding {
                let f = &self.levels[k - 1][i];
                let t = tangent_norm(f.gradient(q), &normals);
                let d = if t > 0.0 { f.eval(q).abs() / t } else { (x - r).abs() };
                gap = gap.min(d);
            }
        }
        Some(gap)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbcConfig {
    pub eps0: f64,
    pub factor: f64,
    /// Consecutive radii with equal counts needed for a verdict.
    pub stability: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_radii: usize,
}

impl Default for LbcConfig {
    fn default() -> Self {
        LbcConfig {
            eps0: 0.25,
            factor: 0.5,
            stability: 2,
            samples: 2000,
            seed: 42,
            max_radii: 8,
        }
    }
}

impl LbcConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.eps0 > 0.0
            && self.factor > 0.0
            && self.factor < 1.0
            && self.stability >= 2
            && self.samples > 0
            && self.max_radii >= self.stability;
        if ok {
            Ok(())
        } else {
            Err(Error::Precondition(
                "need eps0 > 0, 0 < factor < 1, stability >= 2, samples > 0".into(),
            ))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LbcResult {
    pub holds: Status,
    /// Component count per radius; `None` where no sample landed in the cell.
    pub counts: Vec<Option<usize>>,
    pub radii: Vec<f64>,
    pub stable_count: Option<usize>,
}

fn mix(seed: u64, tag: &str, i: usize) -> u64 {
    // FNV-1a over the tag, folded with the seed and radius index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed;
    for b in tag.bytes().chain((i as u64).to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Solve the square system `a x = b` by Gaussian elimination.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let m = b.len();
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..m {
            let f = a[r][col] / a[col][col];
            for c in col..m {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; m];
    for r in (0..m).rev() {
        let s: f64 = (r + 1..m).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// Gauss-Newton projection of `q` onto the common zeros of `eqs` and, when
/// `sphere` is given, the sphere `|x - p| = eps`.
fn project(eqs: &[FPoly], sphere: Option<(&[f64], f64)>, q: &[f64]) -> Option<Vec<f64>> {
    let mut x = q.to_vec();
    let scale = sphere.map_or(1.0, |s| s.1);
    for _ in 0..60 {
        let mut f: Vec<f64> = Vec::new();
        let mut jac: Vec<Vec<f64>> = Vec::new();
        for e in eqs {
            let g = e.gradient(&x);
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-300);
            f.push(e.eval(&x) / norm);
            jac.push(g.iter().map(|v| v / norm).collect());
        }
        if let Some((p, eps)) = sphere {
            let d: Vec<f64> = x.iter().zip(p).map(|(a, b)| a - b).collect();
            let r2: f64 = d.iter().map(|v| v * v).sum();
            f.push((r2 - eps * eps) / (2.0 * eps));
            jac.push(d.iter().map(|v| v / eps).collect());
        }
        let resid = f.iter().fold(0f64, |m, v| m.max(v.abs()));
        if resid <= 1e-13 * scale.max(1e-3) {
            return Some(x);
        }
        let gram: Vec<Vec<f64>> = jac
            .iter()
            .map(|r| jac.iter().map(|s| r.iter().zip(s).map(|(a, b)| a * b).sum()).collect())
            .collect();
        let y = solve(gram, f)?;
        for (k, row) in jac.iter().enumerate() {
            for (xi, ji) in x.iter_mut().zip(row) {
                *xi -= y[k] * ji;
            }
        }
        if x.iter().any(|v| !v.is_finite()) {
            return None;
        }
    }
    None
}

fn unit_angle(a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    dot.clamp(-1.0, 1.0).acos()
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Points of the cell on `S(p, eps)`.
fn sphere_points(shape: &dyn CellShape, p: &[f64], eps: f64, samples: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = p.len();
    let mut out = Vec::new();
    for _ in 0..samples {
        let u: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let q0: Vec<f64> = p.iter().zip(&u).map(|(a, b)| a + eps * b / norm).collect();
        let q = if shape.equations().is_empty() {
            Some(q0)
        } else {
            project(shape.equations(), Some((p, eps)), &q0)
        };
        if let Some(q) = q.filter(|q| shape.contains(q)) {
            out.push(q);
        }
    }
    out
}

/// Number of components of the sampled set, ignoring specks below 1% of
/// the points. Points closer to the frontier than one edge length are
/// dropped, so that pieces meeting only at excluded points stay apart.
fn components(shape: &dyn CellShape, p: &[f64], eps: f64, pts: &[Vec<f64>]) -> usize {
    let k = shape.dim().saturating_sub(1);
    let threshold = edge_angle(k, pts.len());
    let reach = threshold * eps;
    let pts: Vec<&Vec<f64>> = pts.iter().filter(|q| shape.margin(q) >= reach).collect();
    let m = pts.len();
    if m == 0 {
        return 0;
    }
    let dirs: Vec<Vec<f64>> = pts
        .iter()
        .map(|q| q.iter().zip(p).map(|(a, b)| (a - b) / eps).collect())
        .collect();
    let mut dsu = Dsu((0..m).collect());
    for i in 0..m {
        for j in i + 1..m {
            if unit_angle(&dirs[i], &dirs[j]) > threshold || dsu.find(i) == dsu.find(j) {
                continue;
            }
            if midpoint_ok(shape, p, eps, pts[i], pts[j], reach) {
                dsu.union(i, j);
            }
        }
    }
    let mut sizes = std::collections::HashMap::new();
    for i in 0..m {
        *sizes.entry(dsu.find(i)).or_insert(0usize) += 1;
    }
    let floor = (m as f64 * 0.01).ceil() as usize;
    sizes.values().filter(|&&s| s >= floor.max(1)).count()
}

/// Angular edge length: twice the spacing at which `m` uniform points on a
/// `k`-sphere connect.
fn edge_angle(k: usize, m: usize) -> f64 {
    if k == 0 {
        return 1e-6;
    }
    let omega = if k == 1 { 2.0 * std::f64::consts::PI } else { 4.0 * std::f64::consts::PI };
    let m = m.max(1) as f64;
    2.0 * (omega * m.ln().max(1.0) / m).powf(1.0 / k as f64)
}

/// The chord between two samples must stay near the cell: its midpoint,
/// pulled back onto the sphere and the equations, has to land in the cell
/// within a quarter chord of where it started.
fn midpoint_ok(shape: &dyn CellShape, p: &[f64], eps: f64, a: &[f64], b: &[f64], reach: f64) -> bool {
    let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect();
    let chord = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let d: Vec<f64> = mid.iter().zip(p).map(|(x, y)| x - y).collect();
    let r = d.iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return false;
    }
    let radial: Vec<f64> = p.iter().zip(&d).map(|(x, v)| x + eps * v / r).collect();
    let q = if shape.equations().is_empty() {
        radial
    } else {
        match project(shape.equations(), Some((p, eps)), &radial) {
            Some(q) => q,
            None => return false,
        }
    };
    let moved = q.iter().zip(&mid).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    moved <= 0.25 * chord + 1e-12 * eps && shape.contains(&q) && shape.margin(&q) >= 0.5 * reach
}

/// Probe whether `C ∩ S(p, eps)` is connected for small `eps`. `tag`
/// identifies the cell for seeding.
pub fn check_lbc(shape: &dyn CellShape, p: &[f64], cfg: &LbcConfig, tag: &str) -> Result<LbcResult> {
    cfg.validate()?;
    if p.len() != shape.ambient() {
        return Err(Error::VarCountMismatch(p.len(), shape.ambient()));
    }
    let mut counts = Vec::new();
    let mut radii = Vec::new();
    let mut eps = cfg.eps0;
    let mut stable = None;
    for i in 0..cfg.max_radii {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, tag, i));
        let mut pts = Vec::new();
        let mut budget = cfg.samples;
        for _ in 0..3 {
            pts = sphere_points(shape, p, eps, budget, &mut rng);
            if !pts.is_empty() {
                break;
            }
            budget *= 2;
        }
        // zero means every sample sat too close to the frontier
        let count = Some(components(shape, p, eps, &pts)).filter(|&c| c > 0);
        counts.push(count);
        radii.push(eps);
        let s = cfg.stability;
        if counts.len() >= s {
            let tail = &counts[counts.len() - s..];
            if tail[0].is_some() && tail.iter().all(|c| *c == tail[0]) {
                stable = tail[0];
                break;
            }
        }
        eps *= cfg.factor;
    }
    let holds = match stable {
        Some(1) => Status::True,
        Some(_) => Status::False,
        None => Status::Unknown,
    };
    Ok(LbcResult {
        holds,
        counts,
        radii,
        stable_count: stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn shape(formula: &str, polys: &[&str], n: usize, dim: usize) -> FormulaShape {
        let ps: Vec<MultiPoly> = polys.iter().map(|s| parse_poly(s, Some(n)).unwrap()).collect();
        FormulaShape::new(Formula::parse(formula).unwrap(), &ps, n, dim).unwrap()
    }

    #[test]
    fn roots_of_small_polynomials() {
        let r = real_roots_f64(&[-2.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!((r[1] - 2f64.sqrt()).abs() < 1e-12);
        assert!(real_roots_f64(&[1.0, 0.0, 1.0]).is_empty());
        // (x - 1)^2 (x + 2)
        let d = real_roots_f64(&[2.0, -3.0, 0.0, 1.0]);
        assert_eq!(d.len(), 2, "{d:?}");
    }

    #[test]
    fn open_disk_at_boundary_point() {
        let s = shape("f1 < 0", &["x1^2 + x2^2 - 1"], 2, 2);
        let r = check_lbc(&s, &[1.0, 0.0], &LbcConfig::default(), "disk").unwrap();
        assert_eq!(r.holds, Status::True);
        assert_eq!(r.stable_count, Some(1));
    }

    #[test]
    fn half_plane_at_origin() {
        let s = shape("f1 > 0", &["x2"], 2, 2);
        let r = check_lbc(&s, &[0.0, 0.0], &LbcConfig::default(), "half").unwrap();
        assert_eq!(r.holds, Status::True);
    }

    #[test]
    fn slit_disk_has_two_sides() {
        // the disk minus the segment [0, 1) x {0} seen from (1/2, 0)
        let s = shape("f1 < 0 & (f2 != 0 | f3 < 0)", &["x1^2 + x2^2 - 1", "x2", "x1"], 2, 2);
        let r = check_lbc(&s, &[0.5, 0.0], &LbcConfig::default(), "slit").unwrap();
        assert_eq!(r.stable_count, Some(2));
        assert_eq!(r.holds, Status::False);
    }

    #[test]
    fn whitney_sheet_splits_at_the_axis() {
        let s = shape(
            "f1 = 0 & f2 > 0 & f3 < 0 & f4 < 0 & f5 > 0",
            &["x1^2*x3 - x2^2", "x1", "x1 - 1", "x2 - x1", "x2 + x1"],
            3,
            2,
        );
        let r = check_lbc(&s, &[0.0, 0.0, 0.5], &LbcConfig::default(), "W").unwrap();
        assert_eq!(r.stable_count, Some(2), "{:?}", r.counts);
        let o = check_lbc(&s, &[0.0, 0.0, 0.0], &LbcConfig::default(), "W").unwrap();
        assert_eq!(o.stable_count, Some(1), "{:?}", o.counts);
    }

    #[test]
    fn seeded_runs_repeat() {
        let s = shape("f1 < 0", &["x1^2 + x2^2 - 1"], 2, 2);
        let cfg = LbcConfig::default();
        let a = check_lbc(&s, &[1.0, 0.0], &cfg, "d").unwrap();
        let b = check_lbc(&s, &[1.0, 0.0], &cfg, "d").unwrap();
        assert_eq!(a, b);
    }
}
