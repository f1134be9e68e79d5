//! Exact signs of polynomials at points with real algebraic coordinates, and
//! real roots of a polynomial over such a point.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::resultant::resultant;
use super::roots::isolate_upoly;
use super::upoly::sign_of;
use super::{MultiPoly, Rational, RealAlgebraic, UPoly};
use crate::error::{Error, Result};

/// Bisections allowed per coordinate before giving up.
const BUDGET: usize = 4000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub coords: Vec<RealAlgebraic>,
}

impl Point {
    pub fn new(coords: Vec<RealAlgebraic>) -> Self {
        Point { coords }
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        Point {
            coords: v.iter().cloned().map(RealAlgebraic::from_rational).collect(),
        }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Point {
            coords: v.iter().map(|&x| RealAlgebraic::from_int(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn prefix(&self, k: usize) -> Point {
        Point {
            coords: self.coords[..k].to_vec(),
        }
    }

    pub fn pushed(&self, c: RealAlgebraic) -> Point {
        let mut coords = self.coords.clone();
        coords.push(c);
        Point { coords }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational())
    }

    /// Every coordinate refined to width at most `w`.
    pub fn refine(&self, w: &Rational) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c.refine(w)).collect(),
        }
    }
}

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn point(r: Rational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn of(a: &RealAlgebraic) -> Self {
        Interval {
            lo: a.lo().clone(),
            hi: a.hi().clone(),
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Interval {
            lo: p.iter().min().unwrap().clone(),
            hi: p.iter().max().unwrap().clone(),
        }
    }

    pub fn pow(&self, k: u32) -> Interval {
        if k == 0 {
            return Interval::point(Rational::one());
        }
        let a = num_traits::pow(self.lo.clone(), k as usize);
        let b = num_traits::pow(self.hi.clone(), k as usize);
        if k % 2 == 1 {
            Interval { lo: a, hi: b }
        } else if self.contains_zero() {
            Interval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }
}

/// Interval enclosure of `f` over a box (one interval per variable; unused
/// variables may hold anything).
pub fn eval_box(f: &MultiPoly, bx: &[Interval]) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for (e, c) in f.terms() {
        let mut t = Interval::point(c.clone());
        for (v, &d) in e.iter().enumerate() {
            if d > 0 {
                t = t.mul(&bx[v].pow(d));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn check_dims(f: &MultiPoly, p: &Point) -> Result<()> {
    for v in p.dim()..f.nvars() {
        if f.uses_var(v) {
            return Err(Error::VarCountMismatch(f.nvars(), p.dim()));
        }
    }
    Ok(())
}

/// Substitute the rational coordinates of `p`; returns the reduced polynomial
/// and the variables still bound to irrational coordinates.
fn substitute_rationals(f: &MultiPoly, p: &Point, upto: usize) -> (MultiPoly, Vec<usize>) {
    let mut g = f.clone();
    let mut alg = Vec::new();
    for v in 0..upto.min(p.dim()) {
        if !g.uses_var(v) {
            continue;
        }
        match p.coords[v].as_rational() {
            Some(r) => g = g.substitute(v, r),
            None => alg.push(v),
        }
    }
    (g, alg)
}

/// Exact sign of `f` at `p`. Variables beyond the point's dimension must not
/// occur in `f`.
pub fn sign_at(f: &MultiPoly, p: &Point) -> Result<i8> {
    check_dims(f, p)?;
    let (g, alg) = substitute_rationals(f, p, p.dim());
    if let Some(c) = g.constant_value() {
        return Ok(sign_of(&c));
    }
    if alg.len() == 1 {
        let v = alg[0];
        let u = UPoly::from_multi(&g, v).expect("only one variable left");
        return Ok(p.coords[v].sign_of_poly(&u));
    }
    sign_multi(&g, &alg, p)
}

fn sign_multi(g: &MultiPoly, alg: &[usize], p: &Point) -> Result<i8> {
    let n = g.nvars();
    let mut coords: Vec<RealAlgebraic> = p.coords.clone();
    let make_box = |coords: &[RealAlgebraic]| -> Vec<Interval> {
        (0..n)
            .map(|v| {
                if v < coords.len() {
                    Interval::of(&coords[v])
                } else {
                    Interval::point(Rational::zero())
                }
            })
            .collect()
    };
    let refine_all = |coords: &mut Vec<RealAlgebraic>| {
        for &v in alg {
            coords[v].bisect();
        }
    };
    // cheap attempts before any elimination
    for _ in 0..12 {
        let iv = eval_box(g, &make_box(&coords));
        if !iv.contains_zero() {
            return Ok(sign_of(&iv.lo));
        }
        refine_all(&mut coords);
    }
    // R(z) = prod over conjugates of (z - g), by iterated resultants
    let z = n;
    let mut r = &MultiPoly::var(n + 1, z) - &g.with_nvars(n + 1);
    for &v in alg {
        let m = p.coords[v].defining().to_multi(n + 1, v);
        r = resultant(&r, &m, v)?;
    }
    let ru = UPoly::from_multi(&r, z).ok_or_else(|| {
        Error::RefinementBudget(format!("elimination left extra variables in {r}"))
    })?;
    let nonzero = !ru.eval(&Rational::zero()).is_zero();
    let sep = ru.nonzero_root_lower_bound();
    for _ in 0..BUDGET {
        let iv = eval_box(g, &make_box(&coords));
        if !iv.contains_zero() {
            return Ok(sign_of(&iv.lo));
        }
        if !nonzero && iv.width() < sep {
            return Ok(0);
        }
        refine_all(&mut coords);
    }
    Err(Error::RefinementBudget(format!("sign of {g} at {:?}", p.coords)))
}

/// Real roots of `f` in variable `var` over a point giving the coordinates of
/// `x1..x_var`.
#[derive(Clone, Debug, PartialEq)]
pub enum FiberRoots {
    /// Every coefficient in `var` vanishes at the point.
    Nullified,
    Roots(Vec<RealAlgebraic>),
}

pub fn roots_over(f: &MultiPoly, var: usize, p: &Point) -> Result<FiberRoots> {
    if p.dim() < var {
        return Err(Error::VarCountMismatch(var, p.dim()));
    }
    let (g, alg) = substitute_rationals(f, p, var);
    let coeffs = g.coeffs_in(var);
    let mut top = None;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if sign_at(c, p)? != 0 {
            top = Some(i);
            break;
        }
    }
    let d = match top {
        None => return Ok(FiberRoots::Nullified),
        Some(d) => d,
    };
    if d == 0 {
        return Ok(FiberRoots::Roots(Vec::new()));
    }
    let h = MultiPoly::from_coeffs_in(g.nvars(), var, &coeffs[..=d]);
    let alg: Vec<usize> = alg.into_iter().filter(|&v| h.uses_var(v)).collect();
    if alg.is_empty() {
        let u = UPoly::from_multi(&h, var).expect("univariate after substitution");
        return Ok(FiberRoots::Roots(isolate_upoly(&u)));
    }
    let norm = norm_poly(&h, &alg, p)?;
    let nu = UPoly::from_multi(&norm, var).expect("norm is univariate");
    let mut out = Vec::new();
    for beta in isolate_upoly(&nu) {
        let q = p.prefix(var).pushed(beta.clone());
        if sign_at(&h, &q)? == 0 {
            out.push(beta);
        }
    }
    Ok(FiberRoots::Roots(out))
}

/// Eliminate the algebraic variables of `h` against their defining
/// polynomials. Conjugates on which `h` vanishes identically are removed
/// from the defining polynomial first so the norm stays nonzero.
fn norm_poly(h: &MultiPoly, alg: &[usize], p: &Point) -> Result<MultiPoly> {
    let n = h.nvars();
    let mut acc = h.clone();
    for &v in alg {
        let m = p.coords[v].defining().clone();
        let mut g = m.clone();
        for c in coefficient_polys(&acc, v) {
            g = UPoly::gcd(&g, &c);
            if g.degree() == 0 {
                break;
            }
        }
        let m = if g.degree() > 0 { m.divrem(&g).0 } else { m };
        acc = resultant(&acc, &m.to_multi(n, v), v)?;
        if acc.is_zero() {
            return Err(Error::RefinementBudget(format!(
                "norm of {h} vanishes identically over dependent algebraic coordinates"
            )));
        }
    }
    Ok(acc)
}

/// `acc` viewed as a polynomial in the other variables with coefficients in
/// `Q[x_v]`.
fn coefficient_polys(acc: &MultiPoly, v: usize) -> Vec<UPoly> {
    use std::collections::BTreeMap;
    let mut groups: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
    for (e, c) in acc.terms() {
        let mut key = e.clone();
        let d = key[v] as usize;
        key[v] = 0;
        let slot = groups.entry(key).or_default();
        if slot.len() <= d {
            slot.resize(d + 1, Rational::zero());
        }
        slot[d] = c.clone();
    }
    groups.into_values().map(UPoly::new).collect()
}

#[allow(dead_code)]
fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::new(&UPoly::from_ints(&[-2, 0, 1]), r(1, 1), r(2, 1)).unwrap()
    }

    #[test]
    fn rational_points() {
        let f = parse_poly("x1^2 + x2^2 - 1", None).unwrap();
        assert_eq!(sign_at(&f, &Point::from_ints(&[0, 0])).unwrap(), -1);
        assert_eq!(sign_at(&f, &Point::from_ints(&[-1, 0])).unwrap(), 0);
    }

    #[test]
    fn single_algebraic_coordinate() {
        let f = parse_poly("x2^2 - 2", None).unwrap();
        let p = Point::new(vec![RealAlgebraic::from_int(5), sqrt2()]);
        assert_eq!(sign_at(&f, &p).unwrap(), 0);
        let g = parse_poly("x1 - x2 - 4", None).unwrap();
        assert_eq!(sign_at(&g, &p).unwrap(), -1);
    }

    #[test]
    fn two_algebraic_coordinates() {
        let s = sqrt2();
        let p = Point::new(vec![s.clone(), s.neg()]);
        assert_eq!(sign_at(&parse_poly("x1 + x2", None).unwrap(), &p).unwrap(), 0);
        assert_eq!(sign_at(&parse_poly("x1*x2 + 2", None).unwrap(), &p).unwrap(), 0);
        assert_eq!(sign_at(&parse_poly("x1 - x2", None).unwrap(), &p).unwrap(), 1);
        let c3 = RealAlgebraic::new(&UPoly::from_ints(&[-3, 0, 1]), r(1, 1), r(2, 1)).unwrap();
        let q = Point::new(vec![s, c3]);
        // sqrt2 * sqrt3 - sqrt6 is zero but needs the norm
        let f = parse_poly("x1^2*x2^2 - 6", None).unwrap();
        assert_eq!(sign_at(&f, &q).unwrap(), 0);
    }

    #[test]
    fn sign_stable_under_refinement() {
        let f = parse_poly("x1^3 - x2 + 1/7", None).unwrap();
        let p = Point::new(vec![sqrt2(), sqrt2().neg()]);
        let s0 = sign_at(&f, &p).unwrap();
        let s1 = sign_at(&f, &p.refine(&r(1, 1 << 20))).unwrap();
        assert_eq!(s0, s1);
    }

    #[test]
    fn fiber_roots() {
        let f = parse_poly("x1^2 + x2^2 - 1", None).unwrap();
        match roots_over(&f, 1, &Point::from_ints(&[0])).unwrap() {
            FiberRoots::Roots(v) => assert_eq!(v.len(), 2),
            _ => panic!(),
        }
        let g = parse_poly("x1*x2", None).unwrap();
        assert_eq!(roots_over(&g, 1, &Point::from_ints(&[0])).unwrap(), FiberRoots::Nullified);
        // x2^2 = x1 over x1 = sqrt2 gives two roots of x^4 - 2
        let h = parse_poly("x2^2 - x1", None).unwrap();
        match roots_over(&h, 1, &Point::new(vec![sqrt2()])).unwrap() {
            FiberRoots::Roots(v) => {
                assert_eq!(v.len(), 2);
                assert!((v[1].to_f64() - 2f64.powf(0.25)).abs() < 1e-12);
            }
            _ => panic!(),
        }
        // the leading coefficient x1 - sqrt2 vanishes, so only x2 + 1 remains
        let k = parse_poly("(x1^2 - 2)*x2^2 + x2 + 1", None).unwrap();
        match roots_over(&k, 1, &Point::new(vec![sqrt2()])).unwrap() {
            FiberRoots::Roots(v) => {
                assert_eq!(v.len(), 1);
                assert_eq!(v[0].as_rational(), Some(&r(-1, 1)));
            }
            _ => panic!(),
        }
    }
}
