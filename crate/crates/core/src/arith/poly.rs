use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per variable (x1 first).
pub type Monomial = Vec<u32>;

/// Exact multivariate polynomial over the rationals in the ordered
/// variables `x1 ≺ x2 ≺ … ≺ xn`.
///
/// Terms are kept in a sorted map; zero coefficients are never stored, so the
/// zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

/// Graded-lexicographic comparison (total degree first, then x1 ≻ x2 ≻ …).
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    /// The variable `x_{var+1}` (zero-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(var < nvars, "variable {var} out of range");
        let mut e = vec![0; nvars];
        e[var] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Monomial, c: Rational) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&d| d == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Highest variable that actually occurs.
    pub fn main_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.degree_in(var) > 0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring operation with a variable-count check.
    pub fn ring_op(a: &MultiPoly, b: &MultiPoly, op: RingOp) -> Result<MultiPoly> {
        if a.nvars != b.nvars {
            return Err(Error::VarCountMismatch(a.nvars, b.nvars));
        }
        Ok(match op {
            RingOp::Add => a + b,
            RingOp::Sub => a - b,
            RingOp::Mul => a * b,
        })
    }

    /// Coefficients in `var`: entry `i` is the coefficient of `var^i`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                p.add_term(e2, v.clone());
            }
        }
        p
    }

    pub fn leading_coeff_in(&self, var: usize) -> MultiPoly {
        let d = self.degree_in(var);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == d {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Drop the leading term in `var` (the reductum).
    pub fn reductum_in(&self, var: usize) -> MultiPoly {
        let d = self.degree_in(var);
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] != d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self, var: usize) -> Result<MultiPoly> {
        if var >= self.nvars {
            return Err(Error::VarOutOfRange {
                var,
                nvars: self.nvars,
            });
        }
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                p.add_term(e2, c * Rational::from_integer(BigInt::from(e[var])));
            }
        }
        Ok(p)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert!(point.len() >= self.nvars);
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &d) in e.iter().enumerate() {
                if d > 0 {
                    t *= num_traits::pow(point[v].clone(), d as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute a rational value for one variable (the variable stays in the
    /// ring but no longer occurs).
    pub fn substitute(&self, var: usize, value: &Rational) -> MultiPoly {
        let mut p = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[var];
            e2[var] = 0;
            let v = if d == 0 {
                c.clone()
            } else {
                c * num_traits::pow(value.clone(), d as usize)
            };
            p.add_term(e2, v);
        }
        p
    }

    /// Re-embed into a ring with `nvars` variables (must not drop used ones).
    pub fn with_nvars(&self, nvars: usize) -> MultiPoly {
        if nvars == self.nvars {
            return self.clone();
        }
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    assert!(i < nvars, "cannot drop variable x{}", i + 1);
                    e2[i] = d;
                }
            }
            p.terms.insert(e2, c.clone());
        }
        p
    }

    /// Rename variables: variable `i` becomes `map[i]` in a ring of `nvars`.
    pub fn remap_vars(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    e2[map[i]] += d;
                }
            }
            p.add_term(e2, c.clone());
        }
        p
    }

    /// Dense univariate coefficients (low to high) if only `var` occurs.
    pub fn univariate_coeffs(&self, var: usize) -> Option<Vec<Rational>> {
        if (0..self.nvars).any(|v| v != var && self.uses_var(v)) {
            return None;
        }
        let d = self.degree_in(var) as usize;
        let mut out = vec![Rational::zero(); d + 1];
        for (e, c) in &self.terms {
            out[e[var] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Rational]) -> MultiPoly {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            p.add_term(e, c.clone());
        }
        p
    }

    /// Leading term under graded-lex order.
    pub fn leading_term_grlex(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let v = d.main_var().expect("non-constant divisor");
        let dv = d.degree_in(v);
        let dlc = d.leading_coeff_in(v);
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while !r.is_zero() {
            let rv = r.degree_in(v);
            if rv < dv {
                return None;
            }
            let t = r.leading_coeff_in(v).exact_div(&dlc)?;
            let mut shift = vec![0; self.nvars];
            shift[v] = rv - dv;
            let term = &t * &MultiPoly::monomial(shift, Rational::one());
            r = &r - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }

    /// A pseudo-remainder of `self` by `g` in `var` (nonzero constant multiples
    /// are irrelevant to callers).
    pub fn prem(&self, g: &MultiPoly, var: usize) -> MultiPoly {
        let dg = g.degree_in(var);
        let lg = g.leading_coeff_in(var);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= dg {
            let dr = r.degree_in(var);
            let lr = r.leading_coeff_in(var);
            let mut shift = vec![0; self.nvars];
            shift[var] = dr - dg;
            let x = MultiPoly::monomial(shift, Rational::one());
            r = &(&lg * &r) - &(&(&lr * &x) * g);
        }
        r
    }

    /// Gcd of the coefficients in `var`.
    pub fn content_in(&self, var: usize) -> MultiPoly {
        let mut g = MultiPoly::zero(self.nvars);
        for c in self.coeffs_in(var) {
            if c.is_zero() {
                continue;
            }
            g = MultiPoly::gcd(&g, &c);
            if g.is_constant() {
                return MultiPoly::one(self.nvars);
            }
        }
        g
    }

    pub fn primitive_part_in(&self, var: usize) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(var);
        self.exact_div(&c).expect("content divides")
    }

    /// Greatest common divisor, normalized (integer primitive, positive
    /// graded-lex leading coefficient). gcd(0, 0) = 0.
    pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        assert_eq!(a.nvars, b.nvars);
        let n = a.nvars;
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        if a.is_constant() || b.is_constant() {
            return MultiPoly::one(n);
        }
        let v = a.main_var().max(b.main_var()).unwrap();
        if a.degree_in(v) == 0 {
            return b
                .coeffs_in(v)
                .iter()
                .fold(a.clone(), |g, c| if c.is_zero() { g } else { MultiPoly::gcd(&g, c) })
                .normalized();
        }
        if b.degree_in(v) == 0 {
            return MultiPoly::gcd(b, a);
        }
        let ca = a.content_in(v);
        let cb = b.content_in(v);
        let c = MultiPoly::gcd(&ca, &cb);
        let pa = a.exact_div(&ca).unwrap();
        let pb = b.exact_div(&cb).unwrap();
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
            (pa, pb)
        } else {
            (pb, pa)
        };
        loop {
            let r = f.prem(&g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == 0 {
                g = MultiPoly::one(n);
                break;
            }
            f = g;
            g = r.primitive_part_in(v);
        }
        let g = if g.is_constant() { g } else { g.primitive_part_in(v) };
        (&c * &g).normalized()
    }

    /// Square-free part `f / gcd(f, ∂f/∂x1, …, ∂f/∂xn)`, normalized.
    pub fn squarefree_part(&self) -> MultiPoly {
        if self.is_zero() || self.is_constant() {
            return self.normalized();
        }
        let mut g = self.clone();
        for v in 0..self.nvars {
            if self.uses_var(v) {
                let d = self.derivative(v).unwrap();
                g = MultiPoly::gcd(&g, &d);
                if g.is_constant() {
                    break;
                }
            }
        }
        self.exact_div(&g).expect("gcd divides").normalized()
    }

    /// Integer-coefficient primitive associate with positive graded-lex
    /// leading coefficient. Nonzero constants normalize to 1.
    pub fn normalized(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let v = c.numer() * (&l / c.denom());
            g = g.gcd(&v);
        }
        let mut s = Rational::new(l, g);
        if self.leading_term_grlex().unwrap().1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn is_normalized(&self) -> bool {
        self == &self.normalized()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut p = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (i, (e, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&d| d == 0);
            let mut parts = Vec::new();
            if is_const || !abs.is_one() {
                parts.push(super::rational_to_string(&abs));
            }
            for (v, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 => parts.push(format!("x{}", v + 1)),
                    _ => parts.push(format!("x{}^{}", v + 1, d)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn p(s: &str, n: usize) -> MultiPoly {
        parse_poly(s, Some(n)).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let a = p("x1 + 1", 1);
        let b = p("x1 - 1", 1);
        let c = MultiPoly::ring_op(&a, &b, RingOp::Mul).unwrap();
        assert_eq!(c, p("x1^2 - 1", 1));
    }

    #[test]
    fn additive_identity_and_monomial_product() {
        let f = p("x1^2*x2 - 3*x2 + 7/2", 2);
        let z = MultiPoly::zero(2);
        assert_eq!(MultiPoly::ring_op(&f, &z, RingOp::Add).unwrap(), f);
        let m = p("x1*x2", 2);
        assert_eq!(
            MultiPoly::ring_op(&m, &m, RingOp::Mul).unwrap(),
            p("x1^2*x2^2", 2)
        );
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = p("x1", 1);
        let b = p("x2", 2);
        assert!(matches!(
            MultiPoly::ring_op(&a, &b, RingOp::Add),
            Err(Error::VarCountMismatch(1, 2))
        ));
    }

    #[test]
    fn derivatives() {
        assert_eq!(
            p("x2^2 + x1^2 - 1", 2).derivative(1).unwrap(),
            p("2*x2", 2)
        );
        assert!(p("5", 1).derivative(0).unwrap().is_zero());
        assert_eq!(
            p("x1^2*x3 - x2^2", 3).derivative(2).unwrap(),
            p("x1^2", 3)
        );
        assert!(p("x1", 1).derivative(1).is_err());
    }

    #[test]
    fn exact_division_and_gcd() {
        let f = p("(x1 + x2)^2*(x1 - x3)", 3);
        let g = p("(x1 + x2)*(x2 + 1)", 3);
        assert_eq!(f.exact_div(&p("x1 + x2", 3)).unwrap(), p("(x1+x2)*(x1-x3)", 3));
        assert!(f.exact_div(&p("x2 + 1", 3)).is_none());
        assert_eq!(MultiPoly::gcd(&f, &g), p("x1 + x2", 3));
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(p("x1^2", 3).squarefree_part(), p("x1", 3));
        assert_eq!(p("-2*x2^2", 3).squarefree_part(), p("x2", 3));
        assert_eq!(
            p("(x1 - x2)^3*(x3 + 1)", 3).squarefree_part(),
            p("(x1 - x2)*(x3 + 1)", 3).normalized()
        );
    }

    #[test]
    fn normalization_is_primitive_positive() {
        let f = p("-4/3*x1^2 + 2/3", 1).normalized();
        assert_eq!(f, p("2*x1^2 - 1", 1));
    }
}
