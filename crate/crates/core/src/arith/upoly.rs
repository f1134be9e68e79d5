use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Rational};

/// Dense univariate polynomial over ℚ, coefficients from low to high degree.
/// Trailing zeros are trimmed; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign_of(&self.eval(x))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
                        + o.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> UPoly {
        let mut acc = UPoly::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.lc();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = r;
        }
        x.primitive()
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        let mut s = Rational::new(l, g);
        if self.lc().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn squarefree(&self) -> UPoly {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.divrem(&g).0.primitive()
    }

    /// `p(a + b·x)`
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UPoly {
        let lin = UPoly::new(vec![a.clone(), b.clone()]);
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }

    /// Coefficients of `(1+y)^d · p((a + b·y)/(1 + y))`, whose positive roots
    /// correspond to the roots of `p` in the open interval `(a, b)`.
    pub fn interval_transform(&self, a: &Rational, b: &Rational) -> UPoly {
        let d = self.degree();
        let num = UPoly::new(vec![a.clone(), b.clone()]);
        let den = UPoly::new(vec![Rational::one(), Rational::one()]);
        let mut acc = UPoly::zero();
        let mut num_pow = UPoly::constant(Rational::one());
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let t = num_pow.mul(&den.pow(d - i)).scale(c);
                acc = acc.add(&t);
            }
            num_pow = num_pow.mul(&num);
        }
        acc
    }

    /// Number of sign variations in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for c in &self.coeffs {
            let s = sign_of(c);
            if s != 0 {
                if last != 0 && s != last {
                    v += 1;
                }
                last = s;
            }
        }
        v
    }

    /// Cauchy bound: all real roots lie in `(-B, B)`.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let m = self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Rational::one() + m / lc
    }

    /// Lower bound on the absolute value of any nonzero root.
    pub fn nonzero_root_lower_bound(&self) -> Rational {
        // roots of p that are nonzero are reciprocals of roots of the reversal
        let k = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let rev: Vec<Rational> = self.coeffs[k..].iter().rev().cloned().collect();
        let r = UPoly::new(rev);
        if r.degree() == 0 {
            // no nonzero roots at all
            return Rational::one();
        }
        r.cauchy_bound().recip()
    }

    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly {
        MultiPoly::from_univariate(nvars, var, &self.coeffs)
    }

    pub fn from_multi(p: &MultiPoly, var: usize) -> Option<UPoly> {
        p.univariate_coeffs(var).map(UPoly::new)
    }
}

pub fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi(1, 0))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn division_and_gcd() {
        let a = UPoly::from_ints(&[-1, 0, 1]); // x^2 - 1
        let b = UPoly::from_ints(&[1, 1]);
        let (q, rem) = a.divrem(&b);
        assert_eq!(q, UPoly::from_ints(&[-1, 1]));
        assert!(rem.is_zero());
        let c = UPoly::from_ints(&[-4, 0, 0, 0, 1]); // x^4 - 4
        let d = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(UPoly::gcd(&c, &d), d);
    }

    #[test]
    fn squarefree_of_square() {
        let p = UPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.squarefree(), UPoly::from_ints(&[0, 1]));
        let q = UPoly::from_ints(&[1, 2, 1]).scale(&r(3, 2));
        assert_eq!(q.squarefree(), UPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn interval_transform_counts_roots() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(p.interval_transform(&r(1, 1), &r(2, 1)).sign_variations(), 1);
        assert_eq!(p.interval_transform(&r(-2, 1), &r(2, 1)).sign_variations(), 2);
        assert_eq!(p.interval_transform(&r(2, 1), &r(3, 1)).sign_variations(), 0);
    }

    #[test]
    fn bounds() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        assert!(p.cauchy_bound() > r(3, 2));
        let lb = p.nonzero_root_lower_bound();
        assert!(lb <= r(14142, 10000) && lb > r(0, 1));
    }
}
