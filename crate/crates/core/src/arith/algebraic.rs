use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::roots::simplest_rational_in;
use super::upoly::sign_of;
use super::{Rational, UPoly};

/// A real algebraic number: a square-free primitive defining polynomial and an
/// isolating interval `[lo, hi]` holding exactly one of its roots. Refinement
/// returns a new value, so shared numbers are never mutated behind a reader.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RealAlgebraic {
    defining: UPoly,
    lo: Rational,
    hi: Rational,
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

impl RealAlgebraic {
    pub fn from_rational(r: Rational) -> Self {
        RealAlgebraic {
            defining: UPoly::linear_root(&r).primitive(),
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    /// Caller guarantees the isolation invariant.
    pub fn new_unchecked(defining: UPoly, lo: Rational, hi: Rational) -> Self {
        if lo == hi {
            return Self::from_rational(lo);
        }
        RealAlgebraic { defining, lo, hi }
    }

    /// Checked constructor: `defining` is made square-free and the interval
    /// must hold exactly one root.
    pub fn new(defining: &UPoly, lo: Rational, hi: Rational) -> Option<Self> {
        if defining.is_zero() || lo > hi {
            return None;
        }
        let sq = defining.squarefree();
        if lo == hi {
            return sq.eval(&lo).is_zero().then(|| Self::from_rational(lo));
        }
        let roots: usize = {
            let inner = sq.interval_transform(&lo, &hi).sign_variations();
            let ends = [&lo, &hi].iter().filter(|x| sq.eval(x).is_zero()).count();
            inner + ends
        };
        if roots != 1 {
            return None;
        }
        if sq.eval(&lo).is_zero() {
            return Some(Self::from_rational(lo));
        }
        if sq.eval(&hi).is_zero() {
            return Some(Self::from_rational(hi));
        }
        let inner = sq.interval_transform(&lo, &hi).sign_variations();
        // Descartes may overcount, but 1 means exactly one
        (inner == 1).then(|| RealAlgebraic { defining: sq, lo, hi })
    }

    pub fn defining(&self) -> &UPoly {
        &self.defining
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) * half()
    }

    /// One bisection step.
    pub fn bisect(&mut self) {
        if self.is_rational() {
            return;
        }
        let m = self.midpoint();
        let sm = self.defining.sign_at(&m);
        if sm == 0 {
            *self = Self::from_rational(m);
            return;
        }
        if self.defining.sign_at(&self.lo) != sm {
            self.hi = m;
        } else {
            self.lo = m;
        }
    }

    /// Split at an interior rational `r` that is known not to be the root.
    fn split_at(&mut self, r: &Rational) {
        let sr = self.defining.sign_at(r);
        debug_assert!(sr != 0);
        if self.defining.sign_at(&self.lo) != sr {
            self.hi = r.clone();
        } else {
            self.lo = r.clone();
        }
    }

    pub fn refine_in_place(&mut self, width: &Rational) {
        while !self.is_rational() && &self.width() > width {
            self.bisect();
        }
    }

    /// Same number, interval width at most `width`.
    pub fn refine(&self, width: &Rational) -> RealAlgebraic {
        let mut r = self.clone();
        r.refine_in_place(width);
        r
    }

    /// Replace a narrow interval by its simplest rational when that rational
    /// is the root.
    pub fn try_rationalize(&mut self) {
        if self.is_rational() {
            return;
        }
        let mut t = self.clone();
        t.refine_in_place(&Rational::new(BigInt::one(), BigInt::from(1u64 << 24)));
        if t.is_rational() {
            *self = t;
            return;
        }
        let q = simplest_rational_in(&t.lo, &t.hi);
        if t.defining.eval(&q).is_zero() {
            *self = Self::from_rational(q);
        }
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(r) = self.as_rational() {
            return super::to_f64(r);
        }
        let mut t = self.clone();
        let mut w = super::to_f64(&t.width());
        let target = 1e-17 * (super::to_f64(&t.lo).abs().max(super::to_f64(&t.hi).abs())).max(1e-300);
        let mut steps = 0;
        while !t.is_rational() && w > target && steps < 200 {
            t.bisect();
            w = super::to_f64(&t.width());
            steps += 1;
        }
        super::to_f64(&t.midpoint())
    }

    pub fn neg(&self) -> RealAlgebraic {
        if let Some(r) = self.as_rational() {
            return Self::from_rational(-r.clone());
        }
        let c: Vec<Rational> = self
            .defining
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
            .collect();
        RealAlgebraic {
            defining: UPoly::new(c).primitive(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// Exact sign of the univariate polynomial `q` at this number.
    pub fn sign_of_poly(&self, q: &UPoly) -> i8 {
        if let Some(r) = self.as_rational() {
            return q.sign_at(r);
        }
        if q.is_zero() {
            return 0;
        }
        let g = UPoly::gcd(q, &self.defining);
        if g.degree() >= 1 && g.sign_at(&self.lo) != g.sign_at(&self.hi) {
            return 0;
        }
        let mut t = self.clone();
        loop {
            let (a, b) = (q.sign_at(&t.lo), q.sign_at(&t.hi));
            if a != 0 && a == b && q.interval_transform(&t.lo, &t.hi).sign_variations() == 0 {
                return a;
            }
            t.bisect();
            if let Some(r) = t.as_rational() {
                return q.sign_at(r);
            }
        }
    }

    /// Exact comparison of two real algebraic numbers.
    pub fn compare(&self, other: &RealAlgebraic) -> Ordering {
        if self.hi < other.lo {
            return Ordering::Less;
        }
        if other.hi < self.lo {
            return Ordering::Greater;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => return a.cmp(b),
            (Some(a), None) => return cmp_rational(a, other),
            (None, Some(b)) => return cmp_rational(b, self).reverse(),
            _ => {}
        }
        // both irrational with overlapping intervals; endpoints are not roots
        let g = UPoly::gcd(&self.defining, &other.defining);
        if g.degree() >= 1 {
            let lo = (&self.lo).max(&other.lo);
            let hi = (&self.hi).min(&other.hi);
            if sign_of(&g.eval(lo)) != sign_of(&g.eval(hi)) {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            a.bisect();
            b.bisect();
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            match (a.as_rational(), b.as_rational()) {
                (Some(x), Some(y)) => return x.cmp(y),
                (Some(x), None) => return cmp_rational(x, &b),
                (None, Some(y)) => return cmp_rational(y, &a).reverse(),
                _ => {}
            }
        }
    }

    /// Compare with a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        cmp_rational(r, self).reverse()
    }
}

/// Order of rational `r` relative to `x`.
fn cmp_rational(r: &Rational, x: &RealAlgebraic) -> Ordering {
    if let Some(v) = x.as_rational() {
        return r.cmp(v);
    }
    if r < &x.lo {
        return Ordering::Less;
    }
    if r > &x.hi {
        return Ordering::Greater;
    }
    if x.defining.eval(r).is_zero() {
        return Ordering::Equal;
    }
    let mut t = x.clone();
    if r == &t.lo {
        return Ordering::Less;
    }
    if r == &t.hi {
        return Ordering::Greater;
    }
    t.split_at(r);
    if r <= &t.lo {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", super::rational_to_string(r)),
            None => write!(
                f,
                "root({} in [{}, {}])",
                self.defining,
                super::rational_to_string(&self.lo),
                super::rational_to_string(&self.hi)
            ),
        }
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Strictly between two ordered numbers, the simplest rational available.
pub fn rational_between(a: &RealAlgebraic, b: &RealAlgebraic) -> Rational {
    debug_assert!(a.compare(b) == Ordering::Less);
    let (mut x, mut y) = (a.clone(), b.clone());
    while x.hi >= y.lo {
        x.bisect();
        y.bisect();
    }
    let lo = x.hi.clone();
    let hi = y.lo.clone();
    // avoid the endpoints themselves when they are the numbers
    let q = simplest_rational_in(&lo, &hi);
    if x.cmp_rational(&q) == Ordering::Less && y.cmp_rational(&q) == Ordering::Greater {
        q
    } else {
        (lo + hi) * half()
    }
}

impl Default for RealAlgebraic {
    fn default() -> Self {
        Self::from_rational(Rational::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    fn sqrt2() -> RealAlgebraic {
        RealAlgebraic::new(&UPoly::from_ints(&[-2, 0, 1]), r(1, 1), r(2, 1)).unwrap()
    }

    #[test]
    fn refine_keeps_root() {
        let a = sqrt2().refine(&r(1, 8));
        assert!(a.width() <= r(1, 8));
        assert!(a.lo() * a.lo() <= r(2, 1) && a.hi() * a.hi() >= r(2, 1));
        let c = RealAlgebraic::new(&UPoly::from_ints(&[-2, 0, 0, 1]), r(1, 1), r(2, 1))
            .unwrap()
            .refine(&r(1, 64));
        assert!(c.width() <= r(1, 64));
        assert!(c.lo().pow(3) <= r(2, 1) && c.hi().pow(3) >= r(2, 1));
        let q = RealAlgebraic::from_rational(r(3, 7));
        assert_eq!(q.refine(&r(1, 1000)), q);
    }

    #[test]
    fn comparisons() {
        let s = sqrt2();
        assert_eq!(s.compare(&RealAlgebraic::from_rational(r(3, 2))), Ordering::Less);
        let t = RealAlgebraic::new(&UPoly::from_ints(&[-4, 0, 0, 0, 1]), r(1, 1), r(2, 1)).unwrap();
        assert_eq!(s.compare(&t), Ordering::Equal);
        assert_eq!(s.neg().compare(&s), Ordering::Less);
        assert_eq!(s.compare(&s.neg()), Ordering::Greater);
    }

    #[test]
    fn poly_sign() {
        let s = sqrt2();
        assert_eq!(s.sign_of_poly(&UPoly::from_ints(&[-2, 0, 1])), 0);
        assert_eq!(s.sign_of_poly(&UPoly::from_ints(&[-3, 2])), -1); // 2x - 3 at 1.414
        assert_eq!(s.sign_of_poly(&UPoly::from_ints(&[-141421, 100000])), 1);
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(RealAlgebraic::new(&UPoly::from_ints(&[-2, 0, 1]), r(-2, 1), r(2, 1)).is_none());
        assert!(RealAlgebraic::new(&UPoly::from_ints(&[-2, 0, 1]), r(2, 1), r(3, 1)).is_none());
    }

    #[test]
    fn between() {
        let s = sqrt2();
        let q = rational_between(&s.neg(), &s);
        assert_eq!(q, r(0, 1));
        let q = rational_between(&s, &RealAlgebraic::from_rational(r(3, 2)));
        assert!(s.cmp_rational(&q) == Ordering::Less && q < r(3, 2));
    }
}
