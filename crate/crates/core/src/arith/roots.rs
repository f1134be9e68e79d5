//! Real root isolation by Descartes' rule of signs with bisection.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{MultiPoly, Rational, RealAlgebraic, UPoly};
use crate::error::{Error, Result};

/// Isolate the distinct real roots of a univariate polynomial (the single
/// variable may be any of the ring's variables). Roots come back sorted with
/// pairwise disjoint isolating intervals.
pub fn isolate_real_roots(f: &MultiPoly) -> Result<Vec<RealAlgebraic>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = f.main_var().unwrap_or(0);
    let u = UPoly::from_multi(f, var).ok_or_else(|| {
        Error::Schema(format!("isolate_real_roots needs a univariate polynomial, got {f}"))
    })?;
    Ok(isolate_upoly(&u))
}

pub fn isolate_upoly(p: &UPoly) -> Vec<RealAlgebraic> {
    assert!(!p.is_zero(), "cannot isolate roots of the zero polynomial");
    let sq = p.squarefree();
    if sq.degree() == 0 {
        return Vec::new();
    }
    // power-of-two bound keeps every bisection point dyadic
    let b = sq.cauchy_bound();
    let mut bound = Rational::one();
    while bound <= b {
        bound *= Rational::from_integer(BigInt::from(2));
    }
    let two = Rational::from_integer(BigInt::from(2));
    let mut out: Vec<RealAlgebraic> = Vec::new();
    let mut work = vec![(-bound.clone(), bound)];
    while let Some((a, c)) = work.pop() {
        let v = sq.interval_transform(&a, &c).sign_variations();
        match v {
            0 => {}
            1 => out.push(settle(&sq, a, c)),
            _ => {
                let m = (&a + &c) / &two;
                if sq.eval(&m).is_zero() {
                    out.push(RealAlgebraic::from_rational(m.clone()));
                }
                work.push((a, m.clone()));
                work.push((m, c));
            }
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    // neighbouring intervals may share an endpoint; shrink until disjoint
    for i in 1..out.len() {
        while out[i - 1].hi() >= out[i].lo() {
            out[i - 1].bisect();
            out[i].bisect();
        }
    }
    out
}

/// Build the root in the open interval `(a, c)` known to hold exactly one
/// root, shrinking away from endpoints that are themselves roots.
fn settle(sq: &UPoly, mut a: Rational, mut c: Rational) -> RealAlgebraic {
    let two = Rational::from_integer(BigInt::from(2));
    while sq.eval(&a).is_zero() || sq.eval(&c).is_zero() {
        let m = (&a + &c) / &two;
        if sq.eval(&m).is_zero() {
            return RealAlgebraic::from_rational(m);
        }
        if sq.interval_transform(&a, &m).sign_variations() == 1 {
            c = m;
        } else {
            a = m;
        }
    }
    let mut r = RealAlgebraic::new_unchecked(sq.clone(), a, c);
    r.try_rationalize();
    r
}

/// Simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_rational_in(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_in(&-hi.clone(), &-lo.clone());
    }
    // continued-fraction walk on positive intervals
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    let frac_lo = lo - &fl;
    let frac_hi = hi - &fl;
    // 1/frac_hi <= 1/x <= 1/frac_lo
    let inner = simplest_rational_in(&frac_hi.recip(), &frac_lo.recip());
    fl + inner.recip()
}

/// Exact integer ceiling of log2 for positive rationals, used by budgets.
pub fn log2_ceil(r: &Rational) -> i64 {
    let n = r.numer().abs();
    let d = r.denom().clone();
    n.bits() as i64 - d.bits() as i64 + 1
}

#[allow(dead_code)]
fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn sqrt_two_pair() {
        let roots = isolate_real_roots(&parse_poly("x1^2 - 2", None).unwrap()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi() < roots[1].lo());
        // sign-change oracle: x^2 - 2 changes sign across each interval
        let f = |x: &Rational| x * x - r(2, 1);
        for root in &roots {
            assert!(f(root.lo()) * f(root.hi()) < r(0, 1));
        }
        let a = roots[0].refine(&r(1, 2));
        let b = roots[1].refine(&r(1, 2));
        assert!(a.lo() >= &r(-2, 1) && a.hi() <= &r(-1, 1));
        assert!(b.lo() >= &r(1, 1) && b.hi() <= &r(2, 1));
    }

    #[test]
    fn double_root_and_no_roots() {
        let roots = isolate_real_roots(&parse_poly("x1^2", None).unwrap()).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].lo(), &r(0, 1));
        assert_eq!(roots[0].hi(), &r(0, 1));
        assert!(isolate_real_roots(&parse_poly("x1^2 + 1", None).unwrap())
            .unwrap()
            .is_empty());
        assert!(isolate_real_roots(&MultiPoly::zero(1)).is_err());
    }

    #[test]
    fn rational_roots_are_exact() {
        let roots = isolate_real_roots(&parse_poly("(3*x1 - 1)*(x1 + 5)*(x1^2-3)", None).unwrap()).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0].as_rational(), Some(&r(-5, 1)));
        assert_eq!(roots[2].as_rational(), Some(&r(1, 3)));
        assert!(roots[1].as_rational().is_none());
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(simplest_rational_in(&r(1, 3), &r(1, 2)), r(1, 2));
        assert_eq!(simplest_rational_in(&r(-1, 3), &r(1, 2)), r(0, 1));
        assert_eq!(simplest_rational_in(&r(31, 100), &r(34, 100)), r(1, 3));
        assert_eq!(simplest_rational_in(&r(-34, 100), &r(-31, 100)), r(-1, 3));
    }
}
