//! Exact arithmetic kernel.

mod algebraic;
mod parse;
mod poly;
pub mod resultant;
pub mod roots;
mod sign;
mod upoly;

pub use algebraic::{rational_between, RealAlgebraic};
pub use parse::{parse_poly, parse_rational, rational_to_string};
pub use poly::{grlex_cmp, Monomial, MultiPoly, RingOp};
pub use resultant::{discriminant, psc, resultant};
pub use roots::{isolate_real_roots, isolate_upoly, simplest_rational_in};
pub use sign::{eval_box, roots_over, sign_at, FiberRoots, Interval, Point};
pub use upoly::{sign_of, UPoly};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerators or denominators: fall back to a scaled quotient
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Smallest superset of `fs` closed under `∂/∂var`, zero derivatives
/// dropped, duplicates removed (first occurrence kept).
pub fn derivative_closure(fs: &[MultiPoly], var: usize) -> Result<Vec<MultiPoly>> {
    let mut out: Vec<MultiPoly> = Vec::new();
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut cur = f.clone();
        loop {
            if !out.contains(&cur) {
                out.push(cur.clone());
            }
            let d = cur.derivative(var)?;
            if d.is_zero() {
                break;
            }
            cur = d;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, Some(3)).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            derivative_closure(&[p("x2^2 + x1^2 - 1")], 1).unwrap(),
            vec![p("x2^2 + x1^2 - 1"), p("2*x2"), p("2")]
        );
        assert_eq!(derivative_closure(&[p("x1")], 1).unwrap(), vec![p("x1")]);
        assert_eq!(
            derivative_closure(&[p("x1^2*x3 - x2^2")], 2).unwrap(),
            vec![p("x1^2*x3 - x2^2"), p("x1^2")]
        );
        assert!(derivative_closure(&[MultiPoly::zero(3)], 0).is_err());
    }
}
