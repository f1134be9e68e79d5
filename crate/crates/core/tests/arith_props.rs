//! Randomised algebraic laws of the exact kernel.

mod common;

use std::cmp::Ordering;

use cadaudit::arith::{
    isolate_real_roots, isolate_upoly, rat, resultant, sign_at, Monomial, MultiPoly, Point, Rational, RealAlgebraic,
    UPoly,
};
use common::sturm_root_count;
use proptest::prelude::*;

fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 0..5).prop_map(move |terms| {
        MultiPoly::from_terms(nvars, terms.into_iter().map(|(m, c)| (m as Monomial, rat(c, 1))))
    })
}

fn nonzero_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    poly(nvars, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// A real algebraic number: a root of `x^2 - k` or a rational.
fn algebraic() -> impl Strategy<Value = RealAlgebraic> {
    prop_oneof![
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| RealAlgebraic::from_rational(rat(n, d))),
        (1i64..=12, any::<bool>()).prop_map(|(k, neg)| {
            let roots = isolate_upoly(&UPoly::from_ints(&[-k, 0, 1]));
            if neg {
                roots[0].clone()
            } else {
                roots[1].clone()
            }
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(2, 3), g in poly(2, 3), h in poly(2, 3)) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn resultant_antisymmetry(f in nonzero_poly(2, 3), g in nonzero_poly(2, 3)) {
        let m = f.degree_in(1);
        let k = g.degree_in(1);
        let fg = resultant(&f, &g, 1).unwrap();
        let gf = resultant(&g, &f, 1).unwrap();
        if (m * k) % 2 == 0 {
            prop_assert_eq!(fg, gf);
        } else {
            prop_assert_eq!(fg, -&gf);
        }
    }

    #[test]
    fn compare_is_a_total_order(a in algebraic(), b in algebraic(), c in algebraic()) {
        prop_assert_eq!(a.compare(&b), b.compare(&a).reverse());
        prop_assert_eq!(a.compare(&a), Ordering::Equal);
        if a.compare(&b) != Ordering::Greater && b.compare(&c) != Ordering::Greater {
            prop_assert_ne!(a.compare(&c), Ordering::Greater);
        }
        // agrees with floating point away from ties
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 {
            prop_assert_eq!(a.compare(&b), x.partial_cmp(&y).unwrap());
        }
    }

    #[test]
    fn sign_is_invariant_under_refine(f in poly(2, 2), a in algebraic(), b in algebraic(), k in 1u32..40) {
        let p = Point::new(vec![a, b]);
        let w = Rational::new(1.into(), num_bigint::BigInt::from(2u8).pow(k));
        prop_assert_eq!(sign_at(&f, &p).unwrap(), sign_at(&f, &p.refine(&w)).unwrap());
    }

    #[test]
    fn root_isolation_matches_sturm(c in prop::collection::vec(-6i64..=6, 2..8)) {
        prop_assume!(c.last() != Some(&0));
        let p = UPoly::from_ints(&c);
        let roots = isolate_upoly(&p);
        prop_assert_eq!(roots.len(), sturm_root_count(p.coeffs()));
        for w in roots.windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo() || w[0].compare(&w[1]) == Ordering::Less);
        }
        let multi = MultiPoly::from_univariate(1, 0, p.coeffs());
        prop_assert_eq!(isolate_real_roots(&multi).unwrap().len(), roots.len());
    }
}
