use std::sync::Arc;

use ore_cli::parse::{parse_derivation, parse_mpoly, parse_poly, parse_scalar, parse_skew};
use ore_core::{DerivationSpec, MPoly, Poly, Scalar, SkewPoly};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn cyclotomic() -> impl Strategy<Value = Scalar> {
    (1u32..=12, prop::collection::vec(-5i64..=5, 1..=5)).prop_map(|(n, cs)| {
        let z = Scalar::zeta(n).unwrap();
        cs.iter()
            .enumerate()
            .fold(Scalar::zero(), |acc, (k, &c)| &acc + &(&Scalar::from_int(c) * &z.pow(k as u64)))
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![rational(), cyclotomic()]
}

fn poly_over(s: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Poly> {
    prop::collection::vec(s, 0..=6).prop_map(Poly::from_coeffs)
}

fn poly() -> impl Strategy<Value = Poly> {
    prop_oneof![poly_over(rational()), (1u32..=9).prop_flat_map(|n| {
        poly_over((-3i64..=3, 0u64..8).prop_map(move |(c, k)| &Scalar::from_int(c) * &Scalar::zeta(n).unwrap().pow(k)))
    })]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalars(s in scalar()) {
        prop_assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn polys(p in poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn skews(dx in poly_over(rational()), cs in prop::collection::vec(poly_over(rational()), 0..=4)) {
        let spec = Arc::new(DerivationSpec::differential(dx));
        let f = SkewPoly::new(Arc::clone(&spec), cs);
        prop_assert_eq!(parse_skew(&f.to_string(), &spec).unwrap(), f);
    }

    #[test]
    fn mpolys(terms in prop::collection::vec((rational(), 0u32..4, 0u32..4, 0u32..3), 0..6)) {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = terms.into_iter().fold(MPoly::zero(3), |acc, (c, a, b, e)| {
            &acc + &MPoly::monomial(3, c, vec![a, b, e])
        });
        prop_assert_eq!(parse_mpoly(&p.display_with(&["x", "y", "z"]), &names).unwrap(), p);
    }

    #[test]
    fn derivations(q in rational().prop_filter("nonzero", |s| !s.is_zero()), b in rational(), dx in poly_over(rational())) {
        let d = DerivationSpec::new(q, b, dx).unwrap();
        prop_assert_eq!(parse_derivation(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn garbage_never_panics(s in "[-+*/^() x0-9.tz_eta,]{0,24}") {
        let _ = parse_poly(&s);
        let spec = Arc::new(DerivationSpec::weyl());
        let _ = parse_skew(&s, &spec);
    }
}
