use std::sync::Arc;

use ore_core::{
    essentialize, membership_i, module_action, reduce_mod_sm, right_divide, skew_mul,
    DerivationSpec, Poly, Scalar, SkewPoly,
};
use proptest::prelude::*;

fn poly(max_len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 0..=max_len).prop_map(|c| Poly::from_ints(&c))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn differential() -> impl Strategy<Value = Arc<DerivationSpec>> {
    poly(3).prop_map(|dx| Arc::new(DerivationSpec::differential(dx)))
}

fn ore_spec() -> impl Strategy<Value = Arc<DerivationSpec>> {
    (nonzero_scalar(), scalar(), poly(3))
        .prop_map(|(q, b, dx)| Arc::new(DerivationSpec::new(q, b, dx).unwrap()))
}

fn skew_in(spec: Arc<DerivationSpec>, max_theta: usize, max_len: usize) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec(poly(max_len), 0..=max_theta + 1)
        .prop_map(move |c| SkewPoly::new(Arc::clone(&spec), c))
}

fn spec_and<const N: usize>(
    spec: impl Strategy<Value = Arc<DerivationSpec>>,
) -> impl Strategy<Value = (Arc<DerivationSpec>, [SkewPoly; N])> {
    spec.prop_flat_map(|s| {
        let elems: Vec<_> = (0..N).map(|_| skew_in(Arc::clone(&s), 2, 3)).collect();
        (Just(s), elems.prop_map(|v| <[SkewPoly; N]>::try_from(v).unwrap()))
    })
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associative((_, [f, g, h]) in spec_and::<3>(ore_spec())) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn distributive((_, [f, g, h]) in spec_and::<3>(ore_spec())) {
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&g + &h) * &f, &(&g * &f) + &(&h * &f));
    }

    #[test]
    fn unit((spec, [f]) in spec_and::<1>(ore_spec())) {
        let one = SkewPoly::one(&spec);
        prop_assert_eq!(&one * &f, f.clone());
        prop_assert_eq!(&f * &one, f);
    }

    #[test]
    fn defining_relation(spec in ore_spec(), a in poly(4)) {
        let lhs = &SkewPoly::theta(&spec) * &SkewPoly::from_poly(&spec, a.clone());
        let rhs = SkewPoly::new(Arc::clone(&spec), vec![spec.apply(&a), spec.sigma(&a)]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_leibniz(spec in ore_spec(), u in poly(3), v in poly(3)) {
        let lhs = spec.apply(&(&u * &v));
        let rhs = &(&spec.sigma(&u) * &spec.apply(&v)) + &(&spec.apply(&u) * &v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_left(spec in differential(), a in poly(5), n in 0u32..=6) {
        let lhs = &SkewPoly::theta_pow(&spec, n as usize) * &SkewPoly::from_poly(&spec, a.clone());
        let rhs = SkewPoly::new(
            Arc::clone(&spec),
            (0..=n).map(|i| spec.apply_n(&a, n - i).scale(&Scalar::from_int(binomial(n, i)))).collect(),
        );
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_right(spec in differential(), a in poly(5), n in 0u32..=6) {
        // a t^n = sum (-1)^(n-i) C(n,i) t^i d^(n-i)(a)
        let lhs = &SkewPoly::from_poly(&spec, a.clone()) * &SkewPoly::theta_pow(&spec, n as usize);
        let rhs = (0..=n).fold(SkewPoly::zero(&spec), |acc, i| {
            let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
            let c = spec.apply_n(&a, n - i).scale(&Scalar::from_int(sign * binomial(n, i)));
            &acc + &(&SkewPoly::theta_pow(&spec, i as usize) * &SkewPoly::from_poly(&spec, c))
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn right_form_round_trip((spec, [f]) in spec_and::<1>(ore_spec())) {
        let right = f.right_normal_form();
        let rebuilt = right.iter().enumerate().fold(SkewPoly::zero(&spec), |acc, (i, c)| {
            &acc + &(&SkewPoly::theta_pow(&spec, i) * &SkewPoly::from_poly(&spec, c.clone()))
        });
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn division_reconstructs((spec, [f, g0]) in spec_and::<2>(ore_spec()), n in 1usize..=3) {
        let g = &g0.coeffs().iter().take(n).enumerate().fold(SkewPoly::zero(&spec), |acc, (i, c)| {
            &acc + &SkewPoly::term(&spec, c.clone(), i)
        }) + &SkewPoly::theta_pow(&spec, n);
        let (q, r) = right_divide(&f, &g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
        prop_assert!(r.degree().is_none_or(|d| d < n));
    }

    #[test]
    fn division_is_unique((spec, [q, r0]) in spec_and::<2>(ore_spec()), n in 1usize..=3) {
        let g = &SkewPoly::theta_pow(&spec, n) + &SkewPoly::from_poly(&spec, Poly::x());
        let r = SkewPoly::new(Arc::clone(&spec), r0.coeffs().iter().take(n).cloned().collect());
        let f = &(&q * &g) + &r;
        prop_assert_eq!(right_divide(&f, &g).unwrap(), (q, r));
    }

    #[test]
    fn unit_leading_scalar_division((spec, [f]) in spec_and::<1>(ore_spec()), c in nonzero_scalar()) {
        let g = &SkewPoly::term(&spec, Poly::constant(c), 2) + &SkewPoly::from_poly(&spec, Poly::x());
        let (q, r) = right_divide(&f, &g).unwrap();
        prop_assert_eq!(&(&q * &g) + &r, f);
    }

    #[test]
    fn canonical_form_mod_quadratic(spec in differential(), g0 in poly(4), g1 in poly(4), a in poly(4)) {
        let gamma = SkewPoly::new(Arc::clone(&spec), vec![g0.clone(), g1.clone()]);
        let divisor = &(&SkewPoly::theta(&spec) + &SkewPoly::from_poly(&spec, a.clone())) * &SkewPoly::theta(&spec);
        let (_, r) = right_divide(&(&SkewPoly::theta(&spec) * &gamma), &divisor).unwrap();
        let expected = SkewPoly::new(
            Arc::clone(&spec),
            vec![spec.apply(&g0), &(&g0 + &spec.apply(&g1)) - &(&g1 * &a)],
        );
        prop_assert_eq!(r, expected);
    }

    #[test]
    fn module_action_is_ring_action((spec, [f, g]) in spec_and::<2>(differential()), p in poly(4)) {
        let lhs = module_action(&(&f * &g), &p).unwrap();
        let rhs = module_action(&f, &module_action(&g, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(module_action(&SkewPoly::theta(&spec), &p).unwrap(), spec.apply(&p));
    }

    #[test]
    fn sm_absorbs_right_factor((spec, [f]) in spec_and::<1>(differential()), alpha in scalar()) {
        let m = SkewPoly::from_poly(&spec, Poly::linear_root(&alpha));
        let coords = reduce_mod_sm(&(&f * &m), &alpha).unwrap();
        prop_assert!(coords.iter().all(Scalar::is_zero));
    }

    #[test]
    fn sm_coordinates_are_linear((_, [f, g]) in spec_and::<2>(differential()), alpha in scalar()) {
        let pad = |mut v: Vec<Scalar>, n: usize| { v.resize(n, Scalar::zero()); v };
        let n = 4;
        let sum = pad(reduce_mod_sm(&(&f + &g), &alpha).unwrap(), n);
        let fa = pad(reduce_mod_sm(&f, &alpha).unwrap(), n);
        let ga = pad(reduce_mod_sm(&g, &alpha).unwrap(), n);
        let added: Vec<Scalar> = fa.iter().zip(&ga).map(|(a, b)| a + b).collect();
        prop_assert_eq!(sum, added);
    }

    #[test]
    fn essentializer_lands_in_st_minus_i(coeffs in prop::collection::vec(poly(4), 1..=4)) {
        let spec = Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])));
        let alpha = Scalar::one();
        let u = SkewPoly::new(Arc::clone(&spec), coeffs);
        prop_assume!(!u.is_zero() && !membership_i(&u, &alpha).unwrap());
        let w = essentialize(&u, &alpha).unwrap();
        prop_assert_eq!(skew_mul(&w.multiplier, &u).unwrap(), w.product.clone());
        prop_assert!(w.product.constant_coeff().is_zero());
        prop_assert!(!membership_i(&w.product, &alpha).unwrap());
    }
}
