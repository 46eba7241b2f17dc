//! A seeded suite of randomized invariant checks over the whole library.

use std::sync::Arc;

use serde::Serialize;

use crate::classify::{decide_diamond, normalize, verdict_from_normal_form};
use crate::commalg::{d_primitive_witness, is_locally_nilpotent_uni, DerivationSpec, Poly};
use crate::error::Result;
use crate::ore::{
    chain_certificate, essentialize, maximality_certificate, membership_i, module_action,
    right_divide, skew_mul, SkewPoly,
};
use crate::sample::Sampler;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u32,
    pub failures: u32,
    pub first_failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

type Case = Result<std::result::Result<(), String>>;

fn check(name: &'static str, cases: u32, s: &mut Sampler, mut case: impl FnMut(&mut Sampler) -> Case) -> CheckOutcome {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        let msg = match case(s) {
            Ok(Ok(())) => continue,
            Ok(Err(msg)) => msg,
            Err(e) => format!("error: {e}"),
        };
        failures += 1;
        first_failure.get_or_insert_with(|| format!("case {i}: {msg}"));
    }
    CheckOutcome {
        name,
        cases,
        failures,
        first_failure,
    }
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn differential(s: &mut Sampler, max_deg: u32) -> Arc<DerivationSpec> {
    Arc::new(DerivationSpec::differential(s.poly(max_deg)))
}

pub fn run_suite(seed: u64) -> SuiteReport {
    let mut s = Sampler::new(seed);
    let s = &mut s;
    let mut checks = Vec::new();

    checks.push(check("ring_associativity", 40, s, |s| {
        let spec = Arc::new(s.ore_spec(2));
        let (f, g, h) = (s.skew(&spec, 2, 2), s.skew(&spec, 2, 2), s.skew(&spec, 2, 2));
        let left = skew_mul(&skew_mul(&f, &g)?, &h)?;
        let right = skew_mul(&f, &skew_mul(&g, &h)?)?;
        Ok(expect(left == right, || format!("({f})({g})({h}) is not associative")))
    }));

    checks.push(check("binomial_commutation", 40, s, |s| {
        let spec = differential(s, 3);
        let a = s.poly(4);
        let n = s.int(0, 6) as u32;
        let lhs = skew_mul(&SkewPoly::theta_pow(&spec, n as usize), &SkewPoly::from_poly(&spec, a.clone()))?;
        let coeffs = (0..=n)
            .map(|i| spec.apply_n(&a, n - i).scale(&Scalar::from_int(binomial(n, i))))
            .collect();
        let rhs = SkewPoly::new(Arc::clone(&spec), coeffs);
        Ok(expect(lhs == rhs, || format!("t^{n} * ({a}) over d(x) = {}", spec.dx())))
    }));

    checks.push(check("right_form_round_trip", 40, s, |s| {
        let spec = Arc::new(s.ore_spec(2));
        let f = s.skew(&spec, 3, 3);
        let back = SkewPoly::from_right_form(&spec, &f.right_normal_form());
        Ok(expect(back == f, || format!("{f} over {spec}")))
    }));

    checks.push(check("right_division", 40, s, |s| {
        let spec = Arc::new(s.ore_spec(2));
        let f = s.skew(&spec, 4, 3);
        let n = s.int(1, 3) as usize;
        let g = s.theta_monic(&spec, n, 2);
        let (q, r) = right_divide(&f, &g)?;
        let rebuilt = &skew_mul(&q, &g)? + &r;
        Ok(expect(rebuilt == f && r.degree().is_none_or(|d| d < n), || {
            format!("{f} = ({q})({g}) + {r} fails")
        }))
    }));

    checks.push(check("canonical_form_mod_quadratic", 40, s, |s| {
        let spec = differential(s, 3);
        let (g0, g1, a) = (s.poly(3), s.poly(3), s.poly(3));
        let gamma = SkewPoly::new(Arc::clone(&spec), vec![g0.clone(), g1.clone()]);
        let divisor = SkewPoly::new(Arc::clone(&spec), vec![Poly::zero(), a.clone(), Poly::one()]);
        let (_, r) = right_divide(&skew_mul(&SkewPoly::theta(&spec), &gamma)?, &divisor)?;
        let expected = SkewPoly::new(
            Arc::clone(&spec),
            vec![spec.apply(&g0), &(&g0 + &spec.apply(&g1)) - &(&g1 * &a)],
        );
        Ok(expect(r == expected, || format!("g0 = {g0}, g1 = {g1}, a = {a}")))
    }));

    checks.push(check("module_action_is_ring_action", 40, s, |s| {
        let spec = differential(s, 2);
        let (f, g) = (s.skew(&spec, 2, 2), s.skew(&spec, 2, 2));
        let p = s.poly(3);
        let lhs = module_action(&skew_mul(&f, &g)?, &p)?;
        let rhs = module_action(&f, &module_action(&g, &p)?)?;
        Ok(expect(lhs == rhs, || format!("({f})({g}) on {p}")))
    }));

    checks.push(check("diamond_matches_local_nilpotency", 40, s, |s| {
        let spec = DerivationSpec::differential(s.poly(5));
        let verdict = decide_diamond(&spec)?;
        let lnd = is_locally_nilpotent_uni(&spec)?;
        Ok(expect(verdict.satisfied == lnd, || format!("d(x) = {}", spec.dx())))
    }));

    checks.push(check("diamond_route_invariance", 40, s, |s| {
        let spec = s.ore_spec(3);
        let direct = decide_diamond(&spec)?;
        let via_tag = verdict_from_normal_form(&normalize(&spec)?.normal_form)?;
        Ok(expect(direct == via_tag, || format!("{spec}")))
    }));

    checks.push(check("normalization_replay", 40, s, |s| {
        let spec = loop {
            let spec = s.ore_spec(4);
            if !spec.q().is_one() {
                break spec;
            }
        };
        let n = normalize(&spec)?;
        let (lhs, rhs) = n.iso.replay(&n.normal_form)?;
        Ok(expect(lhs == rhs && n.iso.verify(&n.normal_form), || format!("{spec}")))
    }));

    checks.push(check("chain_when_not_satisfied", 20, s, |s| {
        let spec = DerivationSpec::differential(s.nonconstant_poly(4));
        let verdict = decide_diamond(&spec)?;
        if verdict.satisfied {
            return Ok(Err(format!("d(x) = {} reported satisfied", spec.dx())));
        }
        let Some(alpha) = d_primitive_witness(&spec)? else {
            return Ok(Err(format!("no witness point for d(x) = {}", spec.dx())));
        };
        let cert = chain_certificate(spec.dx(), &alpha, 3)?;
        Ok(expect(cert.verify() && cert.is_strict(), || format!("d(x) = {}", spec.dx())))
    }));

    checks.push(check("essentializer", 40, s, |s| {
        let spec = Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])));
        let alpha = Scalar::one();
        let u = s.nonzero_skew(&spec, 3, 3);
        if membership_i(&u, &alpha)? {
            return Ok(Ok(()));
        }
        let w = essentialize(&u, &alpha)?;
        Ok(expect(w.verify() && !membership_i(&w.product, &alpha)?, || format!("u = {u}")))
    }));

    checks.push(check("maximality_cofactors", 3, s, {
        let spec = Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])));
        let theta = SkewPoly::theta(&spec);
        let gs = [
            theta.clone(),
            &theta + &SkewPoly::from_poly(&spec, Poly::x()),
            &SkewPoly::term(&spec, Poly::from_ints(&[0, 0, 1]), 1) + &SkewPoly::one(&spec),
        ];
        let mut next = 0;
        move |_| {
            let g = &gs[next];
            next += 1;
            let cert = maximality_certificate(&Scalar::one(), g, 8)?;
            Ok(expect(cert.is_some_and(|c| c.verify()), || format!("no cofactor for {g}")))
        }
    }));

    SuiteReport { seed, checks }
}
