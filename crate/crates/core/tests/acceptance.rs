//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (rational and cyclotomic arithmetic, tolerance 0).
//!
//! Exit status is nonzero when a criterion fails unexpectedly, or when a
//! criterion listed in `KNOWN_FAILURES` starts passing. Set
//! `ACCEPTANCE_STRICT=1` to fail on every FAIL line.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ore_core::linalg;
use ore_core::sample::Sampler;
use ore_core::{
    chain_certificate, d_ideal_closure, d_primitive_witness, decide_diamond, essentialize,
    lie_datum, maximality_certificate, membership_i, normalize, reduce_mod_sm, right_divide,
    verify_lattice_iso_principal, DerivationSpec, MPoly, MultiDerivation, NormalForm, Poly, Scalar,
    SkewPoly,
};

const SEED: u64 = 0x0AE5_2024;

/// Criteria that cannot hold as stated. Each still runs in full and prints FAIL.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    5,
    "for d(x) = 0 every ideal of K[x] is d-stable, so the closure of a nonconstant g is g, not 1",
)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

// ---- independent oracles -------------------------------------------------

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// d(p) = d(x) p' for sigma = id.
fn deriv(dx: &Poly, p: &Poly) -> Poly {
    dx * &p.derivative()
}

fn deriv_n(dx: &Poly, p: &Poly, n: u32) -> Poly {
    (0..n).fold(p.clone(), |acc, _| deriv(dx, &acc))
}

fn theta_power_times(f: &SkewPoly, n: usize) -> SkewPoly {
    (0..n).fold(f.clone(), |acc, _| acc.theta_times())
}

/// Product built only from single commutation steps `t * (...)`.
fn oracle_mul(f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    let mut acc = SkewPoly::zero(f.spec());
    let mut power = g.clone();
    for a in f.coeffs() {
        acc = &acc + &power.left_scale(a);
        power = power.theta_times();
    }
    acc
}

fn padded(mut v: Vec<Scalar>, n: usize) -> Vec<Scalar> {
    v.resize(n.max(v.len()), Scalar::zero());
    v
}

fn is_unit_residue(v: &[Scalar]) -> bool {
    !v.is_empty() && v[0].is_one() && v[1..].iter().all(Scalar::is_zero)
}

// ---- criteria ------------------------------------------------------------

fn commutation(s: &mut Sampler) -> Outcome {
    let cases = 200;
    let mut bad = 0;
    for _ in 0..cases {
        let dx = s.poly(3);
        let spec = Arc::new(DerivationSpec::differential(dx.clone()));
        let a = s.poly(5);
        let n = s.int(0, 8) as u32;

        let iterated = theta_power_times(&SkewPoly::from_poly(&spec, a.clone()), n as usize);
        let left_formula = SkewPoly::new(
            Arc::clone(&spec),
            (0..=n)
                .map(|i| deriv_n(&dx, &a, n - i).scale(&Scalar::from_int(binomial(n, i))))
                .collect(),
        );

        let a_theta_n = SkewPoly::term(&spec, a.clone(), n as usize);
        let right_formula = (0..=n).fold(SkewPoly::zero(&spec), |acc, i| {
            let sign = if (n - i).is_multiple_of(2) { 1 } else { -1 };
            let c = deriv_n(&dx, &a, n - i).scale(&Scalar::from_int(sign * binomial(n, i)));
            &acc + &theta_power_times(&SkewPoly::from_poly(&spec, c), i as usize)
        });

        if iterated != left_formula || a_theta_n != right_formula {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/{cases} (a, n) pairs satisfy both expansions", cases - bad))
}

fn division(s: &mut Sampler) -> Outcome {
    let cases = 200;
    let mut bad = 0;
    for _ in 0..cases {
        let spec = Arc::new(s.ore_spec(2));
        let f = s.skew(&spec, 5, 3);
        let n = s.int(1, 3) as usize;
        let g = s.theta_monic(&spec, n, 2);
        match right_divide(&f, &g) {
            Ok((q, r)) if &oracle_mul(&q, &g) + &r == f && r.degree().is_none_or(|d| d < n) => {}
            _ => bad += 1,
        }
    }
    outcome(bad == 0, format!("{}/{cases} divisions reconstruct with deg r < deg g", cases - bad))
}

fn quadratic_quotient(s: &mut Sampler) -> Outcome {
    let cases = 100;
    let mut bad = 0;
    for _ in 0..cases {
        let dx = s.poly(3);
        let spec = Arc::new(DerivationSpec::differential(dx.clone()));
        let (g0, g1, a) = (s.poly(4), s.poly(4), s.poly(4));
        let theta = SkewPoly::theta(&spec);
        let gamma = SkewPoly::new(Arc::clone(&spec), vec![g0.clone(), g1.clone()]);
        let divisor = oracle_mul(&(&theta + &SkewPoly::from_poly(&spec, a.clone())), &theta);
        let expected = SkewPoly::new(
            Arc::clone(&spec),
            vec![deriv(&dx, &g0), &(&g0 + &deriv(&dx, &g1)) - &(&g1 * &a)],
        );
        match right_divide(&gamma.theta_times(), &divisor) {
            Ok((_, r)) if r == expected => {}
            _ => bad += 1,
        }
    }
    outcome(bad == 0, format!("{}/{cases} canonical forms match", cases - bad))
}

fn table_rows() -> Vec<(&'static str, DerivationSpec, bool)> {
    let z3 = Scalar::zeta(3).unwrap();
    let q1 = |b: i64, dx: &[i64]| DerivationSpec::new(Scalar::one(), Scalar::from_int(b), Poly::from_ints(dx)).unwrap();
    vec![
        ("q = zeta(3)", DerivationSpec::new(z3.clone(), Scalar::zero(), Poly::zero()).unwrap(), true),
        ("q = zeta(3), b = 1, d(x) = x", DerivationSpec::new(z3, Scalar::one(), Poly::x()).unwrap(), true),
        ("q = 2", DerivationSpec::new(Scalar::from_int(2), Scalar::zero(), Poly::zero()).unwrap(), false),
        ("q = 2, b = 1, d(x) = x", DerivationSpec::new(Scalar::from_int(2), Scalar::one(), Poly::x()).unwrap(), false),
        ("d(x) = 1", q1(0, &[1]), true),
        ("d(x) = 0", q1(0, &[]), true),
        ("d(x) = x", q1(0, &[0, 1]), false),
        ("d(x) = x^2", q1(0, &[0, 0, 1]), false),
        ("d(x) = x^5", q1(0, &[0, 0, 0, 0, 0, 1]), false),
        ("q = 1, b = 1", q1(1, &[]), false),
        ("q = 1, b = 1, d(x) = 1", q1(1, &[1]), false),
    ]
}

fn classification_table(_: &mut Sampler) -> Outcome {
    let mut wrong = Vec::new();
    let rows = table_rows();
    for (name, spec, expected) in &rows {
        match decide_diamond(spec) {
            Ok(v) if v.satisfied == *expected => {}
            Ok(v) => wrong.push(format!("{name}: got {}", v.satisfied)),
            Err(e) => wrong.push(format!("{name}: {e}")),
        }
    }
    let detail = if wrong.is_empty() {
        format!("{}/{} verdicts exact", rows.len(), rows.len())
    } else {
        format!("mismatches: {}", wrong.join("; "))
    };
    outcome(wrong.is_empty(), detail)
}

fn witness_coherence(s: &mut Sampler) -> Outcome {
    let mut problems = Vec::new();
    let mut chains = 0;
    for (name, spec, _) in table_rows() {
        if !spec.is_sigma_identity() {
            continue;
        }
        let verdict = decide_diamond(&spec).unwrap();
        if !verdict.satisfied {
            let alpha = match d_primitive_witness(&spec) {
                Ok(Some(a)) => a,
                _ => {
                    problems.push(format!("{name}: no witness point"));
                    continue;
                }
            };
            let Ok(cert) = chain_certificate(spec.dx(), &alpha, 5) else {
                problems.push(format!("{name}: chain construction failed"));
                continue;
            };
            let f = spec.dx();
            let independent = (1..=5u32).all(|j| {
                let fj = f.pow(j);
                let stable = deriv(f, &fj).div_rem(&fj).is_ok_and(|(_, r)| r.is_zero());
                // f^j is not a multiple of f^{j+1}
                let strict = j == 5 || fj.div_rem(&f.pow(j + 1)).is_ok_and(|(_, r)| !r.is_zero());
                stable && strict
            });
            if !(cert.verify() && cert.is_strict() && independent && !f.eval(&alpha).is_zero()) {
                problems.push(format!("{name}: chain evidence rejected"));
            }
            chains += 1;
        } else {
            let mut not_one = 0;
            for _ in 0..50 {
                let g = s.nonconstant_poly(5);
                if !d_ideal_closure(&g, &spec).is_ok_and(|c| c.is_one()) {
                    not_one += 1;
                }
            }
            if not_one > 0 {
                problems.push(format!("{name}: closure != 1 for {not_one}/50 nonconstant g"));
            }
        }
    }
    let detail = format!(
        "{chains} chains (k = 5) checked; {}",
        if problems.is_empty() { "all sub-checks hold".to_string() } else { problems.join("; ") }
    );
    outcome(problems.is_empty(), detail)
}

fn essentializer(s: &mut Sampler) -> Outcome {
    let spec = Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])));
    let alpha = Scalar::one();
    let cases = 100;
    let (mut done, mut bad) = (0, 0);
    while done < cases {
        let u = s.nonzero_skew(&spec, 3, 4);
        if membership_i(&u, &alpha).unwrap() {
            continue;
        }
        done += 1;
        let ok = essentialize(&u, &alpha).is_ok_and(|w| {
            let su = oracle_mul(&w.multiplier, &u);
            su == w.product && !su.is_zero() && su.constant_coeff().is_zero() && !membership_i(&su, &alpha).unwrap()
        });
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/{cases} products land in St \\ I", cases - bad))
}

fn maximality(_: &mut Sampler) -> Outcome {
    let spec = Arc::new(DerivationSpec::differential(Poly::from_ints(&[0, 0, 1])));
    let alpha = Scalar::one();
    let theta = SkewPoly::theta(&spec);
    let gs = [
        ("t", theta.clone()),
        ("t + x", &theta + &SkewPoly::from_poly(&spec, Poly::x())),
        ("x^2*t + 1", &SkewPoly::term(&spec, Poly::from_ints(&[0, 0, 1]), 1) + &SkewPoly::one(&spec)),
    ];
    let mut found = Vec::new();
    let mut ok = true;
    for (name, g) in &gs {
        match maximality_certificate(&alpha, g, 8) {
            Ok(Some(c)) => {
                let residue = reduce_mod_sm(&oracle_mul(&c.cofactor, g), &alpha).unwrap();
                let good = c.search_degree <= 8 && is_unit_residue(&padded(residue, 1)) && c.verify();
                ok &= good;
                found.push(format!("{name}: D = {}", c.search_degree));
            }
            _ => {
                ok = false;
                found.push(format!("{name}: none"));
            }
        }
    }
    outcome(ok, found.join(", "))
}

fn lattice(s: &mut Sampler) -> Outcome {
    let cases = 30;
    let mut bad = 0;
    for _ in 0..cases {
        let g = s.nonzero_poly(4);
        let g2 = MPoly::from_poly(2, 1, &g);
        if verify_lattice_iso_principal(&g2) != Ok(true) {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/{cases} principal ideals g(y) verified", cases - bad))
}

/// Lower central series dimensions of h + Kt computed from explicit brackets.
fn lower_central_dims(images: &[MPoly]) -> Vec<usize> {
    let n = images.len();
    let d = |p: &MPoly| (0..n).fold(MPoly::zero(n), |acc, i| &acc + &(&images[i] * &p.partial(i)));
    let mut v: Vec<MPoly> = Vec::new();
    for j in 0..n {
        let mut p = MPoly::var(n, j);
        while !p.is_zero() {
            v.push(p.clone());
            p = d(&p);
        }
    }
    let mut monos: Vec<Vec<u32>> = v.iter().flat_map(|p| p.terms().map(|(e, _)| e.to_vec())).collect();
    monos.sort();
    monos.dedup();
    let coords = |(h, a): &(MPoly, Scalar)| {
        let mut c: Vec<Scalar> = monos.iter().map(|e| h.coeff(e)).collect();
        c.push(a.clone());
        c
    };
    let bracket = |(h1, a1): &(MPoly, Scalar), (h2, a2): &(MPoly, Scalar)| {
        (&d(h2).scale(a1) - &d(h1).scale(a2), Scalar::zero())
    };
    let mut g: Vec<(MPoly, Scalar)> = v.iter().map(|h| (h.clone(), Scalar::zero())).collect();
    g.push((MPoly::zero(n), Scalar::one()));
    let all = g.clone();
    let mut dims = Vec::new();
    loop {
        let r = linalg::rank(&g.iter().map(coords).collect::<Vec<_>>());
        if r == 0 || dims.last() == Some(&r) {
            break;
        }
        dims.push(r);
        g = all.iter().flat_map(|u| g.iter().map(|w| bracket(u, w)).collect::<Vec<_>>()).collect();
    }
    dims
}

fn lie(_: &mut Sampler) -> Outcome {
    let y = MPoly::var(2, 1);
    let chain = vec![y, MPoly::one(2)];
    let heis = vec![MPoly::constant(1, Scalar::ratio(7, 3))];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, images, dim_h, class) in [("d(x)=y, d(y)=1", chain, 3, 3), ("d(x)=7/3", heis, 2, 2)] {
        let d = MultiDerivation::new(images.clone()).unwrap();
        match lie_datum(&d, 32) {
            Ok(datum) => {
                let dims = lower_central_dims(&images);
                let good = datum.dim_h() == dim_h
                    && datum.nilpotency_class == class
                    && dims == datum.lower_central_dims
                    && dims.len() == class as usize;
                ok &= good;
                notes.push(format!("{name}: dim h = {}, class = {}, series {:?}", datum.dim_h(), datum.nilpotency_class, dims));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn normalization(s: &mut Sampler) -> Outcome {
    let cases = 100;
    let (mut done, mut bad) = (0, 0);
    while done < cases {
        let spec = s.ore_spec(4);
        if spec.q().is_one() {
            continue;
        }
        done += 1;
        let ok = normalize(&spec).is_ok_and(|n| {
            let x_new = n.iso.x_new.constant_coeff();
            let y = &n.iso.y_new;
            let xs = &n.iso.x_new;
            let lhs = oracle_mul(y, xs);
            let q_xy = oracle_mul(xs, y).left_scale(&Poly::constant(spec.q().clone()));
            let r = &lhs - &q_xy;
            let one = SkewPoly::one(xs.spec());
            let tag_ok = match &n.normal_form {
                NormalForm::QuantumPlane { q } => q == spec.q() && r.is_zero(),
                NormalForm::QuantumWeyl { q } => q == spec.q() && r == one,
                _ => false,
            };
            tag_ok
                && spec.sigma(&x_new) == x_new.scale(spec.q())
                && y.degree() == Some(1)
                && y.coeff(1).is_constant()
        });
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{}/{cases} substitutions replay y''x' = q x'y'' + r, r in {{0, 1}}", cases - bad))
}

type Criterion = (u32, &'static str, fn(&mut Sampler) -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "commutation identities", commutation),
        (2, "right division", division),
        (3, "canonical form modulo S(t + a)t", quadratic_quotient),
        (4, "classification table", classification_table),
        (5, "witness coherence", witness_coherence),
        (6, "essentializer", essentializer),
        (7, "maximality cofactors", maximality),
        (8, "principal lattice correspondence", lattice),
        (9, "Lie datum", lie),
        (10, "normalization replay", normalization),
    ];
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v != "0");
    let mut sampler = Sampler::new(SEED);
    let (mut passed, mut unexpected) = (0, 0);
    for (id, name, run) in criteria {
        let start = Instant::now();
        let o = run(&mut sampler);
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == id);
        let within_time = secs < 60.0;
        let pass = o.passed && within_time;
        println!(
            "[{}] {id:>2}. {name}: {} (exact, tolerance 0; {secs:.2}s{})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            if within_time { "" } else { ", over the 60s budget" },
        );
        match (pass, known) {
            (true, None) => passed += 1,
            (true, Some(_)) => {
                passed += 1;
                unexpected += 1;
                println!("       criterion {id} is listed as a known failure but passed");
            }
            (false, Some((_, why))) => {
                println!("       known failure: {why}");
                if strict {
                    unexpected += 1;
                }
            }
            (false, None) => unexpected += 1,
        }
    }
    println!("{passed}/10 criteria passed");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
