//! Dispatch of a [`Request`] to the library and assembly of the report.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use ore_core::selfcheck::run_suite;
use ore_core::{
    chain_certificate, d_ideal_closure, d_primitive_witness, decide_diamond, essentialize,
    is_d_simple, is_locally_nilpotent_uni, lie_datum, lnd_check_multi, maximality_certificate,
    normalize, sigma_order, ChainCertificate, DerivationSpec, LndVerdict, MPoly, MultiDerivation,
    Scalar, SkewPoly,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::parse::{parse_mpoly_list, parse_poly, parse_scalar, parse_skew, ParseError};
use crate::request::{Command, Request};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_SATISFIED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("cannot parse --{field}: {error}")]
    Parse {
        field: &'static str,
        input: String,
        error: ParseError,
    },
    #[error("{0}")]
    Input(String),
    #[error("internal verification failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn parse(field: &'static str, input: &str, error: ParseError) -> Self {
        CliError::Parse {
            field,
            input: input.to_string(),
            error,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    /// Multi-line message; parse errors point at the offending byte.
    pub fn render(&self) -> String {
        match self {
            CliError::Parse { field, input, error } => {
                format!("cannot parse --{field}: {error}\n{}", error.render(input))
            }
            other => other.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            CliError::Parse { field, input, error } => json!({
                "kind": "parse",
                "field": field,
                "input": input,
                "offset": error.offset,
                "message": error.message,
            }),
            CliError::Input(m) => json!({ "kind": "input", "message": m }),
            CliError::Internal(m) => json!({ "kind": "internal", "message": m }),
        }
    }
}

impl From<ore_core::Error> for CliError {
    fn from(e: ore_core::Error) -> Self {
        match e {
            ore_core::Error::Internal(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: Command,
    pub input: Request,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<Value>,
    pub exit_code: u8,
    pub timing_ms: f64,
}

#[derive(Clone, Debug)]
pub struct Response {
    pub report: Report,
    pub text: String,
}

struct Outcome {
    result: Value,
    text: String,
    exit: u8,
}

pub fn run(req: &Request) -> Response {
    let start = Instant::now();
    let outcome = dispatch(req);
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    let (result, error, text, exit_code) = match outcome {
        Ok(o) => (Some(o.result), None, o.text, o.exit),
        Err(e) => (None, Some(e.to_json()), format!("error: {}", e.render()), e.exit_code()),
    };
    Response {
        report: Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: req.command,
            input: req.clone(),
            result,
            error,
            exit_code,
            timing_ms,
        },
        text,
    }
}

fn dispatch(req: &Request) -> CliResult<Outcome> {
    for (name, v) in [("k", req.k), ("degree-bound", req.degree_bound), ("iter-bound", req.iter_bound)] {
        if v == 0 {
            return Err(CliError::Input(format!("--{name} must be positive")));
        }
    }
    match req.command {
        Command::Classify => classify(req),
        Command::AnalyzeDerivation => analyze(req),
        Command::WitnessChain => witness_chain(req),
        Command::Essentialize => essentialize_cmd(req),
        Command::Maximality => maximality(req),
        Command::LieDatum => lie(req),
        Command::Verify => verify(req),
    }
}

fn spec_of(req: &Request) -> CliResult<DerivationSpec> {
    let q = parse_scalar(&req.q).map_err(|e| CliError::parse("q", &req.q, e))?;
    let b = parse_scalar(&req.b).map_err(|e| CliError::parse("b", &req.b, e))?;
    let dx = parse_poly(&req.dx).map_err(|e| CliError::parse("dx", &req.dx, e))?;
    Ok(DerivationSpec::new(q, b, dx)?)
}

fn differential_spec(req: &Request) -> CliResult<Arc<DerivationSpec>> {
    let spec = spec_of(req)?;
    if !spec.is_sigma_identity() {
        return Err(CliError::Input(format!(
            "{} needs sigma = id (q = 1, b = 0); run classify to normalize {spec}",
            req.command.name()
        )));
    }
    Ok(Arc::new(spec))
}

fn alpha_of(req: &Request, spec: &DerivationSpec) -> CliResult<Scalar> {
    match &req.alpha {
        Some(text) => parse_scalar(text).map_err(|e| CliError::parse("alpha", text, e)),
        None => d_primitive_witness(spec)?.ok_or_else(|| {
            CliError::Input("d(x) = 0 vanishes at every point; no admissible alpha exists".into())
        }),
    }
}

fn certificate<T: Serialize>(kind: &str, spec: &DerivationSpec, data: &T, verified: bool) -> CliResult<Value> {
    let data = serde_json::to_value(data).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(json!({
        "type": kind,
        "spec": spec.to_string(),
        "data": data,
        "verification": if verified { "pass" } else { "fail" },
    }))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn require_verified(kind: &str, ok: bool) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Internal(format!("{kind} failed re-verification")))
    }
}

fn chain_text(out: &mut String, cert: &ChainCertificate) {
    let _ = writeln!(
        out,
        "chain:        L_j = S<({})^j> + St, j = 1..{}, alpha = {} (f(alpha) = {})",
        cert.f, cert.length, cert.alpha, cert.f_at_alpha
    );
    for link in &cert.links {
        let next = match link.next_divides {
            Some(false) => "f^(j+1) does not divide f^j",
            Some(true) => "f^(j+1) divides f^j",
            None => "last link",
        };
        let _ = writeln!(
            out,
            "  j = {}: d(f^j) = ({}) * f^j; closure = {}; {next}",
            link.j, link.stability_cofactor, link.closure
        );
    }
}

fn classify(req: &Request) -> CliResult<Outcome> {
    let spec = spec_of(req)?;
    let normalization = normalize(&spec)?;
    let verdict = decide_diamond(&spec)?;
    let order = sigma_order(spec.q(), spec.b())?;
    let iso = &normalization.iso;
    let iso_ok = iso.verify(&normalization.normal_form);
    require_verified("change of variables", iso_ok)?;

    let mut text = String::new();
    let _ = writeln!(text, "ring:         {spec}");
    let _ = writeln!(text, "normal form:  {}", normalization.normal_form);
    let _ = writeln!(text, "substitution: x' = {}, y'' = {}", iso.x_new, iso.y_new);
    let _ = writeln!(
        text,
        "sigma order:  {}",
        order.map_or_else(|| "infinite".to_string(), |n| n.to_string())
    );
    let _ = writeln!(
        text,
        "diamond:      {} ({})",
        if verdict.satisfied { "satisfied" } else { "not satisfied" },
        verdict.reason.name()
    );
    let _ = writeln!(text, "reason:       {}", verdict.reason.explanation());

    let mut result = json!({
        "q": spec.q().to_string(),
        "b": spec.b().to_string(),
        "dx": spec.dx().to_string(),
        "normal_form": normalization.normal_form.tag(),
        "normal_form_detail": normalization.normal_form,
        "iso_data": iso,
        "iso_verification": pass_fail(iso_ok),
        "sigma_order": order,
        "diamond": verdict.satisfied,
        "reason": verdict.reason.name(),
        "reason_text": verdict.reason.explanation(),
    });

    if !verdict.satisfied && spec.is_sigma_identity() && !spec.dx().is_constant() {
        let alpha = alpha_of(req, &spec)?;
        let cert = chain_certificate(spec.dx(), &alpha, req.k)?;
        let ok = cert.verify();
        require_verified("chain certificate", ok)?;
        chain_text(&mut text, &cert);
        result["witnesses"] = json!([certificate("ChainCertificate", &spec, &cert, ok)?]);
    }

    Ok(Outcome {
        result,
        text,
        exit: if verdict.satisfied { EXIT_OK } else { EXIT_NOT_SATISFIED },
    })
}

fn default_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn multi_of(req: &Request) -> CliResult<(Vec<String>, MultiDerivation)> {
    let images = req
        .images
        .as_deref()
        .ok_or_else(|| CliError::Input("--images is required".into()))?;
    let names: Vec<String> = match &req.vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => default_names(images.split(',').count()),
    };
    if names.iter().any(|n| n.is_empty() || n == "t" || n == "zeta") {
        return Err(CliError::Input(format!("invalid variable list {:?}", names.join(","))));
    }
    let polys = parse_mpoly_list(images, &names).map_err(|e| CliError::parse("images", images, e))?;
    Ok((names, MultiDerivation::new(polys)?))
}

fn show(p: &MPoly, names: &[String]) -> String {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display_with(&refs)
}

fn lnd_text(v: &LndVerdict, names: &[String]) -> String {
    match v {
        LndVerdict::Triangular { order } => {
            let ord: Vec<&str> = order.iter().map(|&i| names[i].as_str()).collect();
            format!("locally nilpotent (triangular in the order {})", ord.join(", "))
        }
        LndVerdict::Nilpotent { max_iterations } => {
            format!("locally nilpotent (d^{max_iterations} kills every generator)")
        }
        LndVerdict::NotNilpotentWithinBound { bound } => {
            format!("not certified locally nilpotent within {bound} iterations")
        }
    }
}

fn analyze(req: &Request) -> CliResult<Outcome> {
    if req.images.is_some() {
        let (names, d) = multi_of(req)?;
        let verdict = lnd_check_multi(&d, req.iter_bound);
        let mut text = String::new();
        let images: Vec<String> = d.images().iter().map(|p| show(p, &names)).collect();
        for (n, img) in names.iter().zip(&images) {
            let _ = writeln!(text, "d({n}) = {img}");
        }
        let _ = writeln!(text, "{}", lnd_text(&verdict, &names));
        let result = json!({
            "kind": "multivariate",
            "vars": names,
            "images": images,
            "lnd": verdict,
        });
        return Ok(Outcome { result, text, exit: EXIT_OK });
    }

    let spec = spec_of(req)?;
    let mut orbit = vec![ore_core::Poly::x()];
    while orbit.len() <= req.iter_bound as usize {
        let next = spec.apply(orbit.last().expect("nonempty"));
        if next.is_zero() {
            break;
        }
        orbit.push(next);
    }
    let orbit_text: Vec<String> = orbit.iter().map(|p| p.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "ring:      {spec}");
    const SHOWN: usize = 6;
    let _ = writeln!(
        text,
        "d^i(x):    {}{}",
        orbit_text[..orbit_text.len().min(SHOWN)].join(", "),
        if orbit_text.len() > SHOWN {
            format!(", ... ({} nonzero terms computed)", orbit_text.len())
        } else {
            String::new()
        }
    );

    let mut result = json!({
        "kind": "univariate",
        "spec": spec.to_string(),
        "sigma_identity": spec.is_sigma_identity(),
        "orbit": orbit_text,
    });
    if spec.is_sigma_identity() {
        let lnd = is_locally_nilpotent_uni(&spec)?;
        let simple = is_d_simple(&spec)?;
        let witness = d_primitive_witness(&spec)?;
        let _ = writeln!(text, "locally nilpotent: {lnd}");
        let _ = writeln!(text, "d-simple:          {simple}");
        let _ = writeln!(
            text,
            "d-primitive:       {}",
            witness.as_ref().map_or_else(
                || "no (d = 0 keeps every ideal stable)".to_string(),
                |a| format!("yes, (x - {a}) contains no nonzero d-ideal")
            )
        );
        result["locally_nilpotent"] = json!(lnd);
        result["d_simple"] = json!(simple);
        result["d_primitive_witness"] = json!(witness);
        if let Some(g_text) = &req.g {
            let g = parse_poly(g_text).map_err(|e| CliError::parse("g", g_text, e))?;
            let closure = d_ideal_closure(&g, &spec)?;
            let _ = writeln!(text, "largest d-ideal inside <{g}>: <{closure}>");
            result["closure"] = json!({ "g": g, "closure": closure });
        }
    } else {
        let _ = writeln!(text, "sigma != id: nilpotency and d-ideal reports need a derivation; see classify");
    }
    Ok(Outcome { result, text, exit: EXIT_OK })
}

fn witness_chain(req: &Request) -> CliResult<Outcome> {
    let spec = differential_spec(req)?;
    let alpha = alpha_of(req, &spec)?;
    let cert = chain_certificate(spec.dx(), &alpha, req.k)?;
    let ok = cert.verify();
    require_verified("chain certificate", ok)?;
    let mut text = String::new();
    chain_text(&mut text, &cert);
    let _ = writeln!(text, "verification: {}", pass_fail(ok));
    Ok(Outcome {
        result: certificate("ChainCertificate", &spec, &cert, ok)?,
        text,
        exit: EXIT_OK,
    })
}

fn skew_arg(req: &Request, field: &'static str, text: &Option<String>, spec: &Arc<DerivationSpec>) -> CliResult<SkewPoly> {
    let text = text
        .as_deref()
        .ok_or_else(|| CliError::Input(format!("--{field} is required for {}", req.command.name())))?;
    parse_skew(text, spec).map_err(|e| CliError::parse(field, text, e))
}

fn essentialize_cmd(req: &Request) -> CliResult<Outcome> {
    let spec = differential_spec(req)?;
    let alpha = alpha_of(req, &spec)?;
    let u = skew_arg(req, "u", &req.u, &spec)?;
    let w = essentialize(&u, &alpha)?;
    let ok = w.verify();
    require_verified("essential witness", ok)?;
    let mut text = String::new();
    let _ = writeln!(text, "alpha:      {alpha}");
    let _ = writeln!(text, "u:          {u}");
    let _ = writeln!(text, "multiplier: {}", w.multiplier);
    let _ = writeln!(text, "product:    {} (in St, not in S(x - alpha)t)", w.product);
    let _ = writeln!(text, "verification: {}", pass_fail(ok));
    Ok(Outcome {
        result: certificate("EssentialWitness", &spec, &w, ok)?,
        text,
        exit: EXIT_OK,
    })
}

fn maximality(req: &Request) -> CliResult<Outcome> {
    let spec = differential_spec(req)?;
    let alpha = alpha_of(req, &spec)?;
    let g = skew_arg(req, "g", &req.g, &spec)?;
    let mut text = String::new();
    match maximality_certificate(&alpha, &g, req.degree_bound)? {
        Some(c) => {
            let ok = c.verify();
            require_verified("maximality certificate", ok)?;
            let _ = writeln!(text, "alpha:    {alpha}");
            let _ = writeln!(text, "g:        {g}");
            let _ = writeln!(text, "cofactor: {} (total degree bound {})", c.cofactor, c.search_degree);
            let _ = writeln!(text, "u*g = 1 mod S(x - alpha): {}", pass_fail(ok));
            Ok(Outcome {
                result: certificate("MaximalityCertificate", &spec, &c, ok)?,
                text,
                exit: EXIT_OK,
            })
        }
        None => {
            let _ = writeln!(
                text,
                "no cofactor of total degree <= {} for g = {g} at alpha = {alpha}",
                req.degree_bound
            );
            let mut result = certificate("MaximalityCertificate", &spec, &Value::Null, false)?;
            result["note"] = json!(format!("no cofactor of total degree <= {}", req.degree_bound));
            Ok(Outcome {
                result,
                text,
                exit: EXIT_NOT_SATISFIED,
            })
        }
    }
}

fn lie(req: &Request) -> CliResult<Outcome> {
    let (names, d) = multi_of(req)?;
    let datum = lie_datum(&d, req.iter_bound)?;
    let v: Vec<String> = datum.v_set.iter().map(|p| show(p, &names)).collect();
    let basis: Vec<String> = datum.basis_h.iter().map(|p| show(p, &names)).collect();
    let matrix: Vec<Vec<String>> = datum
        .d_matrix
        .iter()
        .map(|col| col.iter().map(|c| c.to_string()).collect())
        .collect();
    let mut text = String::new();
    let _ = writeln!(text, "V:             {{{}}}", v.join(", "));
    let _ = writeln!(text, "basis of h:    {}", basis.join(", "));
    let _ = writeln!(text, "dim h, dim g:  {}, {}", datum.dim_h(), datum.dim_g());
    let _ = writeln!(text, "lower central: {:?}", datum.lower_central_dims);
    let _ = writeln!(text, "class:         {}", datum.nilpotency_class);
    let result = json!({
        "vars": names,
        "images": d.images().iter().map(|p| show(p, &names)).collect::<Vec<_>>(),
        "v_set": v,
        "basis_h": basis,
        "d_matrix": matrix,
        "dim_h": datum.dim_h(),
        "dim_g": datum.dim_g(),
        "lower_central_dims": datum.lower_central_dims,
        "nilpotency_class": datum.nilpotency_class,
        "note": "g = h + Kt with [(h1, a1), (h2, a2)] = a1 d(h2) - a2 d(h1); the structural reading assumes K algebraically closed",
    });
    Ok(Outcome { result, text, exit: EXIT_OK })
}

fn verify(req: &Request) -> CliResult<Outcome> {
    let suite = run_suite(req.seed);
    let passed = suite.passed();
    let mut text = String::new();
    for c in &suite.checks {
        let _ = write!(text, "[{}] {} ({} cases)", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.cases);
        if let Some(f) = &c.first_failure {
            let _ = write!(text, ": {} failures, first: {f}", c.failures);
        }
        text.push('\n');
    }
    let result = json!({ "seed": suite.seed, "checks": suite.checks, "passed": passed });
    Ok(Outcome {
        result,
        text,
        exit: if passed { EXIT_OK } else { EXIT_INTERNAL },
    })
}

impl Report {
    /// Pretty JSON; the only nondeterministic field is `timing_ms`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Same report with the timing field zeroed, for comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            timing_ms: 0.0,
            ..self.clone()
        }
    }
}
