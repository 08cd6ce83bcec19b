//! Subcommand implementations. Each returns the document for stdout and an
//! exit status; `main` only parses arguments and prints.

use std::path::Path;
use std::time::Duration;

use bwc_core::asymptotics::{b_exponent, heavy_translate, ExponentPlugs, ExponentQuery, Rounding, TranslateMode};
use bwc_core::bounds::{best_bounds, BoundsOptions, CodeQuantity, Extra, ProblemSpec, RuleSet};
use bwc_core::exact::assets::verify_all;
use bwc_core::exact::{exact_value, Target};
use bwc_core::sdp::poly::{build_poly_sdp, solve_poly_sdp};
use bwc_core::sdp::sdpa::export_sdpa;
use bwc_core::sdp::solver::{integer_bound, solve, SolverOptions};
use bwc_core::sdp::theta::build_theta_prime_sdp;
use bwc_core::tables::{KnownTable, DEFAULT_TABLE_FILE};
use bwc_core::word::Code;
use bwc_core::zonal::bounds::floor_rational;
use bwc_core::{Error, Result};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::{render, run_table, Format, TableId, TableOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn json(v: &impl Serialize, code: i32) -> Result<Self> {
        Ok(Self { stdout: serde_json::to_string_pretty(v)? + "\n", code })
    }
}

/// Exit status for an error: 2 for violated constraints, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParameters(_)
        | Error::LengthMismatch(..)
        | Error::Parse(_)
        | Error::InvalidEnumerator(_)
        | Error::InvalidRecord { .. }
        | Error::Inconsistent { .. }
        | Error::NotCertified(_)
        | Error::AssetMismatch { .. } => EXIT_VIOLATION,
        Error::Solver(_) | Error::Io(_) | Error::Json(_) => EXIT_FAILURE,
    }
}

pub fn load_table(assets: &Path) -> Result<KnownTable> {
    KnownTable::load(assets.join(DEFAULT_TABLE_FILE))
}

fn solver_options(tol: f64, max_iterations: usize, progress: bool) -> SolverOptions {
    SolverOptions { tol, max_iterations, progress }
}

#[derive(Clone, Debug)]
pub struct BoundArgs {
    pub quantity: CodeQuantity,
    pub n: u32,
    pub d: u32,
    pub w: u32,
    pub rules: RuleSet,
    pub asymptotic_rules: bool,
    pub with_sdp: bool,
    pub with_exact: bool,
    pub budget: Duration,
    pub sdp_tol: f64,
    pub sdp_max_iterations: usize,
    pub progress: bool,
}

pub fn run_bound(a: &BoundArgs, assets: &Path) -> Result<Outcome> {
    let spec = ProblemSpec::new(a.quantity, a.n, a.d, a.w)?;
    let table = load_table(assets)?;
    let b = spec.to_b();
    let mut extras = Vec::new();
    let mut exhausted = false;
    if a.with_sdp {
        let opts = solver_options(a.sdp_tol, a.sdp_max_iterations, a.progress);
        let (p, _) = build_theta_prime_sdp(b.n, b.d, b.n - b.w)?;
        let report = solve(&p, &opts)?;
        let v = integer_bound(&report)?;
        extras.push(Extra::upper(b, v, format!("theta-prime on L({},{},{}) ({}, tol {:e})", b.n, b.d, b.n - b.w, report.certificate, opts.tol)));
    }
    if a.with_exact {
        let r = exact_value(Target::B, b.n, b.d, b.w, a.budget)?;
        extras.push(Extra::lower(b, r.value as u128, "exact search (witness)"));
        if r.proved_optimal {
            extras.push(Extra::upper(b, r.value as u128, "exact search (proved optimal)"));
        } else {
            exhausted = true;
            eprintln!("exact search stopped at its budget; the witness size is a lower bound only");
        }
    }
    let opts = BoundsOptions { rules: a.rules, asymptotic_rules: a.asymptotic_rules, ..Default::default() };
    let out = best_bounds(&spec, &table, &opts, &extras)?;
    let doc = json!({
        "quantity": format!("{:?}", spec.quantity),
        "n": spec.n,
        "d": spec.d,
        "w": spec.w,
        "lower": out.interval.lower,
        "upper": out.interval.upper,
        "lower_rule": out.interval.lower_provenance,
        "upper_rule": out.interval.upper_provenance,
        "trace": out.trace,
    });
    Outcome::json(&doc, if exhausted { EXIT_BUDGET } else { EXIT_OK })
}

pub fn run_table_command(id: TableId, format: Format, opts: &TableOptions, assets: &Path) -> Result<Outcome> {
    let table = load_table(assets)?;
    eprintln!("regenerating table {id:?}");
    let doc = run_table(id, assets, &table, opts)?;
    Ok(Outcome { stdout: render(&doc, format)?, code: EXIT_OK })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdpMethod {
    Theta,
    Poly { degree: u32 },
}

#[derive(Clone, Debug)]
pub struct SdpArgs {
    pub n: u32,
    pub d: u32,
    pub w: u32,
    pub method: SdpMethod,
    pub export: Option<std::path::PathBuf>,
    pub sdp_tol: f64,
    pub sdp_max_iterations: usize,
    pub progress: bool,
}

/// Bounds `L(n,d,w)` from above.
pub fn run_sdp(a: &SdpArgs) -> Result<Outcome> {
    ProblemSpec::l(a.n, a.d, a.w)?;
    let opts = solver_options(a.sdp_tol, a.sdp_max_iterations, a.progress);
    let doc = match a.method {
        SdpMethod::Theta => {
            let (p, _) = build_theta_prime_sdp(a.n, a.d, a.w)?;
            if let Some(path) = &a.export {
                std::fs::write(path, export_sdpa(&p))?;
            }
            let r = solve(&p, &opts)?;
            json!({
                "method": "theta-prime",
                "n": a.n, "d": a.d, "w": a.w,
                "value": r.primal_value,
                "certified": r.certified_bound,
                "integer_bound": integer_bound(&r).ok(),
                "status": format!("{:?}", r.status),
                "certificate": r.certificate,
                "tolerance": opts.tol,
                "iterations": r.iterations,
            })
        }
        SdpMethod::Poly { degree } => {
            let p = build_poly_sdp(a.n, a.d, a.w, degree)?;
            if let Some(path) = &a.export {
                std::fs::write(path, export_sdpa(&p.problem))?;
            }
            let r = solve_poly_sdp(&p, &opts)?;
            json!({
                "method": format!("poly{degree}"),
                "n": a.n, "d": a.d, "w": a.w,
                "value": r.bound_f64(),
                "certified": r.bound.to_string(),
                "integer_bound": floor_rational(&r.bound),
                "status": format!("{:?}", r.report.status),
                "certificate": "exact rational repair",
                "tolerance": opts.tol,
                "iterations": r.report.iterations,
            })
        }
    };
    Outcome::json(&doc, EXIT_OK)
}

pub fn run_exact(target: Target, n: u32, d: u32, w: u32, budget: Duration) -> Result<Outcome> {
    if n == 0 || d == 0 || d > n || w > n {
        return Err(Error::InvalidParameters(format!("need 1 <= d <= n and w <= n, got n = {n}, d = {d}, w = {w}")));
    }
    let r = exact_value(target, n, d, w, budget)?;
    let words: Vec<String> = r.witness.words().iter().map(|c| c.to_string()).collect();
    let doc = json!({
        "target": format!("{target:?}"),
        "n": n, "d": d, "w": w,
        "value": r.value,
        "proved_optimal": r.proved_optimal,
        "witness": words,
    });
    Outcome::json(&doc, if r.proved_optimal { EXIT_OK } else { EXIT_BUDGET })
}

pub fn run_asym(delta: f64, omega: f64, plugs: &str) -> Result<Outcome> {
    let p = match plugs {
        "gv-trivial" => ExponentPlugs::gv_trivial(),
        other => return Err(Error::InvalidParameters(format!("unknown plugs {other}"))),
    };
    let (lower, upper) = b_exponent(&ExponentQuery { delta, omega }, &p)?;
    Outcome::json(&json!({ "delta": delta, "omega": omega, "plugs": plugs, "lower": lower, "upper": upper }), EXIT_OK)
}

pub fn run_translate(code: &Path, w2: u32, mode: TranslateMode, rounding: Rounding, seed: u64) -> Result<Outcome> {
    let c1 = Code::load(code)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = heavy_translate(&c1, w2, mode, rounding, &mut rng)?;
    let p = out.shape.probability();
    let guaranteed = (p.clone() * BigRational::from_integer(c1.size().into())).ceil();
    let words: Vec<String> = out.code.words().iter().map(|c| c.to_string()).collect();
    let doc: Value = json!({
        "n": out.shape.n,
        "w1": out.shape.w1,
        "w2": out.shape.w2,
        "translate_weight": out.shape.weight(),
        "probability": p.to_string(),
        "probability_f64": p.to_f64(),
        "guaranteed_size": guaranteed.to_integer().to_string(),
        "size": out.code.size(),
        "min_distance": (out.code.size() > 1).then(|| out.code.min_distance()),
        "translate": out.translate.to_string(),
        "examined": out.examined,
        "words": words,
    });
    Outcome::json(&doc, EXIT_OK)
}

pub fn run_verify_assets(assets: &Path) -> Result<Outcome> {
    let mut codes = Vec::new();
    let mut failed = false;
    match verify_all(assets) {
        Ok(r) => codes = r.into_iter().map(|x| json!({ "name": x.name, "n": x.n, "size": x.size, "d": x.d, "ok": true })).collect(),
        Err(e) => {
            failed = true;
            codes.push(json!({ "error": e.to_string() }));
        }
    }
    let table = match load_table(assets) {
        Ok(t) => json!({ "version": t.version, "records": t.len(), "ok": true }),
        Err(e) => {
            failed = true;
            json!({ "ok": false, "error": e.to_string() })
        }
    };
    Outcome::json(&json!({ "codes": codes, "table": table }), if failed { EXIT_VIOLATION } else { EXIT_OK })
}
