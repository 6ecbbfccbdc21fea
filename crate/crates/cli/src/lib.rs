//! Command-line front end: argument parsing, deterministic JSON output and
//! exit-code mapping. `main.rs` only forwards to [`run_cli`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use mixmult_core::bigraded::{
    degrees_report, e_positivity, e_table_full, e_value_via_criterion, sum_check, BigradedAlgebra,
    FilterRegularCertificate, SumCheck,
};
use mixmult_core::hilbert::{polynomial_of, series_of, ETable};
use mixmult_core::ideal_mixed::{
    closed_form_oracles, mixed_multiplicities, mixed_multiplicities_rees, order_of,
    rees_and_diagonal, rees_bigraded_crosscheck, sat_chain, GradedSetting, Hypotheses,
    MixedIdealReport, SatChain,
};
use mixmult_core::problem::{parse_problem, ProblemFile};
use mixmult_core::selftest::{run_selftest, SelftestConfig};
use mixmult_core::sv::{bezout_check, sv_degrees, JoinSetting};
use mixmult_core::{Error, Field, Genericity, Ideal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;
pub const EXIT_GENERICITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mixmult",
    version,
    about = "Exact bigraded Hilbert polynomials and mixed multiplicities"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed of the ChaCha8 generator behind every random choice.
    #[arg(long, global = true, env = "MIXMULT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Characteristic for files without a `field` line; 0 selects the rationals.
    #[arg(long, global = true, env = "MIXMULT_PRIME", default_value_t = 32003)]
    pub prime: u64,
    #[arg(long, global = true, env = "MIXMULT_MAX_RETRIES", default_value_t = 16)]
    pub max_retries: usize,
    /// Cross-check results by an independent route where one exists.
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long)]
    pub ideal: String,
}

#[derive(Args, Debug, Clone)]
pub struct MixedArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// The ideal `J`.
    #[arg(long)]
    pub ideal: String,
    /// Defining ideal of `A`; the polynomial ring when omitted.
    #[arg(long)]
    pub ambient: Option<String>,
    /// An `m`-primary ideal `I`; the maximal graded ideal when omitted.
    #[arg(long)]
    pub mprimary: Option<String>,
    /// Stop the saturation chain after this many steps.
    #[arg(long)]
    pub upto: Option<usize>,
    /// Label: `J` is generically a complete intersection.
    #[arg(long)]
    pub generic_ci: bool,
    /// Label: least degrees `c1,c2` of two forms in `J` without common factor.
    #[arg(long, value_parser = pair::<u32>)]
    pub least_degrees: Option<(u32, u32)>,
}

/// Parses `a,b`.
fn pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated values, got `{s}`"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<T>()
            .map_err(|_| format!("not a nonnegative integer: `{x}`"))
    };
    Ok((parse(a)?, parse(b)?))
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced Gröbner basis (degree reverse lexicographic order).
    Gb(IdealArgs),
    /// Hilbert series numerator, Hilbert polynomial and mixed multiplicity table.
    Hilbert(IdealArgs),
    /// Degrees of the Hilbert polynomial from saturations, with the table.
    BigradedReport(IdealArgs),
    /// One mixed multiplicity through the positivity criterion.
    BigradedE {
        #[command(flatten)]
        target: IdealArgs,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        j: u32,
    },
    /// Mixed multiplicities `e_i(I|J)`.
    IdealMixed(MixedArgs),
    /// `Σ e_i(m|J)`.
    ReesMult(MixedArgs),
    /// `Σ binom(n,i) e_i(m|J)`.
    DiagonalDegree(MixedArgs),
    /// Degrees of the Stückrad–Vogel cycles of `X ∩ Y`.
    Sv {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// `deg X, deg Y` for a proper intersection, checked against the sum.
        #[arg(long, value_parser = pair::<u64>)]
        degrees: Option<(u64, u64)>,
    },
    /// Fixture checks and property suites.
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Hilbert(_) => "hilbert",
            Command::BigradedReport(_) => "bigraded-report",
            Command::BigradedE { .. } => "bigraded-e",
            Command::IdealMixed(_) => "ideal-mixed",
            Command::ReesMult(_) => "rees-mult",
            Command::DiagonalDegree(_) => "diagonal-degree",
            Command::Sv { .. } => "sv",
            Command::Selftest => "selftest",
        }
    }
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Core(Error::Assertion(_)) => EXIT_ASSERTION,
            Failure::Core(Error::GenericityExhausted { .. }) => EXIT_GENERICITY,
            Failure::Core(_) => EXIT_USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Core(Error::Parse { .. }) => "parse",
            Failure::Core(Error::Assertion(_)) => "assertion",
            Failure::Core(Error::GenericityExhausted { .. }) => "genericity",
            Failure::Core(Error::Unsupported(_)) => "unsupported",
            Failure::Core(Error::Precondition(_)) => "precondition",
            Failure::Core(Error::Inhomogeneous(_)) => "inhomogeneous",
            Failure::Core(_) => "input",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

fn big(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

fn bigs(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big).collect())
}

struct Input {
    path: String,
    digest: String,
    problem: ProblemFile,
}

fn read_input(path: &PathBuf, cfg: &RunConfig) -> Run<Input> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Usage("input is not UTF-8".into()))?;
    let field = if cfg.prime == 0 {
        Field::Rationals
    } else {
        Field::prime(cfg.prime)?
    };
    let problem = parse_problem(&text, &field)?;
    Ok(Input {
        path: path.display().to_string(),
        digest: hex::encode(Sha256::digest(&bytes)),
        problem,
    })
}

fn genericity(cfg: &RunConfig) -> Genericity {
    Genericity {
        seed: cfg.seed,
        max_retries: cfg.max_retries,
        ..Genericity::default()
    }
}

fn table_json(t: &ETable) -> Value {
    let cells: Vec<Value> =
        t.e.iter()
            .map(|((i, j), v)| json!({ "i": i, "j": j, "e": big(v) }))
            .collect();
    json!({ "r": t.r, "r1": t.r1, "r2": t.r2, "cells": cells, "diagonal": bigs(&t.diagonal()) })
}

fn certificate_json(c: &FilterRegularCertificate) -> Value {
    let steps: Vec<Value> = c
        .elements
        .iter()
        .zip(&c.bidegrees)
        .zip(&c.checks)
        .map(|((z, d), chk)| {
            json!({
                "element": z.to_string(),
                "bidegree": [d.d1, d.d2],
                "passed": chk.passed,
                "witness": chk.witness.as_ref().map(|w| w.to_string()),
            })
        })
        .collect();
    json!({ "steps": steps, "passed": c.passed(), "attempts": c.attempts, "seed": c.seed })
}

fn chain_json(c: &SatChain) -> Value {
    let steps: Vec<Value> = c
        .steps
        .iter()
        .map(|s| {
            json!({
                "element": s.element.to_string(),
                "nzd": s.nzd_ok,
                "dim": s.dim,
                "attempts": s.attempts,
                "saturation": s.ideal.groebner_basis().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "d_work": c.d_work, "dim0": c.dim0, "seed": c.seed, "steps": steps })
}

fn report_json(r: &MixedIdealReport) -> Value {
    json!({
        "e": bigs(&r.e),
        "rho": r.rho,
        "s_j": r.s_j,
        "dim_a": r.dim_a,
        "ht_j": r.ht_j,
        "ht_checked": r.ht_checked,
    })
}

fn algebra(input: &Input, name: &str) -> Run<BigradedAlgebra> {
    Ok(BigradedAlgebra::new(input.problem.ideal(name)?)?)
}

fn setting(input: &Input, a: &MixedArgs) -> Run<GradedSetting> {
    let j = input.problem.ideal(&a.ideal)?;
    let ia = match &a.ambient {
        Some(n) => input.problem.ideal(n)?,
        None => Ideal::zero(j.ring()),
    };
    let i = a
        .mprimary
        .as_ref()
        .map(|n| input.problem.ideal(n))
        .transpose()?;
    Ok(GradedSetting::new(ia, i, j)?)
}

/// Mixed multiplicities by the chain route when `J` is generated in one
/// degree, by the Rees route otherwise.
fn mixed(s: &GradedSetting, cfg: &RunConfig) -> Run<(MixedIdealReport, Value)> {
    let g = genericity(cfg);
    if s.j_degree()?.is_some() {
        let (chain, rep) = mixed_multiplicities(s, &g)?;
        let mut cert = json!({ "route": "chain", "chain": chain_json(&chain) });
        if cfg.verify && s.i_is_m()? {
            let (table, agree) = rees_bigraded_crosscheck(s, &rep.e)?;
            if !agree {
                return Err(Error::Assertion("chain and Rees routes disagree".into()).into());
            }
            cert["crosscheck"] = json!({ "agree": agree, "table": table_json(&table) });
        }
        Ok((rep, cert))
    } else {
        let (route, rep) = mixed_multiplicities_rees(s)?;
        Ok((
            rep,
            json!({ "route": "rees", "table": table_json(&route.table) }),
        ))
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Run<(Value, Value, Value)> {
    let g = genericity(cfg);
    let inputs =
        |i: &Input, names: &[&str]| json!({ "file": i.path, "sha256": i.digest, "names": names });
    match cmd {
        Command::Gb(a) => {
            let input = read_input(&a.file, cfg)?;
            let ideal = input.problem.ideal(&a.ideal)?;
            let basis: Vec<String> = ideal
                .groebner_basis()
                .iter()
                .map(|p| p.to_string())
                .collect();
            let result = json!({
                "ring": ideal.ring().to_string(),
                "order": "degrevlex",
                "basis": basis,
            });
            let cert = if cfg.verify {
                json!({ "buchberger_criterion": ideal.verify_basis() })
            } else {
                json!({})
            };
            Ok((inputs(&input, &[&a.ideal]), result, cert))
        }
        Command::Hilbert(a) => {
            let input = read_input(&a.file, cfg)?;
            let ideal = input.problem.ideal(&a.ideal)?;
            let series = series_of(&ideal)?;
            let poly = polynomial_of(&series);
            let table = mixmult_core::hilbert::e_table(&poly, None)?;
            let numerator: Vec<Value> = series
                .numerator
                .iter()
                .map(|((u, v), c)| json!({ "u": u, "v": v, "c": big(c) }))
                .collect();
            let coeffs: Vec<Value> = poly
                .coeffs
                .iter()
                .map(|((i, j), c)| json!({ "i": i, "j": j, "a": big(c) }))
                .collect();
            let result = json!({
                "numerator": numerator,
                "n1": series.n1,
                "n2": series.n2,
                "polynomial": { "basis": "binom(u,i)*binom(v,j)", "coeffs": coeffs, "degree": poly.degree,
                                "stability": [poly.stability.0, poly.stability.1] },
                "table": table_json(&table),
            });
            Ok((inputs(&input, &[&a.ideal]), result, json!({})))
        }
        Command::BigradedReport(a) => {
            let input = read_input(&a.file, cfg)?;
            let alg = algebra(&input, &a.ideal)?;
            let rep = degrees_report(&alg)?;
            let table = e_table_full(&alg)?;
            let sum = match sum_check(&alg)? {
                SumCheck::Holds { multiplicity, sum } => {
                    json!({ "status": "holds", "e": big(&multiplicity), "sum": big(&sum) })
                }
                SumCheck::Fails { multiplicity, sum } => {
                    return Err(Error::Assertion(format!(
                        "e(R) = {multiplicity} but Σ e_ij = {sum}"
                    ))
                    .into())
                }
                SumCheck::PreconditionUnknown => json!({ "status": "precondition_unknown" }),
            };
            let result = json!({
                "r": rep.r, "r1": rep.r1, "r2": rep.r2,
                "dims": rep.dims,
                "polynomial_zero": rep.r.is_none(),
                "table": table_json(&table),
                "sum_check": sum,
            });
            let mut cert = json!({});
            if cfg.verify {
                let mut cells = Vec::new();
                if let Some(r) = table.r {
                    for i in 0..=r {
                        let v = e_value_via_criterion(&alg, i, r - i, &g)?;
                        if v.value != table.get(i, r - i) {
                            return Err(Error::Assertion(format!(
                                "criterion gives e_{i}{} = {}",
                                r - i,
                                v.value
                            ))
                            .into());
                        }
                        cells.push(json!({ "i": i, "j": r - i, "e": big(&v.value) }));
                    }
                }
                cert = json!({ "criterion": cells });
            }
            Ok((inputs(&input, &[&a.ideal]), result, cert))
        }
        Command::BigradedE { target, i, j } => {
            let input = read_input(&target.file, cfg)?;
            let alg = algebra(&input, &target.ideal)?;
            let v = e_value_via_criterion(&alg, *i, *j, &g)?;
            let mut result =
                json!({ "i": i, "j": j, "e": big(&v.value), "witness_dim": v.witness_dim });
            let mut cert = json!({});
            if let Some(c) = &v.certificate {
                cert["sequence"] = certificate_json(c);
            } else if v.witness_dim.is_some() {
                cert["positivity"] = certificate_json(&e_positivity(&alg, *i, *j, &g)?.certificate);
            }
            if cfg.verify {
                let entry = e_table_full(&alg)?.get(*i, *j);
                if entry != v.value {
                    return Err(Error::Assertion(format!(
                        "table gives {entry}, criterion gives {}",
                        v.value
                    ))
                    .into());
                }
                result["table_entry"] = big(&entry);
            }
            Ok((inputs(&input, &[&target.ideal]), result, cert))
        }
        Command::IdealMixed(a) => {
            let input = read_input(&a.file, cfg)?;
            let s = setting(&input, a)?;
            let names = mixed_names(a);
            if let Some(k) = a.upto {
                let chain = sat_chain(&s, k, &g)?;
                let dims: Vec<i64> = (0..=k).map(|i| chain.dim(i)).collect();
                return Ok((
                    inputs(&input, &names),
                    json!({ "dims": dims }),
                    json!({ "chain": chain_json(&chain) }),
                ));
            }
            let (rep, mut cert) = mixed(&s, cfg)?;
            let mut result = report_json(&rep);
            if s.i_is_m()? {
                let (o, regular) = order_of(&s)?;
                result["order"] = json!({ "value": o, "hypothesis_met": regular });
                let hyp = Hypotheses {
                    generic_ci: a.generic_ci,
                    least_degrees: a.least_degrees,
                };
                let formulas: Vec<Value> = closed_form_oracles(&s, &hyp, &g)?
                    .iter()
                    .map(|f| {
                        let computed = rep.e.get(f.index).cloned().unwrap_or_default();
                        json!({ "formula": f.formula, "index": f.index, "value": big(&f.value), "matches": computed == f.value })
                    })
                    .collect();
                cert["closed_forms"] = Value::Array(formulas);
            }
            Ok((inputs(&input, &names), result, cert))
        }
        Command::ReesMult(a) | Command::DiagonalDegree(a) => {
            let input = read_input(&a.file, cfg)?;
            let s = setting(&input, a)?;
            let (rep, cert) = mixed(&s, cfg)?;
            let (rees, diag) = rees_and_diagonal(&s, &rep)?;
            let result = if matches!(cmd, Command::ReesMult(_)) {
                json!({ "rees_mult": big(&rees), "e": bigs(&rep.e) })
            } else {
                let d = diag.ok_or_else(|| {
                    Error::Precondition(
                        "the diagonal degree needs a polynomial ring and J generated in one degree"
                            .into(),
                    )
                })?;
                json!({ "diagonal_degree": big(&d), "e": bigs(&rep.e) })
            };
            Ok((inputs(&input, &mixed_names(a)), result, cert))
        }
        Command::Sv {
            file,
            x,
            y,
            degrees,
        } => {
            let input = read_input(file, cfg)?;
            let js = JoinSetting::new(input.problem.ideal(x)?, input.problem.ideal(y)?)?;
            let rep = sv_degrees(&js, &g)?;
            let check = bezout_check(&rep, *degrees);
            let mut cert = json!({
                "seeds": rep.seeds,
                "telescopes": check.telescopes,
                "bezout": check.matches_product,
            });
            if cfg.verify {
                let other = sv_degrees(&js, &g.reseeded(1))?;
                if other.degs != rep.degs {
                    return Err(Error::Assertion("two seeds give different degrees".into()).into());
                }
                cert["second_seed"] = json!(other.seeds);
            }
            if !check.holds() {
                return Err(
                    Error::Assertion("degree sum differs from the expected total".into()).into(),
                );
            }
            let result = json!({
                "degs": bigs(&rep.degs),
                "sum": big(&rep.sum()),
                "e": bigs(&rep.e_list),
                "n": js.n,
            });
            Ok((inputs(&input, &[x, y]), result, cert))
        }
        Command::Selftest => {
            let report = run_selftest(&SelftestConfig {
                genericity: g,
                ..SelftestConfig::default()
            });
            let suites: Vec<Value> = report
                .suites
                .iter()
                .map(|s| json!({ "name": s.name, "passed": s.passed, "failed": s.failed, "skipped": s.skipped, "failures": s.failures }))
                .collect();
            let result =
                json!({ "passed": report.passed(), "failed": report.failed(), "suites": suites });
            if !report.ok() {
                return Err(Failure::Core(Error::Assertion(format!(
                    "{} selftest checks failed: {result}",
                    report.failed()
                ))));
            }
            Ok((json!({}), result, json!({})))
        }
    }
}

fn mixed_names(a: &MixedArgs) -> Vec<&str> {
    let mut names = vec![a.ideal.as_str()];
    names.extend(a.ambient.as_deref());
    names.extend(a.mprimary.as_deref());
    names
}

/// Runs a parsed command and renders the JSON document.
pub fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    let config = json!({ "seed": cfg.seed, "prime": cfg.prime, "max_retries": cfg.max_retries, "verify": cfg.verify });
    match dispatch(&cli.command, cfg) {
        Ok((inputs, result, certificates)) => {
            let doc = json!({
                "command": cli.command.name(),
                "inputs": inputs,
                "config": config,
                "result": result,
                "certificates": certificates,
            });
            Outcome {
                code: EXIT_OK,
                stdout: render(&doc),
                stderr: String::new(),
            }
        }
        Err(f) => {
            let doc = json!({
                "command": cli.command.name(),
                "config": config,
                "error": { "kind": f.kind(), "message": f.message() },
            });
            Outcome {
                code: f.code(),
                stdout: render(&doc),
                stderr: format!("error: {}\n", f.message()),
            }
        }
    }
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Parses arguments (usage errors exit with code 1) and runs the command.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}
