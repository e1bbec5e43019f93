//! Command-line front end. [`run`] does all the work and returns the exit
//! code with the text to print, so the binary and the tests share one path.

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use liecolor::catalog;
use liecolor::derivations::{
    is_n_derivation, n_derivation_space_capped, DerivationError, DEFAULT_MAX_N,
};
use liecolor::verify::{matrix_strings, Verifier};
use liecolor::{fingerprint, parse_algebra_file, serialize_algebra, ColorAlgebra};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Random pairs drawn by the closure check.
const CLOSURE_TRIALS: usize = 100;

#[derive(Parser, Debug)]
#[command(
    name = "liecolor",
    version,
    about = "Exact computations with Lie color algebras"
)]
struct Cli {
    /// Print a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,

    /// Largest n accepted for n-derivation computations
    #[arg(long, global = true, value_name = "K", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the bicharacter and color algebra axioms
    Check(Target),
    /// Dimensions of [L, L] and Z(L), and whether L is perfect
    Invariants(Target),
    /// Per-degree dimensions and basis maps of nDer(L)
    Der {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Check nDer(L) = Der(L) and nDer(Der(L)) = ad(Der(L)), with optional lemma checks
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Part::All)]
        part: Part,
        /// Also run the supporting lemma checks
        #[arg(long)]
        lemmas: bool,
    },
    /// List or print the shipped algebras
    #[command(subcommand)]
    Catalog(CatalogCommand),
}

#[derive(Args, Debug)]
struct Target {
    /// Path to an algebra file, or catalog:NAME
    target: String,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Emit { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    All,
}

/// Exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr,
        }
    }
}

#[derive(Serialize, Debug)]
struct Check {
    name: String,
    passed: bool,
    detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// The machine report. Timings are left out so reruns are byte-identical.
#[derive(Serialize, Debug)]
struct Report {
    command: Vec<String>,
    fingerprint: String,
    dim: usize,
    checks: Vec<Check>,
    data: Value,
}

/// Runs one invocation. `argv` includes the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let echo = argv.iter().skip(1).cloned().collect();
    match dispatch(&cli, echo) {
        Ok(out) => out,
        Err(message) => Outcome::usage(format!("error: {message}")),
    }
}

fn load(target: &str) -> Result<ColorAlgebra, String> {
    if let Some(name) = target.strip_prefix("catalog:") {
        return catalog::by_name(name).ok_or_else(|| format!("unknown catalog entry {name:?}"));
    }
    let text = std::fs::read_to_string(target).map_err(|e| format!("cannot read {target}: {e}"))?;
    parse_algebra_file(&text).map_err(|e| format!("{target}: {e}"))
}

fn dispatch(cli: &Cli, echo: Vec<String>) -> Result<Outcome, String> {
    let start = Instant::now();
    let (alg, checks, data) = match &cli.command {
        Command::Catalog(cmd) => return Ok(catalog_command(cmd, cli.json)),
        Command::Check(t) => {
            let alg = load(&t.target)?;
            let (checks, data) = check(&alg);
            (alg, checks, data)
        }
        Command::Invariants(t) => {
            let alg = load(&t.target)?;
            let data = invariants(&alg);
            (alg, Vec::new(), data)
        }
        Command::Der { target, n } => {
            let alg = load(&target.target)?;
            let (checks, data) = der(&alg, *n, cli.max_n).map_err(|e| e.to_string())?;
            (alg, checks, data)
        }
        Command::Verify {
            target,
            n,
            part,
            lemmas,
        } => {
            let alg = load(&target.target)?;
            let (checks, data) = verify(&alg, *n, *part, *lemmas, cli.max_n)?;
            (alg, checks, data)
        }
    };
    let elapsed = start.elapsed();
    let passed = checks.iter().all(|c| c.passed);
    let report = Report {
        command: echo,
        fingerprint: fingerprint(&alg),
        dim: alg.dim(),
        checks,
        data,
    };
    let stdout = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        human(&report, elapsed.as_secs_f64() * 1000.0)
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAILED },
        stdout,
        stderr: String::new(),
    })
}

fn catalog_command(cmd: &CatalogCommand, as_json: bool) -> Outcome {
    let stdout = match cmd {
        CatalogCommand::List if as_json => {
            let mut s = serde_json::to_string_pretty(catalog::NAMES).expect("names serialize");
            s.push('\n');
            s
        }
        CatalogCommand::List => catalog::NAMES.iter().map(|n| format!("{n}\n")).collect(),
        CatalogCommand::Emit { name } => match catalog::by_name(name) {
            Some(alg) => serialize_algebra(&alg),
            None => return Outcome::usage(format!("error: unknown catalog entry {name:?}")),
        },
    };
    Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

fn triples(v: &[(usize, usize, usize)], alg: &ColorAlgebra) -> Vec<[String; 3]> {
    let names = alg.names();
    v.iter()
        .map(|&(i, j, k)| [names[i].clone(), names[j].clone(), names[k].clone()])
        .collect()
}

fn check(alg: &ColorAlgebra) -> (Vec<Check>, Value) {
    let report = alg.check_color_axioms();
    let detail = |v: &[(usize, usize, usize)]| {
        if v.is_empty() {
            "ok".to_string()
        } else {
            format!("{} violations, first at {:?}", v.len(), v[0])
        }
    };
    let checks = vec![
        Check::new("bicharacter", alg.bichar().validate().is_valid(), "ok"),
        Check::new(
            "grading",
            report.grading.is_empty(),
            detail(&report.grading),
        ),
        Check::new(
            "antisymmetry",
            report.antisymmetry.is_empty(),
            detail(&report.antisymmetry),
        ),
        Check::new("jacobi", report.jacobi.is_empty(), detail(&report.jacobi)),
    ];
    let data = json!({
        "conductor": alg.conductor(),
        "violations": {
            "grading": report.grading,
            "antisymmetry": report.antisymmetry,
            "jacobi": report.jacobi,
        },
        "violation_names": {
            "antisymmetry": triples(&report.antisymmetry, alg),
            "jacobi": triples(&report.jacobi, alg),
        },
    });
    (checks, data)
}

fn invariants(alg: &ColorAlgebra) -> Value {
    let derived = alg.derived_subalgebra().dim();
    let center = alg.center().dim();
    json!({
        "derived_dim": derived,
        "center_dim": center,
        "perfect": derived == alg.dim(),
    })
}

fn der(alg: &ColorAlgebra, n: usize, max_n: usize) -> Result<(Vec<Check>, Value), DerivationError> {
    let space = n_derivation_space_capped(alg, n, max_n)?;
    let mut blocks = Vec::new();
    let mut unverified = Vec::new();
    for block in space.blocks() {
        let maps = block.basis_maps();
        for (i, map) in maps.iter().enumerate() {
            if !is_n_derivation(alg, map, n)? {
                unverified.push(format!("{:?}#{i}", block.degree().residues()));
            }
        }
        blocks.push(json!({
            "degree": block.degree(),
            "dim": block.dim(),
            "basis": maps.iter().map(|m| matrix_strings(m.matrix())).collect::<Vec<_>>(),
        }));
    }
    let detail = if unverified.is_empty() {
        format!("{} basis maps pass direct evaluation", space.total_dim())
    } else {
        format!("failing: {}", unverified.join(", "))
    };
    let checks = vec![Check::new("basis_verified", unverified.is_empty(), detail)];
    let data = json!({ "n": n, "total_dim": space.total_dim(), "blocks": blocks });
    Ok((checks, data))
}

/// Precondition failures become failed checks; anything else is a usage error.
fn soft<T>(result: Result<T, DerivationError>) -> Result<Result<T, String>, String> {
    match result {
        Ok(v) => Ok(Ok(v)),
        Err(DerivationError::PreconditionFailed(why)) => Ok(Err(why)),
        Err(e) => Err(e.to_string()),
    }
}

fn verify(
    alg: &ColorAlgebra,
    n: usize,
    part: Part,
    lemmas: bool,
    max_n: usize,
) -> Result<(Vec<Check>, Value), String> {
    if n < 2 {
        return Err(format!("--n must be at least 2, got {n}"));
    }
    let v = Verifier::new(alg).with_max_n(max_n);
    let mut checks = Vec::new();
    let mut data = serde_json::Map::new();

    if part != Part::Two {
        let r = v.nder_equals_der(n).map_err(|e| e.to_string())?;
        let detail = if r.preconditions_hold {
            format!(
                "Der {}, {n}Der {}, delta fixed point {}",
                r.der_total,
                r.nder_total,
                r.delta_fixed_point.unwrap_or(false)
            )
        } else {
            format!(
                "preconditions do not hold (perfect: {}, center dim {})",
                r.is_perfect, r.center_dim
            )
        };
        checks.push(Check::new("nder_equals_der", r.passed, detail));
        data.insert("nder_equals_der".into(), json!(r));
    }
    if part != Part::One {
        match soft(v.second_statement(n))? {
            Ok(r) => {
                let detail = format!(
                    "dim Der {}, preserves ad(L) {}, annihilator dim {}, witnesses {}",
                    r.der_dim, r.preserves_inner, r.annihilator_dim, r.witnesses_found
                );
                checks.push(Check::new("second_statement", r.passed, detail));
                data.insert("second_statement".into(), json!(r));
            }
            Err(why) => {
                checks.push(Check::new(
                    "second_statement",
                    false,
                    format!("precondition failed: {why}"),
                ));
                data.insert("second_statement".into(), Value::Null);
            }
        }
    }
    if lemmas {
        let mut reports = Vec::new();
        let runs: Vec<(&str, Result<_, DerivationError>)> = vec![
            ("closure", v.closure(n, CLOSURE_TRIALS)),
            ("inner_ideal", v.inner_ideal(n)),
            ("centralizer_trivial", v.centralizer_trivial(n)),
            (
                "delta_membership",
                if n >= 3 {
                    v.delta_membership(n)
                } else {
                    Err(DerivationError::PreconditionFailed("needs n >= 3".into()))
                },
            ),
            ("ad_compat", v.ad_compat()),
        ];
        for (name, result) in runs {
            match soft(result)? {
                Ok(r) => {
                    let detail = match r.dim {
                        Some(dim) => format!("{} checked, dim {dim}", r.checked),
                        None if r.failures.is_empty() => format!("{} checked", r.checked),
                        None => format!("{} checked, {} failures", r.checked, r.failures.len()),
                    };
                    checks.push(Check::new(name, r.passed, detail));
                    reports.push(json!(r));
                }
                Err(why) => {
                    checks.push(Check::new(
                        name,
                        false,
                        format!("precondition failed: {why}"),
                    ));
                    reports.push(json!({ "check": name, "precondition_failed": why }));
                }
            }
        }
        data.insert("lemmas".into(), Value::Array(reports));
    }
    Ok((checks, Value::Object(data)))
}

fn human(report: &Report, millis: f64) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "algebra: dim {}, fingerprint {}",
        report.dim,
        &report.fingerprint[..16]
    );
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {}: {}", c.name, c.detail);
    }
    if let Value::Object(map) = &report.data {
        for (key, value) in map {
            if key == "violations" || key == "violation_names" || key == "lemmas" {
                continue;
            }
            let text = match value {
                Value::Array(_) | Value::Object(_) => summarize(value),
                other => other.to_string(),
            };
            let _ = writeln!(out, "{key}: {text}");
        }
    }
    let _ = writeln!(out, "time: {millis:.1} ms");
    out
}

/// One-line rendering of nested report data, dropping matrices.
fn summarize(value: &Value) -> String {
    match value {
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .filter(|(k, _)| !matches!(k.as_str(), "basis" | "witnesses"))
                .map(|(k, v)| format!("{k}={}", summarize(v)))
                .collect();
            format!("{{{}}}", parts.join(", "))
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(summarize).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}
