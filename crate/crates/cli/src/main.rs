//! `caus`: evaluate type expressions over a chosen base model, test
//! membership and causality of serialized states and morphisms, compare sets,
//! and run the randomized identity suite.
//!
//! Exit codes: 0 for a completed query (including negative answers such as
//! `member` printing `false`), 1 when `suite` or `axioms` found failing
//! instances, 2 for usage and input errors. JSON output is one line per
//! invocation with a stable schema, so identical invocations produce
//! byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use caus_core::causal::{check_causal, CausalError, CausalSet};
use caus_core::dsl;
use caus_core::jsonio::{self, MorphismDto, SetStats, StateDto};
use caus_core::linalg::Vector;
use caus_core::model::{cone_member, Backend, ModelObject};
use caus_core::rational::Rational;
use caus_core::suite::{run_check, CheckReport, CHECK_NAMES};

#[derive(Parser)]
#[command(
    name = "caus",
    version,
    about = "Exact workbench for sets of states closed under double dual"
)]
struct Cli {
    /// Base model the expressions are interpreted in.
    #[arg(long, global = true, value_enum, default_value = "classical")]
    backend: BackendArg,
    /// Output format. JSON is one line with a stable schema.
    #[arg(long, global = true, value_enum, default_value = "human")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    /// Probability-style model: nonnegative coordinates.
    Classical,
    /// Signed variant of the classical model: no positivity constraint.
    ClassicalAffine,
    /// Finite-dimensional quantum model: PSD block matrices.
    Quantum,
}

impl BackendArg {
    fn backend(self) -> Backend {
        match self {
            BackendArg::Classical => Backend::ClassicalNonneg,
            BackendArg::ClassicalAffine => Backend::ClassicalAffine,
            BackendArg::Quantum => Backend::QuantumCp,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Relation {
    Equal,
    Subset,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a type expression and print its summary.
    Eval { expr: String },
    /// Test whether the state in FILE belongs to the set named by EXPR.
    Member { expr: String, state: PathBuf },
    /// Test whether the morphism in FILE maps every SRC state into DST.
    Causal {
        morphism: PathBuf,
        src: String,
        dst: String,
    },
    /// Compare two type expressions as sets of states.
    Compare {
        #[arg(value_enum)]
        relation: Relation,
        left: String,
        right: String,
    },
    /// Re-verify the base-model axioms on randomized instances.
    Axioms {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the randomized identity checks.
    Suite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run one named check instead of all of them.
        #[arg(long)]
        check: Option<String>,
    },
    /// Evaluate EXPR and write the full set description to OUT as JSON.
    Export { expr: String, out: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let backend = cli.backend.backend();
    let format = cli.format;
    let result = match cli.command {
        Command::Eval { expr } => cmd_eval(backend, format, &expr),
        Command::Member { expr, state } => cmd_member(backend, format, &expr, &state),
        Command::Causal { morphism, src, dst } => {
            cmd_causal(backend, format, &morphism, &src, &dst)
        }
        Command::Compare { relation, left, right } => {
            cmd_compare(backend, format, relation, &left, &right)
        }
        Command::Axioms { seed } => cmd_reports(format, seed, &["apc_axioms"], true),
        Command::Suite { seed, check } => cmd_suite(format, seed, check),
        Command::Export { expr, out } => cmd_export(backend, format, &expr, &out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn eval_expr(backend: Backend, src: &str) -> Result<CausalSet, String> {
    let expr = dsl::parse(src).map_err(|e| format!("in `{src}`: {e}"))?;
    dsl::eval(&expr, backend).map_err(|e| format!("cannot evaluate `{src}`: {e}"))
}

fn object_label(object: &ModelObject) -> String {
    match object {
        ModelObject::Classical(n) => format!("classical({n})"),
        ModelObject::Quantum(dims) => {
            let parts: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            format!("quantum[{}]", parts.join(","))
        }
    }
}

fn emit<T: Serialize>(format: Format, payload: &T, human: impl FnOnce()) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(payload).expect("output serializes"))
        }
        Format::Human => human(),
    }
}

#[derive(Serialize)]
struct SetSummary {
    backend: Backend,
    object: ModelObject,
    ambient: usize,
    stats: SetStats,
}

fn summarize(set: &CausalSet) -> Result<SetSummary, String> {
    Ok(SetSummary {
        backend: set.backend,
        object: set.object.clone(),
        ambient: set.ambient(),
        stats: SetStats {
            affine_dim: set.body.dim(),
            is_flat: set.is_flat().map_err(|e| e.to_string())?,
            is_first_order: set.is_first_order().map_err(|e| e.to_string())?,
        },
    })
}

fn print_summary(s: &SetSummary) {
    println!("backend: {}", s.backend.name());
    println!("object: {}", object_label(&s.object));
    println!("ambient: {}", s.ambient);
    match s.stats.affine_dim {
        Some(d) => println!("affine dim: {d}"),
        None => println!("affine dim: empty"),
    }
    println!("flat: {}", s.stats.is_flat);
    println!("first-order: {}", s.stats.is_first_order);
}

fn cmd_eval(backend: Backend, format: Format, expr: &str) -> Result<u8, String> {
    let set = eval_expr(backend, expr)?;
    let summary = summarize(&set)?;
    emit(format, &summary, || print_summary(&summary));
    Ok(0)
}

/// Why a state is not a member: it leaves the base cone, or it violates one
/// of the affine constraints cutting out the set.
#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Witness {
    Cone,
    Affine {
        row: Vec<Rational>,
        rhs: Rational,
        got: Rational,
    },
}

#[derive(Serialize)]
struct MemberOut {
    member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
}

fn affine_witness(set: &CausalSet, x: &Vector) -> Witness {
    if set.body.is_empty() {
        // The empty set is cut out by the unsatisfiable system 0.x = 1.
        return Witness::Affine {
            row: vec![Rational::zero(); set.ambient()],
            rhs: Rational::one(),
            got: Rational::zero(),
        };
    }
    let (e, rhs) = set.body.constraints_of().expect("non-empty body has constraints");
    for i in 0..e.rows() {
        let row = e.row(i);
        let got = row.dot(x);
        if got != rhs.0[i] {
            return Witness::Affine { row: row.0, rhs: rhs.0[i].clone(), got };
        }
    }
    unreachable!("a non-member violates some constraint row")
}

fn rational_list(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(|r| r.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn cmd_member(backend: Backend, format: Format, expr: &str, path: &Path) -> Result<u8, String> {
    let set = eval_expr(backend, expr)?;
    let dto: StateDto = read_json(path)?;
    let (file_backend, object, x) =
        jsonio::state_from_dto(&dto).map_err(|e| format!("{}: {e}", path.display()))?;
    if file_backend != backend {
        return Err(format!(
            "state file uses the {} backend but the session uses {}",
            file_backend.name(),
            backend.name()
        ));
    }
    if object != set.object {
        return Err(format!(
            "state lives on {} but the expression names {}",
            object_label(&object),
            object_label(&set.object)
        ));
    }
    let in_cone = cone_member(backend, &set.object, &x).map_err(|e| e.to_string())?;
    let member = in_cone && set.body.contains(&x);
    let witness = if member {
        None
    } else if !in_cone {
        Some(Witness::Cone)
    } else {
        Some(affine_witness(&set, &x))
    };
    let out = MemberOut { member, witness };
    emit(format, &out, || {
        println!("{}", out.member);
        match &out.witness {
            None => {}
            Some(Witness::Cone) => println!("state leaves the base cone"),
            Some(Witness::Affine { row, rhs, got }) => {
                println!("violated constraint: {} . x = {got}, want {rhs}", rational_list(row))
            }
        }
    });
    Ok(0)
}

#[derive(Serialize)]
struct CausalOut {
    causal: bool,
    cone_violation: bool,
}

fn cmd_causal(
    backend: Backend,
    format: Format,
    morphism: &Path,
    src: &str,
    dst: &str,
) -> Result<u8, String> {
    let dto: MorphismDto = read_json(morphism)?;
    let m = jsonio::morphism_from_dto(&dto).map_err(|e| format!("{}: {e}", morphism.display()))?;
    if m.backend != backend {
        return Err(format!(
            "morphism file uses the {} backend but the session uses {}",
            m.backend.name(),
            backend.name()
        ));
    }
    let c = eval_expr(backend, src)?;
    let d = eval_expr(backend, dst)?;
    let out = match check_causal(&m, &c, &d) {
        Ok(true) => CausalOut { causal: true, cone_violation: false },
        Ok(false) => CausalOut { causal: false, cone_violation: false },
        Err(CausalError::ConeViolation) => CausalOut { causal: false, cone_violation: true },
        Err(e) => return Err(e.to_string()),
    };
    emit(format, &out, || {
        if out.causal {
            println!("causal");
        } else if out.cone_violation {
            println!("not causal: the matrix leaves the base cone");
        } else {
            println!("not causal: some source state lands outside the target set");
        }
    });
    Ok(0)
}

#[derive(Serialize)]
struct CompareOut {
    relation: &'static str,
    holds: bool,
}

fn cmd_compare(
    backend: Backend,
    format: Format,
    relation: Relation,
    left: &str,
    right: &str,
) -> Result<u8, String> {
    let l = eval_expr(backend, left)?;
    let r = eval_expr(backend, right)?;
    let (name, holds) = match relation {
        Relation::Equal => ("equal", l.equal_set(&r)),
        Relation::Subset => ("subset", l.subset_set(&r)),
    };
    let out = CompareOut { relation: name, holds: holds.map_err(|e| e.to_string())? };
    emit(format, &out, || println!("{}", out.holds));
    Ok(0)
}

fn print_report(report: &CheckReport, ms: u128) {
    if report.passed() {
        println!("{}: pass ({} instances, {} ms)", report.check, report.instances, ms);
    } else {
        println!(
            "{}: FAIL ({} instances, {} failures, {} ms)",
            report.check,
            report.instances,
            report.failures.len(),
            ms
        );
        for f in report.failures.iter().take(3) {
            println!("  inputs: {}", f.inputs);
            println!("  expected: {}", f.expected);
            println!("  got: {}", f.got);
        }
    }
}

/// Run the named checks in order. `single` selects the bare-object JSON shape
/// used by `axioms`; `suite` emits a JSON array even for one check.
fn cmd_reports(format: Format, seed: u64, names: &[&str], single: bool) -> Result<u8, String> {
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    for name in names {
        let start = Instant::now();
        reports.push(run_check(name, seed).map_err(|e| e.to_string())?);
        timings.push(start.elapsed().as_millis());
    }
    match format {
        Format::Json if single => {
            println!("{}", serde_json::to_string(&reports[0]).expect("report serializes"))
        }
        Format::Json => {
            println!("{}", serde_json::to_string(&reports).expect("reports serialize"))
        }
        Format::Human => {
            for (report, ms) in reports.iter().zip(&timings) {
                print_report(report, *ms);
            }
            if reports.len() > 1 {
                let failed = reports.iter().filter(|r| !r.passed()).count();
                println!(
                    "{} checks, {} passed, {} failed",
                    reports.len(),
                    reports.len() - failed,
                    failed
                );
            }
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn cmd_suite(format: Format, seed: u64, check: Option<String>) -> Result<u8, String> {
    let names: Vec<&str> = match &check {
        Some(n) => match CHECK_NAMES.iter().find(|c| **c == n.as_str()) {
            Some(name) => vec![name],
            None => {
                return Err(format!(
                    "unknown check `{n}`; valid names: {}",
                    CHECK_NAMES.join(", ")
                ))
            }
        },
        None => CHECK_NAMES.to_vec(),
    };
    cmd_reports(format, seed, &names, false)
}

#[derive(Serialize)]
struct ExportOut {
    path: String,
    stats: SetStats,
}

fn cmd_export(backend: Backend, format: Format, expr: &str, out: &Path) -> Result<u8, String> {
    let set = eval_expr(backend, expr)?;
    let dump = jsonio::dump_causal_set(&set).map_err(|e| e.to_string())?;
    let mut text = serde_json::to_string_pretty(&dump).expect("dump serializes");
    text.push('\n');
    fs::write(out, text).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
    let result = ExportOut { path: out.display().to_string(), stats: dump.stats.clone() };
    emit(format, &result, || {
        let dim = match result.stats.affine_dim {
            Some(d) => d.to_string(),
            None => "empty".into(),
        };
        println!("wrote {} (ambient {}, affine dim {})", result.path, set.ambient(), dim);
    });
    Ok(0)
}
