mod reproduce;

use clap::{Args, Parser, Subcommand};
use quiverkit::coxeter::{parse_word, CoxeterError, CoxeterSystem};
use quiverkit::findim::{
    ext2_bimodule, global_dimension, tilde_quiver, tor2_functor_nilpotent, tor2_nilpotent, BoundAlgebra, FindimError,
    GlobalDimension, Nilpotency, DEFAULT_BOUND,
};
use quiverkit::groebner::{Verdict, DEFAULT_DMAX};
use quiverkit::mesh::{knit_postprojective, knit_preinjective, MeshError};
use quiverkit::pipeline::{run_report, PipelineError, SliceCategory, TiltingData};
use quiverkit::potential::{ginzburg, is_jacobi_finite, PotentialError, Qp};
use quiverkit::quiver::{Quiver, QuiverError};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quiver: {0}")]
    Quiver(#[from] QuiverError),
    #[error("potential: {0}")]
    Potential(#[from] PotentialError),
    #[error("algebra: {0}")]
    Findim(#[from] FindimError),
    #[error("knitting: {0}")]
    Mesh(#[from] MeshError),
    #[error("pipeline: {0}")]
    Pipeline(#[from] PipelineError),
    #[error("coxeter: {0}")]
    Coxeter(#[from] CoxeterError),
}

#[derive(Parser, Debug)]
#[command(name = "quiverkit", version, about = "Quivers, bound path algebras and mesh categories")]
struct Cli {
    /// Largest word length explored by Groebner completion.
    #[arg(long, global = true, default_value_t = DEFAULT_DMAX as u64, value_parser = clap::value_parser!(u64).range(1..))]
    dmax: u64,
    /// Largest tensor or syzygy power explored.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND as u64, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on a quiver file.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Decide whether a Jacobian algebra is finite-dimensional.
    Jacobian { file: PathBuf },
    /// Build the Ginzburg dg algebra and check that d squares to zero.
    GinzburgCheck { file: PathBuf },
    /// Homological invariants of a bound quiver algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Knit the preinjective (or postprojective) component of an acyclic quiver.
    Knit {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        postprojective: bool,
    },
    /// Words in the Coxeter group of a quiver.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Run the slice pipeline on tilting data.
    Pipeline { file: PathBuf },
    /// Recompute the bundled worked examples and compare with golden values.
    ReproduceExample {
        /// Golden values to compare against instead of the bundled ones.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum QuiverCmd {
    Validate { file: PathBuf },
    Op { file: PathBuf },
    Double { file: PathBuf },
}

#[derive(Args, Debug)]
struct AlgebraFile {
    file: PathBuf,
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    Gldim(AlgebraFile),
    Ext2(AlgebraFile),
    TildeQuiver(AlgebraFile),
    Tor2(AlgebraFile),
}

#[derive(Subcommand, Debug)]
enum CoxeterCmd {
    Reduced { file: PathBuf, word: String },
    Length { file: PathBuf, word: String },
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON value serializes")
}

fn matrix_text(m: &[Vec<usize>]) -> String {
    m.iter().map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n")
}

fn nilpotency_json(n: &Nilpotency) -> Value {
    match n {
        Nilpotency::Nilpotent(k) => json!({"nilpotent": true, "index": k}),
        Nilpotency::AboveBound(b) => json!({"nilpotent": false, "bound": b}),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let d_max = cli.dmax as usize;
    let bound = cli.bound as usize;
    match &cli.command {
        Command::Quiver(cmd) => {
            let (file, op) = match cmd {
                QuiverCmd::Validate { file } => (file, 0),
                QuiverCmd::Op { file } => (file, 1),
                QuiverCmd::Double { file } => (file, 2),
            };
            let q = Quiver::from_json_str(&read(file)?)?;
            Ok(Outcome::ok(match op {
                0 if cli.json => pretty(&json!({
                    "valid": true,
                    "vertices": q.vertex_count(),
                    "arrows": q.arrow_count(),
                    "acyclic": q.is_acyclic(),
                    "connected": q.is_connected(),
                })),
                0 => format!(
                    "valid: {} vertices, {} arrows, {}, {}",
                    q.vertex_count(),
                    q.arrow_count(),
                    if q.is_acyclic() { "acyclic" } else { "has oriented cycles" },
                    if q.is_connected() { "connected" } else { "disconnected" }
                ),
                1 => q.opposite().to_json_string(),
                _ => q.double()?.to_json_string(),
            }))
        }
        Command::Jacobian { file } => {
            let qp = Qp::from_json_str(&read(file)?)?;
            let verdict = is_jacobi_finite(&qp, d_max)?;
            let code = match verdict {
                Verdict::Finite(_) => 0,
                Verdict::Infinite => 2,
                Verdict::Inconclusive(_) => 3,
            };
            let text = if cli.json {
                let (kind, dim) = match verdict {
                    Verdict::Finite(d) => ("finite", json!(d)),
                    Verdict::Infinite => ("infinite", Value::Null),
                    Verdict::Inconclusive(_) => ("inconclusive", Value::Null),
                };
                pretty(&json!({"verdict": kind, "dim": dim, "d_max": d_max}))
            } else {
                verdict.to_string()
            };
            Ok(Outcome { text, code })
        }
        Command::GinzburgCheck { file } => {
            let v = read_json(file)?;
            let qp = Qp::from_json(&v)?;
            let mut g = ginzburg(&qp)?;
            // Test fixtures may replace part of the differential.
            if let Some(d) = v.get("differential") {
                g.override_differential(d)?;
            }
            let ok = g.verify_differential();
            let text = if cli.json {
                let mut out = g.to_json();
                out["d_squared_zero"] = json!(ok);
                pretty(&out)
            } else {
                let mut lines: Vec<String> = (0..g.quiver.arrow_count())
                    .map(|a| format!("d({}) = {}", g.quiver.arrow(a).id, g.differential[a].display(&g.quiver)))
                    .collect();
                lines.push(format!("d^2 = 0: {}", if ok { "OK" } else { "FAILED" }));
                lines.join("\n")
            };
            Ok(Outcome { text, code: if ok { 0 } else { 4 } })
        }
        Command::Algebra(cmd) => {
            let file = match cmd {
                AlgebraCmd::Gldim(f) | AlgebraCmd::Ext2(f) | AlgebraCmd::TildeQuiver(f) | AlgebraCmd::Tor2(f) => &f.file,
            };
            let alg = BoundAlgebra::from_json(&read_json(file)?, d_max)?;
            let text = match cmd {
                AlgebraCmd::Gldim(_) => match global_dimension(&alg, bound) {
                    GlobalDimension::Finite(d) if cli.json => pretty(&json!({"global_dimension": d})),
                    GlobalDimension::Finite(d) => format!("global dimension {d}"),
                    GlobalDimension::AboveBound(b) if cli.json => pretty(&json!({"global_dimension": null, "bound": b})),
                    GlobalDimension::AboveBound(b) => format!("global dimension above {b}"),
                },
                AlgebraCmd::Ext2(_) => {
                    let x = ext2_bimodule(&alg)?;
                    if cli.json {
                        pretty(&json!({"dims": x.dims, "total": x.total_dim()}))
                    } else {
                        format!("dim e_i Ext^2(DA, A) e_j:\n{}\ntotal {}", matrix_text(&x.dims), x.total_dim())
                    }
                }
                AlgebraCmd::TildeQuiver(_) => tilde_quiver(&alg, bound)?.to_json_string(),
                AlgebraCmd::Tor2(_) => {
                    let by_bimodule = tor2_nilpotent(&alg, bound)?;
                    let by_functor = tor2_functor_nilpotent(&alg, bound)?;
                    let agree = by_bimodule.is_nilpotent() == by_functor.is_nilpotent();
                    if cli.json {
                        pretty(&json!({
                            "tensor_powers": nilpotency_json(&by_bimodule),
                            "tor2_iterates": nilpotency_json(&by_functor),
                            "agree": agree,
                        }))
                    } else {
                        format!("tensor powers: {by_bimodule:?}\nTor_2 iterates: {by_functor:?}\nagree: {agree}")
                    }
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Knit { file, depth, postprojective } => {
            let q = Quiver::from_json_str(&read(file)?)?;
            let tq = if *postprojective { knit_postprojective(&q, *depth)? } else { knit_preinjective(&q, *depth)? };
            let text = if cli.json {
                pretty(&tq.to_json())
            } else {
                let mut lines: Vec<String> = tq
                    .vertices()
                    .iter()
                    .enumerate()
                    .map(|(v, x)| format!("{} {:?}", tq.label(v), x.dim))
                    .collect();
                lines.push(format!("{} vertices, {} arrows, complete: {}", tq.vertex_count(), tq.arrows().len(), tq.is_complete()));
                lines.join("\n")
            };
            Ok(Outcome::ok(text))
        }
        Command::Coxeter(cmd) => {
            let (file, word) = match cmd {
                CoxeterCmd::Reduced { file, word } | CoxeterCmd::Length { file, word } => (file, word),
            };
            let q = Quiver::from_json_str(&read(file)?)?;
            let cs = CoxeterSystem::from_quiver(&q);
            let w = parse_word(&q, word)?;
            let text = match cmd {
                CoxeterCmd::Reduced { .. } => {
                    let r = cs.is_reduced(&w)?;
                    if cli.json {
                        pretty(&json!({"word": word, "reduced": r}))
                    } else if r {
                        "reduced".to_string()
                    } else {
                        "not reduced".to_string()
                    }
                }
                CoxeterCmd::Length { .. } => {
                    let l = cs.length(&w)?;
                    if cli.json {
                        pretty(&json!({"word": word, "length": l}))
                    } else {
                        l.to_string()
                    }
                }
            };
            Ok(Outcome::ok(text))
        }
        Command::Pipeline { file } => {
            let data = TiltingData::from_json(&read_json(file)?)?;
            let sc = SliceCategory::build(data, d_max, bound)?;
            let report = run_report(&sc)?;
            for c in report.checks.iter().filter(|c| !c.pass) {
                eprintln!("check failed: {} {}", c.name, c.detail);
            }
            Ok(Outcome { text: report.to_json_string(), code: if report.all_pass() { 0 } else { 6 } })
        }
        Command::ReproduceExample { golden } => {
            let golden: Value = match golden {
                Some(path) => read_json(path)?,
                None => serde_json::from_str(reproduce::GOLDEN).map_err(|e| CliError::Parse(e.to_string()))?,
            };
            let actual = reproduce::actual_values(d_max, bound)?;
            let d = reproduce::diff(&golden, &actual);
            let text = if cli.json {
                serde_json::to_string_pretty(&d).expect("diff serializes")
            } else {
                let mut lines: Vec<String> = d
                    .mismatches
                    .iter()
                    .map(|m| format!("mismatch {}: expected {}, got {}", m.key, m.expected, m.actual))
                    .collect();
                lines.push(if d.ok {
                    format!("all {} values match", d.checked)
                } else {
                    format!("{} of {} values differ", d.mismatches.len(), d.checked)
                });
                lines.join("\n")
            };
            Ok(Outcome { text, code: if d.ok { 0 } else { 5 } })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut text = out.text;
            text.push('\n');
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
