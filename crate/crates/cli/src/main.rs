use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde_json::json;

use asymdouble_cli::document::{fmt12, round12, to_dot, to_table, GraphDocument};
use asymdouble_cli::verify::{self, Suite};
use asymdouble_core::doublegraph::{closed_form_count, dual_graph, principal_graph, BipartiteGraph};
use asymdouble_core::orbifold::orbifold_report;
use asymdouble_core::{Field, Model, Wzw, DEFAULT_TOLERANCE};

const TOLERANCE_VAR: &str = "ASYMDOUBLE_TOLERANCE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Su2,
    Su3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Subsystem {
    Grade0,
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "asymdouble",
    version,
    about = "Fusion rules, S-matrices and quantum-double graphs for SU(2)_k and SU(3)_k"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum)]
    algebra: Option<Algebra>,

    #[arg(long, global = true)]
    level: Option<u32>,

    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Numeric tolerance (default 1e-6, or $ASYMDOUBLE_TOLERANCE).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List primary fields with grading, conjugate and quantum dimension.
    Fields,
    /// Fusion coefficients of a x b, or a single N_ab^c.
    Fusion {
        /// Dynkin labels, comma separated (e.g. 1,1).
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Modular S-matrix.
    Smatrix,
    /// Degenerate fields of a subsystem under both S-matrix criteria.
    Degenerate {
        #[arg(long, value_enum, default_value = "grade0")]
        subsystem: Subsystem,
    },
    /// Fusion graph of the grade-0 system.
    PrincipalGraph,
    /// Dual principal graph of the asymptotic inclusion.
    DualGraph,
    /// Even-vertex count of the dual graph.
    Counts,
    /// Global-index bookkeeping of the order-two orbifold for SU(2)_{4n-4}.
    Orbifold {
        #[arg(long)]
        n: u32,
    },
    /// Recompute every published number and compare.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        suite: Suite,
        /// Also run the ring checks on a deliberately corrupted tensor.
        #[arg(long, hide = true)]
        tamper: bool,
    },
}

enum Outcome {
    Done,
    VerificationFailed,
}

fn tolerance(cli: &Cli) -> anyhow::Result<f64> {
    let tol = match cli.tolerance {
        Some(t) => t,
        None => match std::env::var(TOLERANCE_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .with_context(|| format!("{TOLERANCE_VAR}={v:?} is not a number"))?,
            Err(_) => DEFAULT_TOLERANCE,
        },
    };
    if !(tol > 0.0 && tol.is_finite()) {
        bail!("tolerance must be positive, got {tol}");
    }
    Ok(tol)
}

fn model(cli: &Cli) -> anyhow::Result<Model> {
    let algebra = cli.algebra.ok_or_else(|| anyhow!("--algebra is required"))?;
    let level = cli.level.ok_or_else(|| anyhow!("--level is required"))?;
    let rank = match algebra {
        Algebra::Su2 => 2,
        Algebra::Su3 => 3,
    };
    Ok(Model::new(rank, level)?)
}

fn parse_field(model: Model, text: &str) -> anyhow::Result<Field> {
    let labels = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .with_context(|| format!("{text:?} is not a list of Dynkin labels"))?;
    Ok(Field::new(model, &labels)?)
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(value: &serde_json::Value) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn no_dot(cli: &Cli) -> anyhow::Result<()> {
    if cli.format == Format::Dot {
        bail!("dot output is only available for graphs");
    }
    Ok(())
}

fn graph_output(cli: &Cli, graph: &BipartiteGraph, tol: f64) -> anyhow::Result<String> {
    Ok(match cli.format {
        Format::Json => GraphDocument::from_graph(graph, tol)?.to_json()?,
        Format::Dot => to_dot(graph),
        Format::Table => to_table(graph),
    })
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let tol = tolerance(cli)?;
    let text = match &cli.command {
        Command::Fields => {
            no_dot(cli)?;
            let wzw = Wzw::new(model(cli)?, tol)?;
            let t = wzw.table();
            match cli.format {
                Format::Json => {
                    let rows: Vec<_> = (0..t.len())
                        .map(|i| {
                            json!({
                                "index": i,
                                "dynkin": t.field(i).dynkin_label(),
                                "label": t.field(i).to_string(),
                                "grade": t.grade(i),
                                "conjugate": t.conj(i),
                                "qdim": round12(wzw.qdim(i)),
                            })
                        })
                        .collect();
                    json_text(&json!(rows))?
                }
                _ => {
                    let mut s = format!("{:<6} {:<8} {:<8} {:<6} {:<10} qdim\n", "index", "dynkin", "label", "grade", "conjugate");
                    for i in 0..t.len() {
                        let _ = writeln!(
                            s,
                            "{:<6} {:<8} {:<8} {:<6} {:<10} {}",
                            i,
                            t.field(i).dynkin_label(),
                            t.field(i),
                            t.grade(i),
                            t.field(t.conj(i)).dynkin_label(),
                            fmt12(wzw.qdim(i))
                        );
                    }
                    s
                }
            }
        }
        Command::Fusion { a, b, c } => {
            no_dot(cli)?;
            let m = model(cli)?;
            let ring = asymdouble_core::build_ring(m)?;
            let t = ring.table();
            let (fa, fb) = (parse_field(m, a)?, parse_field(m, b)?);
            let (ia, ib) = (t.index_of(&fa).expect("valid field"), t.index_of(&fb).expect("valid field"));
            let targets: Vec<usize> = match c {
                Some(c) => vec![t.index_of(&parse_field(m, c)?).expect("valid field")],
                None => (0..t.len()).filter(|&x| ring.n(ia, ib, x) > 0).collect(),
            };
            match cli.format {
                Format::Json => {
                    let rows: Vec<_> = targets
                        .iter()
                        .map(|&x| json!({"c": t.field(x).dynkin_label(), "label": t.field(x).to_string(), "n": ring.n(ia, ib, x)}))
                        .collect();
                    json_text(&json!({"a": fa.dynkin_label(), "b": fb.dynkin_label(), "products": rows}))?
                }
                _ => {
                    let mut s = format!("{m}: ({}) x ({})\n", fa.dynkin_label(), fb.dynkin_label());
                    for x in targets {
                        let _ = writeln!(s, "({}):{}    {}", t.field(x).dynkin_label(), ring.n(ia, ib, x), t.field(x));
                    }
                    s
                }
            }
        }
        Command::Smatrix => {
            no_dot(cli)?;
            let wzw = Wzw::new(model(cli)?, tol)?;
            let md = &wzw.modular;
            let size = md.size();
            match cli.format {
                Format::Json => {
                    let re: Vec<Vec<f64>> =
                        (0..size).map(|x| (0..size).map(|y| round12(md.s(x, y).re)).collect()).collect();
                    let im: Vec<Vec<f64>> =
                        (0..size).map(|x| (0..size).map(|y| round12(md.s(x, y).im)).collect()).collect();
                    let labels: Vec<String> = wzw.table().fields().iter().map(|f| f.dynkin_label()).collect();
                    json_text(&json!({"fields": labels, "re": re, "im": im}))?
                }
                _ => {
                    let mut s = String::new();
                    for x in 0..size {
                        let row: Vec<String> = (0..size)
                            .map(|y| {
                                let z = md.s(x, y);
                                format!("{}{:+}i", fmt12(z.re), round12(z.im))
                            })
                            .collect();
                        let _ = writeln!(s, "{:<8} {}", wzw.table().field(x).to_string(), row.join("  "));
                    }
                    s
                }
            }
        }
        Command::Degenerate { subsystem } => {
            no_dot(cli)?;
            let wzw = Wzw::new(model(cli)?, tol)?;
            let t = wzw.table();
            let members: Vec<usize> = match subsystem {
                Subsystem::Grade0 => t.with_grade(0),
                Subsystem::Full => (0..t.len()).collect(),
            };
            let report = wzw.modular.degeneracy_report(&members)?;
            let degenerate = wzw.modular.degenerate_set(&members)?;
            let names = |v: &[usize]| -> Vec<String> { v.iter().map(|&i| t.field(i).to_string()).collect() };
            match cli.format {
                Format::Json => json_text(&json!({
                    "subsystem": names(&members),
                    "degenerate": names(&degenerate),
                    "necessary": names(&report.necessary),
                    "sufficient": names(&report.sufficient),
                    "simple_currents": names(&report.currents),
                }))?,
                _ => format!(
                    "subsystem:        {}\ndegenerate:       {}\nsufficient test:  {}\nsimple currents:  {}\n",
                    names(&members).join(" "),
                    names(&degenerate).join(" "),
                    names(&report.sufficient).join(" "),
                    names(&report.currents).join(" ")
                ),
            }
        }
        Command::PrincipalGraph => {
            let wzw = Wzw::new(model(cli)?, tol)?;
            graph_output(cli, &principal_graph(&wzw)?, tol)?
        }
        Command::DualGraph => {
            let wzw = Wzw::new(model(cli)?, tol)?;
            graph_output(cli, &dual_graph(&wzw)?, tol)?
        }
        Command::Counts => {
            no_dot(cli)?;
            let m = model(cli)?;
            let wzw = Wzw::new(m, tol)?;
            let count = dual_graph(&wzw)?.even.len();
            let closed = closed_form_count(m.rank(), m.level()).ok();
            if let Some(expected) = closed.filter(|&e| e != count) {
                bail!("constructed count {count} differs from closed form {expected}");
            }
            match cli.format {
                Format::Json => json_text(&json!({
                    "rank": m.rank(),
                    "level": m.level(),
                    "even_vertices": count,
                    "closed_form": closed,
                }))?,
                _ => format!("{count}\n"),
            }
        }
        Command::Orbifold { n } => {
            no_dot(cli)?;
            let r = orbifold_report(*n, tol)?;
            let quotient: Vec<_> = r.quotient.objects();
            match cli.format {
                Format::Json => json_text(&json!({
                    "n": r.n_param,
                    "level": r.level,
                    "global_index": round12(r.global_m),
                    "gamma": round12(r.gamma),
                    "n0_index": round12(r.n0_index),
                    "n0_objects": r.n0_objects,
                    "n1_index": round12(r.n1_index),
                    "n1_objects": r.n1_objects,
                    "quotient": quotient.iter().map(|(l, d)| json!({"label": l, "qdim": round12(*d)})).collect::<Vec<_>>(),
                    "invertible": r.invertibles,
                    "cases": r.cases.iter().map(|(c, v)| json!({"case": c.description(), "index": round12(*v)})).collect::<Vec<_>>(),
                }))?,
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "SU(2)_{} even system, n = {}", r.level, r.n_param);
                    let _ = writeln!(s, "[M]            {}", fmt12(r.global_m));
                    let _ = writeln!(s, "gamma = [M]^2  {}", fmt12(r.gamma));
                    let _ = writeln!(s, "[N0]           {}  ({} objects)", fmt12(r.n0_index), r.n0_objects);
                    let _ = writeln!(s, "[N1]           {}  ({} objects)", fmt12(r.n1_index), r.n1_objects);
                    let _ = writeln!(s, "quotient of the even system:");
                    for (l, d) in &quotient {
                        let _ = writeln!(s, "  {l:<10} {}", fmt12(*d));
                    }
                    let _ = writeln!(s, "invertible: {}", r.invertibles.join(" "));
                    for (c, v) in &r.cases {
                        let _ = writeln!(s, "case {:<44} {}", c.description(), fmt12(*v));
                    }
                    s
                }
            }
        }
        Command::Verify { suite, tamper } => {
            no_dot(cli)?;
            let mut checks = verify::run_suite(*suite, tol);
            if *tamper {
                checks.extend(verify::tampered_checks(tol)?);
            }
            let text = match cli.format {
                Format::Json => {
                    let rows: Vec<_> = checks
                        .iter()
                        .map(|c| {
                            json!({
                                "criterion": c.criterion,
                                "claim": c.claim,
                                "expected": c.expected,
                                "computed": c.computed,
                                "residual": if c.residual.is_finite() { json!(c.residual) } else { json!(null) },
                                "passed": c.passed,
                            })
                        })
                        .collect();
                    json_text(&json!(rows))?
                }
                _ => verify::render(&checks),
            };
            emit(cli, &text)?;
            return Ok(if verify::exit_status(&checks) == 0 {
                Outcome::Done
            } else {
                Outcome::VerificationFailed
            });
        }
    };
    emit(cli, &text)?;
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
