//! The `romandom` command line.
//!
//! Exit codes: 0 success, 1 the answer is no (or a labeling is invalid),
//! 2 usage or input error, 3 time budget exhausted, 4 lemma-suite failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cograph::gamma_gr_cograph;
use crate::cover::SetCoverInstance;
use crate::format::{parse_graph, write_graph, GraphFormat};
use crate::generators::{generate, GenKind, GenSpec, Instance};
use crate::graph::Graph;
use crate::labeling::{check, Mode, RomanLabeling};
use crate::lemmas::{render_table, run_suite, Scale};
use crate::reductions::{
    ds3reg_to_class_f, ds_to_tree_gadget, x3c_to_split, x3c_to_x4c, x4c_to_class_g, ReductionOutput,
};
use crate::solver::{decide_with, solve_ds_with, solve_exact_with, Decision, SolveError, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DNF: i32 = 3;
pub const EXIT_LEMMA: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "romandom", version, about = "Roman and global Roman domination toolkit")]
pub struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Input file; standard input when absent or `-`.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// `json` for machine-readable output; `edgelist` for text.
    #[arg(long, global = true, value_enum, default_value = "edgelist")]
    format: GraphFormat,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true)]
    time_budget_ms: Option<u64>,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObjectiveArg {
    Rd,
    Grd,
    Ds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReductionName {
    #[value(name = "x3c-to-x4c")]
    X3cToX4c,
    #[value(name = "classF")]
    ClassF,
    #[value(name = "classG")]
    ClassG,
    #[value(name = "split")]
    Split,
    #[value(name = "treegadget")]
    TreeGadget,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact γ_R, γ_gR or γ of a graph.
    Solve {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
    },
    /// Is there a labeling of weight at most the budget?
    Decide {
        #[arg(long, value_enum)]
        objective: Mode,
        /// Defaults to the budget stored in a reduction output.
        #[arg(long)]
        budget: Option<usize>,
        /// Where to write the witness labeling.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// γ_R and γ_gR of a cograph through its cotree.
    Cograph {
        /// Also search for a minimum global labeling when n is at most this.
        #[arg(long)]
        witness_cap: Option<usize>,
    },
    /// Build a reduced instance from a source instance.
    Reduce {
        #[arg(long, value_enum)]
        name: ReductionName,
        /// Dominating-set size for the graph-sourced reductions.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a labeling against a graph.
    Verify {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        t: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        planted: bool,
    },
    /// Recompute every published value and print a pass/fail table.
    Lemmas {
        #[arg(long, value_enum, default_value = "desk")]
        scale: Scale,
    },
}

/// Parses `argv`, runs the command and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            if let Some(SolveError::DidNotFinish { .. }) = e.downcast_ref::<SolveError>() {
                eprintln!("romandom: {e}");
                return EXIT_DNF;
            }
            eprintln!("romandom: {e:#}");
            EXIT_USAGE
        }
    }
}

fn read_input(common: &Common) -> anyhow::Result<String> {
    match common.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            Ok(s)
        }
    }
}

fn emit(common: &Common, stdout: &mut dyn Write, text: &str) -> anyhow::Result<()> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match &common.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(text.as_bytes()).context("writing standard output"),
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

/// A plain graph, or the graph and budget of a reduction output.
fn load_graph(text: &str) -> anyhow::Result<(Graph, Option<usize>)> {
    if text.trim_start().starts_with('{') {
        let value: serde_json::Value = serde_json::from_str(text).context("parsing JSON input")?;
        if value.get("graph").is_some() {
            let out: ReductionOutput = serde_json::from_value(value).context("parsing reduction output")?;
            return Ok((out.graph, Some(out.budget)));
        }
    }
    Ok((parse_graph(text)?, None))
}

fn config(common: &Common) -> SolverConfig {
    let cfg = SolverConfig::default().with_jobs(common.jobs);
    match common.time_budget_ms {
        Some(ms) => cfg.with_time_budget(Duration::from_millis(ms)),
        None => cfg,
    }
}

fn json_mode(common: &Common) -> bool {
    common.format == GraphFormat::Json
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> anyhow::Result<i32> {
    let common = &cli.common;
    if common.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    match &cli.command {
        Command::Solve { objective } => {
            let (g, _) = load_graph(&read_input(common)?)?;
            let cfg = config(common);
            let res = match objective {
                ObjectiveArg::Rd => solve_exact_with(&g, Mode::Rd, &cfg)?,
                ObjectiveArg::Grd => solve_exact_with(&g, Mode::Grd, &cfg)?,
                ObjectiveArg::Ds => solve_ds_with(&g, &cfg)?,
            };
            let text = if json_mode(common) {
                to_json(&res)?
            } else {
                let witness = match (res.labeling(), res.vertices()) {
                    (Some(f), _) => format!("labels {:?}", f.values()),
                    (_, Some(s)) => format!("set {s:?}"),
                    _ => String::new(),
                };
                format!(
                    "{:?} optimum {}\nwitness {witness}\n{} candidates in {:.1} ms",
                    res.objective, res.optimum, res.stats.candidates, res.stats.wall_ms
                )
            };
            emit(common, stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Decide {
            objective,
            budget,
            witness,
        } => {
            let (g, stored) = load_graph(&read_input(common)?)?;
            let budget = budget
                .or(stored)
                .ok_or_else(|| anyhow!("--budget is required for a plain graph"))?;
            let decision = decide_with(&g, *objective, budget, &config(common))?;
            if let (Decision::Yes(f), Some(path)) = (&decision, witness) {
                fs::write(path, to_json(f)?).with_context(|| format!("writing {}", path.display()))?;
            }
            let text = if json_mode(common) {
                to_json(&serde_json::json!({
                    "answer": if decision.is_yes() { "yes" } else { "no" },
                    "budget": budget,
                    "witness": decision.witness(),
                }))?
            } else {
                match (&decision, witness) {
                    (Decision::Yes(_), Some(p)) => format!("yes\nwitness {}", p.display()),
                    (Decision::Yes(f), None) => format!("yes\nwitness {:?}", f.values()),
                    (Decision::No, _) => "no".into(),
                }
            };
            emit(common, stdout, &text)?;
            Ok(if decision.is_yes() { EXIT_OK } else { EXIT_NO })
        }
        Command::Cograph { witness_cap } => {
            let (g, _) = load_graph(&read_input(common)?)?;
            let values = gamma_gr_cograph(&g, *witness_cap)?;
            let text = if json_mode(common) {
                to_json(&values)?
            } else {
                let mut s = format!("gamma_R {}\ngamma_gR {}", values.gamma_r, values.gamma_gr);
                if let Some(f) = &values.witness {
                    s.push_str(&format!("\nwitness {:?}", f.values()));
                }
                s
            };
            emit(common, stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { name, k } => {
            let text = read_input(common)?;
            let need_k = || k.ok_or_else(|| anyhow!("--k is required for this reduction"));
            let cover = || -> anyhow::Result<SetCoverInstance> {
                serde_json::from_str(&text).context("parsing set-cover instance")
            };
            let out = match name {
                ReductionName::X3cToX4c => {
                    emit(common, stdout, &to_json(&x3c_to_x4c(&cover()?)?)?)?;
                    return Ok(EXIT_OK);
                }
                ReductionName::ClassF => ds3reg_to_class_f(&load_graph(&text)?.0, need_k()?)?,
                ReductionName::ClassG => x4c_to_class_g(&cover()?)?,
                ReductionName::Split => x3c_to_split(&cover()?)?,
                ReductionName::TreeGadget => ds_to_tree_gadget(&load_graph(&text)?.0, need_k()?)?,
            };
            log::info!("{} vertices, budget {}", out.graph.n(), out.budget);
            emit(common, stdout, &to_json(&out)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify { labeling, mode } => {
            let (g, _) = load_graph(&read_input(common)?)?;
            let raw = fs::read_to_string(labeling).with_context(|| format!("reading {}", labeling.display()))?;
            let f: RomanLabeling = serde_json::from_str(&raw).context("parsing labeling")?;
            let verdict = check(&g, &f, *mode)?;
            let text = if json_mode(common) {
                to_json(&serde_json::json!({ "mode": mode, "weight": f.weight(), "result": verdict }))?
            } else if verdict.is_valid() {
                format!("valid {mode}\nweight {}", f.weight())
            } else {
                format!("invalid {mode}: {verdict:?}\nweight {}", f.weight())
            };
            emit(common, stdout, &text)?;
            Ok(if verdict.is_valid() { EXIT_OK } else { EXIT_NO })
        }
        Command::Gen {
            kind,
            n,
            q,
            t,
            p,
            planted,
        } => {
            let spec = GenSpec {
                kind: *kind,
                n: *n,
                q: *q,
                t: *t,
                p: *p,
                seed: common.seed,
                planted: *planted,
            };
            let generated = generate(&spec)?;
            if generated.fallback {
                log::warn!("pairing model gave up; emitted the fallback graph");
            }
            let text = match (&generated.instance, common.format) {
                (Instance::Graph(g), GraphFormat::Edgelist) => write_graph(g, GraphFormat::Edgelist),
                _ => to_json(&generated)?,
            };
            emit(common, stdout, &text)?;
            Ok(EXIT_OK)
        }
        Command::Lemmas { scale } => {
            let rows = run_suite(*scale, common.jobs);
            let text = if json_mode(common) {
                to_json(&rows)?
            } else {
                render_table(&rows)
            };
            emit(common, stdout, &text)?;
            Ok(if rows.iter().all(|r| r.pass) {
                EXIT_OK
            } else {
                EXIT_LEMMA
            })
        }
    }
}
