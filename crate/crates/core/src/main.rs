//! Command-line front end: counting (kostka, ssyt, nets, bijection-check),
//! solving (solve, check-separated), experiments, and the acceptance
//! selftest. All output is JSON on stdout; exit code 0 means success, 1 an
//! input or internal error, 2 a solve that ended with a deficit.

use clap::{Parser, Subcommand, ValueEnum};
use real_schubert::acceptance;
use real_schubert::harness::{run_experiment, ExperimentMode, ExperimentSpec};
use real_schubert::{
    enumerate_nets, enumerate_ssyt, kostka, kostka_closed_form, solve_all, BlockStructure,
    ContentVector, ProblemConfig, SolveParams,
};
use std::io::Read;

const CONFIG_SCHEMA: &str = "Configuration JSON, by example:\n\
  {\"d\": 3, \"blocks\": [[{\"x\": 1.0}, {\"x\": 1.3}], [{\"x\": 2.0, \"m\": 2}]]}\n\
Each inner list is one block of nodes; \"m\" is a node's multiplicity and\n\
defaults to 1. A block of total multiplicity a+1 contributes the content\n\
entry a. Pass \"-\" as the config path to read from stdin.";

#[derive(Parser)]
#[command(version, about, after_help = CONFIG_SCHEMA)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Separated,
    Overlapping,
    Sweep,
}

impl From<ModeArg> for ExperimentMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::Separated => ExperimentMode::Separated,
            ModeArg::Overlapping => ExperimentMode::Overlapping,
            ModeArg::Sweep => ExperimentMode::Sweep,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Kostka count for a content vector such as "1,1,2".
    Kostka {
        #[arg(long)]
        content: ContentVector,
    },
    /// Count (or list) semistandard tableaux with the given content.
    Ssyt {
        #[arg(long)]
        content: ContentVector,
        /// Include every tableau in the output.
        #[arg(long)]
        list: bool,
    },
    /// Count (or list) nets: noncrossing block-respecting matchings.
    Nets {
        #[arg(long)]
        content: ContentVector,
        /// Include every net's edge list in the output.
        #[arg(long)]
        list: bool,
    },
    /// Check |nets| = kostka and both round trips for every content with
    /// d up to a bound.
    BijectionCheck {
        #[arg(long, default_value_t = 5)]
        max_d: usize,
    },
    /// Report separation data for a configuration.
    CheckSeparated {
        /// Path to a configuration JSON file, or "-" for stdin.
        #[arg(long)]
        config: String,
    },
    /// Find all solution classes for a configuration.
    Solve {
        /// Path to a configuration JSON file, or "-" for stdin.
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Newton starts per gauge (default: 200 per expected class).
        #[arg(long)]
        starts: Option<usize>,
        /// Newton convergence tolerance (relative).
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Canonical-key distance treated as the same class.
        #[arg(long, default_value_t = 1e-6)]
        dedup: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: usize,
    },
    /// Run a batch of separated / overlapping / sweep trials.
    Experiment {
        /// Ambient degree; defaults to the one the content implies.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        content: ContentVector,
        #[arg(long, value_enum, default_value_t = ModeArg::Separated)]
        mode: ModeArg,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Distance alternate blocks travel in overlapping or sweep mode.
        #[arg(long, default_value_t = 1.0)]
        overlap_amount: f64,
        /// Newton starts per gauge inside each trial.
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        dedup: f64,
    },
    /// Run the acceptance suite and print one line per criterion.
    Selftest,
}

fn read_config(path: &str) -> Result<ProblemConfig, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("parsing configuration: {e}"))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json prints"));
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Kostka { content } => {
            print_json(&serde_json::json!({
                "content": content.entries(),
                "d": content.d(),
                "kostka": kostka(&content).to_string(),
                "closed_form": kostka_closed_form(&content).map(|k| k.to_string()),
            }));
            Ok(0)
        }
        Command::Ssyt { content, list } => {
            let tableaux = enumerate_ssyt(&content);
            let mut out = serde_json::json!({
                "content": content.entries(),
                "d": content.d(),
                "count": tableaux.len(),
            });
            if list {
                out["tableaux"] = tableaux
                    .iter()
                    .map(|t| serde_json::json!([t.row1(), t.row2()]))
                    .collect();
            }
            print_json(&out);
            Ok(0)
        }
        Command::Nets { content, list } => {
            let blocks = BlockStructure::new(content.clone());
            let nets = enumerate_nets(&blocks);
            let mut out = serde_json::json!({
                "content": content.entries(),
                "d": content.d(),
                "count": nets.len(),
            });
            if list {
                out["nets"] = nets
                    .iter()
                    .map(|n| serde_json::json!(n.edges()))
                    .collect();
            }
            print_json(&out);
            Ok(0)
        }
        Command::BijectionCheck { max_d } => {
            let (checked, ok) = acceptance::bijection_suite(max_d);
            print_json(&serde_json::json!({
                "max_d": max_d,
                "contents_checked": checked,
                "ok": ok,
            }));
            Ok(if ok { 0 } else { 1 })
        }
        Command::CheckSeparated { config } => {
            let config = read_config(&config)?;
            let margin = config.separation_margin();
            print_json(&serde_json::json!({
                "d": config.d(),
                "blocks": config.block_count(),
                "separated": config.is_separated(),
                "separation_margin": if margin.is_finite() { Some(margin) } else { None },
                "non_generic": config.non_generic(),
            }));
            Ok(0)
        }
        Command::Solve {
            config,
            seed,
            starts,
            tol,
            dedup,
            max_iter,
        } => {
            let config = read_config(&config)?;
            let params = SolveParams {
                seed,
                starts_budget: starts,
                newton_tol: tol,
                dedup_tol: dedup,
                max_iter,
            };
            let set = solve_all(&config, &params).map_err(|e| e.to_string())?;
            let mut out = set.report_json();
            out["separated"] = serde_json::json!(config.is_separated());
            print_json(&out);
            Ok(if set.deficit() > 0 { 2 } else { 0 })
        }
        Command::Experiment {
            d,
            content,
            mode,
            trials,
            seed,
            overlap_amount,
            starts,
            tol,
            dedup,
        } => {
            let spec = ExperimentSpec {
                d: d.unwrap_or_else(|| content.d()),
                content: content.entries().to_vec(),
                trials,
                seed,
                mode: mode.into(),
                overlap_amount,
                params: SolveParams {
                    starts_budget: starts,
                    newton_tol: tol,
                    dedup_tol: dedup,
                    ..SolveParams::default()
                },
            };
            let report = run_experiment(&spec).map_err(|e| e.to_string())?;
            let value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
            print_json(&value);
            Ok(0)
        }
        Command::Selftest => {
            let outcomes = acceptance::run_all();
            let mut failed = 0;
            for outcome in &outcomes {
                let tag = if outcome.passed { "PASS" } else { "FAIL" };
                println!("{tag}: {} ({})", outcome.name, outcome.detail);
                if !outcome.passed {
                    failed += 1;
                }
            }
            println!("{}/{} criteria passed", outcomes.len() - failed, outcomes.len());
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(1);
        }
    }
}
