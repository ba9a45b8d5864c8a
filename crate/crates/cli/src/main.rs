//! Command-line front door: parse group/set/tuple specifications, dispatch to
//! the computational modules, and emit deterministic CSV/JSON reports.
//!
//! Exit codes: 0 success, 2 when a condition check reports "fail" (distinct
//! from errors), 1 on errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use folner_lab::folner::SearchBudget;
use folner_lab::runner::{self, Budgets, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(name = "folner-lab", version, about = "Set-expansion ratios, multi-norms, summing constants, and row-injective partitions at desk scale")]
struct Cli {
    /// RNG seed; required by any heuristic (solver) path.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (directory for `examples`); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, default_value = "csv")]
    format: String,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct BudgetArgs {
    /// Cap on Cayley-ball enumeration size.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget_ball_cap: usize,

    /// Cap on exhaustive growth sweeps (tuple evaluations).
    #[arg(long, global = true, default_value_t = 200_000)]
    budget_growth: u64,

    /// Largest Cayley-ball radius tried by searches.
    #[arg(long, global = true, default_value_t = 8)]
    budget_search_radius: usize,

    /// Largest box side tried by searches on integer lattices.
    #[arg(long, global = true, default_value_t = 64)]
    budget_search_box: usize,

    /// Greedy augmentation step cap for searches.
    #[arg(long, global = true, default_value_t = 64)]
    budget_search_steps: usize,

    /// Cap on candidate set cardinality during searches.
    #[arg(long, global = true, default_value_t = 250_000)]
    budget_search_set_cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a Følner-type condition against named sets, or search for a
    /// witness set.
    Folner {
        /// Group/sets document (inline JSON or a path). The set named "F" is
        /// the translate set; every other set is a candidate C.
        #[arg(long)]
        group: String,

        /// Condition: F | WF | WFstar | subset | PA | WPA.
        #[arg(long)]
        condition: String,

        /// Strict threshold, as an exact rational ("0.05", "1/20").
        #[arg(long)]
        epsilon: String,

        /// Subset-size threshold (subset and WPA conditions).
        #[arg(long)]
        nmin: Option<u64>,

        /// Extra named sets (inline JSON or a path).
        #[arg(long)]
        sets: Option<String>,

        /// Search for a witness instead of tabulating: balls | boxes | greedy.
        #[arg(long)]
        search: Option<String>,

        /// Shorthand: sets the radius/box/step budgets at once.
        #[arg(long)]
        budget: Option<usize>,
    },

    /// Compute the (p,q)-multi-norm of a tuple in l^1_d.
    Multinorm {
        /// Space, e.g. "l1:3" (derived from the tuple when omitted).
        #[arg(long)]
        space: Option<String>,

        /// Tuple as an n x d JSON matrix (inline or a path).
        #[arg(long)]
        tuple: String,

        #[arg(long)]
        p: f64,

        #[arg(long)]
        q: f64,

        /// Evaluation path: auto | lattice | q1 | none.
        #[arg(long, default_value = "auto")]
        closed_form: String,

        /// Ascent restarts.
        #[arg(long)]
        restarts: Option<usize>,

        /// Cross-check against the dense-grid oracle: on | off.
        #[arg(long, default_value = "off")]
        oracle: String,
    },

    /// Compute (q,p)-summing constants of a matrix out of l^inf_d.
    Summing {
        /// Matrix as an e x d JSON array of rows (inline or a path).
        #[arg(long)]
        matrix: String,

        #[arg(long)]
        q: f64,

        #[arg(long)]
        p: f64,

        /// Compute pi^{(n)} for n = 1..=N.
        #[arg(long = "N")]
        n_max: usize,

        /// Exponent s of the target space l^s_e.
        #[arg(long, default_value_t = 2.0)]
        target: f64,

        /// Cross-check against the dense-grid oracle: on | off.
        #[arg(long, default_value = "off")]
        oracle: String,
    },

    /// Build (and verify) a row-injective block partition.
    Rearrange {
        /// Instance as {"rows": [[item]], "parts": {"u": [item]}}.
        #[arg(long)]
        instance: Option<String>,

        /// Group/sets document to build the instance from E and S.
        #[arg(long)]
        from_group: Option<String>,

        /// Ordered translate set: a set name from the document or an inline
        /// JSON array of elements.
        #[arg(long = "E")]
        e_set: Option<String>,

        /// Base set: a set name or an inline JSON array.
        #[arg(long = "S")]
        s_set: Option<String>,

        /// Verify a given result instead of building one.
        #[arg(long)]
        verify_only: bool,

        /// Result JSON to verify (with --verify-only).
        #[arg(long)]
        result: Option<String>,
    },

    /// Regenerate the worked examples into a report directory.
    Examples,
}

fn to_config(cli: Cli) -> Result<RunConfig, folner_lab::Error> {
    let mut budgets = Budgets {
        ball_cap: cli.budgets.budget_ball_cap,
        growth: cli.budgets.budget_growth,
        search: SearchBudget {
            max_radius: cli.budgets.budget_search_radius,
            max_box_side: cli.budgets.budget_search_box,
            max_steps: cli.budgets.budget_search_steps,
            set_cap: cli.budgets.budget_search_set_cap,
        },
    };
    let command = match cli.command {
        Cmd::Folner { group, condition, epsilon, nmin, sets, search, budget } => {
            if let Some(b) = budget {
                budgets.search.max_radius = b;
                budgets.search.max_box_side = b;
                budgets.search.max_steps = b;
            }
            Command::Folner { group, condition, epsilon, nmin, sets, search }
        }
        Cmd::Multinorm { space, tuple, p, q, closed_form, restarts, oracle } => {
            Command::Multinorm {
                space,
                tuple,
                p,
                q,
                closed_form,
                restarts,
                oracle: parse_switch(&oracle)?,
            }
        }
        Cmd::Summing { matrix, q, p, n_max, target, oracle } => Command::Summing {
            matrix,
            q,
            p,
            n_max,
            target_exponent: target,
            oracle: parse_switch(&oracle)?,
        },
        Cmd::Rearrange { instance, from_group, e_set, s_set, verify_only, result } => {
            Command::Rearrange { instance, group: from_group, e_set, s_set, verify_only, result }
        }
        Cmd::Examples => Command::Examples,
    };
    Ok(RunConfig {
        seed: cli.seed,
        format: OutputFormat::parse(&cli.format)?,
        out: cli.out,
        budgets,
        command,
    })
}

fn parse_switch(s: &str) -> Result<bool, folner_lab::Error> {
    match s {
        "on" => Ok(true),
        "off" => Ok(false),
        _ => Err(folner_lab::Error::Parse(format!("expected on|off, got {s:?}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emit_to_stdout = cli.out.is_none() || matches!(cli.command, Cmd::Examples);
    let config = match to_config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match runner::run(&config) {
        Ok(outcome) => {
            if emit_to_stdout {
                print!("{}", outcome.stdout);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
