mod commands;
mod error;
mod report;
mod spacefile;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::CircuitArgs;
use crate::error::CliError;
use crate::report::{render_json, render_text, Ctx};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact classification, completion and dual analysis of composition
/// operators on one-circuit directed graphs.
///
/// Exit status: 0 on a computed answer (including "no solution"),
/// 1 on malformed input, 2 when a verification identity fails.
#[derive(Parser, Debug)]
#[command(name = "onecircuit", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Add a 20-digit truncated decimal next to every exact value.
    #[arg(long, global = true)]
    decimals: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// m-isometry, expansivity and analyticity verdicts for a space file.
    Classify {
        file: PathBuf,
        /// Highest order m tested.
        #[arg(long, default_value_t = 4)]
        m_max: u32,
        /// Branch depth used for sampled quantities.
        #[arg(long, default_value_t = 8)]
        depth: u32,
    },
    /// Complete a prefix of squared shift weights to an m-isometric shift.
    CompleteShift {
        /// Known squared weights w_0^2, w_1^2, ...
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        prefix: Vec<String>,
        #[arg(long)]
        m: u32,
        /// Squared weights between the prefix and the free parameter (default 1).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        intermediate: Option<Vec<String>>,
        /// Family parameter to instantiate.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Circuit completions: from circuit measures, from branch polynomials,
    /// or the explicit 2-/3-isometry construction.
    CompleteCircuit {
        /// Prescribed circuit measures mu(x_1), ..., mu(x_kappa).
        #[arg(long, value_delimiter = ',')]
        circuit: Option<Vec<String>>,
        /// Number of branches.
        #[arg(long)]
        eta: Option<usize>,
        #[arg(long)]
        kappa: Option<usize>,
        #[arg(long)]
        m: Option<u32>,
        /// Branch tail polynomial coefficients, constant first; repeat per branch.
        #[arg(long = "branch", allow_hyphen_values = true)]
        branches: Vec<String>,
        /// Upper bound for the supremum of the branch ratios and head sums.
        #[arg(long)]
        bound: Option<String>,
        /// Per-branch constants c_i of the explicit construction.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Option<Vec<String>>,
        /// Per-branch constants d_i of the explicit construction (default 0).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        d: Option<Vec<String>>,
        /// Family or construction parameter.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Complete a branch prefix mu(x_{1,1}), ... to an m-isometric space.
    CompleteBranch {
        #[arg(long, value_delimiter = ',', required = true)]
        prefix: Vec<String>,
        #[arg(long)]
        m: u32,
    },
    /// Dual weights, moments and the Stieltjes test.
    Dual {
        file: PathBuf,
        /// Number of moments s_0, ..., s_n.
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Cross-check every closed form on the file against brute force.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        n: u64,
    },
    /// Summary of a space file.
    Inspect {
        file: PathBuf,
        /// Print only the canonical file text.
        #[arg(long)]
        canonical: bool,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let ctx = Ctx {
        decimals: cli.decimals,
    };
    let render = |v: &serde_json::Value| match cli.format {
        Format::Text => render_text(v),
        Format::Json => render_json(v),
    };
    let value = match cli.command {
        Command::Classify { file, m_max, depth } => {
            let model = spacefile::parse_file(&file)?;
            commands::classify(ctx, &model, m_max, depth)?
        }
        Command::CompleteShift {
            prefix,
            m,
            intermediate,
            t,
        } => commands::complete_shift_cmd(ctx, &prefix, m, intermediate.as_deref(), t.as_deref())?,
        Command::CompleteCircuit {
            circuit,
            eta,
            kappa,
            m,
            branches,
            bound,
            c,
            d,
            t,
        } => commands::complete_circuit_cmd(
            ctx,
            CircuitArgs {
                circuit,
                eta,
                kappa,
                m,
                branches,
                bound,
                c,
                d,
                t,
            },
        )?,
        Command::CompleteBranch { prefix, m } => commands::complete_branch_cmd(ctx, &prefix, m)?,
        Command::Dual { file, n } => {
            let model = spacefile::parse_file(&file)?;
            commands::dual(ctx, &model, n)?
        }
        Command::Verify { file, depth, n } => {
            let model = spacefile::parse_file(&file)?;
            let (report, ok) = verify::verify(&model, depth, n);
            return Ok((render(&report), if ok { 0 } else { 2 }));
        }
        Command::Inspect { file, canonical } => {
            let model = spacefile::parse_file(&file)?;
            if canonical {
                return Ok((spacefile::to_text(&model), 0));
            }
            commands::inspect(ctx, &model)
        }
    };
    Ok((render(&value), 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
