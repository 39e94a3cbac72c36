//! `gencoef`: generator-coefficient tables, preservation checks, logical
//! channels, Reed-Muller searches, distillation curves, stabilizer
//! conversion and oracle cross-checks from the command line.
//!
//! Exit status: 0 on success, 1 when an analytic check fails, 2 on input
//! errors. `GENCOEF_ENUM_CAP` overrides the enumeration cap.

mod commands;
mod grid;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Analytic(String),
}

impl From<gencoef::Error> for Failure {
    fn from(e: gencoef::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

pub type Outcome = Result<(), Failure>;

/// Environment variable holding the enumeration cap (`4194304` or `2^22`).
pub const CAP_VARIABLE: &str = "GENCOEF_ENUM_CAP";

#[derive(Parser, Debug)]
#[command(name = "gencoef", version, about = "Generator-coefficient analysis of diagonal gates on quantum codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Built-in name (steane, 422, 832, rm15, qrm(r,m), rm(r1,r2,m[,punctured])) or catalog file.
    #[arg(long)]
    pub code: String,
    /// Overrides the Z-stabilizer sign vector, e.g. 0001.
    #[arg(long)]
    pub y: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRoute {
    /// Trivial-syndrome weight equals one.
    Sumsq,
    /// Exact integer divisibility (QFD gates or rz:pi/p).
    Div,
    /// Trigonometric identity for rz gates.
    Trig,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFormat {
    Json,
    Catalog,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator-coefficient table.
    Table {
        #[command(flatten)]
        code: CodeArgs,
        /// rz:THETA, qfd:l=L:R=<file or rows>, table:<file> or id.
        #[arg(long)]
        gate: String,
        /// Merge the nontrivial rows when they are all equal.
        #[arg(long)]
        collapse: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Whether the gate preserves the code space, by the chosen route.
    Check {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        gate: String,
        #[arg(long, value_enum, default_value = "sumsq")]
        route: CheckRoute,
        /// Exit with status 1 unless the code space is preserved.
        #[arg(long)]
        expect_preserved: bool,
    },
    /// Quadratic-form divisibility for `qfd` gates.
    CheckQfd {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        level: u32,
        /// Matrix file or inline rows `a,b;c,d`.
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        expect_preserved: bool,
    },
    /// Rotation divisibility for `R_Z(pi/p)`.
    CheckRz {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        expect_preserved: bool,
    },
    /// Trigonometric identity for `R_Z(theta)`.
    CheckTrig {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        expect_preserved: bool,
    },
    /// Logical operator of one syndrome row.
    LogicalOp {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        gate: String,
        /// Syndrome representative; the trivial syndrome by default.
        #[arg(long)]
        mu: Option<String>,
    },
    /// Syndrome probabilities of `R_Z(theta)` as CSV `theta,mu,state,p`.
    Probs {
        #[command(flatten)]
        code: CodeArgs,
        /// START:END:COUNT, endpoints included.
        #[arg(long, default_value = "0:2pi:400")]
        theta_grid: String,
        /// Comma-separated logical states (letters 0 1 + - A per qubit); all
        /// basis states by default.
        #[arg(long)]
        states: Option<String>,
    },
    /// Kraus operators of the logical channel.
    Channel {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        gate: String,
        /// none, z-correct or mu:gamma,...
        #[arg(long, default_value = "none")]
        policy: String,
        /// Input logical state for probabilities and the output density.
        #[arg(long)]
        state: Option<String>,
    },
    /// Largest level preserved by a Reed-Muller CSS code.
    RmLevel {
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        m: usize,
        /// Confirm by the positive-sign check at the level and one above.
        #[arg(long)]
        verify: bool,
    },
    /// Builds a Reed-Muller CSS code.
    RmBuild {
        #[arg(long)]
        r1: usize,
        #[arg(long)]
        r2: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        punctured: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: CodeFormat,
    },
    /// Distillation curves and threshold.
    Msd {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "rz:pi/4")]
        gate: String,
        /// postselect, correct-all or correct-subset:mu;mu...
        #[arg(long, default_value = "postselect")]
        policy: String,
        /// START:END:COUNT, endpoints included.
        #[arg(long, default_value = "0:0.5:51")]
        p_grid: String,
        /// Sampled runs per grid point; 0 disables sampling.
        #[arg(long, default_value_t = 0)]
        mc_samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the curve CSV `p,p_success,q` here.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Converts a stabilizer code to a CSS code with the same tables.
    StabConvert {
        /// File with one `x|z` row per generator, optional leading `-`.
        #[arg(long)]
        stabilizer: PathBuf,
        /// Distance to check against; computed when omitted.
        #[arg(long)]
        distance: Option<u32>,
        /// Compare both tables under this gate.
        #[arg(long)]
        gate: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: CodeFormat,
    },
    /// Compares the analytic results with the dense pipeline.
    OracleCheck {
        /// Defaults to the built-in (code, gate) pairs.
        #[arg(long)]
        code: Option<String>,
        #[arg(long)]
        gate: Option<String>,
        #[arg(long, default_value = "none")]
        policy: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn run(cli: Cli) -> Outcome {
    commands::apply_cap_from_env()?;
    match cli.command {
        Command::Table { code, gate, collapse, format } => commands::table(&code, &gate, collapse, format),
        Command::Check { code, gate, route, expect_preserved } => commands::check(&code, &gate, route, expect_preserved),
        Command::CheckQfd { code, level, matrix, expect_preserved } => commands::check_qfd(&code, level, &matrix, expect_preserved),
        Command::CheckRz { code, p, expect_preserved } => commands::check_rz(&code, p, expect_preserved),
        Command::CheckTrig { code, theta, expect_preserved } => commands::check_trig(&code, &theta, expect_preserved),
        Command::LogicalOp { code, gate, mu } => commands::logical_op(&code, &gate, mu.as_deref()),
        Command::Probs { code, theta_grid, states } => commands::probs(&code, &theta_grid, states.as_deref()),
        Command::Channel { code, gate, policy, state } => commands::channel(&code, &gate, &policy, state.as_deref()),
        Command::RmLevel { r1, r2, m, verify } => commands::rm_level(r1, r2, m, verify),
        Command::RmBuild { r1, r2, m, punctured, format } => commands::rm_build(r1, r2, m, punctured, format),
        Command::Msd { code, gate, policy, p_grid, mc_samples, seed, csv } => {
            commands::msd(&code, &gate, &policy, &p_grid, mc_samples, seed, csv.as_deref())
        }
        Command::StabConvert { stabilizer, distance, gate, format } => {
            commands::stab_convert(&stabilizer, distance, gate.as_deref(), format)
        }
        Command::OracleCheck { code, gate, policy, tol } => commands::oracle_check(code.as_deref(), gate.as_deref(), &policy, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Analytic(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
