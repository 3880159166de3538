//! `canweight`: classify hypersurface singularities from their exponent
//! support and find canonical weights.
//!
//! Exit codes: 0 when a verdict was computed (whatever it says), 2 on input
//! errors, 3 when an exactness check failed or the work cap was hit.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use canweight::{Error, WeightVector};
use clap::{Args, Parser, Subcommand};

use commands::WeightArgs;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "canweight", version, about = "Canonical weights of hypersurface singularities from Newton data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of variables. Inferred from the highest `x<i>` when omitted.
    #[arg(long)]
    dim: Option<usize>,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Treat the polynomial as Newton non-degenerate.
    #[arg(long)]
    assume_nondegenerate: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the singularity from the position of the all-ones vector.
    Classify {
        /// Polynomial text, or a path to a `.poly`, `.txt` or `.json` file.
        input: String,
        #[command(flatten)]
        common: Common,
    },
    /// Find the canonical weight, or explain why none exists.
    Weight {
        input: String,
        #[command(flatten)]
        common: Common,
        /// Also test this weight, e.g. `2,1,2,1`. Repeatable.
        #[arg(long, value_parser = parse_weight_arg)]
        candidate: Vec<WeightVector>,
        /// Report discrepancy coefficients of the blow-up at this weight.
        #[arg(long, value_parser = parse_weight_arg)]
        blowup: Option<WeightVector>,
        /// Bound on the coordinate sum of the brute-force candidate search.
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Dump the essential cone, its Hilbert basis and probe memberships.
    Cone {
        input: String,
        #[command(flatten)]
        common: Common,
        /// Test membership of this weight. Repeatable.
        #[arg(long, value_parser = parse_weight_arg)]
        probe: Vec<WeightVector>,
    },
    /// Check the deformation conditions for a family file.
    Deform {
        family: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run `weight` over every `.poly`, `.txt` and `.json` file in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        cap: Option<i64>,
    },
}

fn parse_weight_arg(s: &str) -> Result<WeightVector, String> {
    input::parse_weight(s).map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    if e.is_input_error() {
        2
    } else {
        3
    }
}

fn emit(r: &Report, json: bool) {
    let text = if json { r.to_json() } else { r.to_text() };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn run(cli: Cli) -> Result<(Report, bool, Option<Error>), Error> {
    Ok(match cli.command {
        Command::Classify { input, common } => {
            let f = input::load_polynomial(&input, common.dim)?;
            (commands::cmd_classify(&f, common.assume_nondegenerate)?, common.json, None)
        }
        Command::Weight {
            input,
            common,
            candidate,
            blowup,
            cap,
        } => {
            let f = input::load_polynomial(&input, common.dim)?;
            let args = WeightArgs {
                candidates: candidate,
                blowup,
                assume_nondegenerate: common.assume_nondegenerate,
                cap,
            };
            (commands::cmd_weight(&f, &args)?, common.json, None)
        }
        Command::Cone { input, common, probe } => {
            let f = input::load_polynomial(&input, common.dim)?;
            (commands::cmd_cone(&f, &probe)?, common.json, None)
        }
        Command::Deform { family, common } => (
            commands::cmd_deform(&family, common.dim, common.assume_nondegenerate)?,
            common.json,
            None,
        ),
        Command::Batch { dir, common, cap } => {
            let args = WeightArgs {
                assume_nondegenerate: common.assume_nondegenerate,
                cap,
                ..WeightArgs::default()
            };
            let (r, worst) = commands::cmd_batch(&dir, common.dim, &args)?;
            (r, common.json, worst)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, json, worst)) => {
            emit(&report, json);
            ExitCode::from(worst.as_ref().map_or(0, exit_code))
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
