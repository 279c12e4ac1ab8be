//! `dha`: structure functions, spectra, relation checks and parameter linkage
//! for deformed Heisenberg algebras, as reproducible batch commands.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Failure, ModelName, Outcome, Params, Relation, VerifyArgs};
use output::Format;

#[derive(Parser)]
#[command(name = "dha", version, about = "Deformed Heisenberg algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Two-sided algebra parameter on the X P side.
    #[arg(long)]
    qb: Option<f64>,
    /// Two-sided algebra parameter on the P X side.
    #[arg(long)]
    pb: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
}

impl From<&ParamArgs> for Params {
    fn from(a: &ParamArgs) -> Self {
        Params {
            q: a.q,
            p: a.p,
            qb: a.qb,
            pb: a.pb,
            mu: a.mu,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Structure function Phi(n) for n = 0..=n-max.
    #[command(allow_negative_numbers = true)]
    Sf {
        #[arg(long, value_enum)]
        model: ModelName,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Energy levels E(n) = (Phi(n) + Phi(n+1))/2 for n = 0..=n-max.
    #[command(allow_negative_numbers = true)]
    Spectrum {
        #[arg(long, value_enum)]
        model: ModelName,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Interior residual of a deformed relation on a truncated Fock space.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(long, value_enum)]
        relation: Relation,
        /// Oscillator model, for the hg and commutator-sf relations.
        #[arg(long, value_enum)]
        model: Option<ModelName>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-level linkage of the two-sided algebra with the q,p-oscillator.
    #[command(allow_negative_numbers = true)]
    Link {
        #[arg(long)]
        qb: f64,
        #[arg(long)]
        pb: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reduction and classical-limit suite.
    #[command(allow_negative_numbers = true)]
    Limits {
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(command: Command) -> (Outcome, Format, Option<PathBuf>) {
    let pick = |o: &OutputArgs, default| o.format.unwrap_or(default);
    match command {
        Command::Sf {
            model,
            params,
            n_max,
            output,
        } => {
            let f = pick(&output, Format::Csv);
            (commands::sf(model, &(&params).into(), n_max, f), f, output.out)
        }
        Command::Spectrum {
            model,
            params,
            n_max,
            output,
        } => {
            let f = pick(&output, Format::Csv);
            (commands::spectrum_cmd(model, &(&params).into(), n_max, f), f, output.out)
        }
        Command::Verify {
            relation,
            model,
            params,
            dim,
            margin,
            tolerance,
            output,
        } => {
            let f = pick(&output, Format::Json);
            let args = VerifyArgs {
                relation,
                model,
                params: (&params).into(),
                dim,
                margin,
                tolerance,
            };
            (commands::verify(&args, f), f, output.out)
        }
        Command::Link {
            qb,
            pb,
            p,
            n_max,
            tolerance,
            output,
        } => {
            let f = pick(&output, Format::Csv);
            (commands::link(qb, pb, p, n_max, tolerance, f), f, output.out)
        }
        Command::Limits { tolerance, output } => {
            let f = pick(&output, Format::Csv);
            (commands::limits(tolerance, f), f, output.out)
        }
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, format, out) = run(cli.command);
    let result = outcome.and_then(|(doc, pass)| emit(&doc.render(format), out).map(|()| pass));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            match failure {
                Failure::Usage(msg) | Failure::Io(msg) => eprintln!("error: {msg}"),
                Failure::Domain(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
