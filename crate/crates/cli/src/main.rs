use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use rotconj_cli::{run, Command, Options, Outcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Classify,
    Invariants,
    NormalForm,
    Orbit,
    Oracle,
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Classify => Command::Classify,
            Cmd::Invariants => Command::Invariants,
            Cmd::NormalForm => Command::NormalForm,
            Cmd::Orbit => Command::Orbit,
            Cmd::Oracle => Command::Oracle,
            Cmd::Verify => Command::Verify,
        }
    }
}

/// Classify left actions of rotation vectors on T^n and SU(2) x T^n up to conjugacy.
///
/// Exit status: 0 conjugate / valid / ok, 1 not conjugate / invalid, 2 error.
#[derive(Debug, Parser)]
#[command(name = "rotconj", version)]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Problem file (TOML)
    file: PathBuf,
    /// Emit the report as JSON
    #[arg(long)]
    json: bool,
    /// Seed for numeric sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Iterations for `orbit`
    #[arg(long, default_value_t = 1000)]
    steps: usize,
    /// Sample points for numeric checks
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Tolerance for numeric checks
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options {
        seed: args.seed,
        steps: args.steps,
        samples: args.samples,
        tolerance: args.tolerance,
    };
    let command = Command::from(args.command);
    let (report, outcome) = match std::fs::read_to_string(&args.file) {
        Ok(text) => run(command, &text, &opts),
        Err(e) => {
            let mut r = rotconj_cli::Report::new(command.name());
            r.errors.push(format!("cannot read {}: {e}", args.file.display()));
            (r, Outcome::Error)
        }
    };
    if args.json {
        println!("{}", report.to_json());
    } else if outcome == Outcome::Error {
        for e in &report.errors {
            eprintln!("error: {e}");
        }
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(outcome as u8)
}
