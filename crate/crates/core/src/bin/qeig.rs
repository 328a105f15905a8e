use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use num_complex::Complex64;
use qeig::cli::{run, CliConfig, Command, OutputFormat};
use qeig::right_eig::Convention;

/// Quaternionic right/left eigenvalue problems via complex counterparts.
#[derive(Parser)]
#[command(name = "qeig", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Matrix document paths; `-` reads standard input.
    #[arg(required = true)]
    inputs: Vec<String>,
    #[arg(long, default_value_t = qeig::complex_eig::DEFAULT_EIG_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "positive-imag")]
    convention: ConventionArg,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
    /// Add modulus/argument lists next to every spectrum.
    #[arg(long)]
    polar: bool,
    /// `eig`: plain complex eigensolver on the complexified matrix.
    #[arg(long)]
    complex: bool,
    /// `diag` on complex-linear input: spectrum order as JSON, e.g. `[[2,0],[-2,0]]`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ConventionArg {
    PositiveImag,
    NegativeImag,
}

fn read(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let order = match args.order.as_deref().map(serde_json::from_str::<Vec<[f64; 2]>>) {
        None => None,
        Some(Ok(v)) => Some(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()),
        Some(Err(e)) => {
            eprintln!("qeig: --order: {e}");
            return ExitCode::from(2);
        }
    };
    let mut texts = Vec::with_capacity(args.inputs.len());
    for path in &args.inputs {
        match read(path) {
            Ok(t) => texts.push(t),
            Err(e) => {
                eprintln!("qeig: {path}: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let config = CliConfig {
        command: args.command,
        tol: args.tol,
        convention: match args.convention {
            ConventionArg::PositiveImag => Convention::PositiveImag,
            ConventionArg::NegativeImag => Convention::NegativeImag,
        },
        format: args.format,
        polar: args.polar,
        complex: args.complex,
        order,
    };
    let outcome = run(&config, &texts);
    print!("{}", outcome.output);
    ExitCode::from(outcome.exit_code as u8)
}
