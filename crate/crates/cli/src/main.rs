use std::path::PathBuf;
use std::process::ExitCode;

use banach_mp::matcore::ToleranceProfile;
use banach_mp::NormKind;
use banach_mp_cli::commands::{self, Settings};
use banach_mp_cli::failure::Failure;
use banach_mp_cli::suite::{self, SuiteConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "banach-mp", version, about = "Hermitian, Moore-Penrose and EP checks for matrices on ℓ1/ℓ2/ℓ∞")]
struct Cli {
    /// Norm on ℂⁿ: l1, l2 or linf [default: l2]
    #[arg(long, global = true)]
    norm: Option<NormKind>,
    /// Hermitian tolerance; the rank and zero thresholds scale from it
    #[arg(long, global = true, value_parser = positive_float)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    instances: usize,
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    size: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hermitian verdict, Moore-Penrose inverse and EP verdict for one matrix file
    Classify { path: PathBuf },
    /// Checks when the product of two EP matrices is EP
    Product { s: PathBuf, t: PathBuf },
    /// Runs the seeded property suite
    Suite,
    /// Prints the fixed example gallery
    Examples,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("expected a positive finite number, got {s}"))
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Text => print!("{}", text(report)),
        Format::Json => println!("{}", serde_json::to_string(report).expect("reports serialize")),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let tol = cli.tol.map(ToleranceProfile::from_herm_tol).unwrap_or_default();
    let settings = Settings { norm: cli.norm.unwrap_or(NormKind::L2), tol };
    match cli.command {
        Command::Classify { path } => {
            let r = commands::classify(&path, &settings)?;
            emit(cli.report, &r, |r| r.text());
        }
        Command::Product { s, t } => {
            let r = commands::product(&s, &t, &settings)?;
            emit(cli.report, &r, |r| r.text());
        }
        Command::Suite => {
            let cfg = SuiteConfig {
                seed: cli.seed,
                instances: cli.instances,
                size: cli.size as usize,
                norm: settings.norm,
                tol,
            };
            let r = suite::run(&cfg);
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            emit(cli.report, &r, |r| r.text());
            if r.tolerance_flagged {
                return Err(Failure::Tolerance(format!("suite tolerance {:e} is above the trusted range", tol.herm_tol)));
            }
            if !r.all_pass {
                let failed: Vec<&str> = r.properties.iter().filter(|p| !p.passed).map(|p| p.name).collect();
                return Err(Failure::Checks(format!("failed properties: {}", failed.join(", "))));
            }
        }
        Command::Examples => {
            if let Some(k) = cli.norm {
                return Err(Failure::Parse(format!("examples use fixed norms; --norm {k} is not accepted")));
            }
            let r = commands::examples(&tol)?;
            emit(cli.report, &r, |r| r.text());
            if !r.all_match {
                return Err(Failure::Checks("some gallery entries do not match their recorded verdicts".into()));
            }
        }
    }
    Ok(())
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
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
