use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod golden;
mod report;

use config::SettingsFlags;
use report::{Report, Status};

#[derive(Debug, Parser)]
#[command(name = "endoscopy-kit", version, about = "Component groups, multiplicity constants, inner forms and U(3,1) numerics")]
struct Cli {
    #[command(flatten)]
    settings: SettingsFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Centralizer, component groups and Weyl data of a parameter.
    Centralizer(commands::CentralizerArgs),
    /// The constants i and e on chosen components, and the stable coefficient.
    Constants(commands::ConstantsArgs),
    /// Inner forms, endoscopic data and signs.
    #[command(subcommand)]
    Forms(commands::FormsCommand),
    /// Local intertwining relation for U(3,1).
    #[command(name = "lir-u31")]
    LirU31(commands::LirArgs),
    /// Runs the golden suite.
    VerifyAll,
}

/// How a run ended, beyond the report itself.
pub enum Outcome {
    Success,
    VerificationFailed,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    use endoscopy_core::Error as E;
    match err.downcast_ref::<E>() {
        Some(
            E::Overflow(_)
            | E::EnumerationBound { .. }
            | E::Quadrature(_)
            | E::Degenerate(_)
            | E::GammaPole(_)
            | E::Diagram(_)
            | E::InfiniteCenter(_),
        ) => 1,
        _ => 2,
    }
}

fn print(report: &Report) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", report.emit());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = match &cli.command {
        Command::Centralizer(_) => "centralizer",
        Command::Constants(_) => "constants",
        Command::Forms(f) => f.name(),
        Command::LirU31(_) => "lir-u31",
        Command::VerifyAll => "verify-all",
    };
    let run = || -> anyhow::Result<(Report, Outcome)> {
        let settings = config::resolve(&cli.settings)?;
        match &cli.command {
            Command::Centralizer(a) => commands::centralizer(a, &settings),
            Command::Constants(a) => commands::constants(a, &settings),
            Command::Forms(f) => commands::forms(f, &settings),
            Command::LirU31(a) => commands::lir(a, &settings),
            Command::VerifyAll => golden::verify_all(&settings),
        }
    };
    match run() {
        Ok((report, outcome)) => {
            print(&report);
            match outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::VerificationFailed => ExitCode::from(1),
            }
        }
        Err(err) => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            let mut report = Report::new(name, serde_json::json!({ "argv": argv }));
            report.status = Status::Error(format!("{err:#}"));
            print(&report);
            ExitCode::from(exit_code_for(&err))
        }
    }
}
