//! Scenario runner. Exit status: 0 all checks pass, 1 a check failed,
//! 2 configuration error, 3 runtime error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clocklab::scenario::{parse_config_with_overrides, run, ScenarioKind};

#[derive(Parser)]
#[command(
    name = "clocklab",
    version,
    about = "Quantum-clock numerical laboratory"
)]
struct Cli {
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Weighing thought experiments.
    #[command(subcommand)]
    Gedanken(Gedanken),
    /// Constrained classical clock.
    #[command(subcommand)]
    Classical(Classical),
    /// Quantized clock in flat space.
    #[command(subcommand)]
    Quantum(Quantum),
}

#[derive(Subcommand)]
enum Gedanken {
    Box(Common),
    Efield(Common),
}

#[derive(Subcommand)]
enum Classical {
    Trajectory(Common),
    Brackets(Common),
}

#[derive(Subcommand)]
enum Quantum {
    Moments(Common),
    Bound(Common),
    Optimize(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario document (`key = value [unit]` lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override or add a key, e.g. `--set quantum.e0=10`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn declares_kind(text: &str) -> bool {
    text.lines()
        .filter_map(|l| l.split('#').next()?.split_once('='))
        .any(|(k, _)| k.trim() == "kind")
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let (kind, common) = match cli.group {
        Group::Gedanken(Gedanken::Box(c)) => (ScenarioKind::GedankenBox, c),
        Group::Gedanken(Gedanken::Efield(c)) => (ScenarioKind::GedankenEfield, c),
        Group::Classical(Classical::Trajectory(c)) => (ScenarioKind::ClassicalTrajectory, c),
        Group::Classical(Classical::Brackets(c)) => (ScenarioKind::ClassicalBrackets, c),
        Group::Quantum(Quantum::Moments(c)) => (ScenarioKind::QuantumMoments, c),
        Group::Quantum(Quantum::Bound(c)) => (ScenarioKind::QuantumBoundSweep, c),
        Group::Quantum(Quantum::Optimize(c)) => (ScenarioKind::QuantumOptimize, c),
    };

    let text = match &common.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("config error: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => String::new(),
    };
    let mut overrides = Vec::new();
    if !declares_kind(&text)
        && !common
            .set
            .iter()
            .any(|s| s.split('=').next().map(str::trim) == Some("kind"))
    {
        overrides.push(format!("kind={kind}"));
    }
    overrides.extend(common.set);

    let config = match parse_config_with_overrides(&text, &overrides) {
        Ok(c) => c,
        Err(errors) => {
            for e in &errors.0 {
                eprintln!("config error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    if config.kind != kind {
        eprintln!(
            "config error: document is {} but the subcommand runs {kind}",
            config.kind
        );
        return ExitCode::from(2);
    }

    match run(&config) {
        Ok(report) => {
            for c in &report.checks {
                println!(
                    "{} {:<18} measured = {:.6e}  tolerance = {:.1e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.tolerance
                );
            }
            if let Some(path) = &config.output {
                println!("wrote {} rows to {}", report.rows_written, path.display());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            let label = if e.exit_code() == 2 {
                "config error"
            } else {
                "error"
            };
            eprintln!("{label}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
