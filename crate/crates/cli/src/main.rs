// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dtcm_cli::config::{ConfigError, ScenarioConfig};
use dtcm_cli::verify::{run_verify, Level};
use dtcm_cli::{commands, presets, CliError};

#[derive(Parser, Debug)]
#[command(name = "dtcm", version, about = "Entanglement dynamics of two atom pairs in two cavities")]
struct Cli {
    /// Scenario file (key = value lines).
    #[arg(long, global = true, value_name = "PATH", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Built-in scenario, see `dtcm presets`.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,
    /// Override one config key, e.g. `--set field_a=fock:2`. Repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Output file; defaults to the config's `output` key, then stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads, 0 = one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Concurrence CSV: tau,alpha,pair,concurrence.
    Simulate,
    /// Sudden death and birth events per (alpha, pair).
    Events,
    /// Whitespace-separated (alpha x tau) grid per pair.
    Plotdata,
    /// Run the invariant suites.
    Verify {
        #[arg(default_value = "quick")]
        level: Level,
    },
    /// List presets, or print one as a config file.
    Presets { name: Option<String> },
}

fn load_config(cli: &Cli) -> Result<ScenarioConfig, CliError> {
    let text = match (&cli.config, &cli.preset) {
        (Some(path), _) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        (None, Some(name)) => presets::preset_text(name)
            .ok_or_else(|| ConfigError::new("preset", format!("unknown preset `{name}`")))?
            .to_string(),
        (None, None) => return Err(ConfigError::new("config", "give --config <path> or --preset <name>").into()),
    };
    Ok(ScenarioConfig::parse_with_overrides(&text, &cli.overrides)?)
}

fn emit(text: &str, target: Option<&Path>) -> Result<(), CliError> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Presets { name: None } => {
            for name in presets::preset_names() {
                println!("{name}");
            }
            Ok(())
        }
        Command::Presets { name: Some(name) } => {
            let cfg = presets::load_preset(name)?;
            emit(&cfg.to_config_string(), cli.out.as_deref())
        }
        Command::Verify { level } => {
            let pool = commands::thread_pool(cli.threads)?;
            let report = pool.install(|| run_verify(*level))?;
            print!("{report}");
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Verification(report.failed_suites().join(", ")))
            }
        }
        cmd => {
            let cfg = load_config(cli)?;
            let pool = commands::thread_pool(cli.threads)?;
            let text = match cmd {
                Command::Simulate => commands::simulate(&cfg, &pool)?,
                Command::Events => commands::events(&cfg, &pool)?,
                Command::Plotdata => commands::plotdata(&cfg, &pool)?,
                _ => unreachable!("handled above"),
            };
            emit(&text, cli.out.as_deref().or(cfg.output.as_deref()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dtcm: {e}");
            e.exit_code()
        }
    }
}
