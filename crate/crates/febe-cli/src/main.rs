//! `febe` — command-line front end for the free-electron–bound-electron
//! interaction simulator.
//!
//! ```text
//! febe <scenario> [--config FILE] [--set key=value]... [--out DIR] [--svg]
//! ```
//!
//! Writes `<scenario>.csv`, `resolved-config.txt`, and optionally
//! `<scenario>.svg` into the output directory. Exit codes: 0 success,
//! 2 configuration error, 3 numeric/validation error.

mod config;
mod scenarios;
mod svg;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use crate::scenarios::Scenario;

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "febe", version, about = "Modulated free-electron / two-level-system simulator")]
struct Cli {
    /// Scenario to run.
    #[arg(value_enum)]
    scenario: Scenario,

    /// Optional `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Configuration overrides, applied after the file.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,

    /// Also render an SVG plot of the result table.
    #[arg(long)]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let file_text = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("febe: cannot read config file {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
        },
        None => None,
    };
    let cfg = match config::parse_config(file_text.as_deref(), &cli.set) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("febe: configuration error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };

    let result = match scenarios::run(cli.scenario, &cfg) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("febe: scenario {} failed: {e}", cli.scenario.name());
            return ExitCode::from(EXIT_NUMERIC);
        }
    };

    if let Err(e) = std::fs::create_dir_all(&cli.out) {
        eprintln!("febe: cannot create output directory {}: {e}", cli.out.display());
        return ExitCode::FAILURE;
    }
    let csv_path = cli.out.join(format!("{}.csv", result.scenario));
    let cfg_path = cli.out.join("resolved-config.txt");
    let writes = [
        (csv_path, result.to_csv()),
        (cfg_path, result.resolved_config_text()),
    ];
    for (path, content) in writes {
        if let Err(e) = std::fs::write(&path, content) {
            eprintln!("febe: cannot write {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    if cli.svg {
        let svg_path = cli.out.join(format!("{}.svg", result.scenario));
        if let Err(e) = std::fs::write(&svg_path, svg::render(&result)) {
            eprintln!("febe: cannot write {}: {e}", svg_path.display());
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}
