//! Command-line front end: run, validate or list scenarios.
//!
//! Exit codes: 0 on success, 2 for configuration problems, 3 for numeric
//! failures (window/quadrature criteria not met), 4 for I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tunnelab::scenario::{catalog, parse_config, run, Preset};
use tunnelab::Error;

#[derive(Parser)]
#[command(name = "tunnelab", version, about = "Wave-packet tunnelling laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a scenario configuration and write its CSV outputs.
    Run {
        /// Path to the configuration file.
        config: PathBuf,
        /// Output directory (overrides the [output] section).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Random seed; only the pointer scenario is randomised.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parameter preset (overrides the config file).
        #[arg(long, value_parser = parse_preset)]
        preset: Option<Preset>,
    },
    /// List the available scenarios.
    List,
    /// Parse and validate a configuration without running it.
    Validate {
        /// Path to the configuration file.
        config: PathBuf,
        #[arg(long, value_parser = parse_preset)]
        preset: Option<Preset>,
    },
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    Preset::parse(s).ok_or_else(|| format!("`{s}` is not `desk` or `paper`"))
}

fn exit_category(e: &Error) -> u8 {
    match e {
        Error::ConfigParse { .. }
        | Error::UnknownKey { .. }
        | Error::ConfigInvalid { .. }
        | Error::InvalidParameter { .. }
        | Error::InvalidGrid(_) => 2,
        Error::Io(_) => 4,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_category(&e))
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::List => {
            for (id, blurb) in catalog() {
                println!("{id:<8} {blurb}");
            }
            Ok(())
        }
        Command::Validate { config, preset } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = parse_config(&text, preset, None)?;
            println!(
                "ok: scenario {} (preset {}, output {})",
                cfg.id,
                cfg.preset,
                cfg.out_dir.display()
            );
            Ok(())
        }
        Command::Run {
            config,
            out,
            seed,
            preset,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let cfg = parse_config(&text, preset, out)?;
            let manifest = run(&cfg, seed)?;
            for o in &manifest.outputs {
                println!("wrote {}  sha256 {}", o.path.display(), o.sha256);
            }
            for w in &manifest.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "done: {} outputs in {} ms",
                manifest.outputs.len(),
                manifest.wall_clock.as_millis()
            );
            Ok(())
        }
    }
}
