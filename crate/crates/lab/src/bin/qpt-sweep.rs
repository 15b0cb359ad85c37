use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dicke_discord_lab::config::SweepConfig;
use dicke_discord_lab::validate::{self, Suite, ValidateOptions};
use dicke_discord_lab::{golden, sweep, LabError};

#[derive(Parser)]
#[command(name = "qpt-sweep", version, about = "Dicke-model photon statistics and two-qubit discord sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Photon-number fluctuation across a coupling grid.
    PnfSweep(SweepArgs),
    /// Discord amplification across coupling and initial-state grids.
    DiscordSweep(SweepArgs),
    /// Check closed forms and pinned oracle values.
    Validate {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Recompute the oracles and overwrite the golden file.
        #[arg(long)]
        pin: bool,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
    /// Transit time (µs) of an atom through a cavity waist.
    TransitTime {
        #[arg(long, allow_negative_numbers = true)]
        waist_um: f64,
        #[arg(long, allow_negative_numbers = true)]
        velocity_mps: f64,
    },
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output CSV; overrides the config, `-` for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
}

fn load(args: &SweepArgs) -> Result<(SweepConfig, Option<PathBuf>), LabError> {
    let mut cfg = SweepConfig::load(&args.config)?;
    if args.workers.is_some() {
        cfg.workers = args.workers;
    }
    cfg.validate()?;
    let out = args.out.clone().or_else(|| cfg.output.clone());
    Ok((cfg, out))
}

fn sink(out: Option<PathBuf>) -> Result<Box<dyn Write>, LabError> {
    Ok(match out {
        Some(p) if p.as_os_str() != "-" => Box::new(BufWriter::new(File::create(&p)?)),
        _ => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<(), LabError> {
    match cli.command {
        Command::PnfSweep(args) => {
            let (cfg, out) = load(&args)?;
            let rows = sweep::pnf_sweep(&cfg)?;
            sweep::write_pnf_csv(&rows, sink(out)?)
        }
        Command::DiscordSweep(args) => {
            let (cfg, out) = load(&args)?;
            let rows = sweep::discord_sweep(&cfg)?;
            sweep::write_discord_csv(&rows, sink(out)?)
        }
        Command::Validate { suite, pin, golden_dir } => {
            let opts = ValidateOptions { suite, pin, golden_dir: golden_dir.unwrap_or_else(golden::default_dir) };
            let report = validate::run(&opts)?;
            print!("{}", report.render());
            if report.passed() {
                Ok(())
            } else {
                let names: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
                Err(LabError::Validation(names.join(", ")))
            }
        }
        Command::TransitTime { waist_um, velocity_mps } => {
            println!("{:?}", sweep::transit_time(waist_um, velocity_mps)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
