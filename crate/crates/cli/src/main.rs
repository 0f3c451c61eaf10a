use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use pointscatter::runner::{self, RunConfig, RunReport};

#[derive(Parser)]
#[command(
    name = "pointscatter",
    version,
    about = "Point-scatterer imaging experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write heatmap, peaks and report files.
    Run(RunArgs),
    /// List the named presets.
    ListPresets,
    /// Print the singular values of the clean (and noisy) far-field matrix.
    Spectrum {
        #[arg(long)]
        preset: String,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["config", "preset"])))]
struct RunArgs {
    /// TOML experiment description.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Overrides the configured output directory.
    #[arg(long)]
    output_dir: Option<PathBuf>,
    /// Overrides the noise seed.
    #[arg(long)]
    seed: Option<u64>,
}

fn load(args: &RunArgs) -> Result<RunConfig> {
    let mut cfg = match (&args.config, &args.preset) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(name)) => runner::preset(name)?,
        (None, None) => unreachable!("clap enforces one source"),
    };
    if let Some(dir) = &args.output_dir {
        cfg.output_dir = dir
            .to_str()
            .context("output directory is not valid UTF-8")?
            .to_owned();
    }
    if let Some(seed) = args.seed {
        cfg.noise.seed = seed;
    }
    Ok(cfg)
}

fn fmt_err(e: Option<f64>) -> String {
    e.map_or_else(|| "unmatched".to_owned(), |d| format!("{d:.4}"))
}

fn summarize(report: &RunReport) {
    let cfg = &report.config;
    println!("output_dir   {}", cfg.output_dir);
    println!("rcond(P)     {:.3e}", report.admissibility.rcond);
    println!("rank_used    {}", report.rank_used);
    println!("contrast     {:.4e}", report.contrast);
    for (src, err) in cfg.sources.iter().zip(&report.matched_errors) {
        let [x, y, z] = src.position;
        println!("source ({x}, {y}, {z})  error {}", fmt_err(*err));
    }
    if let Some(t) = &report.timings {
        println!("elapsed      {:.1} ms", t.total_ms);
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let cfg = load(&args)?;
            let report = runner::run_experiment(&cfg)
                .with_context(|| format!("experiment `{}` failed", cfg.name))?;
            summarize(&report);
        }
        Command::ListPresets => {
            for name in runner::PRESET_NAMES {
                let cfg = runner::preset(name)?;
                println!("{name:<12} {}", cfg.description);
            }
        }
        Command::Spectrum { preset } => {
            let cfg = runner::preset(&preset)?;
            let spec = runner::spectrum(&cfg)?;
            let noisy = spec.noisy.as_deref();
            match noisy {
                Some(_) => println!("index,clean,noisy"),
                None => println!("index,clean"),
            }
            for (i, s) in spec.clean.iter().enumerate() {
                match noisy {
                    Some(n) => println!("{},{:e},{:e}", i + 1, s, n[i]),
                    None => println!("{},{:e}", i + 1, s),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
