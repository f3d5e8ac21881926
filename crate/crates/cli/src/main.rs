use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use quietlight_cli::analytic::cmd_analytic;
use quietlight_cli::analyze::{cmd_analyze, read_spectrum, AnalyzeOptions};
use quietlight_cli::compare::{compare_curves, parse_band};
use quietlight_cli::io::{csv_text, write_atomic, Table};
use quietlight_cli::linewidth::cmd_linewidth;
use quietlight_cli::params::ParamSet;
use quietlight_cli::scenario::parse_scenario;
use quietlight_cli::simulate::cmd_simulate;
use quietlight_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "quietlight", version, about = "Seeded laser-noise simulations, spectra and closed-form comparisons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the scenario run count.
    #[arg(long, global = true)]
    runs: Option<usize>,
    /// Worker threads for independent runs (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output directory (simulate, analyze) or file (analytic, compare, linewidth).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write event files, tallies and a manifest.
    Simulate { scenario: PathBuf },
    /// Estimate spectra and correlations from event files.
    Analyze {
        /// Glob of `.events` files, e.g. `out/diode/run_*.events`.
        pattern: String,
        #[arg(long)]
        spectrum: bool,
        #[arg(long)]
        gtau: bool,
        #[arg(long = "count-var")]
        count_var: bool,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        tau_max: Option<f64>,
        #[arg(long)]
        bins: Option<usize>,
        /// Comma-separated counting windows.
        #[arg(long, value_delimiter = ',')]
        windows: Vec<f64>,
    },
    /// Evaluate a closed-form curve: `analytic diode --tau_p 2 --J 5`.
    Analytic {
        model: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Score an MC spectrum CSV against an analytic curve CSV.
    Compare {
        mc: PathBuf,
        theory: PathBuf,
        /// Frequency band `lo:hi` for the pass criterion.
        #[arg(long)]
        band: Option<String>,
    },
    /// Evaluate a linewidth formula with its cross-checks.
    Linewidth {
        model: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
}

/// Pulls `--out` out of a trailing parameter list.
fn split_out(params: Vec<String>, out: &mut Option<PathBuf>) -> Vec<String> {
    let mut rest = Vec::with_capacity(params.len());
    let mut it = params.into_iter();
    while let Some(p) = it.next() {
        if p == "--out" {
            *out = it.next().map(PathBuf::from);
        } else {
            rest.push(p);
        }
    }
    rest
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<bool> {
    let mut out = cli.out;
    match cli.command {
        Command::Simulate { scenario } => {
            let mut s = parse_scenario(&scenario)?;
            s.override_with(cli.seed, cli.runs)?;
            if let Some(dir) = out {
                s.output = dir;
            }
            for f in cmd_simulate(&s, cli.jobs)? {
                println!("{}", f.display());
            }
        }
        Command::Analyze { pattern, spectrum, gtau, count_var, n_max, tau_max, bins, windows } => {
            let opts = AnalyzeOptions { spectrum, gtau, count_var, n_max, tau_max, bins, windows, out };
            for f in cmd_analyze(&pattern, &opts)? {
                println!("{}", f.display());
            }
        }
        Command::Analytic { model, params } => {
            let params = split_out(params, &mut out);
            let c = cmd_analytic(&model, ParamSet::from_args(&params)?)?;
            emit(out.as_ref(), &csv_text(&c.units, &c.columns, &c.rows))?;
        }
        Command::Compare { mc, theory, band } => {
            let (mo, mv, ms) = read_spectrum(&mc)?;
            let t = Table::read(&theory)?;
            let (to, tv) = (t.column("omega", &theory)?, t.column("value", &theory)?);
            let band = band.as_deref().map(parse_band).transpose()?;
            let report = compare_curves((&mo, &mv, &ms), (&to, &tv), band)?;
            emit(out.as_ref(), &json_text(&report))?;
            let s = &report.summary;
            eprintln!(
                "{}: {:.1}% of {} points within |z| <= 3, max |z| = {:.2}",
                if s.pass { "PASS" } else { "FAIL" },
                100.0 * s.band_pass_fraction,
                s.points_in_band,
                s.max_abs_z
            );
            return Ok(s.pass);
        }
        Command::Linewidth { model, params } => {
            let params = split_out(params, &mut out);
            let r = cmd_linewidth(&model, ParamSet::from_args(&params)?)?;
            emit(out.as_ref(), &json_text(&r))?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Io { .. } = e {
                eprintln!("hint: check that the path exists and is writable");
            }
            ExitCode::from(1)
        }
    }
}
