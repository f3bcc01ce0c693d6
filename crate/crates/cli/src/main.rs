//! `ccm`: rate regions, regime maps, sweeps and checks from the command line.

mod io;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use ccm_core::dmc::{self, Dmc};
use ccm_core::fme::{self, SymbolicSystem};
use ccm_core::gaussian::{
    self, GaussianChannelParams, InnerOptions, RegimeMapSpec, SweepGrid, DEFAULT_LAMBDA_SCALES, DEFAULT_STEPS,
};
use ccm_core::region::{frontier, frontier_csv, RateRegion};
use ccm_core::verify::{self, CheckResult, VerifyConfig};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::io::{read_json, CliError, CliResult, Outputs};

#[derive(Parser)]
#[command(name = "ccm", version, about = "Capacity-region bounds for the cognitive channel with a common cognitive message")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outer bound, scheme-E inner bound and time division for one Gaussian channel.
    GaussRegion {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a_im: f64,
        #[arg(long, allow_negative_numbers = true)]
        b_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b_im: f64,
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        p2: f64,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        alpha_steps: usize,
        #[arg(long, default_value_t = DEFAULT_STEPS)]
        tau_steps: usize,
        /// Points per frontier CSV.
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Regime labels over a grid of real gains `a` and `|b|`.
    RegimeMap {
        #[arg(long, default_value_t = 3.0)]
        a_max: f64,
        #[arg(long, default_value_t = 3.0)]
        b_max: f64,
        #[arg(long, default_value_t = 60)]
        cells: usize,
        #[arg(long, default_value_t = 1.0)]
        p1: f64,
        #[arg(long, default_value_t = 1.0)]
        p2: f64,
        #[arg(long, default_value_t = 3)]
        subsamples: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Gap and ratio between outer and inner bounds over a parameter grid.
    GapSweep {
        /// JSON grid; the built-in grid when omitted.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Grid-search regions of a finite-alphabet channel.
    DmcCapacity {
        #[arg(long)]
        channel: PathBuf,
        /// Probability grid denominator.
        #[arg(long, default_value_t = 16)]
        grid: u32,
        #[arg(long, value_enum, default_value_t = DmcMode::Outer)]
        mode: DmcMode,
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Fourier–Motzkin elimination on a symbolic rate system.
    Fme {
        #[arg(long, conflicts_with = "canned", required_unless_present = "canned")]
        system: Option<PathBuf>,
        /// Use the built-in pre-elimination system.
        #[arg(long)]
        canned: bool,
        /// Comma-separated variables, eliminated in order.
        #[arg(long, value_delimiter = ',')]
        eliminate: Vec<String>,
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Every acceptance check, with a JSON report.
    VerifyAll {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Include wall-clock seconds in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DmcMode {
    Outer,
    Semidet,
    Verify,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return ExitCode::from(e.exit_code() as u8);
    }
    match run(cli.command) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// `CCM_THREADS` caps the worker pool.
fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("CCM_THREADS") else { return Ok(()) };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("CCM_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Input(e.to_string()))
}

fn run(cmd: Command) -> CliResult<String> {
    match cmd {
        Command::GaussRegion { a_re, a_im, b_re, b_im, p1, p2, alpha_steps, tau_steps, resolution, out } => {
            let params = GaussianChannelParams::new(Complex64::new(a_re, a_im), Complex64::new(b_re, b_im), p1, p2)?;
            gauss_region(&params, alpha_steps, tau_steps, resolution, out)
        }
        Command::RegimeMap { a_max, b_max, cells, p1, p2, subsamples, out } => {
            let spec = RegimeMapSpec { a_max, b_max, cells, p1, p2, subsamples };
            regime_map(&spec, out)
        }
        Command::GapSweep { grid, out } => {
            let grid = match grid {
                Some(p) => read_json(&p)?,
                None => SweepGrid::default(),
            };
            gap_sweep(&grid, out)
        }
        Command::DmcCapacity { channel, grid, mode, resolution, out } => {
            let ch: Dmc = read_json(&channel)?;
            dmc_capacity(&ch, grid, mode, resolution, out)
        }
        Command::Fme { system, canned, eliminate, prune, out } => {
            let sys = match system {
                Some(p) if !canned => read_json::<SymbolicSystem>(&p)?,
                _ => fme::th2_pre_elimination(),
            };
            sys.validate()?;
            run_fme(&sys, &eliminate, prune, out)
        }
        Command::VerifyAll { config, out, timing } => {
            let cfg = match config {
                Some(p) => read_json(&p)?,
                None => VerifyConfig::default(),
            };
            verify_all(&cfg, out, timing)
        }
    }
}

fn emit_region(outs: &mut Outputs, stem: &str, region: &RateRegion, resolution: usize) -> CliResult<()> {
    outs.json(&format!("{stem}.json"), region)?;
    outs.text(&format!("{stem}_frontier.csv"), &frontier_csv(&frontier(region, resolution)?))
}

fn gauss_region(
    params: &GaussianChannelParams,
    alpha_steps: usize,
    tau_steps: usize,
    resolution: usize,
    out: PathBuf,
) -> CliResult<String> {
    let outer = gaussian::outer_region(params, alpha_steps)?;
    let inner = gaussian::inner_region(params, alpha_steps)?;
    let td = gaussian::time_division_region(params, tau_steps)?;
    let opts = InnerOptions { alpha_steps, tau_steps, lambda_scales: DEFAULT_LAMBDA_SCALES.to_vec() };
    let row = gaussian::sweep_point(params, &opts)?;
    let mut outs = Outputs::new(out);
    emit_region(&mut outs, "outer", &outer, resolution)?;
    emit_region(&mut outs, "inner", &inner, resolution)?;
    emit_region(&mut outs, "time_division", &td, resolution)?;
    let label = gaussian::regime_classify(params);
    Ok(format!(
        "gauss-region {params}: regime {label}, gap {} bits, ratio {}; {}",
        ccm_core::format::sig12(row.gap_bits),
        ccm_core::format::sig12(row.ratio),
        outs.summary()
    ))
}

fn regime_map(spec: &RegimeMapSpec, out: PathBuf) -> CliResult<String> {
    let map = gaussian::regime_map(spec)?;
    let mut outs = Outputs::new(out);
    outs.text("regime_map.csv", &render::regime_csv(&map))?;
    outs.text("regime_map.svg", &render::regime_svg(&map))?;
    let (pdc_defects, non_monotone) = verify::regime_map_defects(&map);
    Ok(format!(
        "regime-map {0}x{0}: {1} non-PDC cells with |b| <= 1, {2} non-monotone rows; {3}",
        spec.cells,
        pdc_defects.len(),
        non_monotone.len(),
        outs.summary()
    ))
}

fn gap_sweep(grid: &SweepGrid, out: PathBuf) -> CliResult<String> {
    let summary = gaussian::gap_sweep(grid)?;
    let mut outs = Outputs::new(out);
    outs.text("gap_sweep.csv", &render::sweep_csv(&summary))?;
    let line = format!(
        "gap-sweep {} points: max gap {} bits at {}, max ratio {} at {}; {}",
        summary.rows.len(),
        ccm_core::format::sig12(summary.max_gap),
        summary.max_gap_at,
        ccm_core::format::sig12(summary.max_ratio),
        summary.max_ratio_at,
        outs.summary()
    );
    let ok = summary.all_contained
        && summary.max_gap <= verify::CONSTANT_GAP
        && summary.max_ratio <= verify::CONSTANT_FACTOR;
    if ok {
        Ok(line)
    } else {
        Err(CliError::Check(line))
    }
}

fn dmc_capacity(ch: &Dmc, grid: u32, mode: DmcMode, resolution: usize, out: PathBuf) -> CliResult<String> {
    let mut outs = Outputs::new(out);
    match mode {
        DmcMode::Outer => {
            let region = dmc::outer_bound_region(ch, grid)?;
            emit_region(&mut outs, "outer", &region, resolution)?;
            Ok(format!("dmc-capacity outer, grid {grid}; {}", outs.summary()))
        }
        DmcMode::Semidet => {
            let region = dmc::semidet_capacity_region(ch, grid)?;
            emit_region(&mut outs, "semidet", &region, resolution)?;
            Ok(format!("dmc-capacity semidet, grid {grid}; {}", outs.summary()))
        }
        DmcMode::Verify => {
            let report = dmc::verify_semidet(ch, grid)?;
            outs.json("semidet_report.json", &report)?;
            let line = format!(
                "dmc-capacity verify, grid {grid}: {}/{} points pass, worst deviation {}; {}",
                report.passed,
                report.points,
                ccm_core::format::sig(report.worst_deviation, 6),
                outs.summary()
            );
            if report.all_passed() {
                Ok(line)
            } else {
                Err(CliError::Check(line))
            }
        }
    }
}

fn run_fme(sys: &SymbolicSystem, eliminate: &[String], prune: bool, out: PathBuf) -> CliResult<String> {
    let vars: Vec<&str> = eliminate.iter().map(String::as_str).collect();
    let result = fme::run_pipeline(sys, &vars, prune)?;
    let mut outs = Outputs::new(out);
    outs.json("system.json", &result)?;
    outs.text("system.txt", &format!("{}\n", result.to_string().trim_end()))?;
    Ok(format!("fme: {} inequalities in {:?}; {}", result.inequalities.len(), result.variables, outs.summary()))
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    /// SHA-256 of the canonical JSON form of the configuration.
    input_digest: String,
    checks: Vec<CheckResult>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_clock_s: Option<f64>,
}

fn digest<T: Serialize>(value: &T) -> CliResult<String> {
    let bytes = serde_json::to_vec(value).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

fn verify_all(cfg: &VerifyConfig, out: PathBuf, timing: bool) -> CliResult<String> {
    let start = Instant::now();
    let checks = verify::run_all(cfg)?;
    let elapsed = start.elapsed().as_secs_f64();
    for c in &checks {
        eprintln!("{}", c.line());
    }
    let passed = checks.iter().all(|c| c.passed);
    let failed: Vec<u8> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    let report = RunReport {
        command: "verify-all",
        input_digest: digest(cfg)?,
        checks,
        passed,
        wall_clock_s: timing.then_some(elapsed),
    };
    let mut outs = Outputs::new(out);
    outs.json("report.json", &report)?;
    let line = format!("verify-all: {}/9 criteria pass; {}", 9 - failed.len(), outs.summary());
    if passed {
        Ok(line)
    } else {
        Err(CliError::Check(format!("{line}; failed {failed:?}")))
    }
}
