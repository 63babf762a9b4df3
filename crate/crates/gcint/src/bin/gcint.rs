//! Command-line front end: verification suites and scenario runs with
//! human-readable summaries and machine-readable JSON reports.
//!
//! Exit codes: 0 all assertions pass, 1 assertion failure, 2 usage error.

use clap::{Parser, Subcommand};
use gcint::boundary::{
    run_cylinder_sweep, run_disk_sweep, CylinderParams, DiskParams, RunChainOptions,
};
use gcint::report::IntegrationReport;
use gcint::{suites, Error};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gcint",
    version,
    about = "Coordinate-free geometric-calculus integration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Clifford-algebra property suite at one dimension.
    VerifyAlgebra {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the antiderivative table (and scenario entries) against the
    /// projected derivative at sampled points.
    VerifyTable {
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
        dim: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an integration scenario over an incision sweep with Richardson
    /// extrapolation and an oracle comparison.
    RunScenario {
        /// `disk` or `cylinder`.
        scenario: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 2.0)]
        height: f64,
        /// Single incision size; overrides the sweep.
        #[arg(long)]
        chamfer: Option<f64>,
        #[arg(long = "eps-sweep", value_delimiter = ',')]
        eps_sweep: Option<Vec<f64>>,
        /// Oracle subdivision per axis.
        #[arg(long)]
        cells: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Allowed distance between the extrapolated result and the oracle.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a directed integral by brute-force midpoint quadrature.
    Oracle {
        #[arg(long, default_value = "disk")]
        patch: String,
        #[arg(long, default_value = "one")]
        field: String,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 2.0)]
        height: f64,
        /// Subdivision per axis.
        #[arg(long, default_value_t = 64)]
        cells: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the fundamental theorem on a patch: interior vs boundary.
    CheckFtc {
        #[arg(long, default_value = "half-x-squared")]
        field: String,
        #[arg(long, default_value = "unit-square")]
        patch: String,
        /// Starting subdivision per axis.
        #[arg(long, default_value_t = 64)]
        cells: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// JSON goes to `--out` only; the summary table stays on stdout.
fn write_out(out: &Option<PathBuf>, json: &serde_json::Value) -> gcint::Result<()> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(json)?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DimensionOutOfRange(_) | Error::InvalidParameter(_) | Error::UnknownEntry(_)
    )
}

fn run(cli: Cli) -> gcint::Result<bool> {
    match cli.command {
        Command::VerifyAlgebra {
            dim,
            seed,
            trials,
            tol,
            out,
        } => {
            let report = suites::algebra_properties(dim, seed, trials, tol)?;
            println!("algebra property suite: dim={dim} seed={seed} trials={trials}");
            println!(
                "  associativity residual          {:.3e}",
                report.associativity
            );
            println!(
                "  reverse anti-automorphism       {:.3e}",
                report.reverse_antiautomorphism
            );
            println!(
                "  norm positivity                 {:.3e}",
                report.norm_positivity
            );
            println!(
                "  contraction/outer duality       {:.3e}",
                report.contraction_duality
            );
            println!(
                "  inverse round trip              {:.3e}",
                report.inverse_round_trip
            );
            println!(
                "  grade completeness              {:.3e}",
                report.grade_completeness
            );
            println!(
                "  projection idempotence          {:.3e}",
                report.projection_idempotence
            );
            if report.vacuous {
                eprintln!("warning: --trials 0 makes every property pass vacuously");
            }
            let passed = report.passed();
            println!(
                "worst residual {:.3e} vs tol {tol:.1e}: {}",
                report.worst(),
                if passed { "PASS" } else { "FAIL" }
            );
            write_out(&out, &serde_json::to_value(&report)?)?;
            Ok(passed)
        }
        Command::VerifyTable {
            dim,
            seed,
            trials,
            tol,
            out,
        } => {
            let report = suites::verify_table(&dim, trials, seed, tol)?;
            for check in &report.checks {
                println!(
                    "{:<22} points={:<4} max residual {:.3e}  {}",
                    check.entry,
                    check.points,
                    check.max_relative_residual,
                    if check.passed { "PASS" } else { "FAIL" }
                );
            }
            write_out(&out, &serde_json::to_value(&report)?)?;
            Ok(report.passed())
        }
        Command::RunScenario {
            scenario,
            radius,
            height,
            chamfer,
            eps_sweep,
            cells,
            seed,
            tol,
            out,
        } => {
            let chain_opts = RunChainOptions {
                seed,
                ..Default::default()
            };
            let (outcome, tol) = match scenario.as_str() {
                "disk" => {
                    let eps = chamfer
                        .map(|c| vec![c])
                        .or(eps_sweep)
                        .unwrap_or_else(|| vec![1e-1, 1e-2, 1e-3, 1e-4]);
                    let params = DiskParams::standard(radius, eps[0])?;
                    let outcome = run_disk_sweep(&params, &eps, chain_opts, cells.unwrap_or(320))?;
                    (outcome, tol.unwrap_or(1e-6))
                }
                "cylinder" => {
                    let eps = chamfer
                        .map(|c| vec![c])
                        .or(eps_sweep)
                        .unwrap_or_else(|| vec![2.5e-2, 1e-2, 1e-3, 1e-4]);
                    let params = CylinderParams::standard(radius, height, eps[0])?;
                    let outcome =
                        run_cylinder_sweep(&params, &eps, chain_opts, cells.unwrap_or(48))?;
                    (outcome, tol.unwrap_or(1e-4))
                }
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown scenario `{other}` (expected disk or cylinder)"
                    )))
                }
            };
            let report = IntegrationReport::from_sweep(&outcome);
            println!(
                "scenario {}: sweep over {:?}",
                report.scenario,
                outcome.points.iter().map(|p| p.epsilon).collect::<Vec<_>>()
            );
            for p in &outcome.points {
                println!(
                    "  eps={:<9.3e} bound={:<10.3e} oracle delta={:<10.3e} within bound: {}",
                    p.epsilon,
                    p.error_bound,
                    p.oracle_delta.unwrap_or(f64::NAN),
                    p.within_error_bound.map_or("n/a".into(), |b| b.to_string()),
                );
            }
            let delta = report.oracle.as_ref().map(|o| o.delta).unwrap_or(f64::NAN);
            println!(
                "extrapolated result {:?}; oracle delta {:.3e}; convergence order {:?}",
                report.result, delta, report.convergence_order
            );
            let passed = outcome.error_bound_ok && delta <= tol;
            println!("{}", if passed { "PASS" } else { "FAIL" });
            write_out(&out, &serde_json::to_value(&report)?)?;
            Ok(passed)
        }
        Command::Oracle {
            patch,
            field,
            radius,
            height,
            cells,
            tol,
            out,
        } => {
            let report = suites::run_oracle(&patch, &field, radius, height, cells, tol)?;
            println!(
                "∫ over {} of `{}` = {:?} ({} cells, est. error {:.3e}, converged: {})",
                report.patch,
                report.field,
                report.value,
                report.cells,
                report.estimated_error,
                report.converged
            );
            write_out(&out, &serde_json::to_value(&report)?)?;
            Ok(report.converged)
        }
        Command::CheckFtc {
            field,
            patch,
            cells,
            tol,
            out,
        } => {
            let max_cells = 512usize.pow(3).min(cells.pow(3) * 64);
            let report = suites::check_ftc(&field, &patch, cells, max_cells)?;
            println!(
                "FTC on {} with F = {}: residual {:.3e} (tol {tol:.1e})",
                report.patch, report.field, report.residual
            );
            let passed = report.residual <= tol;
            println!("{}", if passed { "PASS" } else { "FAIL" });
            write_out(&out, &serde_json::to_value(&report)?)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("GCINT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if usage_error(&e) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
