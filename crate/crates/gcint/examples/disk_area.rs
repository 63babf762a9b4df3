//! The disk-area computation, end to end: find antiderivatives, cut the
//! boundary circle next to the branch cut of `½x² log(x x₀)`, evaluate at
//! the two signed cut edges, then let the cut shrink.
//!
//! The sum at cut half-width δ is exactly `(π - δ) r² I₂`; the branch jump
//! across the cut carries the whole integral. Run with
//! `cargo run --example disk_area`.

use gcint::boundary::{
    disk_scenario, run_chain, run_disk_sweep, verify_branch_cut_necessity, DiskParams,
    RunChainOptions,
};
use gcint::report::IntegrationReport;
use std::f64::consts::PI;

fn main() -> gcint::Result<()> {
    let radius = 1.0;

    // One chain at a visible cut width, to look at the moving parts.
    let params = DiskParams::standard(radius, 1e-2)?;
    let chain = disk_scenario(&params)?;
    println!("chain `{}`:", chain.label);
    for level in &chain.levels {
        for piece in &level.pieces {
            println!(
                "  dim {}: {} — {}",
                level.dim, piece.label, piece.entry.formula
            );
        }
    }
    for incision in &chain.incisions {
        println!(
            "  incision `{}` at level {}: volume {:.4e}, sup bound {:.4}",
            incision.label, incision.level, incision.volume, incision.sup_bound
        );
    }
    let run = run_chain(&chain, RunChainOptions::default())?;
    println!(
        "result at δ=1e-2:  {}   (exact value (π-δ)r² I₂)",
        run.result
    );
    println!("incision error bound: {:.4e}", run.error_bound);

    // The jump of the antiderivative across the branch cut is the integral.
    let cut = verify_branch_cut_necessity(&chain, RunChainOptions::default())?;
    println!(
        "jump across cut:   {}   (result−jump gap {:.2e})",
        cut.jump, cut.gap
    );

    // Sweep the cut width and extrapolate to zero, with the quadrature
    // oracle watching the error-ledger inequality at every step.
    let eps = [1e-1, 1e-2, 1e-3, 1e-4];
    let outcome = run_disk_sweep(&params, &eps, RunChainOptions::default(), 320)?;
    println!("\nsweep:");
    for p in &outcome.points {
        println!(
            "  δ={:<8.1e} result e12 = {:.10}  bound {:.3e}  |Δ oracle| {:.3e}  within bound: {}",
            p.epsilon,
            p.result.coeff(0b11),
            p.error_bound,
            p.oracle_delta.unwrap(),
            p.within_error_bound.unwrap(),
        );
    }
    let coeff = outcome.extrapolated.coeff(0b11);
    println!(
        "extrapolated: {coeff:.12}  (πr² = {:.12})",
        PI * radius * radius
    );
    println!(
        "convergence order: {:.4}",
        outcome.convergence_order.unwrap()
    );

    let report = IntegrationReport::from_sweep(&outcome);
    println!("\nJSON report:\n{}", report.to_json_pretty()?);
    Ok(())
}
