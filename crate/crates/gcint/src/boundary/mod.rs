//! The main algorithm: iterate the fundamental theorem down a chain of
//! manifolds, cutting incisions to create boundaries and dodge branch cuts,
//! until only signed antiderivative evaluations at finitely many points
//! remain. The incision costs are tracked in a incision ledger whose total is
//! `max_i sup_{E_i}‖∂^{-m+i}f‖ · Σ_i vol(E_i)`.

mod change_of_variables;
mod cylinder;
mod disk;
pub mod richardson;

pub use change_of_variables::{circle_change_of_variables, circle_to_line_map, CovCheck};
pub use cylinder::{cylinder_oracle_patch, cylinder_scenario, run_cylinder_sweep, CylinderParams};
pub use disk::{
    circle_chain, disk_oracle_patch, disk_scenario, run_disk_sweep, zero_disk_chain, DiskParams,
};

use crate::algebra::{Algebra, Multivector};
use crate::antiderivative::{check_entry, AntiderivativeEntry};
use crate::calculus::VectorField;
use crate::error::{Error, Result};
use crate::sample::{rng_from_seed, SampleRng};
use std::sync::Arc;

/// A region cut out of a level manifold, with its incision ledger data: the
/// region's volume (closed form per scenario) and a bound on the norm of the
/// integrand that was dropped with it.
#[derive(Clone)]
pub struct Incision {
    pub label: String,
    /// Dimension of the manifold this region is cut from.
    pub level: usize,
    pub volume: f64,
    /// Membership test on the level manifold.
    pub region: Arc<dyn Fn(&Multivector) -> bool + Send + Sync>,
    /// Samples points of the region, used for sup estimates.
    pub sampler: Arc<dyn Fn(&mut SampleRng) -> Multivector + Send + Sync>,
    /// Bound on `‖∂^{-m+i} f‖` over the region (includes the safety factor).
    pub sup_bound: f64,
    /// True when `sup_bound` came from sampling rather than a closed form.
    pub sup_is_estimate: bool,
}

impl Incision {
    pub fn contains(&self, x: &Multivector) -> bool {
        (self.region)(x)
    }
}

/// Sampled sup of `‖f‖` over an incision region, times the 1.1 safety
/// factor. The factor is always retained, even when the sampled sup is
/// exact (constant integrands).
pub fn sampled_sup(
    incision: &Incision,
    f: &VectorField,
    samples: usize,
    rng: &mut SampleRng,
) -> Result<f64> {
    let mut sup: f64 = 0.0;
    for _ in 0..samples {
        let x = (incision.sampler)(rng);
        let norm = f.eval(&x).norm();
        if !norm.is_finite() {
            return Err(Error::BoundUnavailable(format!(
                "unbounded sample in incision `{}`",
                incision.label
            )));
        }
        sup = sup.max(norm);
    }
    Ok(sup * 1.1)
}

/// incision bound for dropping `∫_E dx f`: `vol(E) × sup‖f‖ × 1.1`, the sup
/// estimated by dense sampling.
pub fn incision_bound(
    incision: &Incision,
    f: &VectorField,
    samples: usize,
    rng: &mut SampleRng,
) -> Result<f64> {
    if incision.volume == 0.0 {
        return Ok(0.0);
    }
    Ok(incision.volume * sampled_sup(incision, f, samples, rng)?)
}

/// One manifold piece at one level of the chain, with the antiderivative
/// entry that integrates the level's integrand on it.
#[derive(Clone)]
pub struct ChainPiece {
    pub label: String,
    pub entry: AntiderivativeEntry,
    /// For 1-D pieces: a path `t ∈ [0,1]` covering the piece minus its
    /// incision, ordered along the traversal. Used by continuity checks.
    pub path: Option<Arc<dyn Fn(f64) -> Multivector + Send + Sync>>,
}

#[derive(Clone)]
pub struct ChainLevel {
    pub dim: usize,
    pub pieces: Vec<ChainPiece>,
}

/// A signed evaluation point of the terminal set `N₀`.
#[derive(Clone)]
pub struct TerminalPoint {
    pub point: Multivector,
    pub sign: f64,
    /// Unit vector along the 1-D manifold pointing out of the remaining
    /// segment at this endpoint; used to machine-verify the sign.
    pub outward: Multivector,
    /// Index into the terminal level's pieces.
    pub piece: usize,
}

/// Pair of points hugging a branch cut on a terminal piece, used to measure
/// the antiderivative jump across the cut.
#[derive(Clone)]
pub struct CutProbe {
    pub piece: usize,
    pub end_side: Multivector,
    pub start_side: Multivector,
}

/// The full chain `N_m ⊃ … ⊃ N₁` plus the terminal signed points `N₀` and
/// the incision ledger.
#[derive(Clone)]
pub struct IntegrationChain {
    pub label: String,
    pub algebra: Algebra,
    /// `levels[0]` is the top manifold (dimension `m`), the last level has
    /// dimension 1.
    pub levels: Vec<ChainLevel>,
    pub incisions: Vec<Incision>,
    pub terminals: Vec<TerminalPoint>,
    pub cut_probes: Vec<CutProbe>,
}

#[derive(Debug, Clone, Copy)]
pub struct RunChainOptions {
    /// Sample points per level entry for the derivative spot-check.
    pub derivative_points: usize,
    pub derivative_tol: f64,
    /// Samples along each terminal piece's path for the continuity check.
    pub continuity_points: usize,
    pub seed: u64,
}

impl Default for RunChainOptions {
    fn default() -> Self {
        Self {
            derivative_points: 16,
            derivative_tol: 1e-6,
            continuity_points: 256,
            seed: 0x9c1e_57a1,
        }
    }
}

/// Outcome of evaluating a chain.
#[derive(Debug, Clone)]
pub struct ChainRun {
    pub result: Multivector,
    /// `max_i sup_bound_i × Σ_i volume_i`, the ledger bound `ε`.
    pub error_bound: f64,
    pub max_derivative_residual: f64,
}

/// Evaluates the chain: validates dimensions, spot-checks every level's
/// antiderivative, verifies the terminal signs against the boundary
/// orientation rule, checks continuity along the cut pieces, then returns
/// `Σ s_i F(x_i)` with the incision error bound.
pub fn run_chain(chain: &IntegrationChain, opts: RunChainOptions) -> Result<ChainRun> {
    if chain.levels.is_empty() {
        return Err(Error::ChainInvalid("chain has no levels".into()));
    }
    for pair in chain.levels.windows(2) {
        if pair[1].dim + 1 != pair[0].dim {
            return Err(Error::ChainInvalid(format!(
                "level dimensions must decrease by one ({} then {})",
                pair[0].dim, pair[1].dim
            )));
        }
    }
    let terminal_level = chain.levels.last().unwrap();
    if terminal_level.dim != 1 {
        return Err(Error::ChainInvalid(format!(
            "terminal level must be 1-dimensional, got {}",
            terminal_level.dim
        )));
    }

    let mut rng = rng_from_seed(opts.seed);
    let mut max_residual: f64 = 0.0;
    for level in &chain.levels {
        for piece in &level.pieces {
            let check = check_entry(
                &piece.entry,
                opts.derivative_points,
                &mut rng,
                opts.derivative_tol,
            )?;
            max_residual = max_residual.max(check.max_relative_residual);
            if !check.passed {
                return Err(Error::ChainInvalid(format!(
                    "antiderivative check failed on `{}`: residual {:.3e}",
                    piece.label, check.max_relative_residual
                )));
            }
        }
    }

    for piece in &terminal_level.pieces {
        check_piece_continuity(piece, opts.continuity_points)?;
    }

    for (i, terminal) in chain.terminals.iter().enumerate() {
        let piece = terminal_level
            .pieces
            .get(terminal.piece)
            .ok_or_else(|| Error::ChainInvalid(format!("terminal {i} references no piece")))?;
        let tangent = piece.entry.manifold.tangent_at(&terminal.point);
        let t = tangent.unit();
        let dot = t.mv().scalar_product(&terminal.outward);
        if (dot.abs() - 1.0).abs() > 1e-6 {
            return Err(Error::Orientation(format!(
                "terminal {i}: outward direction is not along the manifold (|t·n| = {})",
                dot.abs()
            )));
        }
        if (dot - terminal.sign).abs() > 1e-6 {
            return Err(Error::Orientation(format!(
                "terminal {i}: sign {} does not match orientation rule (t·n = {dot:.3})",
                terminal.sign
            )));
        }
    }

    let mut result = chain.algebra.zero();
    for terminal in &chain.terminals {
        let f = terminal_level.pieces[terminal.piece]
            .entry
            .antiderivative
            .eval(&terminal.point);
        result = &result + &(&f * terminal.sign);
    }

    let max_sup = chain
        .incisions
        .iter()
        .map(|e| e.sup_bound)
        .fold(0.0, f64::max);
    let total_volume: f64 = chain.incisions.iter().map(|e| e.volume).sum();
    let error_bound = max_sup * total_volume;

    Ok(ChainRun {
        result,
        error_bound,
        max_derivative_residual: max_residual,
    })
}

/// The antiderivative must be continuous on the piece minus the incision:
/// adjacent samples along the path may differ by at most 10x the local
/// Lipschitz estimate `‖f‖·Δs` (the integrand is the derivative of the
/// antiderivative along the curve). The tangent orientation is spot-checked
/// along the same path: it must not flip between adjacent samples.
fn check_piece_continuity(piece: &ChainPiece, points: usize) -> Result<()> {
    let Some(path) = &piece.path else {
        return Ok(());
    };
    let samples: Vec<Multivector> = (0..=points)
        .map(|i| path(i as f64 / points as f64))
        .collect();
    for pair in samples.windows(2) {
        let ds = (&pair[1] - &pair[0]).norm();
        if ds == 0.0 {
            continue;
        }
        let f0 = piece.entry.integrand.eval(&pair[0]).norm();
        let f1 = piece.entry.integrand.eval(&pair[1]).norm();
        let lipschitz = f0.max(f1).max(1e-9);
        let jump = (&piece.entry.antiderivative.eval(&pair[1])
            - &piece.entry.antiderivative.eval(&pair[0]))
            .norm();
        if jump > 10.0 * lipschitz * ds {
            return Err(Error::ChainInvalid(format!(
                "continuity violation on `{}`: jump {jump:.3e} vs allowance {:.3e}",
                piece.label,
                10.0 * lipschitz * ds
            )));
        }
        let t0 = piece.entry.manifold.tangent_at(&pair[0]).unit();
        let t1 = piece.entry.manifold.tangent_at(&pair[1]).unit();
        if t0.mv().scalar_product(t1.mv()) <= 0.0 {
            return Err(Error::ChainInvalid(format!(
                "tangent orientation flips along `{}`",
                piece.label
            )));
        }
    }
    Ok(())
}

/// One swept chain evaluation.
#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub epsilon: f64,
    pub result: Multivector,
    pub error_bound: f64,
    /// `‖result - oracle‖` when an oracle is attached.
    pub oracle_delta: Option<f64>,
    /// Whether `oracle_delta ≤ error_bound + oracle estimated error`.
    pub within_error_bound: Option<bool>,
    /// `‖result - extrapolated‖`, filled after extrapolation.
    pub extrapolation_error: f64,
}

/// Summary row of the incision ledger for reports.
#[derive(Debug, Clone, serde::Serialize)]
pub struct IncisionSummary {
    pub label: String,
    pub level: usize,
    pub volume: f64,
    pub sup_bound: f64,
    pub sup_is_estimate: bool,
}

/// A full scenario run: the incision sweep, the Richardson limit, the fitted
/// convergence order, and the oracle comparison.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub scenario: String,
    pub params: serde_json::Value,
    pub points: Vec<SweepPoint>,
    pub extrapolated: Multivector,
    pub convergence_order: Option<f64>,
    pub oracle: Option<crate::quadrature::DirectedIntegralResult>,
    /// Ledger of the smallest-epsilon chain.
    pub incisions: Vec<IncisionSummary>,
    /// True when every sweep point satisfied the error-ledger inequality
    /// against the oracle (vacuously true without an oracle).
    pub error_bound_ok: bool,
}

/// Shared sweep driver: builds a chain per incision size, runs it, compares
/// against the oracle, and extrapolates to zero incision.
pub(crate) fn run_sweep<F>(
    scenario: &str,
    params: serde_json::Value,
    eps: &[f64],
    build: F,
    chain_opts: RunChainOptions,
    oracle: Option<(
        &crate::quadrature::ManifoldPatch,
        &VectorField,
        crate::quadrature::QuadratureOptions,
    )>,
) -> Result<SweepOutcome>
where
    F: Fn(f64) -> Result<IntegrationChain>,
{
    if eps.is_empty() {
        return Err(Error::InvalidParameter("empty epsilon sweep".into()));
    }
    let oracle_result = match oracle {
        Some((patch, f, opts)) => Some(crate::quadrature::directed_integral(patch, f, opts)?),
        None => None,
    };

    let mut points = Vec::with_capacity(eps.len());
    let mut results = Vec::with_capacity(eps.len());
    let mut incisions = Vec::new();
    for &e in eps {
        let chain = build(e)?;
        let run = run_chain(&chain, chain_opts)?;
        let (oracle_delta, within) = match &oracle_result {
            Some(o) => {
                let d = (&run.result - &o.value).norm();
                (Some(d), Some(d <= run.error_bound + o.estimated_error))
            }
            None => (None, None),
        };
        incisions = chain
            .incisions
            .iter()
            .map(|i| IncisionSummary {
                label: i.label.clone(),
                level: i.level,
                volume: i.volume,
                sup_bound: i.sup_bound,
                sup_is_estimate: i.sup_is_estimate,
            })
            .collect();
        points.push(SweepPoint {
            epsilon: e,
            result: run.result.clone(),
            error_bound: run.error_bound,
            oracle_delta,
            within_error_bound: within,
            extrapolation_error: 0.0,
        });
        results.push(run.result);
    }

    let extrapolated = if results.len() >= 2 {
        richardson::extrapolate(eps, &results)
    } else {
        results[0].clone()
    };
    for p in &mut points {
        p.extrapolation_error = (&p.result - &extrapolated).norm();
    }
    let scale = extrapolated.norm().max(1.0);
    let errors: Vec<f64> = points.iter().map(|p| p.extrapolation_error).collect();
    let convergence_order = richardson::fit_order(eps, &errors, 1e-12 * scale);
    let error_bound_ok = points.iter().all(|p| p.within_error_bound.unwrap_or(true));

    Ok(SweepOutcome {
        scenario: scenario.into(),
        params,
        points,
        extrapolated,
        convergence_order,
        oracle: oracle_result,
        incisions,
        error_bound_ok,
    })
}

/// Measured jump of the terminal antiderivatives across their branch cuts.
#[derive(Debug, Clone)]
pub struct BranchCutCheck {
    /// Sum over terminal pieces of `F(end side) - F(start side)` with the
    /// probes hugging the cut.
    pub jump: Multivector,
    /// The chain's own signed-sum result.
    pub result: Multivector,
    /// `‖result - jump‖`; bounded by the incision sizes.
    pub gap: f64,
    pub consistent: bool,
}

/// Measures the antiderivative jump across each terminal cut and checks the
/// corollary: a nonzero integral forces a nonzero branch-cut discontinuity,
/// and the signed sum equals the jump up to the incision size.
pub fn verify_branch_cut_necessity(
    chain: &IntegrationChain,
    opts: RunChainOptions,
) -> Result<BranchCutCheck> {
    let run = run_chain(chain, opts)?;
    let terminal_level = chain.levels.last().unwrap();
    let mut jump = chain.algebra.zero();
    for probe in &chain.cut_probes {
        let entry = &terminal_level.pieces[probe.piece].entry;
        let diff = &entry.antiderivative.eval(&probe.end_side)
            - &entry.antiderivative.eval(&probe.start_side);
        jump = &jump + &diff;
    }
    let gap = (&run.result - &jump).norm();
    let scale = run.result.norm().max(jump.norm()).max(1.0);
    let consistent = gap <= run.error_bound + 1e-9 * scale;
    Ok(BranchCutCheck {
        jump,
        result: run.result,
        gap,
        consistent,
    })
}
