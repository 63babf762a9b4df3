//! The disk-area scenario: `∫_{B_r} d²x = πr² I₂` computed by two
//! applications of the fundamental theorem.
//!
//! Chain: the disk `B_r` (antiderivative `x/2` of the constant 1), then its
//! boundary circle (antiderivative `½x² log(x x₀)` of `x/2`), which is
//! closed, so a small arc around the `+x₀` ray — where the logarithm's
//! branch cut sits — is incised. The two arc edges are the terminal points;
//! the branch jump across the cut carries the whole integral.

use super::{
    ChainLevel, ChainPiece, CutProbe, Incision, IntegrationChain, RunChainOptions, SweepOutcome,
    TerminalPoint,
};
use crate::algebra::{Algebra, Branch, Multivector};
use crate::antiderivative::{circle_entry, const_entry, AntiderivativeEntry};
use crate::calculus::VectorField;
use crate::error::{Error, Result};
use crate::quadrature::{ManifoldPatch, QuadratureOptions};
use crate::sample::rng_from_seed;
use rand::Rng;
use std::f64::consts::{FRAC_PI_4, TAU};
use std::sync::Arc;

/// Rotate `v` by `angle` in the plane of the unit bivector `i2`
/// (`v ↦ v e^{angle·I₂}`).
fn rotate(v: &Multivector, i2: &Multivector, angle: f64) -> Multivector {
    let alg = v.algebra();
    let rotor = &alg.scalar(angle.cos()) + &(i2 * angle.sin());
    v.geometric_product(&rotor)
}

#[derive(Clone)]
pub struct DiskParams {
    pub radius: f64,
    /// Reference vector fixing the branch cut (on the ray through `+x₀`).
    pub x0: Multivector,
    /// Unit bivector orienting the disk measure `d²x`.
    pub i2: Multivector,
    /// Angular half-width of the arc incision, in `(0, π/4)`.
    pub cut_halfwidth: f64,
}

impl DiskParams {
    /// Radius-`r` disk in the standard plane: `x₀ = e₁`, `I₂ = e₁∧e₂`.
    pub fn standard(radius: f64, cut_halfwidth: f64) -> Result<Self> {
        let alg = Algebra::new(2)?;
        Ok(Self {
            radius,
            x0: alg.basis_vector(0),
            i2: alg.basis_blade(0b11),
            cut_halfwidth,
        })
    }

    fn validate(&self) -> Result<Algebra> {
        let alg = self.x0.algebra();
        if self.radius <= 0.0 {
            return Err(Error::InvalidParameter("radius must be positive".into()));
        }
        if !(self.cut_halfwidth > 0.0 && self.cut_halfwidth < FRAC_PI_4) {
            return Err(Error::InvalidParameter(
                "cut half-width must lie in (0, π/4)".into(),
            ));
        }
        if self.x0.norm() == 0.0 {
            return Err(Error::InvalidParameter("x₀ must be nonzero".into()));
        }
        if (self.i2.norm() - 1.0).abs() > 1e-9 || self.i2.grades(1e-9) != vec![2] {
            return Err(Error::InvalidParameter("I₂ must be a unit bivector".into()));
        }
        Ok(alg)
    }
}

/// Terminal geometry of a cut circle: the traversal compatible with the
/// orientation rule runs *against* the rotation sense of `I₂` (the measure
/// direction is `t = I₂ x̂`), so the segment starts at angle `-δ` and ends at
/// `+δ`, and the endpoint signs are `-1` and `+1` respectively.
struct CutCircle {
    start: Multivector,
    end: Multivector,
    outward_start: Multivector,
    outward_end: Multivector,
}

fn cut_circle(r: f64, x0: &Multivector, i2: &Multivector, delta: f64) -> CutCircle {
    let xhat0 = x0 * (1.0 / x0.norm());
    let rim = &xhat0 * r;
    let start = rotate(&rim, i2, -delta);
    let end = rotate(&rim, i2, delta);
    let tangent_at = |x: &Multivector| i2.geometric_product(&(x * (1.0 / x.norm())));
    let outward_end = tangent_at(&end);
    let outward_start = -&tangent_at(&start);
    CutCircle {
        start,
        end,
        outward_start,
        outward_end,
    }
}

fn circle_piece(params: &DiskParams, entry: AntiderivativeEntry, label: &str) -> ChainPiece {
    let delta = params.cut_halfwidth;
    let x0 = params.x0.clone();
    let i2 = params.i2.clone();
    let r = params.radius;
    let path = move |t: f64| {
        let xhat0 = &x0 * (1.0 / x0.norm());
        // Along the traversal: from -δ backwards around to -2π+δ (≡ +δ).
        rotate(&(&xhat0 * r), &i2, -delta - t * (TAU - 2.0 * delta))
    };
    ChainPiece {
        label: label.into(),
        entry,
        path: Some(Arc::new(path)),
    }
}

fn arc_incision(
    params: &DiskParams,
    integrand_on_circle: &VectorField,
    label: &str,
) -> Result<Incision> {
    let delta = params.cut_halfwidth;
    let r = params.radius;
    let x0 = params.x0.clone();
    let i2 = params.i2.clone();
    let xhat0 = &x0 * (1.0 / x0.norm());
    let region_xhat0 = xhat0.clone();
    let region = move |x: &Multivector| {
        x.norm() > 0.0 && x.scalar_product(&region_xhat0) >= x.norm() * delta.cos()
    };
    let sampler_xhat0 = xhat0.clone();
    let sampler = move |rng: &mut crate::sample::SampleRng| {
        let a = rng.random_range(-delta..delta);
        rotate(&(&sampler_xhat0 * r), &i2, a)
    };
    let mut incision = Incision {
        label: label.into(),
        level: 1,
        volume: 2.0 * delta * r,
        region: Arc::new(region),
        sampler: Arc::new(sampler),
        sup_bound: 0.0,
        sup_is_estimate: true,
    };
    let mut rng = rng_from_seed(0x1e5a_11ce);
    incision.sup_bound = super::sampled_sup(&incision, integrand_on_circle, 400, &mut rng)?;
    Ok(incision)
}

/// Builds the two-level disk chain at the given cut width.
pub fn disk_scenario(params: &DiskParams) -> Result<IntegrationChain> {
    let alg = params.validate()?;
    if alg.dim() != 2 {
        return Err(Error::InvalidParameter(
            "disk scenario lives in a 2-dimensional algebra".into(),
        ));
    }
    let disk_entry = const_entry(alg);
    let circle = circle_entry(
        alg,
        params.radius,
        params.x0.clone(),
        params.i2.clone(),
        Branch::nonpositive(),
    )?;
    // The incised integrand on the circle is the disk's antiderivative x/2.
    let incision = arc_incision(params, &disk_entry.antiderivative, "circle-cut-arc")?;

    let geom = cut_circle(params.radius, &params.x0, &params.i2, params.cut_halfwidth);
    let terminals = vec![
        TerminalPoint {
            point: geom.end.clone(),
            sign: 1.0,
            outward: geom.outward_end.clone(),
            piece: 0,
        },
        TerminalPoint {
            point: geom.start.clone(),
            sign: -1.0,
            outward: geom.outward_start.clone(),
            piece: 0,
        },
    ];
    let probe = cut_circle(params.radius, &params.x0, &params.i2, 1e-9);
    Ok(IntegrationChain {
        label: "disk".into(),
        algebra: alg,
        levels: vec![
            ChainLevel {
                dim: 2,
                pieces: vec![ChainPiece {
                    label: "disk".into(),
                    entry: disk_entry,
                    path: None,
                }],
            },
            ChainLevel {
                dim: 1,
                pieces: vec![circle_piece(params, circle, "boundary-circle")],
            },
        ],
        incisions: vec![incision],
        terminals,
        cut_probes: vec![CutProbe {
            piece: 0,
            end_side: probe.end,
            start_side: probe.start,
        }],
    })
}

/// Single-level chain for `∫_{S¹} dx (scale · x/2)` — `scale = 1` is the
/// disk's boundary step on its own, `scale = 2` integrates `x` itself.
pub fn circle_chain(params: &DiskParams, scale: f64) -> Result<IntegrationChain> {
    let alg = params.validate()?;
    let circle = circle_entry(
        alg,
        params.radius,
        params.x0.clone(),
        params.i2.clone(),
        Branch::nonpositive(),
    )?
    .scaled(scale);
    let incision = arc_incision(params, &circle.integrand.clone(), "circle-cut-arc")?;
    let geom = cut_circle(params.radius, &params.x0, &params.i2, params.cut_halfwidth);
    let probe = cut_circle(params.radius, &params.x0, &params.i2, 1e-9);
    Ok(IntegrationChain {
        label: "circle".into(),
        algebra: alg,
        levels: vec![ChainLevel {
            dim: 1,
            pieces: vec![circle_piece(params, circle, "circle")],
        }],
        incisions: vec![incision],
        terminals: vec![
            TerminalPoint {
                point: geom.end,
                sign: 1.0,
                outward: geom.outward_end,
                piece: 0,
            },
            TerminalPoint {
                point: geom.start,
                sign: -1.0,
                outward: geom.outward_start,
                piece: 0,
            },
        ],
        cut_probes: vec![CutProbe {
            piece: 0,
            end_side: probe.end,
            start_side: probe.start,
        }],
    })
}

/// The disk chain with the zero integrand: every antiderivative is zero, the
/// result and error bound must both come out exactly zero.
pub fn zero_disk_chain(params: &DiskParams) -> Result<IntegrationChain> {
    let mut chain = disk_scenario(params)?;
    for level in &mut chain.levels {
        for piece in &mut level.pieces {
            piece.entry.integrand = piece.entry.integrand.scaled(0.0);
            piece.entry.antiderivative = piece.entry.antiderivative.scaled(0.0);
        }
    }
    for incision in &mut chain.incisions {
        incision.sup_bound = 0.0;
    }
    Ok(chain)
}

/// Polar oracle patch for the disk, oriented `+I₂` by construction.
pub fn disk_oracle_patch(params: &DiskParams, subdivision: usize) -> ManifoldPatch {
    let alg = params.x0.algebra();
    let r = params.radius;
    let xhat0 = &params.x0 * (1.0 / params.x0.norm());
    let i2 = params.i2.clone();
    ManifoldPatch::new(alg, 2, move |u: &[f64]| {
        let point = &xhat0 * (r * u[0]);
        rotate(&point, &i2, TAU * u[1])
    })
    .with_subdivision(subdivision)
}

/// Runs the disk chain over a sweep of cut widths, compares every point
/// against the quadrature oracle, and Richardson-extrapolates to zero cut.
pub fn run_disk_sweep(
    params: &DiskParams,
    eps: &[f64],
    chain_opts: RunChainOptions,
    oracle_subdivision: usize,
) -> Result<SweepOutcome> {
    let alg = params.validate()?;
    let patch = disk_oracle_patch(params, oracle_subdivision);
    let one = VectorField::constant(alg.one());
    let oracle_opts = QuadratureOptions {
        tol: 1e-10,
        max_cells: 8 * oracle_subdivision * oracle_subdivision,
    };
    let params_json = serde_json::json!({
        "radius": params.radius,
        "cut_halfwidth_sweep": eps,
    });
    super::run_sweep(
        "disk",
        params_json,
        eps,
        |delta| {
            let mut p = params.clone();
            p.cut_halfwidth = delta;
            disk_scenario(&p)
        },
        chain_opts,
        Some((&patch, &one, oracle_opts)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{run_chain, verify_branch_cut_necessity};
    use std::f64::consts::PI;

    fn params(r: f64, delta: f64) -> DiskParams {
        DiskParams::standard(r, delta).unwrap()
    }

    #[test]
    fn disk_result_is_linear_in_cut_width() {
        // Exact value at cut width δ is (π - δ) r² I₂.
        let alg = Algebra::new(2).unwrap();
        for (r, delta) in [(1.0, 1e-2), (2.0, 1e-3), (0.5, 5e-2)] {
            let chain = disk_scenario(&params(r, delta)).unwrap();
            let run = run_chain(&chain, RunChainOptions::default()).unwrap();
            let expect = &alg.basis_blade(0b11) * ((PI - delta) * r * r);
            assert!(
                (&run.result - &expect).norm() < 1e-10,
                "r={r}, δ={delta}: got {}",
                run.result
            );
            // Ledger bound covers the actual error πr² - result = δr².
            let actual = delta * r * r;
            assert!(
                run.error_bound >= actual,
                "bound {} < {actual}",
                run.error_bound
            );
            assert!(run.error_bound <= 2.0 * actual, "bound is not tight");
        }
    }

    #[test]
    fn sweep_extrapolates_to_pi_r_squared() {
        let eps = [1e-1, 1e-2, 1e-3, 1e-4];
        for r in [0.5, 1.0, 2.0] {
            let outcome =
                run_disk_sweep(&params(r, 1e-2), &eps, RunChainOptions::default(), 180).unwrap();
            let coeff = outcome.extrapolated.coeff(0b11);
            assert!(
                (coeff - PI * r * r).abs() < 1e-8,
                "r={r}: extrapolated {coeff} vs {}",
                PI * r * r
            );
            assert!(outcome.error_bound_ok, "ledger inequality failed at r={r}");
            let order = outcome.convergence_order.unwrap();
            assert!((order - 1.0).abs() < 0.1, "order {order}");
        }
    }

    #[test]
    fn sign_flip_negates_result() {
        let alg = Algebra::new(2).unwrap();
        let mut p = params(1.0, 1e-3);
        let c1 = disk_scenario(&p).unwrap();
        let r1 = run_chain(&c1, RunChainOptions::default()).unwrap();
        p.i2 = -&alg.basis_blade(0b11);
        let c2 = disk_scenario(&p).unwrap();
        let r2 = run_chain(&c2, RunChainOptions::default()).unwrap();
        assert!(
            (&r1.result + &r2.result).norm() < 1e-12,
            "flip mismatch: {} vs {}",
            r1.result,
            r2.result
        );
    }

    #[test]
    fn gauge_constant_cancels_in_signed_sum() {
        let mut chain = disk_scenario(&params(1.0, 1e-2)).unwrap();
        let base = run_chain(&chain, RunChainOptions::default()).unwrap();
        let alg = chain.algebra;
        let mut rng = rng_from_seed(77);
        let c = crate::sample::random_multivector(alg, &mut rng);
        let piece = &mut chain.levels[1].pieces[0];
        piece.entry = piece.entry.with_gauge_constant(&c * 10.0);
        let gauged = run_chain(&chain, RunChainOptions::default()).unwrap();
        assert!(
            (&base.result - &gauged.result).norm() < 1e-12,
            "gauge shifted the result"
        );
    }

    #[test]
    fn incision_locality() {
        // Halving only the arc changes the result by at most the half-arc bound.
        let p_full = params(1.0, 2e-2);
        let p_half = params(1.0, 1e-2);
        let full = run_chain(&disk_scenario(&p_full).unwrap(), RunChainOptions::default()).unwrap();
        let half = run_chain(&disk_scenario(&p_half).unwrap(), RunChainOptions::default()).unwrap();
        let change = (&full.result - &half.result).norm();
        assert!(change <= half.error_bound + 1e-12, "change {change}");
    }

    #[test]
    fn branch_jump_carries_the_integral() {
        let chain = disk_scenario(&params(1.0, 1e-3)).unwrap();
        let check = verify_branch_cut_necessity(&chain, RunChainOptions::default()).unwrap();
        assert!(check.consistent, "gap {} too large", check.gap);
        let alg = Algebra::new(2).unwrap();
        // Jump → πr² I₂ (equals the whole integral).
        let expect = &alg.basis_blade(0b11) * PI;
        assert!((&check.jump - &expect).norm() < 1e-6, "jump {}", check.jump);
    }

    #[test]
    fn circle_integral_of_x_jump() {
        // ∫_{S¹} dx x = 2πr² I₂; the jump doubles accordingly.
        let chain = circle_chain(&params(1.0, 1e-4), 2.0).unwrap();
        let run = run_chain(&chain, RunChainOptions::default()).unwrap();
        let alg = Algebra::new(2).unwrap();
        let expect = &alg.basis_blade(0b11) * (2.0 * PI);
        assert!((&run.result - &expect).norm() < 1e-3, "got {}", run.result);
        let check = verify_branch_cut_necessity(&chain, RunChainOptions::default()).unwrap();
        assert!((&check.jump - &expect).norm() < 1e-6);
    }

    #[test]
    fn error_scales_linearly_with_incision_volume() {
        // Regressing ‖result(δ) - πr²I₂‖ against Σ vol(E(δ)) gives a slope
        // bounded by the incision sup bound (within the 20% band).
        let alg = Algebra::new(2).unwrap();
        let truth = &alg.basis_blade(0b11) * PI;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        let mut max_sup: f64 = 0.0;
        for delta in [2e-2, 1e-2, 5e-3, 2.5e-3] {
            let chain = disk_scenario(&params(1.0, delta)).unwrap();
            let run = run_chain(&chain, RunChainOptions::default()).unwrap();
            xs.push(chain.incisions.iter().map(|i| i.volume).sum::<f64>());
            ys.push((&run.result - &truth).norm());
            max_sup = max_sup.max(
                chain
                    .incisions
                    .iter()
                    .map(|i| i.sup_bound)
                    .fold(0.0, f64::max),
            );
        }
        let slope: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum::<f64>()
            / xs.iter().map(|x| x * x).sum::<f64>();
        assert!(
            slope <= max_sup * 1.2,
            "slope {slope} exceeds sup bound {max_sup} by more than 20%"
        );
        assert!(slope > 0.0);
    }

    #[test]
    fn incision_bound_examples() {
        use crate::boundary::{incision_bound, Incision};

        let alg = Algebra::new(2).unwrap();
        let chain = disk_scenario(&params(1.0, 5e-2)).unwrap();
        let arc = &chain.incisions[0];
        let mut rng = rng_from_seed(3);

        // Zero-volume region bounds to zero.
        let empty = Incision {
            volume: 0.0,
            ..arc.clone()
        };
        let any = crate::calculus::VectorField::position(alg);
        assert_eq!(incision_bound(&empty, &any, 100, &mut rng).unwrap(), 0.0);

        // Constant integrand: sup is exact, the 1.1 safety factor stays.
        let c = &alg.basis_vector(0) + &(&alg.basis_blade(0b11) * 2.0);
        let c_norm = c.norm();
        let constant = crate::calculus::VectorField::constant(c);
        let bound = incision_bound(arc, &constant, 100, &mut rng).unwrap();
        assert!((bound - arc.volume * c_norm * 1.1).abs() < 1e-12);

        // The circle antiderivative F₂ on the cut arc: bounded by the closed
        // form 2δr · 1.1 · ½r²(|log r²| + 2π).
        let f2 = chain.levels[1].pieces[0].entry.antiderivative.clone();
        let bound = incision_bound(arc, &f2, 400, &mut rng).unwrap();
        let closed = arc.volume * 1.1 * 0.5 * (2.0 * PI);
        assert!(
            bound <= closed + 1e-12,
            "bound {bound} vs closed form {closed}"
        );
        assert!(bound >= 0.9 * closed, "bound {bound} suspiciously small");
    }

    #[test]
    fn zero_integrand_chain() {
        let chain = zero_disk_chain(&params(1.0, 1e-2)).unwrap();
        let run = run_chain(&chain, RunChainOptions::default()).unwrap();
        assert_eq!(run.result.norm(), 0.0);
        assert_eq!(run.error_bound, 0.0);
        let check = verify_branch_cut_necessity(&chain, RunChainOptions::default()).unwrap();
        assert_eq!(check.jump.norm(), 0.0);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(DiskParams::standard(0.0, 1e-2).unwrap().validate().is_err());
        assert!(DiskParams::standard(1.0, 1.0).unwrap().validate().is_err());
        assert!(DiskParams::standard(1.0, 0.0).unwrap().validate().is_err());
    }

    #[test]
    fn wrong_sign_is_caught() {
        let mut chain = disk_scenario(&params(1.0, 1e-2)).unwrap();
        chain.terminals[0].sign = -1.0;
        assert!(matches!(
            run_chain(&chain, RunChainOptions::default()),
            Err(Error::Orientation(_))
        ));
    }

    #[test]
    fn bad_level_dimensions_are_caught() {
        let mut chain = disk_scenario(&params(1.0, 1e-2)).unwrap();
        chain.levels[0].dim = 3;
        assert!(matches!(
            run_chain(&chain, RunChainOptions::default()),
            Err(Error::ChainInvalid(_))
        ));

        // A chain whose antiderivative does not match its integrand fails
        // the spot check.
        let mut chain = disk_scenario(&params(1.0, 1e-2)).unwrap();
        let alg = chain.algebra;
        chain.levels[1].pieces[0].entry.integrand =
            crate::calculus::VectorField::constant(alg.basis_vector(1));
        assert!(matches!(
            run_chain(&chain, RunChainOptions::default()),
            Err(Error::ChainInvalid(_))
        ));
    }
}
