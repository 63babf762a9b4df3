//! Seeded verification suites shared by the CLI, the examples, and the
//! acceptance tests. Each suite returns a serializable report; fixed seed
//! and parameters reproduce it byte for byte.

use crate::algebra::Algebra;
use crate::antiderivative::{self, DerivativeCheck};
use crate::calculus::{project, ImplicitManifold, VectorField};
use crate::error::Result;
use crate::quadrature::{self, DirectedIntegralResult, ManifoldPatch, QuadratureOptions};
use crate::sample::{self, rng_from_seed};
use serde::Serialize;
use std::f64::consts::TAU;

/// Worst residuals of the algebra property suite over random trials.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraPropertyReport {
    pub dim: usize,
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub associativity: f64,
    pub reverse_antiautomorphism: f64,
    pub norm_positivity: f64,
    pub contraction_duality: f64,
    pub inverse_round_trip: f64,
    pub grade_completeness: f64,
    pub projection_idempotence: f64,
    pub violations: usize,
    /// True when `trials == 0` (vacuous pass).
    pub vacuous: bool,
}

impl AlgebraPropertyReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn worst(&self) -> f64 {
        [
            self.associativity,
            self.reverse_antiautomorphism,
            self.norm_positivity,
            self.contraction_duality,
            self.inverse_round_trip,
            self.grade_completeness,
            self.projection_idempotence,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Runs the algebra axioms at one dimension: associativity, the reverse
/// anti-automorphism, norm positivity, contraction/outer duality on blades,
/// inverse round trips, grade-projection completeness, and projection
/// idempotence. Residuals are relative to the operand norms.
pub fn algebra_properties(
    dim: usize,
    seed: u64,
    trials: usize,
    tol: f64,
) -> Result<AlgebraPropertyReport> {
    let alg = Algebra::new(dim)?;
    let mut rng = rng_from_seed(seed);
    let mut report = AlgebraPropertyReport {
        dim,
        seed,
        trials,
        tol,
        associativity: 0.0,
        reverse_antiautomorphism: 0.0,
        norm_positivity: 0.0,
        contraction_duality: 0.0,
        inverse_round_trip: 0.0,
        grade_completeness: 0.0,
        projection_idempotence: 0.0,
        violations: 0,
        vacuous: trials == 0,
    };

    // ‖A‖ = 0 must force every coefficient to zero; check the hard case once.
    let zero = alg.zero();
    if zero.norm() != 0.0 || !zero.is_zero(0.0) {
        report.violations += 1;
    }

    for trial in 0..trials {
        let a = sample::random_multivector(alg, &mut rng);
        let b = sample::random_multivector(alg, &mut rng);
        let c = sample::random_multivector(alg, &mut rng);
        let scale_ab = a.norm() * b.norm();
        let scale_abc = scale_ab * c.norm();

        let assoc = (&a.geometric_product(&b).geometric_product(&c)
            - &a.geometric_product(&b.geometric_product(&c)))
            .norm()
            / scale_abc.max(1e-300);
        report.associativity = report.associativity.max(assoc);

        let rev = (&a.geometric_product(&b).reverse()
            - &b.reverse().geometric_product(&a.reverse()))
            .norm()
            / scale_ab.max(1e-300);
        report.reverse_antiautomorphism = report.reverse_antiautomorphism.max(rev);

        // ‖A‖² = A∗A ≥ 0, and it must agree with ⟨A Ã⟩₀.
        let norm_sq = a.scalar_product(&a);
        let via_reverse = a.geometric_product(&a.reverse()).scalar_part();
        let positivity = (-norm_sq).max((norm_sq - via_reverse).abs() / norm_sq.max(1e-300));
        report.norm_positivity = report.norm_positivity.max(positivity);

        // Contraction/outer duality on blades, in both contraction flavors:
        // A ⌋ (B ⌋ C) = (A∧B) ⌋ C and C ⌊ (B∧A) = (C ⌊ B) ⌊ A.
        let ga = if dim >= 3 { 1 + trial % 2 } else { 1 };
        let bl_a = sample::random_blade(alg, ga, &mut rng);
        let bl_b = sample::random_blade(alg, 1, &mut rng);
        let bl_c = sample::random_blade(alg, (ga + 1).min(dim), &mut rng);
        let scale = bl_a.norm() * bl_b.norm() * bl_c.norm();
        let right_dual = (&bl_a
            .mv()
            .right_contraction(&bl_b.mv().right_contraction(bl_c.mv()))
            - &bl_a
                .mv()
                .outer_product(bl_b.mv())
                .right_contraction(bl_c.mv()))
            .norm()
            / scale.max(1e-300);
        let left_dual = (&bl_c
            .mv()
            .left_contraction(&bl_b.mv().outer_product(bl_a.mv()))
            - &bl_c
                .mv()
                .left_contraction(bl_b.mv())
                .left_contraction(bl_a.mv()))
            .norm()
            / scale.max(1e-300);
        report.contraction_duality = report.contraction_duality.max(right_dual).max(left_dual);

        // Inverses of random vectors and versors.
        let v = sample::random_nonzero_vector(alg, &mut rng);
        let versor = sample::random_versor(alg, 2, &mut rng);
        for inv_target in [&v, &versor] {
            let inv = inv_target.inverse()?;
            let residual = (&inv.geometric_product(inv_target) - &alg.one()).norm();
            report.inverse_round_trip = report.inverse_round_trip.max(residual);
        }

        // Σ_k ⟨A⟩_k = A exactly.
        let mut sum = alg.zero();
        for k in 0..=dim {
            sum = &sum + &a.grade_select(k);
        }
        report.grade_completeness = report.grade_completeness.max((&sum - &a).norm());

        // Projection idempotence on random 2-blades.
        let blade = sample::random_blade(alg, 2.min(dim), &mut rng).unit();
        let vec = sample::random_vector(alg, &mut rng);
        let once = project(&blade, &vec)?;
        let twice = project(&blade, &once)?;
        let idem = (&twice - &once).norm() / vec.norm().max(1e-300);
        report.projection_idempotence = report.projection_idempotence.max(idem);
    }

    if report.worst() > tol {
        report.violations += 1;
    }
    Ok(report)
}

/// Table-1 derivative checks for every row at the given dimensions.
#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub seed: u64,
    pub points: usize,
    pub tol: f64,
    pub checks: Vec<DerivativeCheck>,
    pub catalog: Vec<serde_json::Value>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub fn verify_table(dims: &[usize], points: usize, seed: u64, tol: f64) -> Result<TableReport> {
    let mut rng = rng_from_seed(seed);
    let mut checks = Vec::new();
    let mut catalog = Vec::new();
    for &dim in dims {
        for entry in antiderivative::table_entries(dim)? {
            let mut check = antiderivative::check_entry(&entry, points, &mut rng, tol)?;
            check.entry = format!("{} (d={dim})", check.entry);
            checks.push(check);
            if dim == dims[0] {
                catalog.push(entry.catalog_record());
            }
        }
    }
    // Scenario entries ride along in the catalog dump.
    for name in ["circle", "side", "cap-top", "cap-bottom"] {
        let entry = antiderivative::scenario_entry(name)?;
        let mut check = antiderivative::check_entry(&entry, points, &mut rng, tol)?;
        check.entry = format!("{} (scenario)", check.entry);
        checks.push(check);
        catalog.push(entry.catalog_record());
    }
    Ok(TableReport {
        seed,
        points,
        tol,
        checks,
        catalog,
    })
}

/// Named oracle patches for the CLI.
pub fn patch_by_name(name: &str, radius: f64, height: f64) -> Result<ManifoldPatch> {
    match name {
        "unit-square" => {
            let alg = Algebra::new(2)?;
            Ok(ManifoldPatch::new(alg, 2, move |u: &[f64]| {
                alg.vector(&[u[0], u[1]])
            }))
        }
        "unit-cube" => {
            let alg = Algebra::new(3)?;
            Ok(ManifoldPatch::new(alg, 3, move |u: &[f64]| {
                alg.vector(&[u[0], u[1], u[2]])
            }))
        }
        "disk" => {
            let params = crate::boundary::DiskParams::standard(radius, 1e-2)?;
            Ok(crate::boundary::disk_oracle_patch(&params, 8))
        }
        "circle" => {
            let alg = Algebra::new(2)?;
            Ok(ManifoldPatch::new(alg, 1, move |u: &[f64]| {
                let a = TAU * u[0];
                alg.vector(&[radius * a.cos(), radius * a.sin()])
            }))
        }
        "cylinder" => {
            let params = crate::boundary::CylinderParams::standard(radius, height, 1e-2)?;
            crate::boundary::cylinder_oracle_patch(&params, 8)
        }
        other => Err(crate::error::Error::UnknownEntry(other.to_string())),
    }
}

/// Named integrand fields for the CLI.
pub fn field_by_name(name: &str, alg: Algebra) -> Result<VectorField> {
    match name {
        "one" => Ok(VectorField::constant(alg.one())),
        "x" => Ok(VectorField::position(alg)),
        "half-x-squared" => Ok(VectorField::new(alg, |x| {
            x.algebra().scalar(0.5 * x.scalar_product(x))
        })),
        "linear" => {
            // Table row 4 antiderivative for a = e₁.
            let entry = antiderivative::table_entry("ax", alg.dim())?;
            Ok(entry.antiderivative)
        }
        other => Err(crate::error::Error::UnknownEntry(other.to_string())),
    }
}

/// Outcome of one fundamental-theorem verification.
#[derive(Debug, Clone, Serialize)]
pub struct FtcReport {
    pub field: String,
    pub patch: String,
    pub cells: usize,
    pub residual: f64,
    pub interior: std::collections::BTreeMap<String, f64>,
    pub boundary: std::collections::BTreeMap<String, f64>,
}

/// Computes both sides of the fundamental theorem for a named field on a
/// named patch and reports the residual.
pub fn check_ftc(
    field_name: &str,
    patch_name: &str,
    subdivision: usize,
    max_cells: usize,
) -> Result<FtcReport> {
    let patch = patch_by_name(patch_name, 1.0, 1.0)?.with_subdivision(subdivision);
    let alg = patch.ambient();
    let field = field_by_name(field_name, alg)?;
    let flat = ImplicitManifold::flat(alg);
    let check = quadrature::verify_fundamental_theorem(
        &patch,
        &field,
        &flat,
        QuadratureOptions {
            tol: 1e-8,
            max_cells,
        },
    )?;
    Ok(FtcReport {
        field: field_name.into(),
        patch: patch_name.into(),
        cells: check.interior.cells + check.boundary.cells,
        residual: check.residual,
        interior: crate::report::coeff_map(&check.interior.value, 1e-14),
        boundary: crate::report::coeff_map(&check.boundary.value, 1e-14),
    })
}

/// Directed-integral oracle run for the CLI.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub patch: String,
    pub field: String,
    pub value: std::collections::BTreeMap<String, f64>,
    pub cells: usize,
    pub estimated_error: f64,
    pub converged: bool,
}

pub fn run_oracle(
    patch_name: &str,
    field_name: &str,
    radius: f64,
    height: f64,
    subdivision: usize,
    tol: f64,
) -> Result<OracleReport> {
    let patch = patch_by_name(patch_name, radius, height)?.with_subdivision(subdivision);
    let field = field_by_name(field_name, patch.ambient())?;
    let result: DirectedIntegralResult = quadrature::directed_integral(
        &patch,
        &field,
        QuadratureOptions {
            tol,
            max_cells: 32 * subdivision.pow(patch.dim() as u32),
        },
    )?;
    Ok(OracleReport {
        patch: patch_name.into(),
        field: field_name.into(),
        value: crate::report::coeff_map(&result.value, 1e-14),
        cells: result.cells,
        estimated_error: result.estimated_error,
        converged: result.converged,
    })
}
