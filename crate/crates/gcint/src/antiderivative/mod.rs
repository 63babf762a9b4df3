//! Closed-form antiderivatives with numeric self-checks.
//!
//! Each entry pairs an integrand `f` with a claimed antiderivative `F` on a
//! manifold and carries the data needed to check `∂_N F = f` at sampled
//! on-manifold points (away from any branch cut). The flat-space table rows
//! use the gauge `C(x) = 0`; the radial row fixes the lower integration
//! limit at 0 — any other choice differs by a monogenic term.

mod scenario;

pub use scenario::{cap_entry, circle_entry, scenario_entry, side_entry, CylinderFrame};

use crate::algebra::{Algebra, Multivector};
use crate::calculus::{vector_derivative, ImplicitManifold, VectorField};
use crate::error::{Error, Result};
use crate::sample::SampleRng;
use rand::Rng;
use std::sync::Arc;

pub use crate::algebra::Branch;

/// Branch bookkeeping for multivalued antiderivatives: the branch interval
/// and a predicate marking points on (or too близко to) the cut locus.
#[derive(Clone)]
pub struct BranchInfo {
    pub interval: Branch,
    pub cut_locus: Arc<dyn Fn(&Multivector) -> bool + Send + Sync>,
    pub description: String,
}

/// An antiderivative pair `(f, F)` with `∂_N F = f` on its manifold.
#[derive(Clone)]
pub struct AntiderivativeEntry {
    pub name: String,
    pub formula: String,
    pub manifold_desc: String,
    pub manifold: ImplicitManifold,
    pub integrand: VectorField,
    pub antiderivative: VectorField,
    pub branch: Option<BranchInfo>,
    sampler: Arc<dyn Fn(&mut SampleRng) -> Multivector + Send + Sync>,
}

impl AntiderivativeEntry {
    #[allow(clippy::too_many_arguments)]
    pub fn new<S>(
        name: impl Into<String>,
        formula: impl Into<String>,
        manifold_desc: impl Into<String>,
        manifold: ImplicitManifold,
        integrand: VectorField,
        antiderivative: VectorField,
        branch: Option<BranchInfo>,
        sampler: S,
    ) -> Self
    where
        S: Fn(&mut SampleRng) -> Multivector + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            formula: formula.into(),
            manifold_desc: manifold_desc.into(),
            manifold,
            integrand,
            antiderivative,
            branch,
            sampler: Arc::new(sampler),
        }
    }

    /// Samples an on-manifold point away from the cut locus.
    pub fn sample_point(&self, rng: &mut SampleRng) -> Multivector {
        (self.sampler)(rng)
    }

    /// Same entry with a constant added to the antiderivative (gauge shift).
    pub fn with_gauge_constant(&self, c: Multivector) -> Self {
        let mut shifted = self.clone();
        shifted.antiderivative = self.antiderivative.plus_constant(c);
        shifted
    }

    /// Entry with both fields scaled by a constant: `∂(cF) = c f`.
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.integrand = self.integrand.scaled(factor);
        out.antiderivative = self.antiderivative.scaled(factor);
        out
    }

    /// Catalog record for docs and the CLI.
    pub fn catalog_record(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "formula": self.formula,
            "manifold": self.manifold_desc,
            "branch": self.branch.as_ref().map(|b| serde_json::json!({
                "interval_start": b.interval.start,
                "interval_end": b.interval.start + std::f64::consts::TAU,
                "cut": b.description,
            })),
        })
    }
}

/// Result of checking `∂_N F = f` at sampled points.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DerivativeCheck {
    pub entry: String,
    pub points: usize,
    pub max_relative_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Evaluates `‖∂_N F - f‖ / max(1, ‖f‖)` at `points` sampled points and
/// reports the worst case against `tol`.
pub fn check_entry(
    entry: &AntiderivativeEntry,
    points: usize,
    rng: &mut SampleRng,
    tol: f64,
) -> Result<DerivativeCheck> {
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let x = entry.sample_point(rng);
        let derivative = vector_derivative(&entry.antiderivative, &entry.manifold, &x)?;
        let expect = entry.integrand.eval(&x);
        let residual = (&derivative - &expect).norm() / expect.norm().max(1.0);
        // Non-finite values (non-integrable radial rows, blown-up fields)
        // must fail loudly; f64::max would silently drop a NaN.
        if !residual.is_finite() {
            worst = f64::INFINITY;
            break;
        }
        worst = worst.max(residual);
    }
    Ok(DerivativeCheck {
        entry: entry.name.clone(),
        points,
        max_relative_residual: worst,
        tol,
        passed: worst <= tol || points == 0,
    })
}

/// Adaptive Simpson quadrature on `[a, b]`.
fn integrate_1d<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let mid = 0.5 * (a + b);
        let left = simpson(f, a, mid);
        let right = simpson(f, mid, b);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        recurse(f, a, mid, left, 0.5 * tol, depth - 1)
            + recurse(f, mid, b, right, 0.5 * tol, depth - 1)
    }
    let whole = simpson(&f, a, b);
    recurse(&f, a, b, whole, tol, 40)
}

fn flat_sampler(alg: Algebra) -> impl Fn(&mut SampleRng) -> Multivector {
    move |rng: &mut SampleRng| loop {
        let comps: Vec<f64> = (0..alg.dim())
            .map(|_| rng.random_range(-2.0..=2.0))
            .collect();
        let x = alg.vector(&comps);
        // Keep clear of the origin: the xhat and radial rows are singular there.
        if x.norm() > 0.3 {
            return x;
        }
    }
}

/// Table row `1 ↦ x/d`.
pub fn const_entry(alg: Algebra) -> AntiderivativeEntry {
    let d = alg.dim() as f64;
    AntiderivativeEntry::new(
        "const",
        "F(x) = x/d",
        format!("flat R^{}", alg.dim()),
        ImplicitManifold::flat(alg),
        VectorField::constant(alg.one()),
        VectorField::new(alg, move |x| x * (1.0 / d)),
        None,
        flat_sampler(alg),
    )
}

/// Table row `x ↦ ½x²`.
pub fn position_entry(alg: Algebra) -> AntiderivativeEntry {
    AntiderivativeEntry::new(
        "x",
        "F(x) = x²/2",
        format!("flat R^{}", alg.dim()),
        ImplicitManifold::flat(alg),
        VectorField::position(alg),
        VectorField::new(alg, |x| x.algebra().scalar(0.5 * x.scalar_product(x))),
        None,
        flat_sampler(alg),
    )
}

/// Table row `x̂ ↦ |x|`.
pub fn unit_position_entry(alg: Algebra) -> AntiderivativeEntry {
    AntiderivativeEntry::new(
        "xhat",
        "F(x) = |x|",
        format!("flat R^{} minus origin", alg.dim()),
        ImplicitManifold::flat(alg),
        VectorField::new(alg, |x| x * (1.0 / x.norm())),
        VectorField::new(alg, |x| x.algebra().scalar(x.norm())),
        None,
        flat_sampler(alg),
    )
}

/// Table row `a x ↦ (2x(x⌋a) - ½ d x² a)/(d+2)` for a constant vector `a`.
pub fn linear_entry(alg: Algebra, a: Multivector) -> AntiderivativeEntry {
    let d = alg.dim() as f64;
    let a_f = a.clone();
    let a_big = a.clone();
    AntiderivativeEntry::new(
        "ax",
        "F(x) = (2x(x⌋a) - d x² a / 2)/(d+2)",
        format!("flat R^{}", alg.dim()),
        ImplicitManifold::flat(alg),
        VectorField::new(alg, move |x| a_f.geometric_product(x)),
        VectorField::new(alg, move |x| {
            let xa = x.right_contraction(&a_big).scalar_part();
            let first = x * (2.0 * xa);
            let second = &a_big * (0.5 * d * x.scalar_product(x));
            &(&first - &second) * (1.0 / (d + 2.0))
        }),
        None,
        flat_sampler(alg),
    )
}

/// Table row `f(‖x‖) ↦ x/‖x‖^d ∫₀^{‖x‖} s^{d-1} f(s) ds` for scalar radial
/// integrands; the 1-D integral is done by adaptive quadrature.
pub fn radial_entry<F>(alg: Algebra, name: impl Into<String>, radial: F) -> AntiderivativeEntry
where
    F: Fn(f64) -> f64 + Copy + Send + Sync + 'static,
{
    let d = alg.dim() as i32;
    AntiderivativeEntry::new(
        name,
        "F(x) = x/‖x‖^d · ∫₀^‖x‖ s^{d-1} f(s) ds",
        format!("flat R^{} minus origin", alg.dim()),
        ImplicitManifold::flat(alg),
        VectorField::new(alg, move |x| x.algebra().scalar(radial(x.norm()))),
        VectorField::new(alg, move |x| {
            let r = x.norm();
            let integral = integrate_1d(move |s| s.powi(d - 1) * radial(s), 0.0, r, 1e-12);
            x * (integral / r.powi(d))
        }),
        None,
        flat_sampler(alg),
    )
}

/// Table-row lookup by name, with the default instantiations used by the
/// CLI: `a = e₁` for the `ax` row and `f(s) = s²` for the radial row.
pub fn table_entry(name: &str, dim: usize) -> Result<AntiderivativeEntry> {
    let alg = Algebra::new(dim)?;
    match name {
        "const" => Ok(const_entry(alg)),
        "x" => Ok(position_entry(alg)),
        "xhat" => Ok(unit_position_entry(alg)),
        "ax" => Ok(linear_entry(alg, alg.basis_vector(0))),
        "radial" => Ok(radial_entry(alg, "radial", |s| s * s)),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

pub const TABLE_ROW_NAMES: [&str; 5] = ["const", "x", "xhat", "ax", "radial"];

/// All five table rows at the given dimension.
pub fn table_entries(dim: usize) -> Result<Vec<AntiderivativeEntry>> {
    TABLE_ROW_NAMES
        .iter()
        .map(|name| table_entry(name, dim))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::rng_from_seed;

    #[test]
    fn table_rows_pass_derivative_checks() {
        let mut rng = rng_from_seed(42);
        for dim in 2..=4 {
            for entry in table_entries(dim).unwrap() {
                let check = check_entry(&entry, 50, &mut rng, 1e-6).unwrap();
                assert!(
                    check.passed,
                    "row {} failed at dim {dim}: residual {:.3e}",
                    check.entry, check.max_relative_residual
                );
            }
        }
    }

    #[test]
    fn const_row_examples() {
        let alg = Algebra::new(3).unwrap();
        let entry = const_entry(alg);
        let x = alg.vector(&[0.6, -0.9, 0.3]);
        assert!((&entry.antiderivative.eval(&x) - &(&x * (1.0 / 3.0))).is_zero(1e-15));
    }

    #[test]
    fn x_row_is_half_norm_squared() {
        let alg = Algebra::new(2).unwrap();
        let entry = position_entry(alg);
        let x = alg.vector(&[3.0, 4.0]);
        assert!((entry.antiderivative.eval(&x).scalar_part() - 12.5).abs() < 1e-12);
    }

    #[test]
    fn radial_row_with_unit_integrand_matches_const_row() {
        // f(s) = 1, d = 3: F(x) = x/‖x‖³ · ‖x‖³/3 = x/3, i.e. the const row.
        let alg = Algebra::new(3).unwrap();
        let entry = radial_entry(alg, "radial-one", |_| 1.0);
        let reference = const_entry(alg);
        let mut rng = rng_from_seed(7);
        for _ in 0..20 {
            let x = entry.sample_point(&mut rng);
            let a = entry.antiderivative.eval(&x);
            let b = reference.antiderivative.eval(&x);
            assert!((&a - &b).norm() < 1e-9, "at {x}");
        }
    }

    #[test]
    fn ax_row_recovers_bivector_part() {
        // d = 2, a = e1: the derivative check must recover a x including its
        // bivector (a∧x) part, not just the scalar a·x.
        let alg = Algebra::new(2).unwrap();
        let a = alg.basis_vector(0);
        let entry = linear_entry(alg, a.clone());
        let x = alg.vector(&[0.4, 1.1]);
        let derivative = vector_derivative(&entry.antiderivative, &entry.manifold, &x).unwrap();
        let expect = a.geometric_product(&x);
        assert!((&derivative - &expect).norm() < 1e-7);
        assert!(
            expect.coeff(0b11).abs() > 0.1,
            "test needs a real bivector part"
        );
    }

    #[test]
    fn gauge_constant_leaves_residuals_unchanged() {
        let alg = Algebra::new(3).unwrap();
        let entry = position_entry(alg);
        let mut rng = rng_from_seed(99);
        let c = crate::sample::random_multivector(alg, &mut rng);
        let shifted = entry.with_gauge_constant(c);
        let mut rng_a = rng_from_seed(5);
        let mut rng_b = rng_from_seed(5);
        let base = check_entry(&entry, 40, &mut rng_a, 1e-6).unwrap();
        let gauged = check_entry(&shifted, 40, &mut rng_b, 1e-6).unwrap();
        assert!(
            (base.max_relative_residual - gauged.max_relative_residual).abs() < 1e-12,
            "gauge shift changed residuals: {:.3e} vs {:.3e}",
            base.max_relative_residual,
            gauged.max_relative_residual
        );
    }

    #[test]
    fn unknown_row_is_an_error() {
        assert!(matches!(
            table_entry("nope", 3),
            Err(Error::UnknownEntry(_))
        ));
    }

    #[test]
    fn non_integrable_radial_row_fails_loudly() {
        // f(s) = 1/s² is not integrable against s^{d-1} ds at 0 in d = 2;
        // the check must report a failure, not silently drop NaN residuals.
        let alg = Algebra::new(2).unwrap();
        let entry = radial_entry(alg, "radial-singular", |s| 1.0 / (s * s));
        let mut rng = rng_from_seed(13);
        let check = check_entry(&entry, 10, &mut rng, 1e-6).unwrap();
        assert!(!check.passed);
    }

    #[test]
    fn adaptive_simpson_sanity() {
        let got = integrate_1d(|s| s * s, 0.0, 2.0, 1e-12);
        assert!((got - 8.0 / 3.0).abs() < 1e-10);
        let got = integrate_1d(f64::sin, 0.0, std::f64::consts::PI, 1e-12);
        assert!((got - 2.0).abs() < 1e-10);
    }
}
