//! Tangent-space projections and the projected vector derivative.
//!
//! The derivative on a manifold `N` embedded in `ℝ^d` is
//! `∂_N = Σ_i p(e_i) ∂/∂x_i`, where `p` projects onto the tangent blade
//! `I_N(x)` frozen at the evaluation point. Partials are central finite
//! differences along the ambient axes; the frame projection kills the normal
//! directions, so fields defined away from the manifold can be differentiated
//! directly. Fields that only make sense on the manifold are extended through
//! the manifold's nearest-point retraction first.

mod linear_map;

pub use linear_map::{differential, LinearMap};

use crate::algebra::{Algebra, Blade, Multivector};
use crate::error::{Error, Result};
use std::sync::Arc;

type PointFn<T> = Arc<dyn Fn(&Multivector) -> T + Send + Sync>;

/// A field over points of `ℝ^d` (encoded as grade-1 multivectors), valued in
/// the full algebra. Evaluation must be re-entrant; fields are `Send + Sync`
/// and freely shared.
#[derive(Clone)]
pub struct VectorField {
    algebra: Algebra,
    eval: PointFn<Multivector>,
}

impl VectorField {
    pub fn new<F>(algebra: Algebra, eval: F) -> Self
    where
        F: Fn(&Multivector) -> Multivector + Send + Sync + 'static,
    {
        Self {
            algebra,
            eval: Arc::new(eval),
        }
    }

    pub fn constant(value: Multivector) -> Self {
        let algebra = value.algebra();
        Self::new(algebra, move |_| value.clone())
    }

    /// The identity field `f(x) = x`.
    pub fn position(algebra: Algebra) -> Self {
        Self::new(algebra, |x| x.clone())
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn eval(&self, x: &Multivector) -> Multivector {
        (self.eval)(x)
    }

    /// Pointwise sum with a constant, used by the gauge-invariance checks.
    pub fn plus_constant(&self, c: Multivector) -> Self {
        let inner = self.eval.clone();
        Self::new(self.algebra, move |x| &inner(x) + &c)
    }

    /// Pointwise scale.
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = self.eval.clone();
        Self::new(self.algebra, move |x| &inner(x) * factor)
    }
}

/// A manifold given as the joint zero set of scalar constraints, together
/// with its unit tangent pseudoscalar field `I_N(x)` and a chart-validity
/// predicate. The tangent field is supplied analytically per scenario; for a
/// single scalar constraint it can also be derived from the constraint
/// gradient (see [`ImplicitManifold::from_level_set`]).
#[derive(Clone)]
pub struct ImplicitManifold {
    ambient: Algebra,
    dim: usize,
    constraints: Vec<PointFn<f64>>,
    tangent: PointFn<Blade>,
    domain: PointFn<bool>,
    retraction: Option<PointFn<Multivector>>,
}

impl ImplicitManifold {
    pub const CONSTRAINT_TOL: f64 = 1e-9;

    pub fn new<T>(ambient: Algebra, dim: usize, tangent: T) -> Self
    where
        T: Fn(&Multivector) -> Blade + Send + Sync + 'static,
    {
        assert!(dim >= 1 && dim <= ambient.dim());
        Self {
            ambient,
            dim,
            constraints: Vec::new(),
            tangent: Arc::new(tangent),
            domain: Arc::new(|_| true),
            retraction: None,
        }
    }

    /// The whole flat space, with the constant pseudoscalar as tangent.
    pub fn flat(ambient: Algebra) -> Self {
        let ps = Blade::try_new(ambient.pseudoscalar()).expect("pseudoscalar is a blade");
        Self::new(ambient, ambient.dim(), move |_| ps.clone())
    }

    /// Hypersurface `{x : m(x) = 0}` with the tangent pseudoscalar computed
    /// from the constraint gradient as `(∂m(x)) I_d`, normalized. Only the
    /// single-scalar-constraint (grade d-1) case is constructed generically.
    pub fn from_level_set<C>(ambient: Algebra, constraint: C) -> Self
    where
        C: Fn(&Multivector) -> f64 + Send + Sync + Clone + 'static,
    {
        let grad_constraint = constraint.clone();
        let tangent = move |x: &Multivector| {
            let h = f64::EPSILON.powf(1.0 / 3.0) * x.norm().max(1.0);
            let mut grad = ambient.zero();
            for i in 0..ambient.dim() {
                let e = ambient.basis_vector(i);
                let fp = grad_constraint(&(x + &(&e * h)));
                let fm = grad_constraint(&(x - &(&e * h)));
                grad = &grad + &(&e * ((fp - fm) / (2.0 * h)));
            }
            let blade_mv = grad.geometric_product(&ambient.pseudoscalar());
            let unit = &blade_mv * (1.0 / blade_mv.norm());
            Blade::try_new(unit).expect("level-set tangent must be a blade")
        };
        Self::new(ambient, ambient.dim() - 1, tangent).with_constraint(constraint)
    }

    pub fn with_constraint<C>(mut self, constraint: C) -> Self
    where
        C: Fn(&Multivector) -> f64 + Send + Sync + 'static,
    {
        self.constraints.push(Arc::new(constraint));
        self
    }

    pub fn with_domain<D>(mut self, domain: D) -> Self
    where
        D: Fn(&Multivector) -> bool + Send + Sync + 'static,
    {
        self.domain = Arc::new(domain);
        self
    }

    /// Nearest-point retraction used to extend manifold-only fields off the
    /// manifold for finite differencing.
    pub fn with_retraction<R>(mut self, retraction: R) -> Self
    where
        R: Fn(&Multivector) -> Multivector + Send + Sync + 'static,
    {
        self.retraction = Some(Arc::new(retraction));
        self
    }

    pub fn ambient(&self) -> Algebra {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tangent_at(&self, x: &Multivector) -> Blade {
        (self.tangent)(x)
    }

    pub fn in_domain(&self, x: &Multivector) -> bool {
        (self.domain)(x)
    }

    /// Largest constraint residual at `x`.
    pub fn constraint_residual(&self, x: &Multivector) -> f64 {
        self.constraints
            .iter()
            .map(|c| c(x).abs())
            .fold(0.0, f64::max)
    }

    pub fn check_on_manifold(&self, x: &Multivector) -> Result<()> {
        let residual = self.constraint_residual(x);
        if residual > Self::CONSTRAINT_TOL {
            return Err(Error::OffManifold { residual });
        }
        Ok(())
    }

    pub fn retract(&self, x: &Multivector) -> Multivector {
        match &self.retraction {
            Some(r) => r(x),
            None => x.clone(),
        }
    }

    /// Field composed with the retraction (identity when none is declared).
    pub fn extend_field(&self, f: &VectorField) -> VectorField {
        match &self.retraction {
            Some(r) => {
                let r = r.clone();
                let inner = f.eval.clone();
                VectorField::new(f.algebra, move |x| inner(&r(x)))
            }
            None => f.clone(),
        }
    }
}

/// Projection of a vector onto the subspace of a blade: `B⁻¹(B ⌊ a)`.
///
/// Idempotent; the result lies in the blade's subspace.
pub fn project(blade: &Blade, a: &Multivector) -> Result<Multivector> {
    let b = blade.mv();
    let binv = b.inverse()?;
    Ok(binv.geometric_product(&b.left_contraction(a)))
}

/// Rejection from a blade: `a - project(B, a)`, the part orthogonal to the
/// blade's subspace.
pub fn reject(blade: &Blade, a: &Multivector) -> Result<Multivector> {
    Ok(a - &project(blade, a)?)
}

/// Default central-difference step: `eps^{1/3} · max(1, ‖x‖)`.
pub fn default_fd_step(x: &Multivector) -> f64 {
    f64::EPSILON.powf(1.0 / 3.0) * x.norm().max(1.0)
}

/// Projected vector derivative `∂_N f` at an on-manifold point, with the
/// default finite-difference step.
pub fn vector_derivative(
    f: &VectorField,
    manifold: &ImplicitManifold,
    x: &Multivector,
) -> Result<Multivector> {
    vector_derivative_with_step(f, manifold, x, default_fd_step(x))
}

/// Projected vector derivative with an explicit step:
/// `Σ_i p(e_i) [f(x + h e_i) - f(x - h e_i)] / (2h)`, the projection taken
/// onto `I_N(x)` frozen at `x`.
pub fn vector_derivative_with_step(
    f: &VectorField,
    manifold: &ImplicitManifold,
    x: &Multivector,
    h: f64,
) -> Result<Multivector> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::StepUnderflow(h));
    }
    manifold.check_on_manifold(x)?;
    if !manifold.in_domain(x) {
        return Err(Error::Domain(
            "evaluation point outside chart domain".into(),
        ));
    }
    let alg = manifold.ambient();
    let tangent = manifold.tangent_at(x);
    let field = manifold.extend_field(f);

    let mut out = alg.zero();
    for i in 0..alg.dim() {
        let e = alg.basis_vector(i);
        let pe = project(&tangent, &e)?;
        if pe.norm() < 1e-14 {
            continue;
        }
        let xp = x + &(&e * h);
        let xm = x - &(&e * h);
        for probe in [&xp, &xm] {
            if !manifold.in_domain(&manifold.retract(probe)) {
                return Err(Error::Domain(
                    "finite-difference probe left the chart domain".into(),
                ));
            }
        }
        let diff = &(&field.eval(&xp) - &field.eval(&xm)) * (1.0 / (2.0 * h));
        out = &out + &pe.geometric_product(&diff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{log_spinor, Branch};

    fn alg3() -> Algebra {
        Algebra::new(3).unwrap()
    }

    /// Gram-Schmidt oracle: project onto span{e1, e2} by explicit dot products.
    fn project_span_e1e2(alg: Algebra, a: &Multivector) -> Multivector {
        let comps = a.vector_components();
        alg.vector(&[comps[0], comps[1]])
    }

    #[test]
    fn project_examples() {
        let alg = alg3();
        let e12 = Blade::try_new(alg.basis_blade(0b011)).unwrap();
        let e1 = alg.basis_vector(0);
        let e3 = alg.basis_vector(2);

        assert!((&project(&e12, &e1).unwrap() - &e1).is_zero(1e-14));
        assert!(project(&e12, &e3).unwrap().is_zero(1e-14));

        let mixed = &e1 + &e3;
        let got = project(&e12, &mixed).unwrap();
        let oracle = project_span_e1e2(alg, &mixed);
        assert!((&got - &oracle).is_zero(1e-14));
        assert!((&got - &e1).is_zero(1e-14));
    }

    #[test]
    fn project_random_vs_gram_schmidt() {
        let alg = alg3();
        let e12 = Blade::try_new(alg.basis_blade(0b011)).unwrap();
        let mut rng = crate::sample::rng_from_seed(7);
        for _ in 0..100 {
            let a = crate::sample::random_vector(alg, &mut rng);
            let got = project(&e12, &a).unwrap();
            let oracle = project_span_e1e2(alg, &a);
            assert!((&got - &oracle).is_zero(1e-12));
            // Idempotence.
            let twice = project(&e12, &got).unwrap();
            assert!((&twice - &got).is_zero(1e-12));
        }
    }

    #[test]
    fn reject_examples() {
        let alg = alg3();
        let e12 = Blade::try_new(alg.basis_blade(0b011)).unwrap();
        let e1 = alg.basis_vector(0);
        let e3 = alg.basis_vector(2);

        assert!((&reject(&e12, &e3).unwrap() - &e3).is_zero(1e-14));
        assert!(reject(&e12, &e1).unwrap().is_zero(1e-14));

        let a = &e1 + &(&e3 * 2.0);
        assert!((&reject(&e12, &a).unwrap() - &(&e3 * 2.0)).is_zero(1e-14));

        // Rejection agrees with the closed form ω⁻¹(ω∧a).
        let mut rng = crate::sample::rng_from_seed(11);
        for _ in 0..50 {
            let a = crate::sample::random_vector(alg, &mut rng);
            let omega = e12.mv();
            let closed = omega
                .inverse()
                .unwrap()
                .geometric_product(&omega.outer_product(&a));
            assert!((&reject(&e12, &a).unwrap() - &closed).is_zero(1e-12));
        }
    }

    #[test]
    fn split_identity() {
        let alg = alg3();
        let mut rng = crate::sample::rng_from_seed(3);
        for _ in 0..100 {
            let blade = crate::sample::random_blade(alg, 2, &mut rng).unit();
            let a = crate::sample::random_vector(alg, &mut rng);
            let p = project(&blade, &a).unwrap();
            let r = reject(&blade, &a).unwrap();
            assert!((&(&p + &r) - &a).is_zero(1e-12));
            assert!(project(&blade, &r).unwrap().is_zero(1e-10));
        }
    }

    #[test]
    fn derivative_of_position_is_dimension() {
        for d in 2..=4 {
            let alg = Algebra::new(d).unwrap();
            let flat = ImplicitManifold::flat(alg);
            let f = VectorField::position(alg);
            let x = alg.vector(&vec![0.3; d]);
            let got = vector_derivative(&f, &flat, &x).unwrap();
            assert!((&got - &alg.scalar(d as f64)).is_zero(1e-8));
        }
    }

    #[test]
    fn derivative_of_half_x_squared_is_x() {
        let alg = alg3();
        let flat = ImplicitManifold::flat(alg);
        let f = VectorField::new(alg, |x| &x.algebra().scalar(0.5) * x.scalar_product(x));
        let x = alg.vector(&[0.7, -0.4, 1.2]);
        let got = vector_derivative(&f, &flat, &x).unwrap();
        assert!((&got - &x).is_zero(1e-8));
    }

    #[test]
    fn circle_log_derivative_is_inverse_position() {
        // ∂_{S¹} log(x x₀) = x⁻¹ on the unit circle.
        let alg = Algebra::new(2).unwrap();
        let i2 = alg.basis_blade(0b11);
        let x0 = alg.basis_vector(0);
        let circle = unit_circle(alg);
        let i2c = i2.clone();
        let x0c = x0.clone();
        let f = VectorField::new(alg, move |x| {
            log_spinor(&x.geometric_product(&x0c), &i2c, Branch::nonpositive()).unwrap()
        });
        for angle in [0.5f64, 1.7, 3.0, 4.4, 5.9] {
            let x = alg.vector(&[angle.cos(), angle.sin()]);
            let got = vector_derivative(&f, &circle, &x).unwrap();
            let expect = x.inverse().unwrap();
            assert!(
                (&got - &expect).norm() < 1e-7,
                "angle {angle}: got {got}, expect {expect}"
            );
        }
    }

    fn unit_circle(alg: Algebra) -> ImplicitManifold {
        let i2 = Blade::try_new(alg.basis_blade(0b11)).unwrap();
        ImplicitManifold::new(alg, 1, move |x: &Multivector| {
            let t = i2.mv().geometric_product(&(x * (1.0 / x.norm())));
            Blade::try_new(t.grade_select(1)).unwrap()
        })
        .with_constraint(|x: &Multivector| x.norm() - 1.0)
        .with_retraction(|x: &Multivector| x * (1.0 / x.norm()))
    }

    #[test]
    fn fd_error_shrinks_quadratically() {
        // Halving h reduces the truncation error by ~4x on a cubic field.
        let alg = Algebra::new(2).unwrap();
        let flat = ImplicitManifold::flat(alg);
        let f = VectorField::new(alg, |x| {
            let s = x.scalar_product(x);
            x * s // f = x ‖x‖², ∂f = (d + 2)‖x‖² = 4‖x‖² in d=2... measured against exact
        });
        let x = alg.vector(&[0.9, 0.4]);
        // Exact: ∂(x‖x‖²) = Σ e_i ∂_i (x (x·x)) = d‖x‖² + 2x x = (d+2)‖x‖².
        let exact = alg.scalar(4.0 * x.scalar_product(&x));
        let err =
            |h: f64| (&vector_derivative_with_step(&f, &flat, &x, h).unwrap() - &exact).norm();
        let e1 = err(1e-3);
        let e2 = err(5e-4);
        let ratio = e1 / e2;
        assert!(
            (3.5..=4.5).contains(&ratio),
            "convergence ratio {ratio} outside [3.5, 4.5]"
        );
    }

    #[test]
    fn level_set_tangent_matches_sphere() {
        let alg = alg3();
        let sphere =
            ImplicitManifold::from_level_set(alg, |x: &Multivector| x.scalar_product(x) - 1.0);
        assert_eq!(sphere.dim(), 2);
        let x = alg.vector(&[0.6, 0.0, 0.8]);
        let tangent = sphere.tangent_at(&x);
        assert_eq!(tangent.grade(), 2);
        // The tangent plane contains every vector orthogonal to x.
        let t1 = alg.vector(&[0.8, 0.0, -0.6]);
        let p = project(&tangent, &t1).unwrap();
        assert!((&p - &t1).is_zero(1e-6));
        let pn = project(&tangent, &x).unwrap();
        assert!(pn.is_zero(1e-6));
    }

    #[test]
    fn off_manifold_point_is_rejected() {
        let alg = Algebra::new(2).unwrap();
        let circle = unit_circle(alg);
        let f = VectorField::position(alg);
        let bad = alg.vector(&[2.0, 0.0]);
        assert!(matches!(
            vector_derivative(&f, &circle, &bad),
            Err(Error::OffManifold { .. })
        ));
    }

    #[test]
    fn zero_step_underflows() {
        let alg = Algebra::new(2).unwrap();
        let flat = ImplicitManifold::flat(alg);
        let f = VectorField::position(alg);
        let x = alg.vector(&[1.0, 0.0]);
        assert!(matches!(
            vector_derivative_with_step(&f, &flat, &x, 0.0),
            Err(Error::StepUnderflow(_))
        ));
    }
}
