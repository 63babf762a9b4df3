//! The circle-to-line change of variables.
//!
//! `y(x) = log(x x₀) x₀` maps the circle to a straight line: the length of
//! `y` along `x₀` is constant, and motion along the circle moves `y` only
//! orthogonally to `x₀`. The measure pulls back through the inverse
//! differential, for which there is the closed form
//! `dx = y̲⁻¹(dy) = dy x₀⁻¹ e^{y x₀⁻¹} x₀⁻¹`. This module evaluates the
//! closed form and checks it against the finite-difference Jacobian.

use crate::algebra::{exp_bivector, log_spinor, Branch, Multivector};
use crate::calculus::differential;
use crate::error::{Error, Result};

/// The flattening map `x ↦ log(x x₀) x₀` on the given branch.
pub fn circle_to_line_map(
    x0: &Multivector,
    i2: &Multivector,
    branch: Branch,
) -> impl Fn(&Multivector) -> Multivector {
    let x0 = x0.clone();
    let i2 = i2.clone();
    move |x: &Multivector| {
        let log = log_spinor(&x.geometric_product(&x0), &i2, branch)
            .expect("spinor log in circle-to-line map");
        log.geometric_product(&x0)
    }
}

/// Exponential of a `scalar + bivector` element: `e^s · exp(B)`.
fn exp_even(e: &Multivector) -> Result<Multivector> {
    let s = e.scalar_part();
    let b = e.grade_select(2);
    let recon = &e.algebra().scalar(s) + &b;
    if (e - &recon).norm() > 1e-9 * e.norm().max(1.0) {
        return Err(Error::Domain(
            "exponent is not of scalar + bivector form".into(),
        ));
    }
    Ok(&exp_bivector(&b)? * s.exp())
}

/// Outcome of the pulled-back-measure check at one circle point.
#[derive(Debug, Clone)]
pub struct CovCheck {
    /// `dy x₀⁻¹ e^{y x₀⁻¹} x₀⁻¹` evaluated in closed form.
    pub closed_form: Multivector,
    /// `y̲⁻¹(dy)` from the finite-difference Jacobian.
    pub finite_difference: Multivector,
    pub residual: f64,
    /// `‖dx‖ / ‖dy‖` for the unit line direction.
    pub norm_ratio: f64,
}

/// Evaluates the closed-form pulled-back measure at `x` on the circle and
/// compares it with the finite-difference pushforward. `x` must be off the
/// branch cut (the ray through `+x₀`) by a safe margin.
pub fn circle_change_of_variables(
    x0: &Multivector,
    i2: &Multivector,
    x: &Multivector,
    branch: Branch,
) -> Result<CovCheck> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    // Stay clear of the cut so finite-difference probes cannot straddle it.
    let wedge = x.outer_product(x0).norm();
    let dot = x.scalar_product(x0);
    if dot > 0.0 && wedge < 1e-4 * x.norm() * x0.norm() {
        return Err(Error::Domain(
            "evaluation point is on the branch cut".into(),
        ));
    }

    let map = circle_to_line_map(x0, i2, branch);
    let jacobian = differential(&map, x)?;
    let inverse = jacobian.inverse()?;

    // Unit direction along the line: the image of the circle tangent.
    let tangent = x.geometric_product(i2); // x̂ I₂ direction, any consistent choice
    let image = jacobian.apply_vector(&tangent);
    let dy = &image * (1.0 / image.norm());

    let finite_difference = inverse.apply_vector(&dy);

    let x0_inv = x0.inverse()?;
    let y = map(x);
    let exponent = y.geometric_product(&x0_inv);
    let rotor = exp_even(&exponent)?;
    let closed_form = dy
        .geometric_product(&x0_inv)
        .geometric_product(&rotor)
        .geometric_product(&x0_inv);

    let residual = (&closed_form - &finite_difference).norm();
    Ok(CovCheck {
        norm_ratio: closed_form.norm(),
        closed_form,
        finite_difference,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use std::f64::consts::TAU;

    fn setup() -> (Algebra, Multivector, Multivector) {
        let alg = Algebra::new(2).unwrap();
        (alg, alg.basis_vector(0), alg.basis_blade(0b11))
    }

    fn circle_point(alg: Algebra, r: f64, angle: f64) -> Multivector {
        alg.vector(&[r * angle.cos(), r * angle.sin()])
    }

    #[test]
    fn reduces_to_unit_tangent_near_x0() {
        let (alg, x0, i2) = setup();
        // Just off the cut (the map is singular on it).
        let x = circle_point(alg, 1.0, 1e-3);
        let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
        assert!(check.residual < 1e-6, "residual {}", check.residual);
        // Closed form ≈ counterclockwise unit tangent at angle 1e-3.
        let t_ccw = x.geometric_product(&i2);
        let diff = (&check.closed_form - &t_ccw).norm();
        let diff_neg = (&check.closed_form + &t_ccw).norm();
        assert!(
            diff.min(diff_neg) < 1e-4,
            "closed form {} vs tangent {}",
            check.closed_form,
            t_ccw
        );
    }

    #[test]
    fn matches_finite_difference_around_circle() {
        let (alg, x0, i2) = setup();
        for k in 1..40 {
            let angle = TAU * k as f64 / 40.0;
            let x = circle_point(alg, 1.0, angle);
            let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
            assert!(
                check.residual < 1e-6,
                "angle {angle}: residual {}",
                check.residual
            );
        }
    }

    #[test]
    fn orthogonal_counterclockwise_at_minus_quarter_turn() {
        let (alg, x0, i2) = setup();
        let x = circle_point(alg, 1.0, -std::f64::consts::FRAC_PI_2);
        let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
        // Pulled-back direction is orthogonal to x.
        let dot = check.closed_form.scalar_product(&x);
        assert!(dot.abs() < 1e-6);
        assert!(check.residual < 1e-6);
    }

    #[test]
    fn unit_norm_ratio_on_unit_circle_with_unit_x0() {
        let (alg, x0, i2) = setup();
        for k in 1..8 {
            let x = circle_point(alg, 1.0, 0.7 * k as f64);
            let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
            assert!(
                (check.norm_ratio - 1.0).abs() < 1e-6,
                "norm ratio {}",
                check.norm_ratio
            );
        }
    }

    #[test]
    fn scales_with_radius_and_reference_norm() {
        let (alg, _, i2) = setup();
        let x0 = alg.vector(&[2.0, 0.0]);
        let x = circle_point(alg, 1.5, 2.0);
        let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
        // ‖y̲⁻¹(unit dy)‖ = ρ/‖x₀‖.
        assert!((check.norm_ratio - 0.75).abs() < 1e-6);
        assert!(check.residual < 1e-6);
    }

    #[test]
    fn on_cut_evaluation_is_rejected() {
        let (alg, x0, i2) = setup();
        let x = circle_point(alg, 1.0, 0.0);
        assert!(matches!(
            circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()),
            Err(Error::Domain(_))
        ));
    }
}
