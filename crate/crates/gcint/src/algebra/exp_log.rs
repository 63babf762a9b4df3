//! Exponential and logarithm on the even subalgebra spanned by `{1, I₂}`.
//!
//! A unit bivector `I₂` squares to `-1`, so that subalgebra is isomorphic to
//! the complex plane and the logarithm is defined analogously to the complex
//! logarithm, with an explicit branch. A branch is the half-open angle
//! interval `(α, α + 2π]`; the default `(-2π, 0]` is the choice the disk
//! scenario needs, where the value at the reference direction is
//! `log‖x x₀‖ - 0·I₂` and the other side of the cut approaches
//! `log‖x x₀‖ - 2π·I₂`.

use super::{Algebra, Multivector};
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Branch of the spinor logarithm: angles are reduced into `(start, start + 2π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch {
    pub start: f64,
}

impl Branch {
    pub fn new(start: f64) -> Self {
        Self { start }
    }

    /// The branch the disk scenario uses: `(-2π, 0]`.
    pub fn nonpositive() -> Self {
        Self { start: -TAU }
    }

    pub fn contains(&self, angle: f64) -> bool {
        angle > self.start && angle <= self.start + TAU
    }

    /// Shift `angle` by a multiple of 2π into `(start, start + 2π]`.
    pub fn reduce(&self, angle: f64) -> f64 {
        let mut a = angle + TAU * ((self.start - angle) / TAU).ceil();
        // Guard the half-open boundary against rounding of the ceil above.
        while a <= self.start {
            a += TAU;
        }
        while a > self.start + TAU {
            a -= TAU;
        }
        a
    }
}

impl Default for Branch {
    fn default() -> Self {
        Self::nonpositive()
    }
}

fn check_plane(i2: &Multivector) -> Result<()> {
    let tol = 1e-9;
    if i2.grades(tol * i2.norm().max(1.0)) != vec![2] {
        return Err(Error::Domain("I₂ must be a pure bivector".into()));
    }
    if (i2.norm() - 1.0).abs() > tol {
        return Err(Error::Domain("I₂ must have unit norm".into()));
    }
    let sq = i2.geometric_product(i2);
    if (&sq + &i2.algebra().one()).norm() > tol {
        return Err(Error::Domain("I₂ must square to -1".into()));
    }
    Ok(())
}

/// Exponential of a bivector whose square is a nonpositive scalar:
/// `exp(B) = cos θ + B sin θ / θ` with `θ² = -B²`.
pub fn exp_bivector(b: &Multivector) -> Result<Multivector> {
    let alg: Algebra = b.algebra();
    let norm = b.norm();
    if norm > 0.0 && b.grades(1e-12 * norm) != vec![2] {
        return Err(Error::Domain("exp_bivector needs a pure bivector".into()));
    }
    let sq = b.geometric_product(b);
    let s = sq.scalar_part();
    let residual = (&sq - &alg.scalar(s)).norm();
    if residual > 1e-10 * norm * norm {
        return Err(Error::Domain(
            "bivector square is not scalar (non-simple bivector)".into(),
        ));
    }
    if s > 1e-10 * norm * norm {
        return Err(Error::Domain("bivector square must be nonpositive".into()));
    }
    let theta = (-s).max(0.0).sqrt();
    let sinc = if theta < 1e-8 {
        1.0 - theta * theta / 6.0
    } else {
        theta.sin() / theta
    };
    Ok(&alg.scalar(theta.cos()) + &(b * sinc))
}

/// Logarithm of a spinor `R = s + c·I₂` on the chosen branch.
///
/// Returns `ln‖R‖ + θ·I₂` with `θ` the argument of `(s, c)` reduced into the
/// branch interval. `R` must lie in the span of `{1, I₂}` and have nonzero
/// norm.
pub fn log_spinor(r: &Multivector, i2: &Multivector, branch: Branch) -> Result<Multivector> {
    check_plane(i2)?;
    let alg = r.algebra();
    let s = r.scalar_part();
    let c = r.scalar_product(i2);
    let recon = &alg.scalar(s) + &(i2 * c);
    let norm = r.norm();
    if norm == 0.0 {
        return Err(Error::Domain("log of zero spinor".into()));
    }
    if (r - &recon).norm() > 1e-9 * norm {
        return Err(Error::Domain(
            "spinor is not in the even subalgebra spanned by {1, I₂}".into(),
        ));
    }
    let theta = branch.reduce(c.atan2(s));
    Ok(&alg.scalar(s.hypot(c).ln()) + &(i2 * theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Series oracle: sums the Taylor series with generic multivector powers.
    fn exp_series(b: &Multivector, terms: usize) -> Multivector {
        let alg = b.algebra();
        let mut sum = alg.one();
        let mut term = alg.one();
        for n in 1..=terms {
            term = &term.geometric_product(b) * (1.0 / n as f64);
            sum = &sum + &term;
        }
        sum
    }

    #[test]
    fn exp_quarter_turn_matches_series() {
        let alg = Algebra::new(2).unwrap();
        let i2 = alg.basis_blade(0b11);
        let b = &i2 * FRAC_PI_2;
        let got = exp_bivector(&b).unwrap();
        let oracle = exp_series(&b, 40);
        assert!((&got - &oracle).norm() < 1e-12);
        // cos(π/2) + sin(π/2) e12 = e12
        assert!((&got - &i2).norm() < 1e-12);
    }

    #[test]
    fn exp_matches_series_at_many_angles() {
        let alg = Algebra::new(3).unwrap();
        // A non-axis-aligned unit bivector plane.
        let v1 = alg.vector(&[1.0, 2.0, -1.0]);
        let v2 = alg.vector(&[0.0, 1.0, 1.0]);
        let plane = v1.outer_product(&v2);
        let plane = &plane * (1.0 / plane.norm());
        for k in 0..24 {
            let theta = -PI + 0.26 * k as f64;
            let b = &plane * theta;
            let got = exp_bivector(&b).unwrap();
            let oracle = exp_series(&b, 60);
            assert!((&got - &oracle).norm() < 1e-12, "theta = {theta}");
        }
    }

    #[test]
    fn exp_rejects_nonsimple_bivector() {
        let alg = Algebra::new(4).unwrap();
        let b = &alg.basis_blade(0b0011) + &alg.basis_blade(0b1100);
        assert!(exp_bivector(&b).is_err());
    }

    #[test]
    fn log_round_trips_exp_on_default_branch() {
        let alg = Algebra::new(2).unwrap();
        let i2 = alg.basis_blade(0b11);
        let branch = Branch::nonpositive();
        for k in 1..40 {
            let theta = -TAU + TAU * (k as f64) / 40.0; // in (-2π, 0)
            let r = exp_bivector(&(&i2 * theta)).unwrap();
            let log = log_spinor(&r, &i2, branch).unwrap();
            assert!(
                (&log - &(&i2 * theta)).norm() < 1e-9,
                "theta = {theta}, log = {log}"
            );
        }
        // The closed end of the interval: angle 0 stays 0.
        let log0 = log_spinor(&alg.one(), &i2, branch).unwrap();
        assert!(log0.norm() < 1e-12);
    }

    #[test]
    fn log_reduces_into_other_branches() {
        let alg = Algebra::new(2).unwrap();
        let i2 = alg.basis_blade(0b11);
        let r = exp_bivector(&(&i2 * (PI / 3.0))).unwrap();
        let log = log_spinor(&r, &i2, Branch::new(0.0)).unwrap();
        assert!((log.scalar_product(&i2) - PI / 3.0).abs() < 1e-12);
        let log = log_spinor(&r, &i2, Branch::nonpositive()).unwrap();
        assert!((log.scalar_product(&i2) - (PI / 3.0 - TAU)).abs() < 1e-12);
    }

    #[test]
    fn log_scales_with_norm() {
        let alg = Algebra::new(2).unwrap();
        let i2 = alg.basis_blade(0b11);
        let r = &exp_bivector(&(&i2 * -1.25)).unwrap() * 3.0;
        let log = log_spinor(&r, &i2, Branch::nonpositive()).unwrap();
        assert!((log.scalar_part() - 3.0_f64.ln()).abs() < 1e-12);
        assert!((log.scalar_product(&i2) + 1.25).abs() < 1e-12);
    }

    #[test]
    fn log_rejects_degenerate_inputs() {
        let alg = Algebra::new(3).unwrap();
        let i2 = alg.basis_blade(0b011);
        assert!(log_spinor(&alg.zero(), &i2, Branch::default()).is_err());
        // Outside the {1, I₂} span.
        let bad = &alg.one() + &alg.basis_vector(2);
        assert!(log_spinor(&bad, &i2, Branch::default()).is_err());
    }

    #[test]
    fn branch_reduce_is_exact_on_boundaries() {
        let b = Branch::nonpositive();
        assert_eq!(b.reduce(0.0), 0.0);
        assert!((b.reduce(0.1) - (0.1 - TAU)).abs() < 1e-15);
        assert!((b.reduce(-TAU) - 0.0).abs() < 1e-15);
        assert!(b.contains(b.reduce(123.456)));
    }
}
