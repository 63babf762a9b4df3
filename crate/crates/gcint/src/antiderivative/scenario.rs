//! Scenario antiderivatives: the circle entry used by the disk chain and the
//! side/cap entries used by the cylinder chain.
//!
//! The circle antiderivative `½x² log(x x₀)` is multivalued; its branch data
//! (interval plus cut-locus predicate) travels with the entry so the chain
//! builder can steer incisions around the cut.
//!
//! Note the operator order in the side antiderivative: with the derivative
//! acting from the left, `∂_side (r_ω(x) x) = x`, while `∂_side (x r_ω(x))`
//! evaluates to `-p_ω(x) + 3 r_ω(x)`. The entry uses the first form and the
//! tests pin down both values.

use super::{AntiderivativeEntry, BranchInfo};
use crate::algebra::{log_spinor, Algebra, Blade, Branch, Multivector};
use crate::calculus::{project, reject, ImplicitManifold, VectorField};
use crate::error::{Error, Result};
use rand::Rng;
use std::f64::consts::TAU;
use std::sync::Arc;

/// Rotate a vector by `angle` in the plane of the unit bivector `i2`.
pub(crate) fn rotate_in_plane(v: &Multivector, i2: &Multivector, angle: f64) -> Multivector {
    let alg = v.algebra();
    let rotor = &alg.scalar(angle.cos()) + &(i2 * angle.sin());
    v.geometric_product(&rotor)
}

/// Circle of radius `r` about the origin of a 2-D algebra, with the radial
/// retraction `x ↦ r x/‖x‖`.
pub(crate) fn circle_manifold(alg: Algebra, r: f64, i2: Multivector) -> ImplicitManifold {
    let i2_blade = Blade::try_new(i2).expect("I₂ must be a blade");
    ImplicitManifold::new(alg, 1, move |x: &Multivector| {
        let xhat = x * (1.0 / x.norm());
        Blade::try_new(i2_blade.mv().geometric_product(&xhat))
            .expect("circle tangent should be a vector")
    })
    .with_constraint(move |x: &Multivector| x.norm() - r)
    .with_domain(|x: &Multivector| x.norm() > 1e-12)
    .with_retraction(move |x: &Multivector| x * (r / x.norm()))
}

/// The disk scenario's circle entry: `∂_{S¹} [½x² log(x x₀)] = ½x`, on the
/// branch whose angle lies in the given interval, with the cut on the ray
/// through `+x₀`.
pub fn circle_entry(
    alg: Algebra,
    r: f64,
    x0: Multivector,
    i2: Multivector,
    branch: Branch,
) -> Result<AntiderivativeEntry> {
    if r <= 0.0 {
        return Err(Error::InvalidParameter(
            "circle radius must be positive".into(),
        ));
    }
    if x0.norm() == 0.0 {
        return Err(Error::InvalidParameter("x₀ must be nonzero".into()));
    }
    let manifold = circle_manifold(alg, r, i2.clone());
    let integrand = VectorField::position(alg).scaled(0.5);
    let x0_f = x0.clone();
    let i2_f = i2.clone();
    let antiderivative = VectorField::new(alg, move |x| {
        let log =
            log_spinor(&x.geometric_product(&x0_f), &i2_f, branch).expect("log of circle spinor");
        &log * (0.5 * x.scalar_product(x))
    });
    let x0_cut = x0.clone();
    let cut_locus = Arc::new(move |x: &Multivector| {
        let wedge = x.outer_product(&x0_cut).norm();
        let dot = x.scalar_product(&x0_cut);
        dot > 0.0 && wedge <= 1e-9 * x.norm() * x0_cut.norm()
    });
    let x0_s = x0.clone();
    let i2_s = i2.clone();
    let sampler = move |rng: &mut crate::sample::SampleRng| {
        let margin = 1e-3;
        let angle = rng.random_range(margin..TAU - margin);
        let xhat = &x0_s * (1.0 / x0_s.norm());
        &rotate_in_plane(&xhat, &i2_s, angle) * r
    };
    Ok(AntiderivativeEntry::new(
        "circle",
        "F(x) = x²/2 · log(x x₀)",
        format!("circle of radius {r} about the origin"),
        manifold,
        integrand,
        antiderivative,
        Some(BranchInfo {
            interval: branch,
            cut_locus,
            description: "ray through +x₀".into(),
        }),
        sampler,
    ))
}

/// Geometry shared by the cylinder pieces: the cap-plane bivector `ω`, the
/// ambient pseudoscalar `I₃`, and the axis vector `k = ⟨ω I₃⟩₁` along which
/// the height is measured.
#[derive(Clone)]
pub struct CylinderFrame {
    algebra: Algebra,
    omega: Multivector,
    i3: Multivector,
    axis: Multivector,
    radius: f64,
    height: f64,
}

impl CylinderFrame {
    pub fn new(
        algebra: Algebra,
        omega: Multivector,
        i3: Multivector,
        radius: f64,
        height: f64,
    ) -> Result<Self> {
        if algebra.dim() != 3 {
            return Err(Error::InvalidParameter(
                "cylinder scenario lives in a 3-dimensional algebra".into(),
            ));
        }
        if radius <= 0.0 || height <= 0.0 {
            return Err(Error::InvalidParameter(
                "cylinder radius and height must be positive".into(),
            ));
        }
        let tol = 1e-9;
        if omega.grades(tol) != vec![2] || (omega.norm() - 1.0).abs() > tol {
            return Err(Error::InvalidParameter("ω must be a unit bivector".into()));
        }
        if i3.grades(tol) != vec![3] || (i3.norm() - 1.0).abs() > tol {
            return Err(Error::InvalidParameter(
                "I₃ must be a unit trivector".into(),
            ));
        }
        let axis = omega.geometric_product(&i3).grade_select(1);
        if (axis.norm() - 1.0).abs() > tol {
            return Err(Error::InvalidParameter(
                "ω I₃ must be a unit vector (ω must lie inside I₃)".into(),
            ));
        }
        Ok(Self {
            algebra,
            omega,
            i3,
            axis,
            radius,
            height,
        })
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn omega(&self) -> &Multivector {
        &self.omega
    }

    pub fn i3(&self) -> &Multivector {
        &self.i3
    }

    /// Unit axis vector `k = ⟨ω I₃⟩₁`; the cylinder occupies heights `[0, h]`
    /// along it.
    pub fn axis(&self) -> &Multivector {
        &self.axis
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    fn omega_blade(&self) -> Blade {
        Blade::try_new(self.omega.clone()).expect("ω is a blade")
    }

    /// Projection `p_ω(x)` onto the cap plane.
    pub fn project_plane(&self, x: &Multivector) -> Multivector {
        project(&self.omega_blade(), x).expect("ω is invertible")
    }

    /// Rejection `r_ω(x)`, the axial part of `x`.
    pub fn reject_plane(&self, x: &Multivector) -> Multivector {
        reject(&self.omega_blade(), x).expect("ω is invertible")
    }

    /// Height `r_ω(x) ⌊ (ω I₃)` of a point above the cap plane.
    pub fn height_of(&self, x: &Multivector) -> f64 {
        self.reject_plane(x).scalar_product(&self.axis)
    }

    /// `‖ω ⌊ x‖ = ‖p_ω(x)‖`, the radial distance from the axis.
    pub fn radial_norm(&self, x: &Multivector) -> f64 {
        self.omega.left_contraction(x).norm()
    }

    /// Orthonormal `u₁, u₂` spanning the cap plane with `u₁ ∧ u₂ = ω`.
    pub fn plane_basis(&self) -> (Multivector, Multivector) {
        let alg = self.algebra;
        let blade = self.omega_blade();
        let mut u1 = alg.zero();
        for i in 0..alg.dim() {
            let p = project(&blade, &alg.basis_vector(i)).expect("projection");
            if p.norm() > 0.5 {
                u1 = &p * (1.0 / p.norm());
                break;
            }
        }
        assert!(u1.norm() > 0.0, "found no basis vector with in-plane part");
        let u2 = u1.right_contraction(&self.omega);
        (u1, u2)
    }

    /// The side surface `{‖p_ω(x)‖ = r}` with its tangent bivector
    /// `(x ⌋ ω)^ ∧ k` and radial retraction at fixed height.
    pub fn side_manifold(&self) -> ImplicitManifold {
        let frame = self.clone();
        let tangent_frame = self.clone();
        let r = self.radius;
        ImplicitManifold::new(self.algebra, 2, move |x: &Multivector| {
            let circ = x.right_contraction(&tangent_frame.omega);
            let circ = &circ * (1.0 / circ.norm());
            Blade::try_new(circ.outer_product(&tangent_frame.axis))
                .expect("side tangent should be a bivector")
        })
        .with_constraint(move |x: &Multivector| frame.radial_norm(x) - r)
        .with_domain(|x: &Multivector| x.norm() > 1e-12)
        .with_retraction({
            let frame = self.clone();
            move |x: &Multivector| {
                let p = frame.project_plane(x);
                &(&p * (frame.radius / p.norm())) + &frame.reject_plane(x)
            }
        })
    }

    /// A cap plane at the given height, tangent `ω`, with the flattening
    /// retraction `x ↦ p_ω(x) + z k`.
    pub fn cap_manifold(&self, z: f64) -> ImplicitManifold {
        let frame = self.clone();
        let omega = self.omega.clone();
        let retraction_frame = self.clone();
        ImplicitManifold::new(self.algebra, 2, move |_x: &Multivector| {
            Blade::try_new(omega.clone()).expect("ω is a blade")
        })
        .with_constraint(move |x: &Multivector| frame.height_of(x) - z)
        .with_retraction(move |x: &Multivector| {
            &retraction_frame.project_plane(x) + &(retraction_frame.axis() * z)
        })
    }
}

/// Cylinder-side antiderivative: `∂_side (r_ω(x) x) = x`.
pub fn side_entry(frame: &CylinderFrame) -> AntiderivativeEntry {
    let alg = frame.algebra();
    let f_frame = frame.clone();
    let antiderivative =
        VectorField::new(alg, move |x| f_frame.reject_plane(x).geometric_product(x));
    let s_frame = frame.clone();
    let sampler = move |rng: &mut crate::sample::SampleRng| {
        let (u1, _) = s_frame.plane_basis();
        let angle = rng.random_range(0.0..TAU);
        let z = rng.random_range(0.05 * s_frame.height()..0.95 * s_frame.height());
        let radial = rotate_in_plane(&u1, s_frame.omega(), angle);
        &(&radial * s_frame.radius()) + &(s_frame.axis() * z)
    };
    AntiderivativeEntry::new(
        "side",
        "F(x) = r_ω(x) x",
        format!(
            "cylinder side, radius {} height {}",
            frame.radius(),
            frame.height()
        ),
        frame.side_manifold(),
        VectorField::position(alg),
        antiderivative,
        None,
        sampler,
    )
}

/// Cylinder-cap antiderivative: `∂_ω (½ p_ω(x)² + ½ p_ω(x) r_ω(x)) = x`.
/// `top` selects the cap at height `h`; otherwise the cap at height `0`.
pub fn cap_entry(frame: &CylinderFrame, top: bool) -> AntiderivativeEntry {
    let alg = frame.algebra();
    let z = if top { frame.height() } else { 0.0 };
    let f_frame = frame.clone();
    let antiderivative = VectorField::new(alg, move |x| {
        let p = f_frame.project_plane(x);
        let q = f_frame.reject_plane(x);
        let scalar = alg.scalar(0.5 * p.scalar_product(&p));
        &scalar + &(&p.geometric_product(&q) * 0.5)
    });
    let s_frame = frame.clone();
    let sampler = move |rng: &mut crate::sample::SampleRng| {
        let (u1, _) = s_frame.plane_basis();
        let angle = rng.random_range(0.0..TAU);
        let rho = rng.random_range(0.1 * s_frame.radius()..0.95 * s_frame.radius());
        let radial = rotate_in_plane(&u1, s_frame.omega(), angle);
        &(&radial * rho) + &(s_frame.axis() * z)
    };
    AntiderivativeEntry::new(
        if top { "cap-top" } else { "cap-bottom" },
        "F(x) = p_ω(x)²/2 + p_ω(x) r_ω(x)/2",
        format!("cylinder cap at height {z}"),
        frame.cap_manifold(z),
        VectorField::position(alg),
        antiderivative,
        None,
        sampler,
    )
}

/// Default frame used by the name-based lookup: `I₃ = e123`, `ω = e2∧e1`,
/// so the axis `k = ⟨ω I₃⟩₁ = e3`.
pub fn default_cylinder_frame(radius: f64, height: f64) -> Result<CylinderFrame> {
    let alg = Algebra::new(3)?;
    let e12 = alg.basis_blade(0b011);
    let omega = -&e12;
    CylinderFrame::new(alg, omega, alg.pseudoscalar(), radius, height)
}

/// Scenario-entry lookup by name with default parameters.
pub fn scenario_entry(name: &str) -> Result<AntiderivativeEntry> {
    match name {
        "circle" => {
            let alg = Algebra::new(2)?;
            circle_entry(
                alg,
                1.0,
                alg.basis_vector(0),
                alg.basis_blade(0b11),
                Branch::nonpositive(),
            )
        }
        "side" => Ok(side_entry(&default_cylinder_frame(1.0, 2.0)?)),
        "cap-top" => Ok(cap_entry(&default_cylinder_frame(1.0, 2.0)?, true)),
        "cap-bottom" => Ok(cap_entry(&default_cylinder_frame(1.0, 2.0)?, false)),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}
