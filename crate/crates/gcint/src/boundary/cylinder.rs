//! The cylinder-volume scenario: `∫ d³x = πr²h I₃` in three applications of
//! the fundamental theorem.
//!
//! The sharp edges are rounded off by a chamfer of radius `ε` (its volume and
//! the area of its fillet surface go into the incision ledger; no chamfer
//! chart is ever built). What remains of the surface integral are the side
//! wall and the two caps, whose boundaries are four circles. Each circle is
//! then cut like the disk's boundary and evaluated at two signed points,
//! using antiderivatives assembled from the circle primitives
//! `∂_C (x A) = A` and `∂_C H = x` with `H(x) = (x - c₀)c₀ - ρ²θ(x)Ω`.

use super::{
    ChainLevel, ChainPiece, CutProbe, Incision, IntegrationChain, RunChainOptions, SweepOutcome,
    TerminalPoint,
};
use crate::algebra::{log_spinor, Algebra, Blade, Branch, Multivector};
use crate::antiderivative::{
    cap_entry, const_entry, side_entry, AntiderivativeEntry, BranchInfo, CylinderFrame,
};
use crate::calculus::{ImplicitManifold, VectorField};
use crate::error::{Error, Result};
use crate::quadrature::{ManifoldPatch, QuadratureOptions};
use crate::sample::{rng_from_seed, SampleRng};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

#[derive(Clone)]
pub struct CylinderParams {
    pub radius: f64,
    pub height: f64,
    /// Unit bivector of the cap plane.
    pub omega: Multivector,
    /// Unit pseudoscalar orienting the volume measure.
    pub i3: Multivector,
    /// Chamfer radius `ε`, swept to zero.
    pub chamfer: f64,
    /// Angular half-width of the terminal circle cuts (fixed, tiny).
    pub circle_cut: f64,
}

impl CylinderParams {
    /// Standard frame: `I₃ = e123`, `ω = e2∧e1`, so the axis is `+e₃`.
    pub fn standard(radius: f64, height: f64, chamfer: f64) -> Result<Self> {
        let alg = Algebra::new(3)?;
        Ok(Self {
            radius,
            height,
            omega: -&alg.basis_blade(0b011),
            i3: alg.pseudoscalar(),
            chamfer,
            circle_cut: 1e-8,
        })
    }

    pub fn frame(&self) -> Result<CylinderFrame> {
        CylinderFrame::new(
            self.omega.algebra(),
            self.omega.clone(),
            self.i3.clone(),
            self.radius,
            self.height,
        )
    }

    fn validate(&self) -> Result<()> {
        if !(self.chamfer > 0.0 && self.chamfer < 0.25 * self.radius.min(self.height)) {
            return Err(Error::InvalidParameter(
                "chamfer must lie in (0, min(r, h)/4)".into(),
            ));
        }
        if !(self.circle_cut > 0.0 && self.circle_cut < 0.25 * PI) {
            return Err(Error::InvalidParameter(
                "circle cut half-width must lie in (0, π/4)".into(),
            ));
        }
        Ok(())
    }
}

/// One terminal circle: center height, radius, and traversal bivector.
struct CircleGeom {
    label: &'static str,
    z: f64,
    rho: f64,
    /// Traversal-plane bivector `Ω_C`; the boundary measure direction is
    /// `t = ê Ω_C` for `ê` the outward in-plane radial unit.
    omega_c: Multivector,
}

/// Circle of radius `rho` at height `z` about the axis, with the traversal
/// tangent `t(x) = ê(x) Ω_C` and a radial retraction at fixed height.
fn circle3_manifold(frame: &CylinderFrame, geom: &CircleGeom) -> ImplicitManifold {
    let alg = frame.algebra();
    let rho = geom.rho;
    let z = geom.z;
    let omega_c = geom.omega_c.clone();
    let tangent_frame = frame.clone();
    let c_frame = frame.clone();
    let h_frame = frame.clone();
    let r_frame = frame.clone();
    ImplicitManifold::new(alg, 1, move |x: &Multivector| {
        let p = tangent_frame.project_plane(x);
        let ehat = &p * (1.0 / p.norm());
        Blade::try_new(ehat.geometric_product(&omega_c)).expect("circle tangent")
    })
    .with_constraint(move |x: &Multivector| c_frame.radial_norm(x) - rho)
    .with_constraint(move |x: &Multivector| h_frame.height_of(x) - z)
    .with_retraction(move |x: &Multivector| {
        let p = r_frame.project_plane(x);
        &(&p * (rho / p.norm())) + &(r_frame.axis() * z)
    })
}

/// Angle of the in-plane part of `x` measured from `u₁` along `Ω_C`,
/// reduced to `[0, 2π)` (cut on the `+u₁` ray).
fn circle_angle(
    frame: &CylinderFrame,
    u1: &Multivector,
    omega_c: &Multivector,
    x: &Multivector,
) -> f64 {
    let p = frame.project_plane(x);
    let ehat = &p * (1.0 / p.norm());
    let spinor = ehat.geometric_product(u1);
    let log = log_spinor(&spinor, omega_c, Branch::nonpositive()).expect("circle spinor log");
    -log.scalar_product(omega_c)
}

/// The multivalued circle primitive `H(x) = (x-c₀)c₀ - ρ²θ(x)Ω_C`, which
/// satisfies `∂_C H = x` on the circle.
fn circle_h_field(frame: &CylinderFrame, geom: &CircleGeom, u1: &Multivector) -> VectorField {
    let alg = frame.algebra();
    let c0 = frame.axis() * geom.z;
    let rho2 = geom.rho * geom.rho;
    let omega_c = geom.omega_c.clone();
    let frame = frame.clone();
    let u1 = u1.clone();
    VectorField::new(alg, move |x| {
        let theta = circle_angle(&frame, &u1, &omega_c, x);
        let radial = x - &c0;
        &radial.geometric_product(&c0) - &(&omega_c * (rho2 * theta))
    })
}

/// Rotation of `v` by `angle` in the plane of `omega_c`.
fn rotate(v: &Multivector, omega_c: &Multivector, angle: f64) -> Multivector {
    let alg = v.algebra();
    let rotor = &alg.scalar(angle.cos()) + &(omega_c * angle.sin());
    v.geometric_product(&rotor)
}

struct CirclePieceBundle {
    piece: ChainPiece,
    terminals: Vec<TerminalPoint>,
    probe: CutProbe,
    incision: Incision,
}

/// Builds one terminal circle piece: its entry (integrand = the owning
/// surface antiderivative, antiderivative = the `H`-based closed form), the
/// two signed cut points, the cut probe, and the arc incision.
fn circle_piece(
    frame: &CylinderFrame,
    geom: CircleGeom,
    integrand: VectorField,
    antiderivative: VectorField,
    piece_index: usize,
    delta: f64,
) -> Result<CirclePieceBundle> {
    let (u1, _) = frame.plane_basis();
    let c0 = frame.axis() * geom.z;
    let rho = geom.rho;
    let omega_c = geom.omega_c.clone();

    let manifold = circle3_manifold(frame, &geom);

    let cut_u1 = u1.clone();
    let cut_frame = frame.clone();
    let cut_locus = Arc::new(move |x: &Multivector| {
        let p = cut_frame.project_plane(x);
        let wedge = p.outer_product(&cut_u1).norm();
        p.scalar_product(&cut_u1) > 0.0 && wedge <= 1e-9 * p.norm()
    });
    let s_u1 = u1.clone();
    let s_c0 = c0.clone();
    let s_omega = omega_c.clone();
    let sampler = move |rng: &mut SampleRng| {
        let a = rng.random_range(1e-3..TAU - 1e-3);
        &s_c0 + &(&rotate(&s_u1, &s_omega, a) * rho)
    };
    let entry = AntiderivativeEntry::new(
        geom.label,
        "circle primitive combination (x·A and H forms)",
        format!("circle at height {} radius {rho}", geom.z),
        manifold,
        integrand.clone(),
        antiderivative,
        Some(BranchInfo {
            interval: Branch::nonpositive(),
            cut_locus,
            description: "ray through +u₁ in the cap plane".into(),
        }),
        sampler,
    );

    // Traversal runs with +Ω_C rotation here (t = ê Ω_C): the segment starts
    // just past the cut at angle +δ and ends at 2π-δ.
    let point_at = |a: f64| &c0 + &(&rotate(&u1, &omega_c, a) * rho);
    let tangent_at = |x: &Multivector| {
        let p = frame.project_plane(x);
        let ehat = &p * (1.0 / p.norm());
        ehat.geometric_product(&omega_c)
    };
    let start = point_at(delta);
    let end = point_at(TAU - delta);
    let terminals = vec![
        TerminalPoint {
            point: end.clone(),
            sign: 1.0,
            outward: tangent_at(&end),
            piece: piece_index,
        },
        TerminalPoint {
            point: start.clone(),
            sign: -1.0,
            outward: -&tangent_at(&start),
            piece: piece_index,
        },
    ];
    let probe = CutProbe {
        piece: piece_index,
        end_side: point_at(TAU - 1e-9),
        start_side: point_at(1e-9),
    };

    let path_c0 = c0.clone();
    let path_u1 = u1.clone();
    let path_omega = omega_c.clone();
    let path = move |t: f64| {
        &path_c0 + &(&rotate(&path_u1, &path_omega, delta + t * (TAU - 2.0 * delta)) * rho)
    };

    let region_u1 = u1.clone();
    let region_frame = frame.clone();
    let region = move |x: &Multivector| {
        let p = region_frame.project_plane(x);
        p.norm() > 0.0 && p.scalar_product(&region_u1) >= p.norm() * delta.cos()
    };
    let arc_c0 = c0.clone();
    let arc_u1 = u1.clone();
    let arc_omega = omega_c.clone();
    let mut incision = Incision {
        label: format!("{}-cut-arc", geom.label),
        level: 1,
        volume: 2.0 * delta * rho,
        region: Arc::new(region),
        sampler: Arc::new(move |rng: &mut SampleRng| {
            let a = rng.random_range(-delta..delta);
            &arc_c0 + &(&rotate(&arc_u1, &arc_omega, a) * rho)
        }),
        sup_bound: 0.0,
        sup_is_estimate: true,
    };
    let mut rng = rng_from_seed(0x0c11_c1e5);
    incision.sup_bound = super::sampled_sup(&incision, &integrand, 256, &mut rng)?;

    Ok(CirclePieceBundle {
        piece: ChainPiece {
            label: geom.label.into(),
            entry,
            path: Some(Arc::new(path)),
        },
        terminals,
        probe,
        incision,
    })
}

/// Chamfer ledger entries: the removed edge volume (level 3) and the dropped
/// fillet surface (level 2). Volumes use the outer radius, a slight
/// overestimate that keeps them valid bounds.
fn chamfer_incisions(
    frame: &CylinderFrame,
    eps: f64,
    volume_integrand: &VectorField,
    surface_integrand: &VectorField,
) -> Result<Vec<Incision>> {
    let r = frame.radius();
    let h = frame.height();
    let corner_rho = r - eps;
    let (u1, _) = frame.plane_basis();

    let in_corner = {
        let frame = frame.clone();
        move |x: &Multivector| {
            let rho = frame.radial_norm(x);
            if !(corner_rho..=r).contains(&rho) {
                return false;
            }
            let z = frame.height_of(x);
            let (zc, in_band) = if z > 0.5 * h {
                (h - eps, z >= h - eps && z <= h)
            } else {
                (eps, z >= 0.0 && z <= eps)
            };
            in_band && (rho - corner_rho).hypot(z - zc) >= eps
        }
    };

    // Rejection sampler over the two corner boxes.
    let vol_sampler = {
        let frame = frame.clone();
        let u1 = u1.clone();
        let in_corner = in_corner.clone();
        move |rng: &mut SampleRng| loop {
            let top = rng.random_range(0.0..1.0) < 0.5;
            let rho = rng.random_range(corner_rho..=r);
            let z = if top {
                rng.random_range(h - eps..=h)
            } else {
                rng.random_range(0.0..=eps)
            };
            let a = rng.random_range(0.0..TAU);
            let x = &(&rotate(&u1, frame.omega(), a) * rho) + &(frame.axis() * z);
            if in_corner(&x) {
                return x;
            }
        }
    };
    let mut chamfer_volume = Incision {
        label: "chamfer-volume".into(),
        level: 3,
        volume: 2.0 * TAU * r * eps * eps * (1.0 - 0.25 * PI),
        region: Arc::new(in_corner),
        sampler: Arc::new(vol_sampler),
        sup_bound: 0.0,
        sup_is_estimate: true,
    };
    let mut rng = rng_from_seed(0x00ca_fe01);
    chamfer_volume.sup_bound =
        super::sampled_sup(&chamfer_volume, volume_integrand, 256, &mut rng)?;

    // Fillet surface points: quarter-circle of radius ε around each edge.
    let surf_sampler = {
        let frame = frame.clone();
        let u1 = u1.clone();
        move |rng: &mut SampleRng| {
            let top = rng.random_range(0.0..1.0) < 0.5;
            let a = rng.random_range(0.0..FRAC_PI_2);
            let (rho, z) = if top {
                (corner_rho + eps * a.cos(), h - eps + eps * a.sin())
            } else {
                (corner_rho + eps * a.cos(), eps - eps * a.sin())
            };
            let b = rng.random_range(0.0..TAU);
            &(&rotate(&u1, frame.omega(), b) * rho) + &(frame.axis() * z)
        }
    };
    let surf_region = {
        let frame = frame.clone();
        move |x: &Multivector| {
            let rho = frame.radial_norm(x);
            let z = frame.height_of(x);
            let zc = if z > 0.5 * h { h - eps } else { eps };
            ((rho - corner_rho).hypot(z - zc) - eps).abs() <= 1e-9 * eps.max(1.0)
        }
    };
    let mut fillet_surface = Incision {
        label: "chamfer-surface".into(),
        level: 2,
        volume: 2.0 * TAU * r * (FRAC_PI_2 * eps),
        region: Arc::new(surf_region),
        sampler: Arc::new(surf_sampler),
        sup_bound: 0.0,
        sup_is_estimate: true,
    };
    fillet_surface.sup_bound =
        super::sampled_sup(&fillet_surface, surface_integrand, 256, &mut rng)?;

    Ok(vec![chamfer_volume, fillet_surface])
}

/// Builds the three-level cylinder chain at chamfer radius `ε`.
pub fn cylinder_scenario(params: &CylinderParams) -> Result<IntegrationChain> {
    params.validate()?;
    let frame = params.frame()?;
    let alg = frame.algebra();
    let eps = params.chamfer;
    let delta = params.circle_cut;
    let r = frame.radius();
    let h = frame.height();
    let k = frame.axis().clone();
    // Rotation plane for traversals: W = I₃ k; the side-top and cap-bottom
    // circles run along +W, the other two along -W.
    let w = frame.i3().geometric_product(&k);

    let volume_entry = const_entry(alg); // f = 1, F₁ = x/3
    let side = side_entry(&frame).scaled(1.0 / 3.0);
    let cap_top = cap_entry(&frame, true).scaled(1.0 / 3.0);
    let cap_bottom = cap_entry(&frame, false).scaled(1.0 / 3.0);

    let (u1, _) = frame.plane_basis();
    let circles = [
        (
            CircleGeom {
                label: "side-top-circle",
                z: h - eps,
                rho: r,
                omega_c: w.clone(),
            },
            side.antiderivative.clone(),
        ),
        (
            CircleGeom {
                label: "side-bottom-circle",
                z: eps,
                rho: r,
                omega_c: -&w,
            },
            side.antiderivative.clone(),
        ),
        (
            CircleGeom {
                label: "cap-top-circle",
                z: h,
                rho: r - eps,
                omega_c: -&w,
            },
            cap_top.antiderivative.clone(),
        ),
        (
            CircleGeom {
                label: "cap-bottom-circle",
                z: 0.0,
                rho: r - eps,
                omega_c: w.clone(),
            },
            cap_bottom.antiderivative.clone(),
        ),
    ];

    let mut circle_pieces = Vec::new();
    let mut terminals = Vec::new();
    let mut probes = Vec::new();
    let mut incisions = chamfer_incisions(
        &frame,
        eps,
        &VectorField::constant(alg.one()),
        &volume_entry.antiderivative,
    )?;

    for (index, (geom, integrand)) in circles.into_iter().enumerate() {
        let g = build_circle_antiderivative(&frame, &geom, &u1);
        let bundle = circle_piece(&frame, geom, integrand, g, index, delta)?;
        circle_pieces.push(bundle.piece);
        terminals.extend(bundle.terminals);
        probes.push(bundle.probe);
        incisions.push(bundle.incision);
    }

    Ok(IntegrationChain {
        label: "cylinder".into(),
        algebra: alg,
        levels: vec![
            ChainLevel {
                dim: 3,
                pieces: vec![ChainPiece {
                    label: "cylinder".into(),
                    entry: volume_entry,
                    path: None,
                }],
            },
            ChainLevel {
                dim: 2,
                pieces: vec![
                    ChainPiece {
                        label: "side".into(),
                        entry: side,
                        path: None,
                    },
                    ChainPiece {
                        label: "cap-top".into(),
                        entry: cap_top,
                        path: None,
                    },
                    ChainPiece {
                        label: "cap-bottom".into(),
                        entry: cap_bottom,
                        path: None,
                    },
                ],
            },
            ChainLevel {
                dim: 1,
                pieces: circle_pieces,
            },
        ],
        incisions,
        terminals,
        cut_probes: probes,
    })
}

/// Closed-form antiderivative on each terminal circle, assembled from the
/// primitives: constants integrate to `x·A`, `x·A`-shaped integrands to
/// `H(x)·A`, and `k x`-shaped ones to `-k H(x)`.
fn build_circle_antiderivative(
    frame: &CylinderFrame,
    geom: &CircleGeom,
    u1: &Multivector,
) -> VectorField {
    let alg = frame.algebra();
    let k = frame.axis().clone();
    let h_field = circle_h_field(frame, geom, u1);
    let z = geom.z;
    let rho = geom.rho;
    match geom.label {
        "side-top-circle" | "side-bottom-circle" => {
            // Integrand (z/3)·k x on the circle ⇒ G = -(z/3) k H.
            VectorField::new(alg, move |x| {
                &k.geometric_product(&h_field.eval(x)) * (-z / 3.0)
            })
        }
        "cap-top-circle" => {
            // Integrand (ρ² - z²)/6 + (z/6) x k on the circle
            // ⇒ G = ((ρ² - z²)/6) x + (z/6) H k.
            VectorField::new(alg, move |x| {
                let c = (rho * rho - z * z) / 6.0;
                &(x * c) + &(&h_field.eval(x).geometric_product(&k) * (z / 6.0))
            })
        }
        "cap-bottom-circle" => {
            // Integrand is the constant ρ²/6 on the circle ⇒ G = (ρ²/6) x.
            VectorField::new(alg, move |x| x * (rho * rho / 6.0))
        }
        other => unreachable!("unknown circle label {other}"),
    }
}

/// Cylindrical oracle patch oriented `+I₃` by construction (the chart
/// rotates along `W = I₃ k`, so radial ∧ angular ∧ axial = `+I₃`).
pub fn cylinder_oracle_patch(params: &CylinderParams, subdivision: usize) -> Result<ManifoldPatch> {
    let frame = params.frame()?;
    let alg = frame.algebra();
    let r = frame.radius();
    let h = frame.height();
    let k = frame.axis().clone();
    let w = frame.i3().geometric_product(&k);
    let (u1, _) = frame.plane_basis();
    Ok(ManifoldPatch::new(alg, 3, move |u: &[f64]| {
        let radial = &rotate(&u1, &w, TAU * u[1]) * (r * u[0]);
        &radial + &(&k * (h * u[2]))
    })
    .with_subdivision(subdivision))
}

/// Runs the cylinder chain over a chamfer sweep, checks every point against
/// the 3-D quadrature oracle, and extrapolates to zero chamfer.
pub fn run_cylinder_sweep(
    params: &CylinderParams,
    eps: &[f64],
    chain_opts: RunChainOptions,
    oracle_subdivision: usize,
) -> Result<SweepOutcome> {
    let alg = params.omega.algebra();
    let patch = cylinder_oracle_patch(params, oracle_subdivision)?;
    let one = VectorField::constant(alg.one());
    let oracle_opts = QuadratureOptions {
        tol: 1e-9,
        max_cells: 16 * oracle_subdivision.pow(3),
    };
    let params_json = serde_json::json!({
        "radius": params.radius,
        "height": params.height,
        "chamfer_sweep": eps,
        "circle_cut": params.circle_cut,
    });
    super::run_sweep(
        "cylinder",
        params_json,
        eps,
        |e| {
            let mut p = params.clone();
            p.chamfer = e;
            cylinder_scenario(&p)
        },
        chain_opts,
        Some((&patch, &one, oracle_opts)),
    )
}
