//! Brute-force directed integration over parameterized patches.
//!
//! This is the independent numerical oracle: a midpoint-rule sum of
//! `[∂₁y ∧ … ∧ ∂_m y](u) Δu · f(y(u))` over a subdivided parameter box, the
//! pseudoscalar measure multiplying the integrand from the left. Refinement
//! doubles the subdivision until successive values agree, and the reduction
//! over cells is a fixed pairwise tree, so results are bit-identical no
//! matter how the work is scheduled across threads.

use crate::algebra::{Algebra, Multivector};
use crate::calculus::{vector_derivative, ImplicitManifold, VectorField};
use crate::error::{Error, Result};
use std::sync::Arc;

type ChartFn = Arc<dyn Fn(&[f64]) -> Multivector + Send + Sync>;

/// Below this measure norm a quadrature node is treated as degenerate and
/// contributes zero (polar seams, collapsed chart edges).
pub const DEGENERATE_MEASURE_TOL: f64 = 1e-12;

/// A smooth map from the parameter box `[0,1]^m` into `ℝ^d`, with an
/// orientation sign and an initial subdivision (cells per axis).
///
/// The chart must tolerate parameters a few finite-difference steps
/// (~1e-5) outside the box: tangents are taken by central differences,
/// including at face nodes.
///
/// `dim == 0` is the degenerate case used for interval endpoints: the "chart"
/// is a single point and the integral is `orientation · f(point)`.
#[derive(Clone)]
pub struct ManifoldPatch {
    ambient: Algebra,
    dim: usize,
    chart: ChartFn,
    orientation: f64,
    subdivision: usize,
}

impl ManifoldPatch {
    pub fn new<C>(ambient: Algebra, dim: usize, chart: C) -> Self
    where
        C: Fn(&[f64]) -> Multivector + Send + Sync + 'static,
    {
        assert!(dim <= ambient.dim());
        Self {
            ambient,
            dim,
            chart: Arc::new(chart),
            orientation: 1.0,
            subdivision: 8,
        }
    }

    pub fn with_orientation(mut self, orientation: f64) -> Self {
        assert!(orientation == 1.0 || orientation == -1.0);
        self.orientation = orientation;
        self
    }

    pub fn with_subdivision(mut self, subdivision: usize) -> Self {
        assert!(subdivision >= 1);
        self.subdivision = subdivision;
        self
    }

    pub fn ambient(&self) -> Algebra {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    pub fn subdivision(&self) -> usize {
        self.subdivision
    }

    pub fn chart_point(&self, u: &[f64]) -> Multivector {
        (self.chart)(u)
    }

    /// Chart partials at `u` by central differences, one tangent per axis.
    pub fn tangents_at(&self, u: &[f64]) -> Vec<Multivector> {
        let h = f64::EPSILON.powf(1.0 / 3.0);
        (0..self.dim)
            .map(|k| {
                let mut up = u.to_vec();
                let mut um = u.to_vec();
                up[k] += h;
                um[k] -= h;
                &(&(self.chart)(&up) - &(self.chart)(&um)) * (1.0 / (2.0 * h))
            })
            .collect()
    }

    /// Directed measure blade `∂₁y ∧ … ∧ ∂_m y` at `u`, including the
    /// orientation sign (parameter-volume factor not included).
    pub fn measure_at(&self, u: &[f64]) -> Multivector {
        let mut measure = self.ambient.one();
        for t in self.tangents_at(u) {
            measure = measure.outer_product(&t);
        }
        &measure * self.orientation
    }

    /// The `2m` faces of the parameter box as `(m-1)`-patches, oriented so
    /// the boundary measure satisfies `I_M ‖d^{m-1}x‖ = d^{m-1}x n` with `n`
    /// the outward normal. For `m == 1` the two faces are endpoint patches
    /// carrying the signs `+1` (end) and `-1` (start).
    pub fn boundary_patches(&self) -> Vec<ManifoldPatch> {
        assert!(self.dim >= 1, "0-dimensional patches have no boundary");
        let m = self.dim;
        let mut faces = Vec::with_capacity(2 * m);
        for k in 0..m {
            for side in [0.0, 1.0] {
                let chart = self.chart.clone();
                let face_chart = move |v: &[f64]| {
                    let mut u = Vec::with_capacity(m);
                    u.extend_from_slice(&v[..k]);
                    u.push(side);
                    u.extend_from_slice(&v[k..]);
                    chart(&u)
                };
                // Outward-normal-compatible sign: o·(-1)^{m-1-k} on the
                // u_k = 1 face, opposite on u_k = 0.
                let mut sigma = self.orientation
                    * if (m - 1 - k).is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    };
                if side == 0.0 {
                    sigma = -sigma;
                }
                faces.push(
                    ManifoldPatch::new(self.ambient, m - 1, face_chart)
                        .with_orientation(sigma)
                        .with_subdivision(self.subdivision),
                );
            }
        }
        faces
    }
}

/// Outcome of a refined directed integral.
#[derive(Debug, Clone)]
pub struct DirectedIntegralResult {
    pub value: Multivector,
    /// Total cells of the final pass (summed over patches for matched sets).
    pub cells: usize,
    /// Richardson difference between the last two refinement levels.
    pub estimated_error: f64,
    /// False when the cell cap was hit before the tolerance was met.
    pub converged: bool,
}

/// Refinement controls for the oracle.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOptions {
    /// Stop when successive refinements differ by less than this.
    pub tol: f64,
    /// Hard cap on cells in a single pass; exceeded ⇒ `converged = false`.
    pub max_cells: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_cells: 4_000_000,
        }
    }
}

fn cells_for(subdivision: usize, dim: usize) -> usize {
    subdivision.pow(dim as u32)
}

/// One midpoint pass at a fixed subdivision. Degenerate-measure nodes
/// contribute zero.
pub fn integral_single_pass(
    patch: &ManifoldPatch,
    f: &VectorField,
    subdivision: usize,
) -> Multivector {
    let alg = patch.ambient();
    if patch.dim() == 0 {
        let point = patch.chart_point(&[]);
        return &f.eval(&point) * patch.orientation();
    }
    let m = patch.dim();
    let n = subdivision;
    let total = cells_for(n, m);
    let du = 1.0 / (n as f64).powi(m as i32);

    let eval_cell = |cell: usize| -> Multivector {
        let mut u = vec![0.0; m];
        let mut rest = cell;
        for uk in u.iter_mut() {
            *uk = ((rest % n) as f64 + 0.5) / n as f64;
            rest /= n;
        }
        let measure = patch.measure_at(&u);
        if measure.norm() < DEGENERATE_MEASURE_TOL {
            return alg.zero();
        }
        let point = patch.chart_point(&u);
        // Pseudoscalar measure to the left of the integrand.
        &measure.geometric_product(&f.eval(&point)) * du
    };

    pairwise_sum(alg, 0, total, &eval_cell)
}

/// Fixed pairwise reduction tree over the cell index range. The tree shape
/// depends only on the range, so parallel and serial runs agree bitwise.
fn pairwise_sum<F>(alg: Algebra, start: usize, end: usize, eval: &F) -> Multivector
where
    F: Fn(usize) -> Multivector + Sync,
{
    const LEAF: usize = 128;
    let len = end - start;
    if len == 0 {
        return alg.zero();
    }
    if len <= LEAF {
        let mut acc = eval(start);
        for i in start + 1..end {
            acc = &acc + &eval(i);
        }
        return acc;
    }
    let mid = start + len / 2;
    let (a, b) = rayon::join(
        || pairwise_sum(alg, start, mid, eval),
        || pairwise_sum(alg, mid, end, eval),
    );
    &a + &b
}

/// Directed integral of `f` over the patch, with measure on the left,
/// refined by doubling the subdivision until the requested tolerance or the
/// cell cap is reached.
pub fn directed_integral(
    patch: &ManifoldPatch,
    f: &VectorField,
    opts: QuadratureOptions,
) -> Result<DirectedIntegralResult> {
    integrate_matched(std::slice::from_ref(patch), f, opts)
}

/// Integrates a family of patches at matched (lockstep) refinement and
/// returns the summed value. Used for boundary faces, whose discretization
/// errors cancel between opposite faces only at equal subdivisions.
pub fn integrate_matched(
    patches: &[ManifoldPatch],
    f: &VectorField,
    opts: QuadratureOptions,
) -> Result<DirectedIntegralResult> {
    if patches.is_empty() {
        return Err(Error::InvalidParameter("no patches to integrate".into()));
    }
    let alg = patches[0].ambient();
    if patches.iter().all(|p| p.dim() == 0) {
        let mut value = alg.zero();
        for p in patches {
            value = &value + &integral_single_pass(p, f, 1);
        }
        return Ok(DirectedIntegralResult {
            value,
            cells: patches.len(),
            estimated_error: 0.0,
            converged: true,
        });
    }

    let mut n = patches.iter().map(|p| p.subdivision()).max().unwrap();
    let pass = |n: usize| -> Multivector {
        let mut value = alg.zero();
        for p in patches {
            value = &value + &integral_single_pass(p, f, n);
        }
        value
    };

    let mut prev = pass(n);
    let mut cells: usize = patches.iter().map(|p| cells_for(n, p.dim())).sum();
    loop {
        let next_n = n * 2;
        let next_cells: usize = patches.iter().map(|p| cells_for(next_n, p.dim())).sum();
        if next_cells > opts.max_cells {
            return Ok(DirectedIntegralResult {
                value: prev,
                cells,
                estimated_error: f64::INFINITY,
                converged: false,
            });
        }
        let next = pass(next_n);
        let diff = (&next - &prev).norm();
        if diff < opts.tol {
            return Ok(DirectedIntegralResult {
                value: next,
                cells: next_cells,
                estimated_error: diff,
                converged: true,
            });
        }
        prev = next;
        n = next_n;
        cells = next_cells;
    }
}

/// Numeric check of `∫_M dᵐx ∂_M F = ∫_{∂M} d^{m-1}x F` on a patch.
#[derive(Debug, Clone)]
pub struct FtcCheck {
    pub interior: DirectedIntegralResult,
    pub boundary: DirectedIntegralResult,
    pub residual: f64,
}

/// Computes both sides of the fundamental theorem independently with this
/// oracle and returns the residual norm. The projected derivative of `F` is
/// taken on `manifold` (typically the flat ambient space of the patch).
pub fn verify_fundamental_theorem(
    patch: &ManifoldPatch,
    f_antiderivative: &VectorField,
    manifold: &ImplicitManifold,
    opts: QuadratureOptions,
) -> Result<FtcCheck> {
    let field = f_antiderivative.clone();
    let mviews = manifold.clone();
    let derivative = VectorField::new(patch.ambient(), move |x| {
        vector_derivative(&field, &mviews, x).expect("derivative field evaluation failed")
    });
    let interior = directed_integral(patch, &derivative, opts)?;
    let faces = patch.boundary_patches();
    let boundary = integrate_matched(&faces, f_antiderivative, opts)?;
    let residual = (&interior.value - &boundary.value).norm();
    Ok(FtcCheck {
        interior,
        boundary,
        residual,
    })
}
