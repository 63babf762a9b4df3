//! Pointwise linear maps on vectors and their outermorphism extension.
//!
//! A [`LinearMap`] is stored by its action on the ambient orthonormal basis.
//! The outermorphism extends it to all grades blade by blade:
//! `L(e_{i1} ∧ … ∧ e_{ik}) = L(e_{i1}) ∧ … ∧ L(e_{ik})`, which is exactly how
//! a change of variables pushes the pseudoscalar measure forward.

use crate::algebra::{Algebra, Multivector};
use crate::error::{Error, Result};
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct LinearMap {
    algebra: Algebra,
    matrix: DMatrix<f64>,
}

impl LinearMap {
    pub fn identity(algebra: Algebra) -> Self {
        let d = algebra.dim();
        Self {
            algebra,
            matrix: DMatrix::identity(d, d),
        }
    }

    /// Build from the images of the basis vectors (columns).
    pub fn from_images(algebra: Algebra, images: &[Multivector]) -> Self {
        let d = algebra.dim();
        assert_eq!(images.len(), d);
        let mut matrix = DMatrix::zeros(d, d);
        for (j, img) in images.iter().enumerate() {
            for (i, c) in img.vector_components().iter().enumerate() {
                matrix[(i, j)] = *c;
            }
        }
        Self { algebra, matrix }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.clone().determinant()
    }

    /// Image of the `j`-th basis vector.
    pub fn image(&self, j: usize) -> Multivector {
        let col: Vec<f64> = self.matrix.column(j).iter().copied().collect();
        self.algebra.vector(&col)
    }

    /// Apply to a grade-1 element.
    pub fn apply_vector(&self, a: &Multivector) -> Multivector {
        let d = self.algebra.dim();
        let comps = a.vector_components();
        let mut out = vec![0.0; d];
        for (j, &c) in comps.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.matrix[(i, j)] * c;
            }
        }
        self.algebra.vector(&out)
    }

    /// Outermorphism: apply grade by grade, wedging basis-vector images.
    /// Preserves grades and is multiplicative over outer products.
    pub fn apply(&self, a: &Multivector) -> Multivector {
        let mut out = self.algebra.zero();
        for bits in 0..self.algebra.blade_count() {
            let c = a.coeff(bits);
            if c == 0.0 {
                continue;
            }
            let mut image = self.algebra.one();
            for i in 0..self.algebra.dim() {
                if bits & (1 << i) != 0 {
                    image = image.outer_product(&self.image(i));
                }
            }
            out = &out + &(&image * c);
        }
        out
    }

    /// Inverse map; fails when `|det|` is below `1e-12`.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        if det.abs() < 1e-12 {
            return Err(Error::SingularMap(det.abs()));
        }
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap(det.abs()))?;
        Ok(Self {
            algebra: self.algebra,
            matrix: inv,
        })
    }
}

/// Differential of a point map at `x`: the central-difference Jacobian
/// assembled as a [`LinearMap`].
pub fn differential<F>(map: F, x: &Multivector) -> Result<LinearMap>
where
    F: Fn(&Multivector) -> Multivector,
{
    let algebra = x.algebra();
    let h = super::default_fd_step(x);
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::StepUnderflow(h));
    }
    let mut images = Vec::with_capacity(algebra.dim());
    for j in 0..algebra.dim() {
        let e = algebra.basis_vector(j);
        let yp = map(&(x + &(&e * h)));
        let ym = map(&(x - &(&e * h)));
        images.push(&(&yp - &ym) * (1.0 / (2.0 * h)));
    }
    Ok(LinearMap::from_images(algebra, &images))
}
