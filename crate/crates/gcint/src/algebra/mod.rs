//! Dense Clifford-algebra arithmetic over Euclidean `ℝ^d`, `2 ≤ d ≤ 8`.
//!
//! Multivectors are stored as one `f64` coefficient per basis blade, indexed
//! by a bitset: bit `i` set means generator `e_{i+1}` is a factor of the
//! blade. Blades are kept in ascending-bitset order, and every product is
//! reduced to the ascending generator order by counting transpositions.
//!
//! The contraction conventions follow the usage sites that fix them:
//! `a ⌊ b` lowers the grade of the *left* operand (`bivector ⌊ vector` is a
//! vector), and `a ⌋ b` lowers the grade of the *right* operand.

mod exp_log;

pub use exp_log::{exp_bivector, log_spinor, Branch};

use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Descriptor of the generating space: a Euclidean `ℝ^d` with `2 ≤ d ≤ 8`.
///
/// All generators square to `+1`; mixed or degenerate signatures are out of
/// scope, which keeps `A Ã` a nonnegative scalar for blades and versors and
/// makes the norm positive definite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Algebra {
    dim: u8,
}

impl Algebra {
    pub const MIN_DIM: usize = 2;
    pub const MAX_DIM: usize = 8;

    pub fn new(dim: usize) -> Result<Self> {
        if !(Self::MIN_DIM..=Self::MAX_DIM).contains(&dim) {
            return Err(Error::DimensionOutOfRange(dim));
        }
        Ok(Self { dim: dim as u8 })
    }

    /// Dimension of the generating vector space.
    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Number of basis blades, `2^dim`.
    pub fn blade_count(&self) -> usize {
        1 << self.dim
    }

    pub fn zero(&self) -> Multivector {
        Multivector {
            algebra: *self,
            coeffs: vec![0.0; self.blade_count()],
        }
    }

    pub fn scalar(&self, value: f64) -> Multivector {
        let mut mv = self.zero();
        mv.coeffs[0] = value;
        mv
    }

    pub fn one(&self) -> Multivector {
        self.scalar(1.0)
    }

    /// Generator `e_{i+1}` (zero-indexed).
    pub fn basis_vector(&self, i: usize) -> Multivector {
        assert!(i < self.dim(), "basis vector index {i} out of range");
        self.basis_blade(1 << i)
    }

    /// Unit basis blade from its bitset index.
    pub fn basis_blade(&self, bits: usize) -> Multivector {
        assert!(bits < self.blade_count(), "blade index {bits} out of range");
        let mut mv = self.zero();
        mv.coeffs[bits] = 1.0;
        mv
    }

    /// Grade-1 element with the given components.
    pub fn vector(&self, components: &[f64]) -> Multivector {
        assert!(
            components.len() <= self.dim(),
            "too many components ({}) for dimension {}",
            components.len(),
            self.dim()
        );
        let mut mv = self.zero();
        for (i, &c) in components.iter().enumerate() {
            mv.coeffs[1 << i] = c;
        }
        mv
    }

    /// Unit pseudoscalar `e_1 e_2 … e_d`.
    pub fn pseudoscalar(&self) -> Multivector {
        self.basis_blade(self.blade_count() - 1)
    }
}

/// Sign of reducing the product of two basis blades to ascending order.
///
/// Counts the transpositions needed to move each generator of `b` past the
/// higher-indexed generators of `a`; common generators then annihilate with
/// metric `+1`.
fn reorder_sign(a: usize, b: usize) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn grade_of(bits: usize) -> usize {
    bits.count_ones() as usize
}

/// Sign of the reverse involution on a grade-`k` blade: `(-1)^{k(k-1)/2}`.
fn reverse_sign(k: usize) -> f64 {
    if (k * k.wrapping_sub(1) / 2).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Dense multivector: one coefficient per basis blade of its [`Algebra`].
///
/// Values are immutable in spirit: every operation returns a new value, and
/// all operations are pure, so multivectors are freely shared across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector {
    algebra: Algebra,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of the basis blade with the given bitset index.
    pub fn coeff(&self, bits: usize) -> f64 {
        self.coeffs[bits]
    }

    pub fn set_coeff(&mut self, bits: usize, value: f64) {
        self.coeffs[bits] = value;
    }

    /// Grade-1 components, one per generator.
    pub fn vector_components(&self) -> Vec<f64> {
        (0..self.algebra.dim())
            .map(|i| self.coeffs[1 << i])
            .collect()
    }

    pub fn scalar_part(&self) -> f64 {
        self.coeffs[0]
    }

    #[track_caller]
    fn assert_same_algebra(&self, other: &Self) {
        assert_eq!(
            self.algebra,
            other.algebra,
            "operands live in different algebras ({} vs {})",
            self.algebra.dim(),
            other.algebra.dim()
        );
    }

    /// Geometric (Clifford) product.
    pub fn geometric_product(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let mut out = self.algebra.zero();
        for (i, &ci) in self.coeffs.iter().enumerate() {
            if ci == 0.0 {
                continue;
            }
            for (j, &cj) in other.coeffs.iter().enumerate() {
                if cj == 0.0 {
                    continue;
                }
                out.coeffs[i ^ j] += reorder_sign(i, j) * ci * cj;
            }
        }
        out
    }

    /// Left contraction `self ⌊ other`: the part of the geometric product
    /// with grade `grade(self) - grade(other)`; terms that would need a
    /// negative grade are dropped.
    pub fn left_contraction(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let mut out = self.algebra.zero();
        for (i, &ci) in self.coeffs.iter().enumerate() {
            if ci == 0.0 {
                continue;
            }
            let gi = grade_of(i);
            for (j, &cj) in other.coeffs.iter().enumerate() {
                if cj == 0.0 {
                    continue;
                }
                let gj = grade_of(j);
                if gi >= gj && grade_of(i ^ j) == gi - gj {
                    out.coeffs[i ^ j] += reorder_sign(i, j) * ci * cj;
                }
            }
        }
        out
    }

    /// Right contraction `self ⌋ other`: the part of the geometric product
    /// with grade `grade(other) - grade(self)`.
    pub fn right_contraction(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let mut out = self.algebra.zero();
        for (i, &ci) in self.coeffs.iter().enumerate() {
            if ci == 0.0 {
                continue;
            }
            let gi = grade_of(i);
            for (j, &cj) in other.coeffs.iter().enumerate() {
                if cj == 0.0 {
                    continue;
                }
                let gj = grade_of(j);
                if gj >= gi && grade_of(i ^ j) == gj - gi {
                    out.coeffs[i ^ j] += reorder_sign(i, j) * ci * cj;
                }
            }
        }
        out
    }

    /// Outer (wedge) product: the grade-raising part of the geometric product.
    pub fn outer_product(&self, other: &Self) -> Self {
        self.assert_same_algebra(other);
        let mut out = self.algebra.zero();
        for (i, &ci) in self.coeffs.iter().enumerate() {
            if ci == 0.0 {
                continue;
            }
            for (j, &cj) in other.coeffs.iter().enumerate() {
                if cj == 0.0 {
                    continue;
                }
                if i & j == 0 {
                    out.coeffs[i ^ j] += reorder_sign(i, j) * ci * cj;
                }
            }
        }
        out
    }

    /// Reverse involution `Ã`: grade-wise sign flip `(-1)^{k(k-1)/2}`.
    pub fn reverse(&self) -> Self {
        let mut out = self.clone();
        for (bits, c) in out.coeffs.iter_mut().enumerate() {
            *c *= reverse_sign(grade_of(bits));
        }
        out
    }

    /// Grade projection `⟨A⟩_k`.
    pub fn grade_select(&self, k: usize) -> Self {
        let mut out = self.algebra.zero();
        for (bits, &c) in self.coeffs.iter().enumerate() {
            if grade_of(bits) == k {
                out.coeffs[bits] = c;
            }
        }
        out
    }

    /// Grades with a coefficient of magnitude above `tol`.
    pub fn grades(&self, tol: f64) -> Vec<usize> {
        let mut present = vec![false; self.algebra.dim() + 1];
        for (bits, &c) in self.coeffs.iter().enumerate() {
            if c.abs() > tol {
                present[grade_of(bits)] = true;
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k))
            .collect()
    }

    /// Scalar product `A ∗ B = ⟨A B̃⟩₀`.
    ///
    /// In a Euclidean metric this collapses to the coefficient dot product,
    /// since each basis blade satisfies `e_I ẽ_I = 1`.
    pub fn scalar_product(&self, other: &Self) -> f64 {
        self.assert_same_algebra(other);
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    /// Norm `‖A‖ = sqrt(A ∗ A)`; zero iff every coefficient is zero.
    pub fn norm(&self) -> f64 {
        self.scalar_product(self).sqrt()
    }

    /// Dual: right multiplication by the unit pseudoscalar.
    pub fn dual(&self) -> Self {
        self.geometric_product(&self.algebra.pseudoscalar())
    }

    /// Inverse `Ã / (A Ã)`, defined when `A Ã` is a nonzero scalar.
    ///
    /// The non-scalar residual of `A Ã` must stay below `1e-10 · ‖A‖²`;
    /// versors and invertible blades qualify, generic multivectors do not.
    pub fn inverse(&self) -> Result<Self> {
        let rev = self.reverse();
        let p = self.geometric_product(&rev);
        let s = p.scalar_part();
        if s <= 0.0 {
            return Err(Error::NotInvertible("zero norm".into()));
        }
        let residual = (&p - &self.algebra.scalar(s)).norm();
        if residual > 1e-10 * s {
            return Err(Error::NotInvertible(format!(
                "A Ã is not scalar (residual {residual:.3e} vs norm² {s:.3e})"
            )));
        }
        Ok(&rev * (1.0 / s))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.assert_same_algebra(rhs);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.assert_same_algebra(rhs);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        self * -1.0
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: f64) -> Multivector {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= rhs;
        }
        out
    }
}

/// `&a * &b` is the geometric product.
impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.geometric_product(rhs)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (bits, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c < 0.0 { "-" } else { "+" })?;
            } else if c < 0.0 {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if bits == 0 {
                write!(f, "{mag}")?;
            } else {
                if (mag - 1.0).abs() > f64::EPSILON {
                    write!(f, "{mag} ")?;
                }
                write!(f, "{}", blade_name(bits))?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Name of a basis blade, e.g. `e12` for bitset `0b11`.
pub fn blade_name(bits: usize) -> String {
    if bits == 0 {
        return "1".to_string();
    }
    let mut name = String::from("e");
    for i in 0..8 {
        if bits & (1 << i) != 0 {
            name.push(char::from_digit(i as u32 + 1, 10).unwrap());
        }
    }
    name
}

/// A simple `k`-vector: a multivector of a single grade that factors as an
/// outer product of vectors. Stores the multivector plus its asserted grade.
#[derive(Debug, Clone)]
pub struct Blade {
    mv: Multivector,
    grade: usize,
}

impl Blade {
    /// Tolerance used by the numeric simplicity check.
    pub const SIMPLICITY_TOL: f64 = 1e-9;

    /// Validates that `mv` has exactly one grade and that `B B̃` is a
    /// nonnegative scalar (within tolerance), then wraps it.
    pub fn try_new(mv: Multivector) -> Result<Self> {
        let total = mv.norm();
        if total == 0.0 {
            return Err(Error::NotABlade("zero multivector".into()));
        }
        let grades = mv.grades(Self::SIMPLICITY_TOL * total);
        if grades.len() != 1 {
            return Err(Error::NotABlade(format!("mixed grades {grades:?}")));
        }
        let grade = grades[0];
        let p = mv.geometric_product(&mv.reverse());
        let s = p.scalar_part();
        let residual = (&p - &mv.algebra().scalar(s)).norm();
        if s < 0.0 || residual > Self::SIMPLICITY_TOL * total * total {
            return Err(Error::NotABlade(format!(
                "B B̃ is not a nonnegative scalar (residual {residual:.3e})"
            )));
        }
        Ok(Self { mv, grade })
    }

    /// Wedge of vectors, e.g. `Blade::from_vectors(&[e1, e2])` is `e1∧e2`.
    pub fn from_vectors(vectors: &[Multivector]) -> Result<Self> {
        assert!(!vectors.is_empty());
        let mut mv = vectors[0].clone();
        for v in &vectors[1..] {
            mv = mv.outer_product(v);
        }
        Self::try_new(mv)
    }

    pub fn mv(&self) -> &Multivector {
        &self.mv
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn algebra(&self) -> Algebra {
        self.mv.algebra()
    }

    pub fn norm(&self) -> f64 {
        self.mv.norm()
    }

    /// Same blade scaled to unit norm.
    pub fn unit(&self) -> Self {
        Self {
            mv: &self.mv * (1.0 / self.mv.norm()),
            grade: self.grade,
        }
    }
}
