//! Coordinate-free integration on vector manifolds via geometric calculus.
//!
//! The crate computes directed integrals `∫_M dᵐx f(x)` without introducing
//! coordinates on `M`: it applies the fundamental theorem of geometric
//! calculus repeatedly down a chain of manifolds, cutting small incisions to
//! create boundaries (and to dodge branch cuts of the antiderivatives), until
//! only a signed sum of antiderivative values at finitely many points
//! remains. A brute-force directed-quadrature oracle verifies every step
//! numerically.
//!
//! The pieces:
//!
//! - [`algebra`] — dense Clifford algebra over Euclidean `ℝ^d` (2 ≤ d ≤ 8):
//!   products, contractions, involutions, spinor exp/log with branch control.
//! - [`calculus`] — tangent-space projection, the projected vector derivative
//!   by central differences, differentials and outermorphisms.
//! - [`quadrature`] — midpoint-rule directed integration over parameterized
//!   patches, boundary-face construction with the orientation rule, and a
//!   numeric check of the fundamental theorem.
//! - [`antiderivative`] — the closed-form antiderivative table for flat
//!   `ℝ^d` plus the scenario antiderivatives, each self-checked against the
//!   projected derivative.
//! - [`boundary`] — the integration chains themselves: the disk-area and
//!   cylinder-volume scenarios, the incision error ledger, branch-cut
//!   verification, and the circle-to-line change of variables.
//! - [`suites`] — seeded verification suites shared by the CLI and tests.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, e.g. `cargo run --example disk_area`.

pub mod algebra;
pub mod antiderivative;
pub mod boundary;
pub mod calculus;
pub mod error;
pub mod quadrature;
pub mod report;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
