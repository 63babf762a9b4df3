//! Numeric verification of `∫_M dᵐx ∂_M F = ∫_{∂M} d^{m-1}x F`, both sides
//! computed independently by the directed-quadrature oracle.
//!
//! Run with `cargo run --example fundamental_theorem`.

use gcint::algebra::Algebra;
use gcint::calculus::{ImplicitManifold, VectorField};
use gcint::quadrature::{verify_fundamental_theorem, ManifoldPatch, QuadratureOptions};
use std::f64::consts::TAU;

fn main() -> gcint::Result<()> {
    let opts = QuadratureOptions {
        tol: 1e-8,
        max_cells: 4_000_000,
    };

    // F = ½x² on the unit square: ∂F = x.
    let alg2 = Algebra::new(2)?;
    let square = ManifoldPatch::new(alg2, 2, move |u: &[f64]| alg2.vector(&[u[0], u[1]]))
        .with_subdivision(64);
    let half_sq = VectorField::new(alg2, |x| x.algebra().scalar(0.5 * x.scalar_product(x)));
    let flat2 = ImplicitManifold::flat(alg2);
    let check = verify_fundamental_theorem(&square, &half_sq, &flat2, opts)?;
    println!("unit square, F = x²/2:");
    println!("  interior ∫ d²x ∂F = {}", check.interior.value);
    println!("  boundary ∮ dx  F  = {}", check.boundary.value);
    println!("  residual          = {:.3e}", check.residual);

    // F = x on the disk: ∂F = 2, both sides are 2πr² I₂.
    let r = 1.0;
    let disk = ManifoldPatch::new(alg2, 2, move |u: &[f64]| {
        let rho = r * u[0];
        let phi = TAU * u[1];
        alg2.vector(&[rho * phi.cos(), rho * phi.sin()])
    })
    .with_subdivision(64);
    let position = VectorField::position(alg2);
    let check = verify_fundamental_theorem(&disk, &position, &flat2, opts)?;
    println!("\nunit disk, F = x:");
    println!("  interior = {}", check.interior.value);
    println!("  boundary = {}", check.boundary.value);
    println!("  residual = {:.3e}", check.residual);

    // Three dimensions: F = x²/2 on the unit cube.
    let alg3 = Algebra::new(3)?;
    let cube = ManifoldPatch::new(alg3, 3, move |u: &[f64]| alg3.vector(&[u[0], u[1], u[2]]))
        .with_subdivision(32);
    let half_sq3 = VectorField::new(alg3, |x| x.algebra().scalar(0.5 * x.scalar_product(x)));
    let flat3 = ImplicitManifold::flat(alg3);
    let check = verify_fundamental_theorem(&cube, &half_sq3, &flat3, opts)?;
    println!("\nunit cube, F = x²/2:");
    println!("  interior = {}", check.interior.value);
    println!("  boundary = {}", check.boundary.value);
    println!("  residual = {:.3e}", check.residual);
    Ok(())
}
