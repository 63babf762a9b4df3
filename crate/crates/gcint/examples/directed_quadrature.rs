//! The brute-force oracle: directed integrals over parameterized patches,
//! boundary faces with the orientation rule, and refinement control.
//!
//! Run with `cargo run --example directed_quadrature`.

use gcint::algebra::Algebra;
use gcint::calculus::VectorField;
use gcint::quadrature::{directed_integral, integrate_matched, ManifoldPatch, QuadratureOptions};
use std::f64::consts::{PI, TAU};

fn main() -> gcint::Result<()> {
    let alg = Algebra::new(2)?;
    let opts = QuadratureOptions::default();

    // Directed area of the unit square: 1·e12.
    let square = ManifoldPatch::new(alg, 2, move |u: &[f64]| alg.vector(&[u[0], u[1]]));
    let one = VectorField::constant(alg.one());
    let res = directed_integral(&square, &one, opts)?;
    println!(
        "∫_square d²x            = {}  ({} cells)",
        res.value, res.cells
    );

    // Disk of radius 1.5 through a polar chart: the center and seam faces
    // are degenerate and contribute nothing.
    let r = 1.5;
    let disk = ManifoldPatch::new(alg, 2, move |u: &[f64]| {
        let rho = r * u[0];
        let phi = TAU * u[1];
        alg.vector(&[rho * phi.cos(), rho * phi.sin()])
    })
    .with_subdivision(64);
    let res = directed_integral(&disk, &one, opts)?;
    println!(
        "∫_disk d²x              = {}  (πr² = {:.6})",
        res.value,
        PI * r * r
    );

    // ∮ dx x over the circle: ±2πr² e12 depending on traversal. The
    // orientation compatible with a +e12 disk is the clockwise one.
    let circle = ManifoldPatch::new(alg, 1, move |u: &[f64]| {
        let phi = TAU * u[0];
        alg.vector(&[r * phi.cos(), r * phi.sin()])
    })
    .with_subdivision(128);
    let x = VectorField::position(alg);
    let ccw = directed_integral(&circle, &x, opts)?;
    let cw = directed_integral(&circle.clone().with_orientation(-1.0), &x, opts)?;
    println!("∮ dx x (counterclockwise) = {}", ccw.value);
    println!("∮ dx x (clockwise)        = {}", cw.value);

    // Boundary faces of the square: directed lengths traverse it clockwise
    // for the +e12 orientation, and the closed boundary sums to zero.
    println!("\nboundary faces of the square:");
    let faces = square.boundary_patches();
    for (i, face) in faces.iter().enumerate() {
        let len = directed_integral(face, &one, opts)?;
        println!("  face {i}: directed length = {}", len.value);
    }
    let total = integrate_matched(&faces, &one, opts)?;
    println!("  closed boundary total   = {}", total.value);

    // Refinement bookkeeping: a wavy integrand with an explicit tolerance.
    let wavy = VectorField::new(alg, |p| {
        let c = p.vector_components();
        p.algebra().scalar((7.0 * c[0]).sin() * (5.0 * c[1]).cos())
    });
    let res = directed_integral(
        &square,
        &wavy,
        QuadratureOptions {
            tol: 1e-10,
            max_cells: 1 << 22,
        },
    )?;
    println!(
        "\nwavy integrand: value = {}, cells = {}, est. error = {:.3e}, converged = {}",
        res.value, res.cells, res.estimated_error, res.converged
    );
    Ok(())
}
