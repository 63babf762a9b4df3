//! Tour of the dense Clifford-algebra kernel: products, contractions,
//! involutions, and the spinor exp/log with explicit branch control.
//!
//! Run with `cargo run --example algebra_tour`.

use gcint::algebra::{exp_bivector, log_spinor, Algebra, Blade, Branch};
use std::f64::consts::{FRAC_PI_2, TAU};

fn main() -> gcint::Result<()> {
    let alg = Algebra::new(3)?;
    let e1 = alg.basis_vector(0);
    let e2 = alg.basis_vector(1);
    let e3 = alg.basis_vector(2);

    println!("== products ==");
    let a = &(&e1 * 2.0) + &e2;
    let b = &e2 + &(&e3 * 3.0);
    println!("a            = {a}");
    println!("b            = {b}");
    println!("a b          = {}", &a * &b);
    println!("a ∧ b        = {}", a.outer_product(&b));
    println!("a ∗ b        = {}", a.scalar_product(&b));

    println!("\n== contractions (left lowers the left operand) ==");
    let e12 = e1.outer_product(&e2);
    println!("(e1∧e2) ⌊ e2 = {}", e12.left_contraction(&e2));
    println!("e2 ⌋ (e1∧e2) = {}", e2.right_contraction(&e12));
    println!("(e1∧e2) ⌊ e3 = {}", e12.left_contraction(&e3));

    println!("\n== involutions, dual, inverse ==");
    println!("reverse(e1∧e2)  = {}", e12.reverse());
    println!("dual(e1)        = {}", e1.dual());
    let v = alg.vector(&[3.0, 4.0, 0.0]);
    println!("‖3e1+4e2‖       = {}", v.norm());
    println!("(3e1+4e2)⁻¹     = {}", v.inverse()?);

    println!("\n== blades ==");
    let blade = Blade::from_vectors(&[a.clone(), b.clone()])?;
    println!(
        "a∧b is a simple {}-blade of norm {:.4}",
        blade.grade(),
        blade.norm()
    );

    println!("\n== spinor exponential and logarithm ==");
    let i2 = e1.outer_product(&e2);
    let quarter = exp_bivector(&(&i2 * FRAC_PI_2))?;
    println!("exp(π/2 e12)           = {quarter}");
    let log_default = log_spinor(&quarter, &i2, Branch::nonpositive())?;
    println!("log on branch (-2π, 0] = {log_default}");
    let log_centered = log_spinor(&quarter, &i2, Branch::new(-std::f64::consts::PI))?;
    println!("log on branch (-π, π]  = {log_centered}");
    println!(
        "the two differ by 2π e12: {}",
        (&(&log_centered - &log_default) - &(&i2 * TAU)).norm() < 1e-12
    );
    Ok(())
}
