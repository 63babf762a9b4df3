//! The antiderivative table and its numeric self-checks: every entry's
//! claimed `F` is differentiated with the projected finite-difference
//! derivative and compared against its integrand at sampled points.
//!
//! Run with `cargo run --example antiderivative_table`.

use gcint::algebra::Algebra;
use gcint::antiderivative::{check_entry, scenario_entry, table_entries, table_entry};
use gcint::calculus::vector_derivative;
use gcint::sample::rng_from_seed;

fn main() -> gcint::Result<()> {
    let mut rng = rng_from_seed(42);

    println!("flat-space table rows, dims 2..4:");
    for dim in 2..=4 {
        for entry in table_entries(dim)? {
            let check = check_entry(&entry, 100, &mut rng, 1e-6)?;
            println!(
                "  d={dim} {:<8} {:<45} max residual {:.2e}  {}",
                entry.name,
                entry.formula,
                check.max_relative_residual,
                if check.passed { "ok" } else { "FAIL" }
            );
        }
    }

    println!("\nscenario entries (circle, cylinder side and caps):");
    for name in ["circle", "side", "cap-top", "cap-bottom"] {
        let entry = scenario_entry(name)?;
        let check = check_entry(&entry, 100, &mut rng, 1e-6)?;
        println!(
            "  {:<11} {:<45} max residual {:.2e}  {}",
            entry.name,
            entry.formula,
            check.max_relative_residual,
            if check.passed { "ok" } else { "FAIL" }
        );
    }

    // A single spot evaluation: the `ax` row recovers the bivector part too.
    let alg = Algebra::new(2)?;
    let entry = table_entry("ax", 2)?;
    let x = alg.vector(&[0.4, 1.1]);
    let derivative = vector_derivative(&entry.antiderivative, &entry.manifold, &x)?;
    println!("\nrow `ax` at x = {x}: ∂F = {derivative}");
    println!("            integrand a x = {}", entry.integrand.eval(&x));

    // The catalog as JSON (what `gcint verify-table --out` writes).
    let catalog: Vec<_> = table_entries(3)?
        .iter()
        .map(|e| e.catalog_record())
        .collect();
    println!(
        "\ncatalog dump:\n{}",
        serde_json::to_string_pretty(&catalog)?
    );
    Ok(())
}
