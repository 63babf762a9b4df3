//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them).

use gcint::algebra::{Algebra, Branch, Multivector};
use gcint::antiderivative::table_entries;
use gcint::boundary::{
    self, circle_change_of_variables, disk_scenario, run_cylinder_sweep, run_disk_sweep,
    verify_branch_cut_necessity, CylinderParams, DiskParams, Incision, RunChainOptions,
};
use gcint::calculus::VectorField;
use gcint::quadrature::{directed_integral, ManifoldPatch, QuadratureOptions};
use gcint::sample::{self, rng_from_seed};
use gcint::suites;
use rand::Rng;
use std::f64::consts::{PI, TAU};
use std::sync::Arc;
use std::time::Instant;

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_disk_area() {
    let start = Instant::now();
    let eps = [1e-1, 1e-2, 1e-3, 1e-4];
    let mut detail = String::new();
    let mut passed = true;
    for r in [0.5, 1.0, 2.0] {
        let t0 = Instant::now();
        let params = DiskParams::standard(r, 1e-2).unwrap();
        let outcome = run_disk_sweep(&params, &eps, RunChainOptions::default(), 320).unwrap();
        let elapsed = t0.elapsed().as_secs_f64();
        let coeff = outcome.extrapolated.coeff(0b11);
        let delta = (coeff - PI * r * r).abs();
        let oracle = outcome.oracle.as_ref().unwrap();
        let ok =
            delta <= 1e-8 && outcome.error_bound_ok && oracle.cells >= 100_000 && elapsed < 5.0;
        passed &= ok;
        detail.push_str(&format!(
            "r={r}: |Δ|={delta:.2e}, oracle cells={}, ledger ok={}, {elapsed:.2}s; ",
            oracle.cells, outcome.error_bound_ok
        ));
    }
    detail.push_str(&format!("total {:.2}s", start.elapsed().as_secs_f64()));
    report("1 (disk area)", passed, &detail);
}

#[test]
fn criterion_2_cylinder_volume() {
    let eps = [2.5e-2, 1e-2, 1e-3, 1e-4];
    let mut detail = String::new();
    let mut passed = true;
    for (r, h) in [(1.0, 1.0), (1.0, 2.0), (2.0, 0.5)] {
        let t0 = Instant::now();
        let params = CylinderParams::standard(r, h, 1e-2).unwrap();
        let outcome = run_cylinder_sweep(&params, &eps, RunChainOptions::default(), 32).unwrap();
        let elapsed = t0.elapsed().as_secs_f64();
        let coeff = outcome.extrapolated.coeff(0b111);
        let delta = (coeff - PI * r * r * h).abs();
        let order = outcome.convergence_order.unwrap_or(0.0);
        let ok = delta <= 1e-4 && order >= 0.9 && outcome.error_bound_ok && elapsed < 30.0;
        passed &= ok;
        detail.push_str(&format!(
            "(r,h)=({r},{h}): |Δ|={delta:.2e}, order={order:.3}, ledger ok={}, {elapsed:.2}s; ",
            outcome.error_bound_ok
        ));
    }
    report("2 (cylinder volume)", passed, &detail);
}

#[test]
fn criterion_3_table_derivative_checks() {
    let t0 = Instant::now();
    let mut rng = rng_from_seed(42);
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for dim in [2usize, 3, 4] {
        for entry in table_entries(dim).unwrap() {
            let check = gcint::antiderivative::check_entry(&entry, 100, &mut rng, 1e-6).unwrap();
            worst = worst.max(check.max_relative_residual);
            passed &= check.passed;
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    passed &= elapsed < 10.0;
    report(
        "3 (Table-1 derivative checks)",
        passed,
        &format!("5 rows x dims 2..4 x 100 points, worst residual {worst:.2e}, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_4_fundamental_theorem() {
    let t0 = Instant::now();
    let mut detail = String::new();
    let mut passed = true;
    for (field, patch, cap) in [
        ("half-x-squared", "unit-square", 512usize.pow(2) * 8),
        ("linear", "unit-square", 512usize.pow(2) * 8),
        ("half-x-squared", "unit-cube", 512usize.pow(3)),
        ("linear", "unit-cube", 512usize.pow(3)),
    ] {
        let check = suites::check_ftc(field, patch, 64, cap).unwrap();
        let ok = check.residual <= 1e-6;
        passed &= ok;
        detail.push_str(&format!("{field} on {patch}: {:.2e}; ", check.residual));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    passed &= elapsed < 60.0;
    detail.push_str(&format!("{elapsed:.2}s"));
    report("4 (fundamental theorem)", passed, &detail);
}

#[test]
fn criterion_5_incision_bound_inequality() {
    let alg = Algebra::new(2).unwrap();
    let mut rng = rng_from_seed(5005);
    let mut violations = 0usize;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..200 {
        // Random arc of the unit circle.
        let a0 = rng.random_range(0.0..TAU);
        let width = rng.random_range(0.05..2.0);
        // Random smooth multivector integrand f(x) = A + B x + (x·v) C.
        let ca = sample::random_multivector(alg, &mut rng);
        let cb = sample::random_multivector(alg, &mut rng);
        let cc = sample::random_multivector(alg, &mut rng);
        let v = sample::random_vector(alg, &mut rng);
        let f = VectorField::new(alg, move |x: &Multivector| {
            let linear = cb.geometric_product(x);
            let radial = &cc * x.scalar_product(&v);
            &(&ca + &linear) + &radial
        });

        let incision = Incision {
            label: "arc".into(),
            level: 1,
            volume: width,
            region: Arc::new(move |_: &Multivector| true),
            sampler: Arc::new(move |r: &mut sample::SampleRng| {
                let t = r.random_range(a0..a0 + width);
                alg.vector(&[t.cos(), t.sin()])
            }),
            sup_bound: 0.0,
            sup_is_estimate: true,
        };
        let bound = boundary::incision_bound(&incision, &f, 500, &mut rng).unwrap();

        let arc = ManifoldPatch::new(alg, 1, move |u: &[f64]| {
            let t = a0 + width * u[0];
            alg.vector(&[t.cos(), t.sin()])
        })
        .with_subdivision(64);
        let integral = directed_integral(&arc, &f, QuadratureOptions::default()).unwrap();
        let measured = integral.value.norm();
        if measured > bound {
            violations += 1;
        }
        max_ratio = max_ratio.max(measured / bound.max(1e-300));
    }
    report(
        "5 (incision-bound inequality)",
        violations == 0,
        &format!("200 random (arc, integrand) pairs, worst |∫|/bound = {max_ratio:.3}, {violations} violations"),
    );
}

#[test]
fn criterion_6_branch_cut_corollary() {
    let alg = Algebra::new(2).unwrap();
    let params = DiskParams::standard(1.0, 1e-3).unwrap();
    let chain = disk_scenario(&params).unwrap();

    // Jump across the cut, extrapolated over probe distances (it is linear
    // in the probe angle).
    let entry = &chain.levels[1].pieces[0].entry;
    let i2 = alg.basis_blade(0b11);
    let jump_at = |t: f64| {
        let rotate = |angle: f64| {
            let rotor = &alg.scalar(angle.cos()) + &(&i2 * angle.sin());
            alg.basis_vector(0).geometric_product(&rotor)
        };
        &entry.antiderivative.eval(&rotate(t)) - &entry.antiderivative.eval(&rotate(-t))
    };
    let probes = [1e-5, 1e-6];
    let jumps: Vec<Multivector> = probes.iter().map(|&t| jump_at(t)).collect();
    let jump = boundary::richardson::extrapolate(&probes, &jumps);
    let delta = (&jump - &(&i2 * PI)).norm();
    let jump_ok = delta <= 1e-8;

    // Consistency of the chain result with the measured jump.
    let check = verify_branch_cut_necessity(&chain, RunChainOptions::default()).unwrap();

    // No discontinuity along the kept arc: 10³ samples, adjacent jumps under
    // 10x the local Lipschitz estimate ‖f‖·Δs.
    let path = chain.levels[1].pieces[0].path.as_ref().unwrap();
    let n = 1000;
    let pts: Vec<Multivector> = (0..=n).map(|i| path(i as f64 / n as f64)).collect();
    let mut continuity_ok = true;
    let mut worst_ratio: f64 = 0.0;
    for pair in pts.windows(2) {
        let ds = (&pair[1] - &pair[0]).norm();
        let f_norm = entry
            .integrand
            .eval(&pair[0])
            .norm()
            .max(entry.integrand.eval(&pair[1]).norm())
            .max(1e-9);
        let jump =
            (&entry.antiderivative.eval(&pair[1]) - &entry.antiderivative.eval(&pair[0])).norm();
        let ratio = jump / (10.0 * f_norm * ds);
        worst_ratio = worst_ratio.max(ratio);
        continuity_ok &= ratio < 1.0;
    }

    report(
        "6 (branch-cut corollary)",
        jump_ok && check.consistent && continuity_ok,
        &format!(
            "extrapolated jump |Δ|={delta:.2e}, result/jump gap {:.2e}, worst continuity ratio {worst_ratio:.3}",
            check.gap
        ),
    );
}

#[test]
fn criterion_7_change_of_variables() {
    let alg = Algebra::new(2).unwrap();
    let x0 = alg.basis_vector(0);
    let i2 = alg.basis_blade(0b11);
    let mut worst: f64 = 0.0;
    let margin = 0.02;
    for k in 0..100 {
        let angle = margin + (TAU - 2.0 * margin) * k as f64 / 99.0;
        let x = alg.vector(&[angle.cos(), angle.sin()]);
        let check = circle_change_of_variables(&x0, &i2, &x, Branch::nonpositive()).unwrap();
        worst = worst.max(check.residual);
    }
    report(
        "7 (circle-to-line change of variables)",
        worst <= 1e-6,
        &format!("100 circle points, worst closed-form vs finite-difference residual {worst:.2e}"),
    );
}

#[test]
fn criterion_8_algebra_axioms() {
    let t0 = Instant::now();
    let mut passed = true;
    let mut worst: f64 = 0.0;
    for dim in 2..=6 {
        let rep = suites::algebra_properties(dim, 42, 1000, 1e-10).unwrap();
        passed &= rep.passed();
        worst = worst.max(rep.worst());
    }
    let elapsed = t0.elapsed().as_secs_f64();
    passed &= elapsed < 10.0;
    report(
        "8 (algebra axioms)",
        passed,
        &format!("dims 2..6, 1000 trials each, worst residual {worst:.2e}, {elapsed:.2}s"),
    );
}
