//! Richardson extrapolation of incision sweeps and convergence-order fits.

use crate::algebra::Multivector;

/// Polynomial extrapolation to `eps = 0` via Neville's tableau. Assumes the
/// values behave like `v(ε) = L + c₁ε + c₂ε² + …`, which is what the
/// incision ledger produces (errors additive and linear in each incision
/// size, with smooth higher-order geometry corrections).
pub fn extrapolate_scalar(eps: &[f64], values: &[f64]) -> f64 {
    assert_eq!(eps.len(), values.len());
    assert!(!eps.is_empty());
    let n = eps.len();
    let mut tableau = values.to_vec();
    for j in 1..n {
        for i in 0..n - j {
            // Neville step for P_{i..i+j} evaluated at 0.
            tableau[i] =
                (eps[i + j] * tableau[i] - eps[i] * tableau[i + 1]) / (eps[i + j] - eps[i]);
        }
    }
    tableau[0]
}

/// Coefficient-wise extrapolation of multivector results.
pub fn extrapolate(eps: &[f64], values: &[Multivector]) -> Multivector {
    assert!(!values.is_empty());
    let alg = values[0].algebra();
    let mut out = alg.zero();
    for bits in 0..alg.blade_count() {
        let coeffs: Vec<f64> = values.iter().map(|v| v.coeff(bits)).collect();
        out.set_coeff(bits, extrapolate_scalar(eps, &coeffs));
    }
    out
}

/// Least-squares slope of `ln(error)` against `ln(eps)`: the observed
/// convergence order. Points with error below `floor` are dropped (already
/// at roundoff); returns `None` if fewer than two usable points remain.
pub fn fit_order(eps: &[f64], errors: &[f64], floor: f64) -> Option<f64> {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(errors.iter())
        .filter(|(_, &e)| e > floor)
        .map(|(&x, &e)| (x.ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}
