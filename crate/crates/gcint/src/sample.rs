//! Seeded random generation of algebra elements for property suites and
//! sampled sup-estimates. All sampling goes through `ChaCha8Rng` so a fixed
//! seed reproduces byte-identical runs.

use crate::algebra::{Algebra, Blade, Multivector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Multivector with coefficients uniform in `[-1, 1]`.
pub fn random_multivector(alg: Algebra, rng: &mut SampleRng) -> Multivector {
    let mut mv = alg.zero();
    for bits in 0..alg.blade_count() {
        mv.set_coeff(bits, rng.random_range(-1.0..=1.0));
    }
    mv
}

/// Grade-1 element with components uniform in `[-1, 1]`.
pub fn random_vector(alg: Algebra, rng: &mut SampleRng) -> Multivector {
    let components: Vec<f64> = (0..alg.dim())
        .map(|_| rng.random_range(-1.0..=1.0))
        .collect();
    alg.vector(&components)
}

/// Nonzero random vector, rejection-sampled away from the origin.
pub fn random_nonzero_vector(alg: Algebra, rng: &mut SampleRng) -> Multivector {
    loop {
        let v = random_vector(alg, rng);
        if v.norm() > 0.1 {
            return v;
        }
    }
}

/// Random simple `k`-blade built as an outer product of `k` random vectors.
pub fn random_blade(alg: Algebra, grade: usize, rng: &mut SampleRng) -> Blade {
    assert!(grade >= 1 && grade <= alg.dim());
    loop {
        let vectors: Vec<Multivector> = (0..grade)
            .map(|_| random_nonzero_vector(alg, rng))
            .collect();
        if let Ok(blade) = Blade::from_vectors(&vectors) {
            if blade.norm() > 1e-3 {
                return blade;
            }
        }
    }
}

/// Random versor: geometric product of `k` random unit vectors.
pub fn random_versor(alg: Algebra, k: usize, rng: &mut SampleRng) -> Multivector {
    let mut v = alg.one();
    for _ in 0..k {
        let u = random_nonzero_vector(alg, rng);
        v = v.geometric_product(&(&u * (1.0 / u.norm())));
    }
    v
}
