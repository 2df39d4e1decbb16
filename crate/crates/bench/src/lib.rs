//! Seeded workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zsr_core::{sample, PayoffMatrix, PolyVector, Polynomial, ReplicatorSystem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fields `A0 x + (1 - Σx) w` of the given size.
pub fn fields(count: usize, n: usize, degree: usize) -> Vec<PolyVector> {
    let mut r = rng(n as u64 * 1000 + degree as u64);
    (0..count).map(|_| sample::hyperplane_field(&mut r, n, degree, 5, 0.3)).collect()
}

pub fn dense_polynomial(n: usize, degree: usize) -> Polynomial {
    sample::polynomial(&mut rng(degree as u64), n, degree, 9, 1.0)
}

pub fn quadratic_payoff_system(n: usize) -> ReplicatorSystem {
    let h = PayoffMatrix::new(sample::matrix(&mut rng(n as u64), n, 2, 3, 0.5)).expect("square");
    ReplicatorSystem::new(h).expect("payoff systems always decompose")
}
