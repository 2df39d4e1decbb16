//! Random instances for tests, benchmarks and property sweeps.

use rand::Rng;

use crate::poly::{rat, MultiIndex, Polynomial};
use crate::polymat::{PolyMatrix, PolyVector, SkewPolyMatrix};

/// Random polynomial of degree at most `max_degree` with integer coefficients in
/// `[-bound, bound]`; each monomial is kept with probability `density`.
pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: usize, bound: i64, density: f64) -> Polynomial {
    let mut terms = Vec::new();
    for d in 0..=max_degree {
        for alpha in MultiIndex::all_of_degree(n, d) {
            if rng.gen_bool(density) {
                terms.push((alpha, rat(rng.gen_range(-bound..=bound))));
            }
        }
    }
    Polynomial::from_terms(n, terms).expect("exponent vectors have length n")
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: usize, bound: i64, density: f64) -> PolyVector {
    PolyVector::new((0..n).map(|_| polynomial(rng, n, max_degree, bound, density)).collect())
        .expect("entries share the dimension")
}

pub fn matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: usize, bound: i64, density: f64) -> PolyMatrix {
    PolyMatrix::from_fn(n, n, n, |_, _| polynomial(rng, n, max_degree, bound, density))
}

pub fn skew_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    bound: i64,
    density: f64,
) -> SkewPolyMatrix {
    let mut m = PolyMatrix::zero(n, n, n);
    for i in 0..n {
        for j in i + 1..n {
            let p = polynomial(rng, n, max_degree, bound, density);
            m.set(j, i, -&p);
            m.set(i, j, p);
        }
    }
    SkewPolyMatrix::new(m).expect("constructed skew")
}

pub fn symmetric_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_degree: usize,
    bound: i64,
    density: f64,
) -> PolyMatrix {
    let mut m = PolyMatrix::zero(n, n, n);
    for i in 0..n {
        for j in i..n {
            let p = polynomial(rng, n, max_degree, bound, density);
            m.set(j, i, p.clone());
            m.set(i, j, p);
        }
    }
    m
}

/// `g = A0 x + (1 - Σ x_i) w` with `deg g <= degree`: satisfies the decomposition
/// hypothesis, but `x^T g` vanishes only on the hyperplane.
pub fn hyperplane_field<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: usize, bound: i64, density: f64) -> PolyVector {
    let a0 = skew_matrix(rng, n, degree.saturating_sub(1), bound, density);
    let w = vector(rng, n, degree.saturating_sub(1), bound, density);
    let ax = a0.apply_to_symbols().expect("square");
    ax.add(&w.scale_by(&Polynomial::simplex_form(n)))
}

/// `g = A0 x`, so `x^T g ≡ 0` on all of ℝⁿ.
pub fn exact_field<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: usize, bound: i64, density: f64) -> PolyVector {
    skew_matrix(rng, n, degree.saturating_sub(1), bound, density).apply_to_symbols().expect("square")
}
