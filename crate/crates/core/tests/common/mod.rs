#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zsr_core::poly::{frac, Rational};
use zsr_core::{MultiIndex, Polynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coefficient(bound: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

/// Sparse polynomial in `n` variables with total degree at most `max_degree`.
pub fn polynomial(n: usize, max_degree: u32, bound: i64) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=max_degree, n), coefficient(bound))
        .prop_filter_map("degree bound", move |(e, c)| {
            (e.iter().sum::<u32>() <= max_degree).then(|| (MultiIndex::new(e), c))
        });
    prop::collection::vec(term, 0..8).prop_map(move |terms| Polynomial::from_terms(n, terms).unwrap())
}

pub fn dim_and_polynomial(max_n: usize, max_degree: u32, bound: i64) -> impl Strategy<Value = Polynomial> {
    (1..=max_n).prop_flat_map(move |n| polynomial(n, max_degree, bound))
}

pub fn dim_and_pair(max_n: usize, max_degree: u32, bound: i64) -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (1..=max_n).prop_flat_map(move |n| (polynomial(n, max_degree, bound), polynomial(n, max_degree, bound)))
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(coefficient(7), n)
}
