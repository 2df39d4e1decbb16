mod common;

use common::*;
use proptest::prelude::*;
use zsr_core::decomposition::{binomial, q_membership, skew_factor_exact};
use zsr_core::linalg::rank;
use zsr_core::poly::{frac, Rational};
use zsr_core::{decompose, kernel_dimension, sample, spanning_set, MultiIndex, PolyVector};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn exact_fields_round_trip(seed in any::<u64>(), n in 2usize..=5, deg in 0usize..=3) {
        let a0 = sample::skew_matrix(&mut rng(seed), n, deg, 5, 0.25);
        let g = a0.apply_to_symbols().unwrap();
        let report = decompose(&g).unwrap();
        prop_assert_eq!(report.a.apply_to_symbols().unwrap(), g);
        prop_assert!(report.quotient.is_zero());
    }

    #[test]
    fn hyperplane_fields_are_sound(seed in any::<u64>(), n in 2usize..=5, deg in 1usize..=4) {
        let g = sample::hyperplane_field(&mut rng(seed), n, deg, 5, 0.2);
        let report = decompose(&g).unwrap();
        prop_assert!(report.remainder.is_zero());
        let check = report.verify();
        prop_assert!(check.passed(), "{:?}", check);
        prop_assert!(report.a.quadratic_form().unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spanning_combinations_factor_back(
        n in 2usize..=4,
        m in 1usize..=3,
        coeffs in prop::collection::vec((-5i64..=5, 1i64..=3), 60),
    ) {
        let basis = spanning_set(n, m).unwrap();
        let mut g = PolyVector::zero(n);
        for (e, (p, q)) in basis.iter().zip(coeffs.iter().cycle()) {
            let v = e.vector();
            prop_assert!(q_membership(&v));
            prop_assert_eq!(e.matrix().apply_to_symbols().unwrap(), v.clone());
            let c: Rational = frac(*p, *q);
            g = g.add(&v.map(|x| x.scale(&c)));
        }
        let a = skew_factor_exact(&g).unwrap();
        prop_assert_eq!(a.apply_to_symbols().unwrap(), g);
    }
}

/// Rank of the spanning set's coefficient matrix, built independently of
/// `kernel_dimension`.
fn spanning_rank(n: usize, m: usize) -> usize {
    let monos = MultiIndex::all_of_degree(n, m);
    let rows: Vec<Vec<Rational>> = spanning_set(n, m)
        .unwrap()
        .iter()
        .map(|e| {
            let v = e.vector();
            (0..n).flat_map(|i| monos.iter().map(move |a| (i, a))).map(|(i, a)| v.get(i).coefficient(a)).collect()
        })
        .collect();
    rank(&rows)
}

#[test]
fn dimension_matches_spanning_rank() {
    for n in 2..=4 {
        for m in 1..=3 {
            let dim = kernel_dimension(n, m).unwrap();
            assert_eq!(dim, spanning_rank(n, m), "n={n} m={m}");
            assert_eq!(dim, n * binomial(n + m - 1, m) - binomial(n + m, m + 1), "n={n} m={m}");
        }
    }
    assert_eq!(kernel_dimension(3, 1).unwrap(), 3);
}
