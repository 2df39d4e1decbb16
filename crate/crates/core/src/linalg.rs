//! Exact rational Gaussian elimination.
//!
//! Pivots are chosen by position (first nonzero entry in the column), never by
//! magnitude; over the rationals every nonzero pivot is exact.

use num_traits::{One, Zero};

use crate::poly::Rational;

/// Rank of a dense rational matrix given as rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let (upper, lower) = m.split_at_mut(i);
            for (x, p) in lower[0][c..].iter_mut().zip(&upper[r][c..]) {
                *x -= &f * p;
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Outcome of solving `A y = b` exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    /// A particular solution with every free variable set to zero.
    Consistent(Vec<Rational>),
    /// Multipliers `λ` with `λ^T A = 0` and `λ^T b = constant ≠ 0`.
    Inconsistent { multipliers: Vec<Rational>, constant: Rational },
}

/// Solves `A y = b` (rows of `a`, right-hand side `b`) by exact elimination.
///
/// Row operations are mirrored on an identity block so that an inconsistent
/// row comes with the combination of original equations that produced it.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "row count of A and b differ");
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    // [A | b | I]
    let mut w: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, bi))| {
            assert_eq!(row.len(), cols, "ragged coefficient matrix");
            let mut r = row.clone();
            r.push(bi.clone());
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m).find(|&i| !w[i][c].is_zero()) else {
            continue;
        };
        w.swap(r, p);
        let inv = Rational::one() / &w[r][c];
        for x in &mut w[r] {
            *x *= &inv;
        }
        for i in 0..m {
            if i == r || w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].clone();
            let pivot = w[r].clone();
            for (x, p) in w[i].iter_mut().zip(&pivot) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == m {
            break;
        }
    }

    if let Some(row) = (r..m).find(|&i| !w[i][cols].is_zero()) {
        return Solution::Inconsistent { multipliers: w[row][cols + 1..].to_vec(), constant: w[row][cols].clone() };
    }
    let mut y = vec![Rational::zero(); cols];
    for (row, c) in pivots {
        y[c] = w[row][cols].clone();
    }
    Solution::Consistent(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{frac, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_consistent() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![rat(3), rat(5)];
        match solve(&a, &b) {
            Solution::Consistent(y) => assert_eq!(y, vec![frac(4, 5), frac(7, 5)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn solve_underdetermined_sets_free_to_zero() {
        let a = m(&[&[1, 1, 0]]);
        match solve(&a, &[rat(2)]) {
            Solution::Consistent(y) => assert_eq!(y, vec![rat(2), rat(0), rat(0)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inconsistent_certificate_checks_out() {
        let a = m(&[&[1, 1], &[2, 2], &[0, 1]]);
        let b = vec![rat(1), rat(3), rat(0)];
        let Solution::Inconsistent { multipliers, constant } = solve(&a, &b) else {
            panic!("expected inconsistency");
        };
        for c in 0..2 {
            let s: Rational = multipliers.iter().zip(&a).map(|(l, row)| l * &row[c]).sum();
            assert!(s.is_zero());
        }
        let rhs: Rational = multipliers.iter().zip(&b).map(|(l, bi)| l * bi).sum();
        assert_eq!(rhs, constant);
        assert!(!constant.is_zero());
    }
}
