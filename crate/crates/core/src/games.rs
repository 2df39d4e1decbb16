//! Payoff matrices and the map `φ: H ↦ diag(x)(H x - (x^T H x) 1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::poly::{format_rational, MultiIndex, Polynomial, Rational};
use crate::polymat::{PolyMatrix, PolyVector, SkewPolyMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayoffKind {
    Constant,
    Polynomial,
}

/// A square payoff matrix `H(x)`; entry `(i, j)` is the payoff of strategy `i` against `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffMatrix {
    matrix: PolyMatrix,
    kind: PayoffKind,
}

impl PayoffMatrix {
    pub fn new(matrix: PolyMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() != matrix.dimension() {
            return Err(Error::DimensionMismatch { expected: matrix.dimension(), found: matrix.rows() });
        }
        let kind = if matrix.degree().unwrap_or(0) == 0 { PayoffKind::Constant } else { PayoffKind::Polynomial };
        Ok(PayoffMatrix { matrix, kind })
    }

    /// A constant payoff from rational entries.
    pub fn constant(values: &[Vec<Rational>]) -> Result<Self> {
        Self::new(PolyMatrix::constant(values.len(), values)?)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> PayoffKind {
        self.kind
    }

    pub fn is_constant(&self) -> bool {
        self.kind == PayoffKind::Constant
    }

    pub fn dimension(&self) -> usize {
        self.matrix.dimension()
    }

    /// Entry values of a constant payoff.
    pub fn constant_values(&self) -> Result<Vec<Vec<Rational>>> {
        if let Some(((row, col), _)) = self.matrix.entries().find(|(_, p)| p.degree().unwrap_or(0) > 0) {
            return Err(Error::NotConstant { row, col });
        }
        let n = self.dimension();
        Ok((0..n).map(|i| (0..n).map(|j| self.matrix.get(i, j).constant_term()).collect()).collect())
    }
}

/// `H(x) x - (x^T H(x) x) 1`, the payoff relative to the population average.
pub fn payoff_bracket(h: &PolyMatrix) -> Result<PolyVector> {
    crate::decomposition::build_h(h)
}

/// The replicator field `diag(x)(H x - (x^T H x) 1)`.
pub fn phi(h: &PayoffMatrix) -> PolyVector {
    payoff_bracket(h.matrix()).expect("payoff matrices are square").times_diag_symbols()
}

/// The affine skew matrix `S x 1^T - 1 x^T S + Ω` built from a constant payoff
/// `H = S + Ω`; it induces the same replicator field on the simplex.
pub fn affine_skew_equivalent(h: &PayoffMatrix) -> Result<SkewPolyMatrix> {
    h.constant_values()?;
    let (sym, skew) = h.matrix().split_sym_skew()?;
    let n = h.dimension();
    let sx = sym.apply_to_symbols()?;
    let out = PolyMatrix::from_fn(n, n, n, |i, j| &(sx.get(i) - sx.get(j)) + skew.get(i, j));
    SkewPolyMatrix::new(out).map_err(|e| Error::Internal(format!("affine equivalent not skew: {e}")))
}

/// True iff `H1 - H2 = 1 v^T` for some `v`, i.e. all rows of the difference agree.
pub fn nullspace_equivalent(h1: &PayoffMatrix, h2: &PayoffMatrix) -> Result<bool> {
    if h1.dimension() != h2.dimension() {
        return Err(Error::DimensionMismatch { expected: h1.dimension(), found: h2.dimension() });
    }
    let a = h1.constant_values()?;
    let b = h2.constant_values()?;
    let diff: Vec<Vec<Rational>> =
        a.iter().zip(&b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect()).collect();
    Ok(diff.windows(2).all(|w| w[0] == w[1]))
}

/// One scalar equation of the representability system: the coefficient of
/// `monomial` in entry `entry` after reduction onto the hyperplane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationLabel {
    pub entry: usize,
    pub monomial: MultiIndex,
}

/// The exact linear system `A vec(H) = b` whose solutions are the constant
/// payoffs with `H x - (x^T H x) 1 = g` on the hyperplane. Unknown `a*n + b`
/// is entry `H_ab`.
#[derive(Debug, Clone)]
pub struct RepresentabilitySystem {
    pub n: usize,
    pub labels: Vec<EquationLabel>,
    pub coefficients: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
}

/// An inconsistent combination of equations: `Σ λ_k (row_k)` has zero
/// coefficients but right-hand side `constant ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstruction {
    pub terms: Vec<(EquationLabel, Rational)>,
    pub constant: Rational,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (label, lambda)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mono = Polynomial::monomial(label.monomial.clone(), Rational::one());
            write!(f, "({})*[g{} : {}]", format_rational(lambda), label.entry + 1, mono)?;
        }
        write!(f, " reduces to 0 = {}", format_rational(&self.constant))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeasibilityVerdict {
    /// A constant witness `H`, re-verified by divisibility.
    Feasible {
        witness: PayoffMatrix,
    },
    Infeasible {
        obstruction: Obstruction,
    },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }
}

/// Builds the coefficient-matching system after substituting `x_n := 1 - Σ_{i<n} x_i`.
pub fn representability_system(g: &PolyVector) -> RepresentabilitySystem {
    let n = g.dimension();
    let last = n - 1;
    let reduce = |p: &Polynomial| p.reduce_on_hyperplane(last);

    // Contribution of the unknown H_ab: entry i gets δ_ia x_b - x_a x_b.
    let mut columns: Vec<Vec<Polynomial>> = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let xaxb = &Polynomial::var(n, a) * &Polynomial::var(n, b);
            columns.push(
                (0..n)
                    .map(|i| {
                        let p = if i == a { &Polynomial::var(n, b) - &xaxb } else { -&xaxb };
                        reduce(&p)
                    })
                    .collect(),
            );
        }
    }
    let targets: Vec<Polynomial> = g.entries().iter().map(reduce).collect();

    // rows ordered by entry, then graded-lex monomial
    let mut keys: BTreeSet<(usize, MultiIndex)> = BTreeSet::new();
    for i in 0..n {
        for p in columns.iter().map(|col| &col[i]).chain(std::iter::once(&targets[i])) {
            keys.extend(p.terms().map(|(m, _)| (i, m.clone())));
        }
    }
    let row_of: BTreeMap<(usize, MultiIndex), usize> = keys.iter().cloned().enumerate().map(|(r, k)| (k, r)).collect();
    let labels: Vec<EquationLabel> =
        keys.into_iter().map(|(entry, monomial)| EquationLabel { entry, monomial }).collect();

    let mut coefficients = vec![vec![Rational::zero(); n * n]; labels.len()];
    let mut rhs = vec![Rational::zero(); labels.len()];
    for (u, col) in columns.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                coefficients[row_of[&(i, m.clone())]][u] = c.clone();
            }
        }
    }
    for (i, p) in targets.iter().enumerate() {
        for (m, c) in p.terms() {
            rhs[row_of[&(i, m.clone())]] = c.clone();
        }
    }
    RepresentabilitySystem { n, labels, coefficients, rhs }
}

/// Decides whether some constant `H` satisfies `g = H x - (x^T H x) 1` on the hyperplane.
pub fn constant_representability(g: &PolyVector) -> Result<FeasibilityVerdict> {
    let n = g.dimension();
    if n == 0 {
        return Err(Error::InvalidDimension("empty field".into()));
    }
    let (_, r) = g.dot_symbols().divide_simplex();
    if !r.is_zero() {
        return Err(Error::HypothesisViolated { remainder: r.to_string() });
    }
    let system = representability_system(g);
    match linalg::solve(&system.coefficients, &system.rhs) {
        Solution::Consistent(y) => {
            let values: Vec<Vec<Rational>> = y.chunks(n).map(<[Rational]>::to_vec).collect();
            let witness = PayoffMatrix::constant(&values)?;
            let check = payoff_bracket(witness.matrix())?.sub(g);
            if !check.vanishes_on_simplex_hyperplane() {
                return Err(Error::Internal("representability witness fails its certificate".into()));
            }
            Ok(FeasibilityVerdict::Feasible { witness })
        }
        Solution::Inconsistent { multipliers, constant } => {
            let terms = system.labels.into_iter().zip(multipliers).filter(|(_, l)| !l.is_zero()).collect();
            Ok(FeasibilityVerdict::Infeasible { obstruction: Obstruction { terms, constant } })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::rat;

    fn constant(vals: &[&[i64]]) -> PayoffMatrix {
        PayoffMatrix::constant(&vals.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect::<Vec<_>>()).unwrap()
    }

    fn mat_of(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::new(n, rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).collect())
            .unwrap()
    }

    fn vec_of(n: usize, src: &[&str]) -> PolyVector {
        PolyVector::new(src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let h = constant(&[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert!(phi(&h).vanishes_on_simplex_hyperplane());
        assert!(!phi(&h).is_zero());
        assert!(phi(&constant(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).is_zero());
        let rps = constant(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        assert_eq!(phi(&rps), vec_of(3, &["x1*x2 - x1*x3", "-x1*x2 + x2*x3", "x1*x3 - x2*x3"]));
    }

    #[test]
    fn affine_equivalent_case_one() {
        let h = constant(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        let hp = affine_skew_equivalent(&h).unwrap();
        let expected =
            mat_of(3, &[&["0", "-x1 + x2", "-x1 + x3"], &["x1 - x2", "0", "-x2 + x3"], &["x1 - x3", "x2 - x3", "0"]]);
        assert_eq!(hp.matrix(), &expected);
    }

    #[test]
    fn affine_equivalent_case_four_on_hyperplane() {
        let h = constant(&[&[2, -2, 0], &[0, 2, 2], &[2, 0, -2]]);
        let hp = affine_skew_equivalent(&h).unwrap();
        assert_eq!(hp.get(0, 1).to_string(), "3*x1 - 3*x2 - 1");
        for ((i, j), want) in [((0, 2), "-3*x2 + 2*x3"), ((1, 2), "-x1 + 2*x2 + 4*x3")] {
            let diff = hp.get(i, j) - &parse_polynomial(want, 3).unwrap();
            assert!(diff.vanishes_on_simplex_hyperplane(), "entry ({i}, {j}): {}", hp.get(i, j));
        }
        let field_diff = phi(&PayoffMatrix::new(hp.into_matrix()).unwrap()).sub(&phi(&h));
        assert!(field_diff.vanishes_on_simplex_hyperplane());
    }

    #[test]
    fn affine_equivalent_of_skew_is_identity() {
        let h = constant(&[&[0, 2, -1], &[-2, 0, 3], &[1, -3, 0]]);
        assert_eq!(affine_skew_equivalent(&h).unwrap().matrix(), h.matrix());
        let poly = PayoffMatrix::new(mat_of(2, &[&["x1", "0"], &["0", "0"]])).unwrap();
        assert!(matches!(affine_skew_equivalent(&poly), Err(Error::NotConstant { row: 0, col: 0 })));
    }

    #[test]
    fn nullspace_examples() {
        let h1 = constant(&[&[1, 0, 4], &[0, 2, 1], &[3, 3, 3]]);
        let h2 = constant(&[&[2, 2, 7], &[1, 4, 4], &[4, 5, 6]]);
        assert!(nullspace_equivalent(&h1, &h2).unwrap());
        let id = constant(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let zero = constant(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(!nullspace_equivalent(&id, &zero).unwrap());
        let ones_v = constant(&[&[1, 2, 3], &[1, 2, 3], &[1, 2, 3]]);
        assert!(nullspace_equivalent(&ones_v, &zero).unwrap());
        assert!(phi(&ones_v).vanishes_on_simplex_hyperplane());
        assert!(nullspace_equivalent(&id, &constant(&[&[0, 0], &[0, 0]])).is_err());
    }

    #[test]
    fn example_two_is_not_constant_representable() {
        let g = vec_of(3, &["-x1^2 + x1*x2 + x1", "-2*x1^2", "-x1^2"]);
        let FeasibilityVerdict::Infeasible { obstruction } = constant_representability(&g).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(!obstruction.constant.is_zero());
        let sys = representability_system(&g);
        for u in 0..9 {
            let s: Rational = obstruction
                .terms
                .iter()
                .map(|(l, lam)| {
                    let r = sys.labels.iter().position(|x| x == l).unwrap();
                    lam * &sys.coefficients[r][u]
                })
                .sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn bracket_of_constant_is_representable() {
        let h0 = constant(&[&[1, -2, 0], &[3, 1, 1], &[0, 2, -1]]);
        let g = payoff_bracket(h0.matrix()).unwrap();
        let FeasibilityVerdict::Feasible { witness } = constant_representability(&g).unwrap() else {
            panic!("expected feasible");
        };
        assert!(nullspace_equivalent(&witness, &h0).unwrap());

        let FeasibilityVerdict::Feasible { witness } = constant_representability(&PolyVector::zero(3)).unwrap() else {
            panic!("expected feasible");
        };
        assert!(witness.matrix().is_zero());
    }

    #[test]
    fn representability_needs_hypothesis() {
        let g = vec_of(2, &["x1", "0"]);
        assert!(matches!(constant_representability(&g), Err(Error::HypothesisViolated { .. })));
    }
}
