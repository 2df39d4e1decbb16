//! Construction of a skew-symmetric polynomial matrix `A(x)` with
//! `g(x) = A(x) x` on the hyperplane `Σ x_i = 1`.
//!
//! The pipeline has two halves:
//!
//! * [`skew_factor_exact`] handles fields with `x^T g(x) ≡ 0` on all of ℝⁿ by
//!   sweeping entries `1..n-1` and peeling off elementary skew fields
//!   `v = x^(α+e_j) e_i - x^(α+e_i) e_j`, one homogeneous degree at a time.
//! * [`decompose`] reduces a general field to that case: it removes the
//!   constant term, factors `x^T g = (1 - Σx) s`, writes `s = x^T H x` with a
//!   symmetric `H`, and absorbs `H x - (x^T H x) 1` into the skew matrix
//!   `B = H x 1^T - 1 x^T H`.
//!
//! Every successful run carries an exact divisibility certificate
//! `g - A x = (1 - Σx) q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{frac, MultiIndex, Polynomial, Rational};
use crate::polymat::{degree_at_most_one_less, Degree, PolyMatrix, PolyVector, SkewPolyMatrix, SymPolyMatrix};

/// Indices of identically-zero entries and of the remaining entries (0-based).
pub fn support_indices(g: &PolyVector) -> (Vec<usize>, Vec<usize>) {
    (0..g.dimension()).partition(|&i| g.get(i).is_zero())
}

/// True iff `x^T g(x)` is the zero polynomial.
pub fn q_membership(g: &PolyVector) -> bool {
    g.dot_symbols().is_zero()
}

/// For a homogeneous `g` with `x^T g ≡ 0`: no nonzero entry `g_i` contains a
/// monomial whose exponents vanish on every other nonzero index.
///
/// This always holds for valid input; a `false` means the input broke the
/// algebra somewhere upstream.
pub fn no_cancel_check(g: &PolyVector) -> Result<bool> {
    if !q_membership(g) {
        return Err(Error::PreconditionViolated("x^T g is not identically zero".into()));
    }
    if !g.entries().iter().all(Polynomial::is_homogeneous) || {
        let degs: Vec<_> = g.entries().iter().filter_map(Polynomial::degree).collect();
        degs.windows(2).any(|w| w[0] != w[1])
    } {
        return Err(Error::PreconditionViolated("g is not homogeneous".into()));
    }
    let (_, support) = support_indices(g);
    Ok(support.iter().all(|&i| g.get(i).terms().all(|(alpha, _)| support.iter().any(|&j| j != i && alpha.get(j) != 0))))
}

/// An elementary skew field `x^(α+e_j) e_i - x^(α+e_i) e_j` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub alpha: MultiIndex,
    pub i: usize,
    pub j: usize,
}

impl BasisElement {
    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    pub fn vector(&self) -> PolyVector {
        let n = self.dimension();
        let mut entries = vec![Polynomial::zero(n); n];
        entries[self.i] = Polynomial::monomial(self.alpha.bump(self.j), Rational::one());
        entries[self.j] = Polynomial::monomial(self.alpha.bump(self.i), -Rational::one());
        PolyVector::new(entries).expect("entries built with dimension n")
    }

    /// `x^α (e_i e_j^T - e_j e_i^T)`, whose product with `x` is [`vector`](Self::vector).
    pub fn matrix(&self) -> SkewPolyMatrix {
        SkewPolyMatrix::elementary(&self.alpha, self.i, self.j, &Rational::one())
    }
}

/// All elementary skew fields of homogeneous degree `m`, pairs `(i, j)`
/// outermost, multi-indices in ascending graded-lex order within a pair.
pub fn spanning_set(n: usize, m: usize) -> Result<Vec<BasisElement>> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("spanning set needs n >= 2, got {n}")));
    }
    if m < 1 {
        return Err(Error::InvalidDimension(format!("spanning set needs degree m >= 1, got {m}")));
    }
    let alphas = MultiIndex::all_of_degree(n, m - 1);
    let mut out = Vec::with_capacity(n * (n - 1) / 2 * alphas.len());
    for i in 0..n {
        for j in i + 1..n {
            out.extend(alphas.iter().map(|alpha| BasisElement { alpha: alpha.clone(), i, j }));
        }
    }
    Ok(out)
}

/// `C(a, b)`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1usize, |acc, k| acc * (a - k) / (k + 1))
}

/// Dimension of the space of degree-`m` homogeneous fields in `n` variables
/// with `x^T g ≡ 0`, as the exact kernel dimension of `g ↦ x^T g`.
pub fn kernel_dimension(n: usize, m: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("kernel dimension needs n >= 2, got {n}")));
    }
    let domain = MultiIndex::all_of_degree(n, m);
    let image: BTreeMap<MultiIndex, usize> =
        MultiIndex::all_of_degree(n, m + 1).into_iter().enumerate().map(|(k, a)| (a, k)).collect();
    let cols = n * domain.len();
    let mut rows = vec![vec![Rational::zero(); cols]; image.len()];
    for k in 0..n {
        for (b, beta) in domain.iter().enumerate() {
            rows[image[&beta.bump(k)]][k * domain.len() + b] = Rational::one();
        }
    }
    Ok(cols - linalg::rank(&rows))
}

/// The count `(n-1) * C(n+d, d)` with `d = m - 1` that the adjacent-pair
/// family `{v_(i,i+1)}` would have as a basis. It disagrees with
/// [`kernel_dimension`] already at `n = 3, m = 1`, where it gives 2 against 3.
pub fn adjacent_pair_formula(n: usize, m: usize) -> usize {
    let d = m.saturating_sub(1);
    (n.saturating_sub(1)) * binomial(n + d, d)
}

fn homogeneous_slice(g: &PolyVector, m: usize) -> Vec<Polynomial> {
    g.entries().iter().map(|p| p.homogeneous_part(m)).collect()
}

/// Eliminates one homogeneous component; returns the upper-triangle
/// coefficients `A_ij` (i < j) that reproduce it.
fn eliminate_component(n: usize, mut work: Vec<Polynomial>) -> Result<BTreeMap<(usize, usize), Polynomial>> {
    let mut coeffs: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
    for i in 0..n.saturating_sub(1) {
        let terms: Vec<(MultiIndex, Rational)> = work[i].terms().map(|(a, c)| (a.clone(), c.clone())).collect();
        for (beta, c) in terms {
            let Some(j) = (i + 1..n).find(|&j| beta.get(j) > 0) else {
                return Err(Error::Internal(format!(
                    "entry {} keeps monomial {} with no later variable",
                    i + 1,
                    Polynomial::monomial(beta, c)
                )));
            };
            let alpha = beta.lower(j).expect("beta_j > 0");
            work[i] = &work[i] - &Polynomial::monomial(beta, c.clone());
            work[j] = &work[j] + &Polynomial::monomial(alpha.bump(i), c.clone());
            let slot = coeffs.entry((i, j)).or_insert_with(|| Polynomial::zero(n));
            *slot = &*slot + &Polynomial::monomial(alpha, c);
        }
        debug_assert!(work[i].is_zero());
    }
    if let Some(last) = work.last() {
        if !last.is_zero() {
            return Err(Error::Internal(format!("residual entry x{n} is {last}, expected 0")));
        }
    }
    Ok(coeffs)
}

/// Skew `A'` with `A'(x) x = g(x)` identically, for `x^T g ≡ 0`.
///
/// Each homogeneous component is swept independently; a monomial of `g_i`
/// divisible by several later variables is charged to the smallest one.
pub fn skew_factor_exact(g: &PolyVector) -> Result<SkewPolyMatrix> {
    let n = g.dimension();
    let xg = g.dot_symbols();
    if !xg.is_zero() {
        return Err(Error::NotInQ(xg.to_string()));
    }
    let degrees: Vec<usize> = match g.degree() {
        None => return Ok(SkewPolyMatrix::zero(n)),
        Some(d) => (0..=d).collect(),
    };
    let parts =
        degrees.par_iter().map(|&m| eliminate_component(n, homogeneous_slice(g, m))).collect::<Result<Vec<_>>>()?;

    let mut a = SkewPolyMatrix::zero(n);
    for part in parts {
        for ((i, j), p) in part {
            a.add_pair(i, j, &p);
        }
    }
    Ok(a)
}

/// `ḡ = (g - g₀) + g₀ (Σ x_i)`: no constant term, equal to `g` on the hyperplane.
pub fn remove_constant(g: &PolyVector) -> PolyVector {
    let n = g.dimension();
    let sum = Polynomial::coordinate_sum(n);
    g.map(|p| {
        let c = p.constant_term();
        if c.is_zero() {
            return p.clone();
        }
        &(p - &Polynomial::constant(n, c.clone())) + &sum.scale(&c)
    })
}

/// The cofactor `s` in `x^T g = (1 - Σ x_i) s`, for `g` without constant term.
pub fn factor_hyperplane(g: &PolyVector) -> Result<Polynomial> {
    if g.entries().iter().any(|p| !p.constant_term().is_zero()) {
        return Err(Error::HasConstantTerm);
    }
    let (s, r) = g.dot_symbols().divide_simplex();
    if !r.is_zero() {
        return Err(Error::NotVanishingOnH { remainder: r.to_string() });
    }
    if s.min_degree().is_some_and(|d| d < 2) {
        return Err(Error::Internal(format!("cofactor {s} has a term of degree < 2")));
    }
    Ok(s)
}

/// Symmetric `H` with `x^T H(x) x = s(x)` for `s` without constant or linear terms.
///
/// A monomial with some exponent `α_i >= 2` goes to the diagonal entry `i`
/// (smallest such `i`); otherwise it is split evenly over the smallest pair
/// `i < j` with `α_i = α_j = 1`.
pub fn symmetrize_scalar(s: &Polynomial) -> Result<SymPolyMatrix> {
    let n = s.dimension();
    if let Some((alpha, c)) = s.terms().find(|(a, _)| a.degree() < 2) {
        return Err(Error::LowOrderTerm(Polynomial::monomial(alpha.clone(), c.clone()).to_string()));
    }
    let half = frac(1, 2);
    let mut h = SymPolyMatrix::zero(n);
    for (alpha, c) in s.terms() {
        if let Some(i) = (0..n).find(|&i| alpha.get(i) >= 2) {
            let rest = alpha.lower(i).and_then(|a| a.lower(i)).expect("alpha_i >= 2");
            h.add_symmetric(i, i, &Polynomial::monomial(rest, c.clone()));
        } else {
            let mut ones = (0..n).filter(|&k| alpha.get(k) == 1);
            let (i, j) = (ones.next().expect("degree >= 2"), ones.next().expect("degree >= 2"));
            let rest = alpha.lower(i).and_then(|a| a.lower(j)).expect("alpha_i = alpha_j = 1");
            h.add_symmetric(i, j, &Polynomial::monomial(rest, c * &half));
        }
    }
    Ok(h)
}

/// `h(x) = H(x) x - (x^T H(x) x) 1`.
pub fn build_h(h: &PolyMatrix) -> Result<PolyVector> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    let hx = h.apply_to_symbols()?;
    let quad = hx.dot_symbols();
    Ok(hx.map(|p| p - &quad))
}

/// `B(x) = H(x) x 1^T - 1 x^T H(x)` for symmetric `H`; skew, and `B x = h` on the hyperplane.
pub fn build_b(h: &PolyMatrix) -> Result<SkewPolyMatrix> {
    if !h.is_square() {
        return Err(Error::NotSquare { rows: h.rows(), cols: h.cols() });
    }
    SymPolyMatrix::new(h.clone())?;
    let n = h.dimension();
    let hx = h.apply_to_symbols()?;
    let xh = h.transpose().apply_to_symbols()?;
    let b = PolyMatrix::from_fn(n, n, n, |i, j| hx.get(i) - xh.get(j));
    SkewPolyMatrix::new(b).map_err(|e| Error::Internal(format!("B not skew: {e}")))
}

/// Skew `B` with `H x - (x^T H x) 1 = B x` on the hyperplane, for any square `H`:
/// the symmetric part goes through [`build_b`] and the skew part is added as is.
pub fn strengthened_b(h: &PolyMatrix) -> Result<SkewPolyMatrix> {
    let (sym, skew) = h.split_sym_skew()?;
    build_b(sym.matrix())?.add(&skew)
}

/// Full output of [`decompose`] with every intermediate kept for auditing.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionReport {
    pub g: PolyVector,
    pub g_bar: PolyVector,
    pub s: Polynomial,
    pub h_matrix: SymPolyMatrix,
    pub h: PolyVector,
    pub b: SkewPolyMatrix,
    pub g_prime: PolyVector,
    pub a_prime: SkewPolyMatrix,
    pub a: SkewPolyMatrix,
    /// `q` with `g - A x = (1 - Σ x_i) q`.
    pub quotient: PolyVector,
    /// Remainders of the entrywise division; zero on success.
    pub remainder: PolyVector,
}

impl DecompositionReport {
    pub fn dimension(&self) -> usize {
        self.g.dimension()
    }

    /// Re-runs the independent checks on `g`, `A` and the quotient.
    pub fn verify(&self) -> CertificateCheck {
        verify_certificate(&self.g, self.a.matrix(), &self.quotient)
    }
}

/// Result of checking a claimed decomposition `g = A x + (1 - Σx) q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub skew: bool,
    pub degree_bound: bool,
    pub certificate: bool,
    pub degree_g: Degree,
    pub degree_a: Degree,
}

impl CertificateCheck {
    pub fn passed(&self) -> bool {
        self.skew && self.degree_bound && self.certificate
    }
}

/// Checks skew-symmetry of `A`, `deg A <= deg g - 1`, and
/// `g - A x - (1 - Σx) q ≡ 0` exactly.
pub fn verify_certificate(g: &PolyVector, a: &PolyMatrix, quotient: &PolyVector) -> CertificateCheck {
    let n = g.dimension();
    let shapes_ok = a.is_square() && a.rows() == n && a.dimension() == n && quotient.dimension() == n;
    let skew = shapes_ok && a.skew_check().unwrap_or(false);
    let degree_bound = degree_at_most_one_less(a.degree(), g.degree());
    let certificate = shapes_ok
        && a.apply_to_symbols().is_ok_and(|ax| {
            let divisor = Polynomial::simplex_form(n);
            g.sub(&ax).sub(&quotient.scale_by(&divisor)).is_zero()
        });
    CertificateCheck { skew, degree_bound, certificate, degree_g: g.degree(), degree_a: a.degree() }
}

/// Skew `A(x)` with `g(x) = A(x) x` on `Σ x_i = 1` and `deg A <= deg g - 1`.
///
/// Fails with [`Error::HypothesisViolated`] when `x^T g` does not vanish on
/// the hyperplane. When `x^T g ≡ 0` the equality holds on all of ℝⁿ and the
/// certificate quotient is zero.
pub fn decompose(g: &PolyVector) -> Result<DecompositionReport> {
    let n = g.dimension();
    let (_, r) = g.dot_symbols().divide_simplex();
    if !r.is_zero() {
        return Err(Error::HypothesisViolated { remainder: r.to_string() });
    }

    let g_bar = remove_constant(g);
    let s = factor_hyperplane(&g_bar)?;
    let h_matrix = symmetrize_scalar(&s)?;
    let h = build_h(h_matrix.matrix())?;
    let b = build_b(h_matrix.matrix())?;
    let g_prime = g_bar.sub(&h);
    let a_prime = skew_factor_exact(&g_prime).map_err(|e| match e {
        Error::NotInQ(p) => Error::Internal(format!("reduced field left x^T g' = {p}")),
        other => other,
    })?;
    let a = a_prime.add(&b)?;

    let residual = g.sub(&a.apply_to_symbols()?);
    let (quotient, remainder) = residual.divide_simplex();
    if !remainder.is_zero() {
        return Err(Error::Internal(format!("certificate remainder {remainder} is nonzero")));
    }
    if !degree_at_most_one_less(a.degree(), g.degree()) {
        return Err(Error::Internal(format!(
            "degree bound violated: deg A = {:?}, deg g = {:?}",
            a.degree(),
            g.degree()
        )));
    }
    if q_membership(g) && !quotient.is_zero() {
        return Err(Error::Internal("exact field produced a nonzero quotient".into()));
    }
    debug_assert_eq!(a.dimension(), n);
    Ok(DecompositionReport { g: g.clone(), g_bar, s, h_matrix, h, b, g_prime, a_prime, a, quotient, remainder })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::rat;

    fn vec_of(n: usize, src: &[&str]) -> PolyVector {
        PolyVector::new(src.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).unwrap()
    }

    fn mat_of(n: usize, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::new(n, rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, n).unwrap()).collect()).collect())
            .unwrap()
    }

    fn example2() -> PolyVector {
        vec_of(3, &["-x1^2 + x1*x2 + x1", "-2*x1^2", "-x1^2"])
    }

    #[test]
    fn support_partition() {
        assert_eq!(support_indices(&vec_of(3, &["x2", "-x1", "0"])), (vec![2], vec![0, 1]));
        assert_eq!(support_indices(&PolyVector::zero(3)), (vec![0, 1, 2], vec![]));
        assert_eq!(support_indices(&example2()), (vec![], vec![0, 1, 2]));
    }

    #[test]
    fn membership() {
        assert!(q_membership(&vec_of(3, &["x2", "-x1", "0"])));
        assert!(!q_membership(&example2()));
        assert!(q_membership(&PolyVector::zero(3)));
    }

    #[test]
    fn no_cancel() {
        assert!(no_cancel_check(&vec_of(3, &["x2", "-x1", "0"])).unwrap());
        assert!(no_cancel_check(&vec_of(3, &["x1*x2", "-x1^2", "0"])).unwrap());
        assert!(matches!(no_cancel_check(&example2()), Err(Error::PreconditionViolated(_))));
        assert!(matches!(
            no_cancel_check(&vec_of(3, &["x1*x2 + x2", "-x1^2 - x1", "0"])),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn spanning_set_examples() {
        let s = spanning_set(3, 1).unwrap();
        let v: Vec<String> = s.iter().map(|b| b.vector().to_string()).collect();
        assert_eq!(v, ["(x2, -x1, 0)", "(x3, 0, -x1)", "(0, x3, -x2)"]);
        let s = spanning_set(2, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].vector().to_string(), "(x2, -x1)");
        assert_eq!(spanning_set(3, 2).unwrap().len(), 9);
        assert!(spanning_set(1, 1).is_err());
        assert!(spanning_set(3, 0).is_err());
    }

    #[test]
    fn elementary_matrix_reproduces_vector() {
        for b in spanning_set(4, 3).unwrap() {
            assert_eq!(b.matrix().apply_to_symbols().unwrap(), b.vector());
            assert!(q_membership(&b.vector()));
        }
    }

    #[test]
    fn skew_factor_examples() {
        let a = skew_factor_exact(&vec_of(3, &["x2", "-x1", "0"])).unwrap();
        assert_eq!(a.matrix(), &mat_of(3, &[&["0", "1", "0"], &["-1", "0", "0"], &["0", "0", "0"]]));

        let a = skew_factor_exact(&vec_of(3, &["x1*x2", "-x1^2", "0"])).unwrap();
        assert_eq!(a.matrix(), &mat_of(3, &[&["0", "x1", "0"], &["-x1", "0", "0"], &["0", "0", "0"]]));

        assert!(skew_factor_exact(&PolyVector::zero(3)).unwrap().is_zero());
        assert!(matches!(skew_factor_exact(&example2()), Err(Error::NotInQ(_))));
    }

    #[test]
    fn kernel_dimension_examples() {
        assert_eq!(kernel_dimension(3, 1).unwrap(), 3);
        assert_eq!(kernel_dimension(2, 1).unwrap(), 1);
        for n in 2..5 {
            assert_eq!(kernel_dimension(n, 0).unwrap(), 0);
        }
        assert_eq!(adjacent_pair_formula(3, 1), 2);
        assert!(kernel_dimension(1, 1).is_err());
    }

    #[test]
    fn remove_constant_examples() {
        let g = vec_of(3, &["1", "-1", "0"]);
        assert_eq!(remove_constant(&g), vec_of(3, &["x1 + x2 + x3", "-x1 - x2 - x3", "0"]));
        let g = vec_of(3, &["x1*x2", "x3", "0"]);
        assert_eq!(remove_constant(&g), g);
        assert_eq!(remove_constant(&example2()), example2());
    }

    #[test]
    fn factor_hyperplane_examples() {
        assert_eq!(factor_hyperplane(&example2()).unwrap().to_string(), "x1^2");
        assert!(factor_hyperplane(&vec_of(3, &["x2", "-x1", "0"])).unwrap().is_zero());
        let s = factor_hyperplane(&vec_of(2, &["x1 - x1^2 - x1*x2", "0"])).unwrap();
        assert_eq!(s.to_string(), "x1^2");
        assert_eq!(&Polynomial::simplex_form(2) * &s, vec_of(2, &["x1 - x1^2 - x1*x2", "0"]).dot_symbols());

        assert!(matches!(factor_hyperplane(&vec_of(2, &["1", "x1"])), Err(Error::HasConstantTerm)));
        assert!(matches!(factor_hyperplane(&vec_of(2, &["x1", "0"])), Err(Error::NotVanishingOnH { .. })));
    }

    #[test]
    fn symmetrize_examples() {
        let n = 3;
        let h = symmetrize_scalar(&parse_polynomial("x1^2", n).unwrap()).unwrap();
        assert_eq!(h.matrix(), &mat_of(n, &[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]));
        let h = symmetrize_scalar(&parse_polynomial("x1*x2", n).unwrap()).unwrap();
        assert_eq!(h.matrix(), &mat_of(n, &[&["0", "1/2", "0"], &["1/2", "0", "0"], &["0", "0", "0"]]));
        assert!(symmetrize_scalar(&Polynomial::zero(n)).unwrap().is_zero());
        assert!(matches!(
            symmetrize_scalar(&parse_polynomial("x1^2 + x2", n).unwrap()),
            Err(Error::LowOrderTerm(t)) if t == "x2"
        ));
        let s = parse_polynomial("x1^3*x2 - 2*x1*x2*x3 + 5*x2^2*x3^2 + 1/3*x1*x3", n).unwrap();
        let h = symmetrize_scalar(&s).unwrap();
        assert_eq!(h.quadratic_form().unwrap(), s);
        assert!(degree_at_most_one_less(h.degree(), s.degree().map(|d| d - 1)));
    }

    #[test]
    fn build_h_examples() {
        let n = 3;
        let e11 = mat_of(n, &[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
        let h = build_h(&e11).unwrap();
        assert_eq!(h, vec_of(n, &["x1 - x1^2", "-x1^2", "-x1^2"]));
        assert_eq!(h.dot_symbols(), &parse_polynomial("x1^2", n).unwrap() * &Polynomial::simplex_form(n));

        assert!(build_h(&PolyMatrix::zero(n, n, n)).unwrap().is_zero());

        let half = mat_of(n, &[&["0", "1/2", "0"], &["1/2", "0", "0"], &["0", "0", "0"]]);
        let h = build_h(&half).unwrap();
        assert_eq!(h, vec_of(n, &["1/2*x2 - x1*x2", "1/2*x1 - x1*x2", "-x1*x2"]));
        assert_eq!(h.dot_symbols(), &parse_polynomial("x1*x2", n).unwrap() * &Polynomial::simplex_form(n));
    }

    #[test]
    fn build_b_examples() {
        let n = 3;
        let e11 = mat_of(n, &[&["1", "0", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
        let b = build_b(&e11).unwrap();
        assert_eq!(b.matrix(), &mat_of(n, &[&["0", "x1", "x1"], &["-x1", "0", "0"], &["-x1", "0", "0"]]));
        assert!(b.apply_to_symbols().unwrap().sub(&build_h(&e11).unwrap()).vanishes_on_simplex_hyperplane());

        assert!(build_b(&PolyMatrix::zero(n, n, n)).unwrap().is_zero());

        let half = mat_of(n, &[&["0", "1/2", "0"], &["1/2", "0", "0"], &["0", "0", "0"]]);
        let b = build_b(&half).unwrap();
        assert_eq!(b.get(0, 1).to_string(), "-1/2*x1 + 1/2*x2");
        assert_eq!(b.get(0, 2).to_string(), "1/2*x2");
        assert_eq!(b.get(1, 2).to_string(), "1/2*x1");
        assert!(b.apply_to_symbols().unwrap().sub(&build_h(&half).unwrap()).vanishes_on_simplex_hyperplane());

        let asym = mat_of(n, &[&["0", "1", "0"], &["0", "0", "0"], &["0", "0", "0"]]);
        assert!(matches!(build_b(&asym), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn strengthened_b_examples() {
        let n = 3;
        let sym = mat_of(n, &[&["1", "x2", "0"], &["x2", "0", "2"], &["0", "2", "x3"]]);
        assert_eq!(strengthened_b(&sym).unwrap(), build_b(&sym).unwrap());

        let skew = mat_of(n, &[&["0", "x1", "-1"], &["-x1", "0", "3"], &["1", "-3", "0"]]);
        assert_eq!(strengthened_b(&skew).unwrap().matrix(), &skew);

        let case4 = mat_of(n, &[&["2", "-2", "0"], &["0", "2", "2"], &["2", "0", "-2"]]);
        let b = strengthened_b(&case4).unwrap();
        let lhs = build_h(&case4).unwrap();
        assert!(lhs.sub(&b.apply_to_symbols().unwrap()).vanishes_on_simplex_hyperplane());
        assert_eq!(b.get(0, 1).to_string(), "3*x1 - 3*x2 - 1");

        assert!(matches!(strengthened_b(&PolyMatrix::zero(n, 2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn decompose_exact_field() {
        let a0 = mat_of(3, &[&["0", "1", "0"], &["-1", "0", "0"], &["0", "0", "0"]]);
        let g = a0.apply_to_symbols().unwrap();
        let rep = decompose(&g).unwrap();
        assert_eq!(rep.a.matrix(), &a0);
        assert!(rep.quotient.is_zero());
        assert!(rep.verify().passed());
    }

    #[test]
    fn decompose_example_two() {
        let rep = decompose(&example2()).unwrap();
        assert!(rep.a.skew_check().unwrap());
        assert!(rep.a.degree().is_some_and(|d| d <= 1));
        assert!(rep.remainder.is_zero());
        assert_eq!(rep.s.to_string(), "x1^2");
        assert!(rep.verify().passed());
        assert!(!rep.quotient.is_zero());
    }

    #[test]
    fn decompose_zero_and_constant_fields() {
        let rep = decompose(&PolyVector::zero(3)).unwrap();
        assert!(rep.a.is_zero());
        assert!(rep.verify().passed());

        // g = (1, -1, 0) has x^T g = x1 - x2, which does not vanish on the hyperplane
        assert!(matches!(decompose(&vec_of(3, &["1", "-1", "0"])), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn decompose_affine_field() {
        // g = M x + c with x^T g vanishing on the hyperplane
        let g = vec_of(3, &["x2 - 1 + x1 + x2 + x3", "-x1 + 1 - x1 - x2 - x3", "0"]);
        let rep = decompose(&g).unwrap();
        assert!(rep.verify().passed());
        assert_eq!(rep.a.degree(), Some(0));
    }

    #[test]
    fn verify_rejects_perturbation() {
        let rep = decompose(&example2()).unwrap();
        let mut bad = rep.a.matrix().clone();
        bad.set(0, 1, bad.get(0, 1) + &Polynomial::constant(3, rat(1)));
        assert!(!verify_certificate(&rep.g, &bad, &rep.quotient).passed());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
