//! Vectors and matrices whose entries are polynomials in `x1..xn`.

use std::fmt;
use std::ops::Deref;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rational};

/// Total degree with `None` standing for the zero object (degree below 0).
pub type Degree = Option<usize>;

/// `deg(a) <= deg(b) - 1`, treating `None` as -infinity.
pub fn degree_at_most_one_less(a: Degree, b: Degree) -> bool {
    match (a, b) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) => a < b,
    }
}

/// A length-`n` vector of polynomials in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyVector {
    pub fn new(entries: Vec<Polynomial>) -> Result<Self> {
        let n = entries.len();
        if let Some(bad) = entries.iter().find(|p| p.dimension() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.dimension() });
        }
        Ok(PolyVector { n, entries })
    }

    pub fn zero(n: usize) -> Self {
        PolyVector { n, entries: vec![Polynomial::zero(n); n] }
    }

    /// The symbol vector `x = (x1, ..., xn)`.
    pub fn symbols(n: usize) -> Self {
        PolyVector { n, entries: (0..n).map(|i| Polynomial::var(n, i)).collect() }
    }

    /// The constant vector `1`.
    pub fn ones(n: usize) -> Self {
        PolyVector { n, entries: vec![Polynomial::one(n); n] }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Polynomial {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Degree {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> PolyVector {
        PolyVector { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    fn check(&self, other: &PolyVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyVector) -> Result<PolyVector> {
        self.check(other)?;
        Ok(PolyVector { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, other: &PolyVector) -> Result<PolyVector> {
        self.check(other)?;
        Ok(PolyVector { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn add(&self, other: &PolyVector) -> PolyVector {
        self.try_add(other).expect("vector dimension mismatch")
    }

    pub fn sub(&self, other: &PolyVector) -> PolyVector {
        self.try_sub(other).expect("vector dimension mismatch")
    }

    pub fn scale_by(&self, p: &Polynomial) -> PolyVector {
        self.map(|e| e * p)
    }

    /// `u^T v`.
    pub fn dot(&self, other: &PolyVector) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.entries.iter().zip(&other.entries).fold(Polynomial::zero(self.n), |acc, (a, b)| &acc + &(a * b)))
    }

    /// `x^T v` for the symbol vector `x`.
    pub fn dot_symbols(&self) -> Polynomial {
        self.dot(&PolyVector::symbols(self.n)).expect("same dimension")
    }

    /// Entrywise `diag(x) v`.
    pub fn times_diag_symbols(&self) -> PolyVector {
        PolyVector {
            n: self.n,
            entries: self.entries.iter().enumerate().map(|(i, e)| e * &Polynomial::var(self.n, i)).collect(),
        }
    }

    /// Entrywise division by `1 - Σ x_i`: `(quotients, remainders)`.
    pub fn divide_simplex(&self) -> (PolyVector, PolyVector) {
        let (q, r) = self.entries.iter().map(Polynomial::divide_simplex).unzip();
        (PolyVector { n: self.n, entries: q }, PolyVector { n: self.n, entries: r })
    }

    /// True when every entry vanishes on the simplex hyperplane.
    pub fn vanishes_on_simplex_hyperplane(&self) -> bool {
        self.entries.iter().all(Polynomial::vanishes_on_simplex_hyperplane)
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A `rows x cols` matrix of polynomials in `n` variables, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(n: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, found: row.len() });
            }
            for p in row {
                if p.dimension() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: p.dimension() });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { rows: r, cols: c, n, entries })
    }

    pub fn from_fn(n: usize, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let p = f(i, j);
                assert_eq!(p.dimension(), n, "entry ({i}, {j}) has wrong dimension");
                entries.push(p);
            }
        }
        PolyMatrix { rows, cols, n, entries }
    }

    pub fn zero(n: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, n, entries: vec![Polynomial::zero(n); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, n, |i, j| if i == j { Polynomial::one(n) } else { Polynomial::zero(n) })
    }

    /// A constant matrix from rational entries.
    pub fn constant(n: usize, values: &[Vec<Rational>]) -> Result<Self> {
        let rows = values.iter().map(|row| row.iter().map(|v| Polynomial::constant(n, v.clone())).collect()).collect();
        Self::new(n, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.dimension(), self.n);
        self.entries[i * self.cols + j] = p;
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Polynomial)> {
        let cols = self.cols;
        self.entries.iter().enumerate().map(move |(k, p)| ((k / cols, k % cols), p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> Degree {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.n, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    fn check_same_shape(&self, other: &PolyMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_same_shape(other)?;
        Ok(PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.try_add(&other.map(|p| -p))
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        self.map(|p| p.scale(c))
    }

    /// Exact product `M v`.
    pub fn matvec(&self, v: &PolyVector) -> Result<PolyVector> {
        if self.cols != v.dimension() {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.dimension() });
        }
        if self.n != v.dimension() || self.rows != self.n {
            // PolyVector carries one entry per variable, so only n x n products are representable.
            return Err(Error::DimensionMismatch { expected: self.n, found: self.rows });
        }
        let entries = (0..self.rows)
            .map(|i| self.row(i).iter().zip(v.entries()).fold(Polynomial::zero(self.n), |acc, (m, e)| &acc + &(m * e)))
            .collect();
        PolyVector::new(entries)
    }

    /// `M x` for the symbol vector.
    pub fn apply_to_symbols(&self) -> Result<PolyVector> {
        self.matvec(&PolyVector::symbols(self.n))
    }

    /// `x^T M x`.
    pub fn quadratic_form(&self) -> Result<Polynomial> {
        Ok(self.apply_to_symbols()?.dot_symbols())
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|i| (i + 1..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    fn first_skew_violation(&self) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (i..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(self.get(i, j) + self.get(j, i)).is_zero())
    }

    /// Splits a square matrix into its symmetric and skew-symmetric parts.
    pub fn split_sym_skew(&self) -> Result<(SymPolyMatrix, SkewPolyMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let half = Rational::one() / Rational::from_integer(2.into());
        let t = self.transpose();
        let sym = PolyMatrix::from_fn(self.n, self.rows, self.cols, |i, j| (self.get(i, j) + t.get(i, j)).scale(&half));
        let skew =
            PolyMatrix::from_fn(self.n, self.rows, self.cols, |i, j| (self.get(i, j) - t.get(i, j)).scale(&half));
        Ok((SymPolyMatrix::new(sym)?, SkewPolyMatrix::new(skew)?))
    }

    /// True iff `M + M^T` is identically zero.
    pub fn skew_check(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.first_skew_violation().is_none())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// A square polynomial matrix with `A^T = -A` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPolyMatrix(PolyMatrix);

impl SkewPolyMatrix {
    /// Validates skew-symmetry entrywise; fails on the first violating entry.
    pub fn new(m: PolyMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        if let Some((row, col)) = m.first_skew_violation() {
            return Err(Error::NotSkew { row, col });
        }
        Ok(SkewPolyMatrix(m))
    }

    pub fn zero(n: usize) -> Self {
        SkewPolyMatrix(PolyMatrix::zero(n, n, n))
    }

    /// `x^alpha (e_i e_j^T - e_j e_i^T)` scaled by `c`.
    pub fn elementary(alpha: &crate::poly::MultiIndex, i: usize, j: usize, c: &Rational) -> Self {
        let n = alpha.len();
        let mut m = PolyMatrix::zero(n, n, n);
        let p = Polynomial::monomial(alpha.clone(), c.clone());
        m.set(j, i, -&p);
        m.set(i, j, p);
        SkewPolyMatrix(m)
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.0
    }

    pub fn add(&self, other: &SkewPolyMatrix) -> Result<SkewPolyMatrix> {
        Ok(SkewPolyMatrix(self.0.try_add(&other.0)?))
    }

    /// Adds `c` to entry `(i, j)` and `-c` to `(j, i)`, keeping the invariant.
    pub(crate) fn add_pair(&mut self, i: usize, j: usize, c: &Polynomial) {
        let upper = &*self.0.entry_mut(i, j) + c;
        *self.0.entry_mut(i, j) = upper;
        let lower = &*self.0.entry_mut(j, i) - c;
        *self.0.entry_mut(j, i) = lower;
    }
}

impl Deref for SkewPolyMatrix {
    type Target = PolyMatrix;
    fn deref(&self) -> &PolyMatrix {
        &self.0
    }
}

/// A square polynomial matrix with `H^T = H` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymPolyMatrix(PolyMatrix);

impl SymPolyMatrix {
    pub fn new(m: PolyMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        if let Some((row, col)) = m.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(SymPolyMatrix(m))
    }

    pub fn zero(n: usize) -> Self {
        SymPolyMatrix(PolyMatrix::zero(n, n, n))
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> PolyMatrix {
        self.0
    }

    /// Adds `c` to `(i, j)` and, off the diagonal, to `(j, i)`.
    pub(crate) fn add_symmetric(&mut self, i: usize, j: usize, c: &Polynomial) {
        let v = &*self.0.entry_mut(i, j) + c;
        *self.0.entry_mut(i, j) = v;
        if i != j {
            let v = &*self.0.entry_mut(j, i) + c;
            *self.0.entry_mut(j, i) = v;
        }
    }
}

impl Deref for SymPolyMatrix {
    type Target = PolyMatrix;
    fn deref(&self) -> &PolyMatrix {
        &self.0
    }
}
