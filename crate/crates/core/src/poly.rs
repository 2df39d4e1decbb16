//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`MultiIndex`] under graded
//! lexicographic order, so iteration and printing are deterministic. Zero
//! coefficients are never stored, which makes `==` decide polynomial identity.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the integer `v` as a rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for the fraction `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Prints a rational as `p` or `p/q` with `q > 0` and no spaces.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exponent vector `α` of the monomial `x^α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `α + e_i`.
    pub fn bump(&self, i: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] += 1;
        MultiIndex(e)
    }

    /// `α - e_i`, or `None` when `α_i = 0`.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    /// `α` with the `i`-th exponent replaced.
    pub fn with(&self, i: usize, exp: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] = exp;
        MultiIndex(e)
    }

    /// All multi-indices of length `n` and total degree `d`, in ascending graded-lex order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        fn fill(out: &mut Vec<MultiIndex>, cur: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(MultiIndex(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                fill(out, cur, pos + 1, left - e);
            }
            cur[pos] = 0;
        }
        if n == 0 {
            return if d == 0 { vec![MultiIndex(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        fill(&mut out, &mut vec![0; n], 0, d as u32);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `n` variables `x1..xn` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for n = {n}");
        Self::monomial(MultiIndex::unit(n, i), Rational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: Rational) -> Self {
        let n = alpha.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Polynomial { n, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging like terms.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: alpha.len() });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// The divisor `1 - (x1 + ... + xn)` whose zero set is the simplex hyperplane.
    pub fn simplex_form(n: usize) -> Self {
        let mut p = Polynomial::one(n);
        for i in 0..n {
            p.add_term(MultiIndex::unit(n, i), -Rational::one());
        }
        p
    }

    /// `x1 + ... + xn`.
    pub fn coordinate_sum(n: usize) -> Self {
        let mut p = Polynomial::zero(n);
        for i in 0..n {
            p.add_term(MultiIndex::unit(n, i), Rational::one());
        }
        p
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        self.terms.contains_key(alpha)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    /// Smallest degree among the terms, `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&MultiIndex::zero(self.n))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut out = Polynomial::zero(self.n);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.add(b), c * d);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect() }
    }

    /// Multiplies by the monomial `c * x^alpha`.
    pub fn mul_monomial(&self, alpha: &MultiIndex, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial { n: self.n, terms: self.terms.iter().map(|(a, v)| (a.add(alpha), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: point.len() });
        }
        let mut acc = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(alpha.exponents()) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Floating-point value; used only for diagnostics, never for identities.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.n);
        self.terms
            .iter()
            .map(|(alpha, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                alpha.exponents().iter().zip(point).fold(c, |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Splits into homogeneous parts keyed by degree; the parts sum back to `self`.
    pub fn homogeneous_components(&self) -> BTreeMap<usize, Polynomial> {
        let mut out: BTreeMap<usize, Polynomial> = BTreeMap::new();
        for (alpha, c) in &self.terms {
            out.entry(alpha.degree())
                .or_insert_with(|| Polynomial::zero(self.n))
                .terms
                .insert(alpha.clone(), c.clone());
        }
        out
    }

    /// The degree-`m` homogeneous part.
    pub fn homogeneous_part(&self, m: usize) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().filter(|(a, _)| a.degree() == m).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    /// Division by `1 - Σ x_i`, eliminating `x1`.
    ///
    /// Returns `(q, r)` with `self = (1 - Σ x_i) q + r` and `r` free of `x1`;
    /// `r` is `self` with `x1 := 1 - x2 - ... - xn` substituted, so it is zero
    /// exactly when `self` vanishes on the hyperplane `Σ x_i = 1`.
    pub fn divide_simplex(&self) -> (Polynomial, Polynomial) {
        if self.n == 0 {
            return (Polynomial::zero(0), self.clone());
        }
        self.divide_simplex_at(0)
    }

    /// Same as [`divide_simplex`](Self::divide_simplex) but eliminating the variable `var`.
    pub fn divide_simplex_at(&self, var: usize) -> (Polynomial, Polynomial) {
        assert!(var < self.n, "variable index {var} out of range for n = {}", self.n);
        let n = self.n;
        // x_var ≡ rest (mod divisor), rest = 1 - Σ_{i != var} x_i, divisor = rest - x_var.
        let mut rest = Polynomial::one(n);
        for i in (0..n).filter(|&i| i != var) {
            rest.add_term(MultiIndex::unit(n, i), -Rational::one());
        }

        let mut quotient = Polynomial::zero(n);
        let mut work = self.clone();
        loop {
            let top = work.terms.keys().map(|a| a.get(var)).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            // Leading slice: work = x_var^top * lead + (lower powers).
            // x_var^top * lead = x_var^(top-1) * lead * (rest - divisor).
            let mut reduced = Polynomial::zero(n);
            let mut kept = BTreeMap::new();
            for (alpha, c) in std::mem::take(&mut work.terms) {
                if alpha.get(var) == top {
                    reduced.terms.insert(alpha.with(var, top - 1), c);
                } else {
                    kept.insert(alpha, c);
                }
            }
            work.terms = kept;
            quotient = &quotient - &reduced;
            work = &work + &(&reduced * &rest);
        }
        (quotient, work)
    }

    /// Substitutes `x_var := 1 - Σ_{i != var} x_i`; the canonical representative on the hyperplane.
    pub fn reduce_on_hyperplane(&self, var: usize) -> Polynomial {
        self.divide_simplex_at(var).1
    }

    /// True when the polynomial vanishes identically on `Σ x_i = 1`.
    pub fn vanishes_on_simplex_hyperplane(&self) -> bool {
        self.divide_simplex().1.is_zero()
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial dimension mismatch in +")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial dimension mismatch in -")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial dimension mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, alpha: &MultiIndex) -> fmt::Result {
    let mut first = true;
    for (i, &e) in alpha.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Highest-degree terms first, e.g. `-x1^2 + x1*x2 + 1/2*x1 - 3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (alpha, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if alpha.is_constant() {
                f.write_str(&format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write_monomial(f, alpha)?;
            }
        }
        Ok(())
    }
}
