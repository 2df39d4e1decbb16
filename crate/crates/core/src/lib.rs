//! Zero-sum representations of polynomial replicator dynamics.
//!
//! Given a polynomial vector field `g` whose population average `x^T g`
//! vanishes on the hyperplane `Σ x_i = 1`, [`decompose`] builds a
//! skew-symmetric polynomial payoff `A(x)` with `g = A(x) x` there, together
//! with an exact divisibility certificate. Everything algebraic runs over exact
//! rationals; only time stepping in [`dynamics`] uses floating point.

pub mod decomposition;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod games;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod polymat;
pub mod sample;

pub use decomposition::{
    build_b, build_h, decompose, kernel_dimension, skew_factor_exact, spanning_set, strengthened_b, verify_certificate,
    BasisElement, CertificateCheck, DecompositionReport,
};
pub use dynamics::{FieldForm, IntegrateOptions, PhasePortrait, ReplicatorSystem, Trajectory};
pub use error::{Error, Result};
pub use format::{ReportDocument, SystemFile, SystemSpec};
pub use games::{
    affine_skew_equivalent, constant_representability, nullspace_equivalent, payoff_bracket, phi, FeasibilityVerdict,
    Obstruction, PayoffKind, PayoffMatrix,
};
pub use parse::{parse_polynomial, ParseDiagnostic};
pub use poly::{MultiIndex, Polynomial, Rational};
pub use polymat::{PolyMatrix, PolyVector, SkewPolyMatrix, SymPolyMatrix};
