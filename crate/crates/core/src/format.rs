//! JSON documents: system files and decomposition reports.
//!
//! Polynomials are stored as strings in the textual grammar, printed in
//! graded-lex order, so that documents are human-writable and byte-stable.

use serde::{Deserialize, Serialize};

use crate::decomposition::{verify_certificate, CertificateCheck, DecompositionReport};
use crate::error::{Error, Result};
use crate::games::PayoffMatrix;
use crate::parse::parse_polynomial;
use crate::polymat::{PolyMatrix, PolyVector};

/// A system file: either a payoff matrix or a vector field in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payoff: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SystemSpec {
    Payoff(PayoffMatrix),
    Field(PolyVector),
}

impl SystemFile {
    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("system files serialize");
        s.push('\n');
        s
    }

    pub fn from_payoff(name: Option<String>, h: &PayoffMatrix) -> Self {
        SystemFile { name, description: None, n: h.dimension(), payoff: Some(matrix_strings(h.matrix())), field: None }
    }

    pub fn from_field(name: Option<String>, g: &PolyVector) -> Self {
        SystemFile { name, description: None, n: g.dimension(), payoff: None, field: Some(vector_strings(g)) }
    }

    /// Parses every entry and checks the declared shape.
    pub fn spec(&self) -> Result<SystemSpec> {
        if self.n == 0 {
            return Err(Error::InvalidDimension("n must be at least 1".into()));
        }
        match (&self.payoff, &self.field) {
            (Some(rows), None) => Ok(SystemSpec::Payoff(PayoffMatrix::new(parse_matrix(self.n, "payoff", rows)?)?)),
            (None, Some(entries)) => Ok(SystemSpec::Field(parse_vector(self.n, "field", entries)?)),
            _ => Err(Error::Format("a system file needs exactly one of `payoff` or `field`".into())),
        }
    }

    pub fn payoff(&self) -> Result<PayoffMatrix> {
        match self.spec()? {
            SystemSpec::Payoff(h) => Ok(h),
            SystemSpec::Field(_) => Err(Error::Format("expected a `payoff` matrix".into())),
        }
    }

    /// The vector field `g`; for a payoff file this is `H x - (x^T H x) 1`.
    pub fn field(&self) -> Result<PolyVector> {
        match self.spec()? {
            SystemSpec::Field(g) => Ok(g),
            SystemSpec::Payoff(h) => crate::games::payoff_bracket(h.matrix()),
        }
    }
}

pub fn vector_strings(v: &PolyVector) -> Vec<String> {
    v.entries().iter().map(ToString::to_string).collect()
}

pub fn matrix_strings(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

pub fn parse_vector(n: usize, what: &str, entries: &[String]) -> Result<PolyVector> {
    if entries.len() != n {
        return Err(Error::Format(format!("{what}: expected {n} entries, found {}", entries.len())));
    }
    let polys = entries
        .iter()
        .enumerate()
        .map(|(i, s)| parse_polynomial(s, n).map_err(|e| Error::Format(format!("{what}[{}]: {e}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    PolyVector::new(polys)
}

pub fn parse_matrix(n: usize, what: &str, rows: &[Vec<String>]) -> Result<PolyMatrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_polynomial(s, n).map_err(|e| Error::Format(format!("{what}[{}][{}]: {e}", i + 1, j + 1)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::new(n, parsed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDocument {
    pub skew: bool,
    pub degree_bound: bool,
    pub certificate: bool,
}

/// Serialized [`DecompositionReport`]: the input, every intermediate, the
/// skew result and the certificate quotient/remainder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub n: usize,
    pub g: Vec<String>,
    pub g_bar: Vec<String>,
    pub s: String,
    #[serde(rename = "H")]
    pub h_matrix: Vec<Vec<String>>,
    pub h: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub g_prime: Vec<String>,
    #[serde(rename = "A_prime")]
    pub a_prime: Vec<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    pub quotient: Vec<String>,
    pub remainder: Vec<String>,
    pub check: CheckDocument,
}

impl ReportDocument {
    pub fn new(report: &DecompositionReport) -> Self {
        let check = report.verify();
        ReportDocument {
            n: report.dimension(),
            g: vector_strings(&report.g),
            g_bar: vector_strings(&report.g_bar),
            s: report.s.to_string(),
            h_matrix: matrix_strings(report.h_matrix.matrix()),
            h: vector_strings(&report.h),
            b: matrix_strings(report.b.matrix()),
            g_prime: vector_strings(&report.g_prime),
            a_prime: matrix_strings(report.a_prime.matrix()),
            a: matrix_strings(report.a.matrix()),
            quotient: vector_strings(&report.quotient),
            remainder: vector_strings(&report.remainder),
            check: CheckDocument { skew: check.skew, degree_bound: check.degree_bound, certificate: check.certificate },
        }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Re-checks the stored `g`, `A` and quotient from scratch; the stored
    /// `check` flags are ignored.
    pub fn recheck(&self) -> Result<CertificateCheck> {
        let g = parse_vector(self.n, "g", &self.g)?;
        let a = parse_matrix(self.n, "A", &self.a)?;
        let q = parse_vector(self.n, "quotient", &self.quotient)?;
        Ok(verify_certificate(&g, &a, &q))
    }
}
