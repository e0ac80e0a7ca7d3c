//! Vertex certificates: for each vertex a linear functional and threshold
//! with the vertex strictly above and every other vertex strictly below.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::column_partial_sums;
use crate::enumerate::{boolean_triangles, install, magog_matrices};
use crate::error::{Error, Result};
use crate::matrix::SignMatrix;
use crate::point::Coordinates;
use crate::rational::{int, ratio, Rational};
use crate::tables::binomial;
use crate::triangle::BooleanTriangle;
use crate::validate::validate_magog;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polytope {
    /// Convex hull of the magog matrices of order `n`.
    Tsscpp,
    /// Convex hull of the boolean triangles of order `n`.
    Btp,
}

impl Polytope {
    pub fn name(self) -> &'static str {
        match self {
            Polytope::Tsscpp => "tsscpp",
            Polytope::Btp => "btp",
        }
    }
}

impl fmt::Display for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Polytope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsscpp" => Ok(Polytope::Tsscpp),
            "btp" => Ok(Polytope::Btp),
            _ => Err(Error::Parse(format!("unknown polytope {s:?}"))),
        }
    }
}

/// `H(x) = sum weights[k] x[k]` compared against `threshold`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    /// 1-based positions: `(row, col)` for matrices, `(i, c)` for triangles.
    pub support: Vec<(usize, usize)>,
    /// Coefficients in the flat coordinate order of the vertex type.
    pub weights: Vec<i64>,
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub threshold: Rational,
}

impl SeparationCertificate {
    pub fn eval(&self, coords: &[i64]) -> i64 {
        self.weights.iter().zip(coords).map(|(w, x)| w * x).sum()
    }

    pub fn above(&self, coords: &[i64]) -> bool {
        int(self.eval(coords)) > self.threshold
    }

    pub fn below(&self, coords: &[i64]) -> bool {
        int(self.eval(coords)) < self.threshold
    }
}

/// `H_A(X) = sum over (i, j) in C_A of sum_{i' <= i} x_{i', j}`, where `C_A`
/// holds the positions above the last row whose column prefix sum is one.
pub fn magog_separating_hyperplane(a: &SignMatrix) -> Result<SeparationCertificate> {
    let report = validate_magog(a);
    if !report.is_valid() {
        return Err(Error::Precondition { what: "magog matrix", report });
    }
    let n = a.order();
    let partial = column_partial_sums(a)?;
    let mut support = Vec::new();
    let mut weights = vec![0i64; n * n];
    for i in 0..n.saturating_sub(1) {
        for j in 0..n {
            if partial.get(i, j) == 1 {
                support.push((i + 1, j + 1));
                for r in 0..=i {
                    weights[r * n + j] += 1;
                }
            }
        }
    }
    let threshold = int(binomial(n as u64, 2) as i64) - ratio(1, 2);
    Ok(SeparationCertificate { support, weights, threshold })
}

/// `H_B(X) = sum over ones of B of x - sum over zeros of B of x`.
pub fn boolean_separating_hyperplane(b: &BooleanTriangle) -> SeparationCertificate {
    let array = b.array();
    let support = array.positions().filter(|&(i, c)| b.get(i, c) == 1).collect::<Vec<_>>();
    let weights = array.entries().iter().map(|&v| if v == 1 { 1 } else { -1 }).collect();
    let threshold = int(support.len() as i64) - ratio(1, 2);
    SeparationCertificate { support, weights, threshold }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub polytope: Polytope,
    pub n: usize,
    pub vertices: usize,
    pub separated: usize,
    /// Indices, in enumeration order, of vertices whose certificate failed.
    pub failures: Vec<usize>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.separated == self.vertices
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}): {}/{} certificates separate", self.polytope, self.n, self.separated, self.vertices)
    }
}

fn check_all(polytope: Polytope, n: usize, coords: Vec<Vec<i64>>, certs: Vec<SeparationCertificate>) -> CertificateReport {
    let ok: Vec<bool> = install(|| {
        certs
            .par_iter()
            .enumerate()
            .map(|(k, cert)| {
                coords.iter().enumerate().all(|(l, x)| if k == l { cert.above(x) } else { cert.below(x) })
            })
            .collect()
    });
    let failures: Vec<usize> = ok.iter().enumerate().filter(|(_, &b)| !b).map(|(k, _)| k).collect();
    CertificateReport { polytope, n, vertices: ok.len(), separated: ok.len() - failures.len(), failures }
}

/// Builds the certificate of every vertex and checks strict separation
/// against every other vertex.
pub fn verify_vertex_certificates(polytope: Polytope, n: usize) -> Result<CertificateReport> {
    match polytope {
        Polytope::Tsscpp => {
            let vertices: Vec<SignMatrix> = magog_matrices(n)?.collect();
            let certs = vertices.iter().map(magog_separating_hyperplane).collect::<Result<Vec<_>>>()?;
            Ok(check_all(polytope, n, vertices.iter().map(Coordinates::coordinates).collect(), certs))
        }
        Polytope::Btp => {
            let vertices: Vec<BooleanTriangle> = boolean_triangles(n)?.collect();
            let certs = vertices.iter().map(boolean_separating_hyperplane).collect();
            Ok(check_all(polytope, n, vertices.iter().map(Coordinates::coordinates).collect(), certs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_support() {
        let cert = magog_separating_hyperplane(&SignMatrix::identity(3)).unwrap();
        assert_eq!(cert.support, vec![(1, 1), (2, 1), (2, 2)]);
        assert_eq!(cert.eval(&SignMatrix::identity(3).coordinates()), 3);
        assert_eq!(cert.threshold, ratio(5, 2));
        let p132 = SignMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap();
        assert!(magog_separating_hyperplane(&p132).is_err());
    }

    #[test]
    fn small_orders_separate() {
        for p in [Polytope::Tsscpp, Polytope::Btp] {
            for (n, v) in [(1, 1), (2, 2), (3, 7), (4, 42)] {
                let r = verify_vertex_certificates(p, n).unwrap();
                assert!(r.passed(), "{r}");
                assert_eq!(r.vertices, v);
            }
        }
    }
}
