//! Exact combinatorics and polytope computations for magog matrices,
//! magog triangles and boolean triangles.

pub mod bijection;
pub mod btp;
pub mod certificate;
pub mod ehrhart;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod hull;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod point;
pub mod rational;
pub mod serial;
pub mod stats;
pub mod suites;
pub mod tables;
pub mod triangle;
pub mod tsscpp;
pub mod validate;

pub use error::{Error, Result};
pub use matrix::{is_132_avoiding, Permutation, SignMatrix};
pub use rational::Rational;
pub use triangle::{BooleanTriangle, MagogTriangle, TriangularArray};
pub use validate::{Constraint, Mode, ValidationReport, Violation};
