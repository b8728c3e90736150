//! Exact classification of degenerate fibres of degree-two K3 surfaces.
//!
//! The crate is organized bottom up: exact coefficient arithmetic, sparse
//! multivariate and dense univariate polynomials, gcds, resultants and
//! factorization; on top of those sit local (germ) analysis, the weighted
//! model handling, the fibre classifier with its evidence tables, and the
//! combinatorial checker for degeneration configurations.

pub mod algnum;
pub mod classify;
pub mod coeff;
pub mod conic;
pub mod poly;
pub mod factor;
pub mod gcd;
pub mod germ;
pub mod kulikov;
pub mod localalg;
pub mod locus;
pub mod models;
pub mod profile;
pub mod resultant;
pub mod tables;
pub mod unipoly;

pub use classify::{classify, Classification, ClassifyError, Evidence, FiberType, Row};
pub use coeff::{Coeff, CoeffError, ExtField, Rational};
pub use kulikov::{check_all, KulikovConfig, Violation};
pub use models::FiberModel;
pub use poly::{Monomial, MultiPoly, VarSet};
pub use tables::Annotation;
pub use unipoly::UPoly;
