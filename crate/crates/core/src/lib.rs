//! Inverse-moment laboratory for `(m, n, β)`-Laguerre and compound Wishart matrices.
//!
//! The moment `E[Tr(S^{-c})]` of a Laguerre matrix is finite exactly when
//! `c < (m - n + 1)β/2`. This crate checks that threshold three ways: by the
//! inequality itself, by exact Weingarten-calculus moments in the complex case,
//! and by Monte Carlo with heavy-tail diagnostics on the smallest eigenvalue.

pub mod cli;
pub mod combinatorics;
pub mod ensembles;
pub mod error;
pub mod estimators;
pub mod rational;
pub mod spectra;
pub mod weingarten;

pub use error::{Error, Result};
pub use rational::Rational;
