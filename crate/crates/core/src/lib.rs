//! Exact computations around Laurent-polynomial mirrors of Fano varieties:
//! classical periods, polar polytopes and lattice counts, Grassmannian
//! network charts and their superpotentials, and the reconstruction of
//! theta-function structure constants from a period sequence.

pub mod catalog;
pub mod error;
pub mod frobenius;
pub mod grassmannian;
pub mod laurent;
pub mod par;
pub mod polytope;
pub mod selfcheck;
pub mod young;

pub use error::{Error, Result};
pub use laurent::{LaurentPolynomial, QPoly, Rational};
