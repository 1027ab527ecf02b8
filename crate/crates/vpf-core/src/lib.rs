//! Exact computation of vector partition functions.
//!
//! Given a finite set of nonzero integer vectors with nonnegative coordinates,
//! the vector partition function counts the ways to write a lattice point as a
//! nonnegative integer combination of those vectors. This crate computes it in
//! closed form: the generating function `prod 1/(1-x^a)` is rewritten as a sum
//! of fractions with linearly independent denominator vectors, and each chamber
//! of the induced cone subdivision gets a quasipolynomial valid on all of it.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! exponents arbitrary-precision integers. All public values are immutable
//! after construction and safe to share across threads.

pub mod arith;
pub mod error;
pub mod evaluate;
pub mod genfunc;
pub mod geometry;
pub mod jsonio;
pub mod latex;
pub mod laurent;
pub mod pfd;
pub mod quasi;
pub mod rootsys;

pub use arith::{IntMatrix, Rational};
pub use error::Error;
pub use genfunc::{DenominatorFactor, FractionSum, GeneratingFraction};
pub use laurent::{IntVector, LaurentPoly};
