//! Exact arithmetic: rationals, sparse polynomials, linear forms and
//! rational functions with factored linear denominators.

pub(crate) mod dense;
mod frac;
mod json;
mod linear;
mod monomial;
mod poly;
mod scalar;
pub mod text;
mod var;

pub(crate) use frac::CancelledFactors;
pub use frac::FactoredRational;
pub use linear::{divide_exact, LinearForm};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use scalar::Scalar;
pub use var::Var;
