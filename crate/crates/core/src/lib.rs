//! Torus-equivariant Chern–Schwartz–MacPherson classes of Schubert cells in
//! type-A partial flag manifolds.
//!
//! A class is represented by its restrictions to the torus fixed points. The
//! restrictions of `c^SM(Ω_I)` are obtained from the modified weight function
//! `W_I / e_λ`; [`verify`] checks them against the interpolation axioms and
//! the standard identities satisfied by CSM classes.

pub mod algebra;
pub mod error;
pub mod flag;
pub mod render;
pub mod verify;
pub mod weight;

pub use algebra::{FactoredRational, LinearForm, Monomial, Polynomial, Scalar, Var};
pub use error::{AlgebraError, Error, ParseError, Result};
pub use flag::{IndexTuple, Shape, WeightList};
pub use verify::{AxiomReport, Check, RestrictionMatrix, Verdict};
pub use weight::{Method, RestrictionTuple, TableFilling, DEFAULT_TERM_BUDGET};
