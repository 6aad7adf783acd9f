//! Exact evaluation of quantum K-theoretic J-functions.
//!
//! The crate is layered bottom-up:
//!
//! * [`algebra`]: rationals, Laurent polynomials and rational expressions over a
//!   fixed [`algebra::VariableTable`], plus a factored sum representation used
//!   to keep common denominators small.
//! * [`kclass`]: space descriptors, λ₋₁ classes, Weyl-group pushforwards and
//!   Euler characteristics computed by torus localization.
//! * [`jfunc`]: evaluators for the J-function coefficients of projective
//!   spaces, products, Grassmannians, type-A flag varieties and the type B/C/D
//!   conjectural formulas.
//! * [`lab`]: q-shift operators and identity checks that produce
//!   [`lab::IdentityReport`]s.

pub mod algebra;
pub mod error;
pub mod jfunc;
pub mod kclass;
pub mod lab;
pub mod parallel;

pub use error::{Error, Result};
