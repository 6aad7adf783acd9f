//! Exact arithmetic: rational scalars, Laurent polynomials over a fixed
//! variable table, rational expressions and a factored sum representation.

mod factored;
mod json;
mod monomial;
mod perm;
mod poly;
mod rational;
mod rx;
mod series;
mod subst;
mod table;
mod text;

pub use factored::{Factored, FactoredSum, ReducedRx};
pub use json::{poly_from_json, poly_to_json, rx_from_json, rx_to_json};
pub use monomial::Monomial;
pub use perm::{Permutation, VarGroup};
pub use poly::Polynomial;
pub use rational::{format_rational, parse_rational, Rational};
pub use rx::{rx_arith, rx_equals, rx_permute, rx_substitute, ArithOp, RationalExpression};
pub use series::{q_valuation, rx_q_series};
pub use subst::Substitution;
pub use table::VariableTable;
pub use text::{parse_polynomial, parse_rx};
