use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expressions live over different variable tables")]
    TableMismatch,
    #[error("division by the zero expression")]
    DivisionByZero,
    #[error("denominator vanishes identically under substitution {bindings}")]
    SubstitutionPole { bindings: String },
    #[error("pole at q = 0 (q-valuation {valuation})")]
    QPole { valuation: i64 },
    #[error("q = 0 part of the denominator is not a unit: {0}")]
    NonUnitLeadingTerm(String),
    #[error("permutation error: {0}")]
    Permutation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expression is not invariant under {0}")]
    NotInvariant(String),
    #[error("non-equivariant limit does not exist: {0}")]
    EquivariantPole(String),
}

impl Error {
    /// Errors caused by bad user input rather than a broken invariant.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownVariable(_)
                | Error::Parse(_)
                | Error::InvalidSpace(_)
                | Error::InvalidParameter(_)
                | Error::DimensionMismatch(_)
        )
    }
}
