//! Evaluators for the K-theoretic J-function formulas.

mod coefficient;
mod combinat;
mod formulas;

pub use coefficient::{JCoefficient, JForm, JSeries, JTerm};
pub use combinat::{compositions, level_compositions, JumpProfile};
pub use formulas::*;

use crate::error::Result;
use crate::kclass::{MultiDegree, SpaceDescriptor};

/// Every coefficient with degree componentwise at most `cap`.
pub fn j_series(space: &SpaceDescriptor, cap: &MultiDegree) -> Result<JSeries> {
    let coefficients = MultiDegree::up_to(cap)
        .iter()
        .map(|d| j_coefficient(space, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(JSeries { space: space.clone(), cap: cap.clone(), coefficients })
}
