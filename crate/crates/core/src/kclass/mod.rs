//! Space descriptors, λ₋₁ classes, Weyl-group pushforwards and Euler
//! characteristics by torus localization.

mod euler;
mod pushforward;
mod space;

pub use euler::{
    chi_series, equivariant_euler_characteristic, euler_characteristic, fixed_point_restrict,
    fixed_point_restrict_sum, is_x_free, normal_euler, subsets,
};
pub use pushforward::{
    block_lambda, block_sizes, block_transpositions, check_block_invariant, lambda_minus1_dual,
    lambda_minus1_dual_factored, relative_tangent_euler, relative_tangent_euler_factored, weyl_pushforward,
    weyl_pushforward_blocks, weyl_pushforward_signed,
};
pub use pushforward::pair_factor;
pub use space::{l_name, x_name, IsotropicType, Level, MultiDegree, SpaceDescriptor, SpaceKind};

use crate::algebra::{FactoredSum, RationalExpression};
use crate::error::Result;

/// A class on a space, held in factored form.
#[derive(Clone, Debug)]
pub struct KClassExpr {
    pub space: SpaceDescriptor,
    pub value: FactoredSum,
}

impl KClassExpr {
    pub fn new(space: SpaceDescriptor, value: FactoredSum) -> Result<Self> {
        space.table().ensure_same(value.table())?;
        Ok(KClassExpr { space, value })
    }

    pub fn one(space: &SpaceDescriptor) -> Self {
        KClassExpr { space: space.clone(), value: FactoredSum::one(space.table()) }
    }

    pub fn to_rx(&self) -> RationalExpression {
        self.value.to_rx()
    }

    /// Checks invariance under the full symmetric group of every level.
    pub fn check_level_invariance(&self) -> Result<()> {
        for (i, level) in self.space.levels().iter().enumerate() {
            check_block_invariant(&self.value, &self.space.level_group(i + 1), &[level.rank])?;
        }
        Ok(())
    }
}
