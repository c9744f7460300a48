//! Finite groups as multiplication tables, p-subgroups, quotients and
//! towers of finite quotients.

mod group;
mod spec;
mod subgroup;
mod tower;

pub use group::{gcd, lcm, p_part, perm_from_cycles, FiniteGroup, DEFAULT_ORDER_CAP};
pub use spec::{GroupSpec, TowerSpec};
pub use subgroup::{all_p_subgroups, p_core, p_subgroups_up_to_conjugacy, quotient, sylow_subgroup, SubgroupRef};
pub use tower::GroupTower;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    BadTable(String),
    #[error("invalid permutation {0}")]
    BadPermutation(String),
    #[error("generated group exceeds the order cap {0}")]
    OrderCapExceeded(usize),
    #[error("invalid semidirect product: {0}")]
    BadSemidirect(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid tower: {0}")]
    BadTower(String),
    #[error("invalid group spec: {0}")]
    BadSpec(String),
}
