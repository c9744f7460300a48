//! Blocks along a tower of finite quotients: coinvariant maps, lifting of
//! block idempotents, and the verdicts a finite prefix gives about the limit.

mod chain;
mod coinvariants;
mod verdict;

pub use chain::{lift_block, BlockTower, Link};
pub use coinvariants::{coinvariants, Coinvariants};
pub use verdict::{
    stabilize, star_theorem_check, verify_radical_socle_tower, DefectKind, DefectVerdict, DimKind, DimVerdict,
    StabilizationVerdict, StarCheck,
};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::brauer::BrauerError;
use crate::groups::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TowerError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
    #[error("level {0}: {1}")]
    Level(usize, BrauerError),
    #[error("projection is not a surjective homomorphism onto the coarse group")]
    BadProjection,
    #[error("level {0} has no block {1}")]
    NoSuchBlock(usize, usize),
    #[error("no block of level {0} lies over the chosen block")]
    NoLift(usize),
    #[error("block lifting is not unique within the given depth")]
    Ambiguous,
    #[error("stabilization needs at least two levels")]
    TooFewLevels,
    #[error("precondition violated: {0}")]
    Precondition(String),
}
