//! The group algebra kG over a splitting field: radical, simples,
//! projective indecomposables, blocks and defect groups.

mod blocks;
mod defect;
mod group_algebra;
mod loewy;
pub mod meataxe;
mod module;
mod radical;

pub use blocks::{block_decomposition, block_decomposition_split, central_primitive_idempotents, BlockData, Decomposition};
pub use defect::{defect_group, minimal_trace_subgroups, trace_realizes};
pub use group_algebra::{split_field, GroupAlgebra};
pub use loewy::{loewy, radical_layers_of, semisimple_factors, Filtration, LoewyData};
pub use module::{end_dim, hom, hom_dim, iso_test, ModuleRep};
pub use radical::{jacobson_radical, radical_bruteforce, Radical};

use thiserror::Error;

use crate::ff::FfError;
use crate::groups::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FfError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field does not split the algebra: {0}")]
    NonSplit(String),
    #[error("MeatAxe found neither a submodule nor an irreducibility proof (dimension {0})")]
    MeatAxeFailed(usize),
    #[error("invalid module: {0}")]
    BadModule(String),
    #[error("idempotent lifting failed: {0}")]
    Lifting(String),
    #[error("composition factor of a layer not matched by any known simple")]
    UnmatchedFactor,
}
