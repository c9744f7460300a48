//! Brauer trees: extraction from cyclic-defect blocks and synthesis of the
//! projective structure of a Brauer tree algebra.

mod extract;
mod synth;
mod tree;

pub use extract::{extract_tree, uniserial_pair, UniserialPair};
pub use synth::{
    cross_validate, cycle_quiver_form, synthesize_projectives, Check, CycleQuiver, SynthesizedPim, ValidationReport,
};
pub use tree::{BrauerTree, Multiplicity, TreePermutations, Vertex, VertexKind};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("tree unavailable: defect not cyclic")]
    DefectNotCyclic,
    #[error("tree unavailable: trivial defect group")]
    TrivialDefect,
    #[error("module is not indecomposable projective: {0}")]
    NotIndecomposable(String),
    #[error("tree invariant violated: {0}")]
    TreeInvariant(String),
    #[error("tree has no exceptional vertex")]
    NoExceptional,
    #[error("infinite multiplicity needs a truncation cap")]
    NeedsTruncation,
    #[error("tree is not a star with infinite multiplicity")]
    NotInfiniteStar,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
