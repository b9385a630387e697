//! Finite-dimensional bound quiver algebras and their modules.
//!
//! Modules are representations of the quiver: an arrow `a: i -> j` acts by a matrix
//! `V_i -> V_j` on column vectors, and a path `a_1 ... a_n` acts by `M_{a_n} ... M_{a_1}`.
//! With paths composed left to right these are right modules; the indecomposable
//! projective at `v` is `e_v A` and the injective is `D(A e_v)`.

mod algebra;
mod bimodule;
mod homological;
mod module;
mod tilde;

pub use algebra::{BoundAlgebra, FreeMap};
pub use bimodule::{ext2_bimodule, tensor_algebra_dims, tensor_power, Bimodule, TensorDims};
pub use homological::{
    ar_translate, ext_dim, global_dimension, minimal_projective_resolution, nakayama, tor2, tor2_functor_nilpotent,
    tor2_nilpotent, GlobalDimension, Nilpotency, Resolution,
};
pub use module::{Morphism, Representation};
pub use tilde::{ext2_simple_dims, minimal_relation_dims, tilde_quiver};

use crate::groebner::Verdict;
use crate::path::PathError;
use crate::quiver::QuiverError;
use thiserror::Error;

pub const DEFAULT_BOUND: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FindimError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("relation {0} is not admissible (has a term of length below 2)")]
    NotAdmissible(String),
    #[error("quotient algebra is not certified finite-dimensional: {0}")]
    NotFinite(Verdict),
    #[error("global dimension exceeds 2 (found {0})")]
    GlobalDimensionTooLarge(String),
    #[error("power bound {0} exceeded")]
    BoundExceeded(usize),
    #[error("representation does not satisfy relation {0}")]
    RelationViolated(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("tensor algebra is not finite-dimensional within the bound")]
    InfiniteTensorAlgebra,
}
