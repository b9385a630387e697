//! Auslander-Reiten combinatorics of hereditary algebras.
//!
//! A `kQ`-module here is a representation of `Q^op`, matching the right-module convention of
//! [`crate::findim`]: the injective `I_j` has `dim I_j[i] = #paths j -> i` and the projective
//! `P_j` has `dim P_j[i] = #paths i -> j`, both counted in `Q`.

mod category;
mod fincat;
mod knit;

pub use category::MeshCategory;
pub use fincat::{FinCat, Presentation};
pub use knit::{knit_finite, knit_postprojective, knit_preinjective, Component, MeshArrow, MeshVertex, TranslationQuiver};

use crate::findim::FindimError;
use crate::linalg::{to_i64, Matrix, Q};
use crate::quiver::{Quiver, QuiverError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Findim(#[from] FindimError),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("quiver is not connected")]
    Disconnected,
    #[error("dimension vector has length {got}, expected {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex ({orbit}, {power}) is outside the knitted window")]
    OutsideWindow { orbit: String, power: usize },
    #[error("knitting did not terminate within depth {0}")]
    NotFinite(usize),
    #[error("dimension vectors overflow at power {0}")]
    Overflow(usize),
    #[error("category is not directed: {0}")]
    NotDirected(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

fn require_hereditary(q: &Quiver) -> Result<Vec<usize>, MeshError> {
    q.require_ungraded()?;
    q.topological_order().ok_or(MeshError::Cyclic)
}

fn check_len(q: &Quiver, x: &[i64]) -> Result<(), MeshError> {
    if x.len() != q.vertex_count() {
        return Err(MeshError::SizeMismatch { expected: q.vertex_count(), got: x.len() });
    }
    Ok(())
}

/// `<x, y> = sum_i x_i y_i - sum_{a: i -> j} x_i y_j`, which is `dim Hom - dim Ext^1` for
/// representations of `q`.
pub fn euler_form(q: &Quiver, x: &[i64], y: &[i64]) -> Result<i64, MeshError> {
    require_hereditary(q)?;
    check_len(q, x)?;
    check_len(q, y)?;
    let diag: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let off: i64 = (0..q.arrow_count()).map(|a| x[q.source(a)] * y[q.target(a)]).sum();
    Ok(diag - off)
}

/// `c[i][j] = #paths i -> j`.
pub fn path_counts(q: &Quiver) -> Result<Vec<Vec<i64>>, MeshError> {
    let order = require_hereditary(q)?;
    let n = q.vertex_count();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 1;
        for &v in &order {
            if c[i][v] == 0 {
                continue;
            }
            for &a in q.arrows_from(v) {
                let t = q.target(a);
                c[i][t] += c[i][v];
            }
        }
    }
    Ok(c)
}

pub fn injective_dims(q: &Quiver) -> Result<Vec<Vec<i64>>, MeshError> {
    path_counts(q)
}

pub fn projective_dims(q: &Quiver) -> Result<Vec<Vec<i64>>, MeshError> {
    let c = path_counts(q)?;
    let n = q.vertex_count();
    Ok((0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect())
}

/// `Phi = -C^T C^{-1}` with `C` the path-count matrix; `Phi dim X = dim tau X` for
/// non-projective indecomposable `X`.
pub fn coxeter_matrix(q: &Quiver) -> Result<Matrix, MeshError> {
    let c = path_counts(q)?;
    let n = q.vertex_count();
    let flat: Vec<i64> = c.iter().flatten().copied().collect();
    let cm = Matrix::from_ints(n, n, &flat);
    let inv = cm.inverse().ok_or_else(|| MeshError::Internal("singular Cartan matrix".into()))?;
    Ok(cm.transpose().mul(&inv).neg())
}

fn apply(m: &Matrix, x: &[i64]) -> Result<Vec<i64>, MeshError> {
    let v: Vec<Q> = x.iter().map(|&a| Q::from_integer(a.into())).collect();
    m.mul_vec(&v)
        .iter()
        .map(|e| to_i64(e).ok_or_else(|| MeshError::Internal("non-integral Coxeter image".into())))
        .collect()
}

pub fn coxeter_translate_dim(q: &Quiver, x: &[i64]) -> Result<Vec<i64>, MeshError> {
    check_len(q, x)?;
    apply(&coxeter_matrix(q)?, x)
}

pub fn coxeter_translate_inverse_dim(q: &Quiver, x: &[i64]) -> Result<Vec<i64>, MeshError> {
    check_len(q, x)?;
    let inv = coxeter_matrix(q)?.inverse().ok_or_else(|| MeshError::Internal("singular Coxeter matrix".into()))?;
    apply(&inv, x)
}
