//! JSON shapes for states, morphisms, and causal sets.
//!
//! Rationals travel as canonical `"p/q"` strings. Classical states are flat
//! coordinate vectors; quantum states are Hermitian blocks with rational
//! `re`/`im` grids, converted to internal coordinates on load. A causal set
//! dump carries the derived stats alongside the subspace so a reader gets
//! dimension, flatness, and first-order-ness without recomputing them.

use serde::{Deserialize, Serialize};

use crate::affine::AffineSubspace;
use crate::causal::{CausalError, CausalSet};
use crate::linalg::Vector;
use crate::model::morphism::Morphism;
use crate::model::quantum::{block_coords, CMat};
use crate::model::{vector_to_blocks, Backend, ModelError, ModelObject};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("state file must carry `{0}` for this backend")]
    MissingField(&'static str),
    #[error("hermitian block {index}: {reason}")]
    BadBlock { index: usize, reason: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HermitianBlockDto {
    pub re: Vec<Vec<Rational>>,
    pub im: Vec<Vec<Rational>>,
}

/// A single state. Exactly one of `vector` (classical coordinates) and
/// `blocks` (quantum Hermitian blocks) is expected, matching the backend.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateDto {
    pub backend: Backend,
    pub object: ModelObject,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<HermitianBlockDto>>,
}

fn block_from_dto(index: usize, dim: usize, dto: &HermitianBlockDto) -> Result<CMat, JsonError> {
    let bad = |reason: &str| JsonError::BadBlock { index, reason: reason.into() };
    let grid_ok = |g: &Vec<Vec<Rational>>| g.len() == dim && g.iter().all(|r| r.len() == dim);
    if !grid_ok(&dto.re) || !grid_ok(&dto.im) {
        return Err(bad(&format!("expected a {dim}x{dim} re and im grid")));
    }
    let mut m = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m.set(i, j, dto.re[i][j].clone(), dto.im[i][j].clone());
        }
    }
    if !m.is_hermitian() {
        return Err(bad("matrix is not Hermitian"));
    }
    Ok(m)
}

/// Decode a state file into internal coordinates.
pub fn state_from_dto(dto: &StateDto) -> Result<(Backend, ModelObject, Vector), JsonError> {
    if !dto.backend.admits(&dto.object) {
        return Err(ModelError::BackendMismatch {
            backend: dto.backend,
            object: dto.object.clone(),
        }
        .into());
    }
    let vector = match dto.backend {
        Backend::ClassicalNonneg | Backend::ClassicalAffine => {
            let v = dto.vector.as_ref().ok_or(JsonError::MissingField("vector"))?;
            if v.len() != dto.object.ambient_dim() {
                return Err(ModelError::VectorLength {
                    expected: dto.object.ambient_dim(),
                    got: v.len(),
                }
                .into());
            }
            Vector(v.clone())
        }
        Backend::QuantumCp => {
            let blocks = dto.blocks.as_ref().ok_or(JsonError::MissingField("blocks"))?;
            let dims = dto.object.blocks().expect("quantum object");
            if blocks.len() != dims.len() {
                return Err(JsonError::BadBlock {
                    index: blocks.len().min(dims.len()),
                    reason: format!("expected {} blocks, got {}", dims.len(), blocks.len()),
                });
            }
            let mut coords = Vec::with_capacity(dto.object.ambient_dim());
            for (i, (dim, b)) in dims.iter().zip(blocks).enumerate() {
                coords.extend(block_coords(&block_from_dto(i, *dim, b)?));
            }
            Vector(coords)
        }
    };
    Ok((dto.backend, dto.object.clone(), vector))
}

/// Encode internal coordinates as a state file.
pub fn state_to_dto(backend: Backend, object: &ModelObject, v: &Vector) -> StateDto {
    match backend {
        Backend::ClassicalNonneg | Backend::ClassicalAffine => StateDto {
            backend,
            object: object.clone(),
            vector: Some(v.0.clone()),
            blocks: None,
        },
        Backend::QuantumCp => {
            let blocks = vector_to_blocks(object, v)
                .iter()
                .map(|m| {
                    let d = m.dim();
                    let grid = |f: &dyn Fn(usize, usize) -> Rational| {
                        (0..d).map(|i| (0..d).map(|j| f(i, j)).collect()).collect()
                    };
                    HermitianBlockDto {
                        re: grid(&|i, j| m.re(i, j).clone()),
                        im: grid(&|i, j| m.im(i, j).clone()),
                    }
                })
                .collect();
            StateDto { backend, object: object.clone(), vector: None, blocks: Some(blocks) }
        }
    }
}

/// A base-category morphism as a dense rational matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDto {
    pub backend: Backend,
    pub src: ModelObject,
    pub dst: ModelObject,
    pub matrix: Vec<Vec<Rational>>,
}

pub fn morphism_from_dto(dto: &MorphismDto) -> Result<Morphism, JsonError> {
    let rows: Vec<Vector> = dto.matrix.iter().map(|r| Vector(r.clone())).collect();
    let matrix = if rows.is_empty() {
        crate::linalg::Matrix::zeros(0, dto.src.ambient_dim())
    } else {
        if rows.iter().any(|r| r.dim() != rows[0].dim()) {
            return Err(ModelError::MatrixShape {
                rows: rows.len(),
                cols: 0,
                expected_rows: dto.dst.ambient_dim(),
                expected_cols: dto.src.ambient_dim(),
            }
            .into());
        }
        crate::linalg::Matrix::from_rows(&rows)
    };
    Ok(Morphism::new(dto.backend, dto.src.clone(), dto.dst.clone(), matrix)?)
}

pub fn morphism_to_dto(m: &Morphism) -> MorphismDto {
    MorphismDto {
        backend: m.backend,
        src: m.src.clone(),
        dst: m.dst.clone(),
        matrix: m.matrix.row_vectors().into_iter().map(|r| r.0).collect(),
    }
}

/// Derived per-set statistics carried in a dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetStats {
    pub affine_dim: Option<usize>,
    pub is_flat: bool,
    pub is_first_order: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CausalSetDump {
    pub backend: Backend,
    pub object: ModelObject,
    pub body: AffineSubspace,
    pub stats: SetStats,
}

pub fn dump_causal_set(c: &CausalSet) -> Result<CausalSetDump, CausalError> {
    Ok(CausalSetDump {
        backend: c.backend,
        object: c.object.clone(),
        body: c.body.clone(),
        stats: SetStats {
            affine_dim: c.body.dim(),
            is_flat: c.is_flat()?,
            is_first_order: c.is_first_order()?,
        },
    })
}

/// Rebuild the set from a dump; the stats are advisory and ignored.
pub fn load_causal_set(dump: &CausalSetDump) -> Result<CausalSet, CausalError> {
    CausalSet::new(dump.backend, dump.object.clone(), dump.body.clone())
}
