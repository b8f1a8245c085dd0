//! Base-category models: classical nonnegative, classical affine, and the
//! CP construction over direct sums of matrix algebras.
//!
//! Objects carry a coordinate ambient: n for classical systems, sum of d_i^2
//! real Hermitian coordinates for quantum block structure [d_1,...,d_k]. The
//! zero object is n = 0 or the empty block list. States and effects share one
//! coordinate map; the trace pairing's Gram weights live in `pair_full`, not
//! in the coordinates, so every stored number is rational.

pub mod morphism;
pub mod quantum;

use crate::linalg::{check_ambient, LinalgError, Vector};
use crate::rational::Rational;
use quantum::{block_coord_count, block_coords, block_from_coords, block_gram, CMat};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("backend {backend:?} does not admit object {object:?}")]
    BackendMismatch { backend: Backend, object: ModelObject },
    #[error("objects live in different model families")]
    MixedFamilies,
    #[error("expected a vector of length {expected}, got {got}")]
    VectorLength { expected: usize, got: usize },
    #[error("operation undefined on the zero object")]
    ZeroObject,
    #[error("quantum blocks must all be positive (zero object is the empty list)")]
    InvalidBlocks,
    #[error("operation requires quantum objects")]
    QuantumOnly,
    #[error("paired morphisms must share backend, source, and target")]
    PairMismatch,
    #[error("effect lies outside the effect cone")]
    EffectOutsideCone,
    #[error("morphism lies outside the base-category cone")]
    MorphismOutsideCone,
    #[error("matrix shape {rows}x{cols} does not match objects ({expected_rows}x{expected_cols})")]
    MatrixShape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
}

/// Which base category interprets the coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    /// Matrices over the nonnegative rationals.
    #[serde(rename = "classical")]
    ClassicalNonneg,
    /// Matrices over all rationals; the cone is the whole space.
    #[serde(rename = "classical-affine")]
    ClassicalAffine,
    /// CP maps on direct sums of matrix algebras, rational Hermitian coordinates.
    #[serde(rename = "quantum")]
    QuantumCp,
}

impl Backend {
    pub fn is_classical(self) -> bool {
        matches!(self, Backend::ClassicalNonneg | Backend::ClassicalAffine)
    }

    pub fn admits(self, object: &ModelObject) -> bool {
        match object {
            ModelObject::Classical(_) => self.is_classical(),
            ModelObject::Quantum(_) => self == Backend::QuantumCp,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Backend::ClassicalNonneg => "classical",
            Backend::ClassicalAffine => "classical-affine",
            Backend::QuantumCp => "quantum",
        }
    }
}

/// Carrier of a system: classical dimension or quantum block structure.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelObject {
    Classical(usize),
    Quantum(Vec<usize>),
}

impl ModelObject {
    pub fn classical(n: usize) -> Result<Self, ModelError> {
        check_ambient(n)?;
        Ok(ModelObject::Classical(n))
    }

    pub fn quantum(blocks: Vec<usize>) -> Result<Self, ModelError> {
        if blocks.iter().any(|&d| d == 0) {
            return Err(ModelError::InvalidBlocks);
        }
        let obj = ModelObject::Quantum(blocks);
        check_ambient(obj.ambient_dim())?;
        Ok(obj)
    }

    /// Zero object of the family a backend works in.
    pub fn zero_for(backend: Backend) -> Self {
        if backend.is_classical() {
            ModelObject::Classical(0)
        } else {
            ModelObject::Quantum(Vec::new())
        }
    }

    /// Monoidal unit: the one-dimensional system.
    pub fn unit_for(backend: Backend) -> Self {
        if backend.is_classical() {
            ModelObject::Classical(1)
        } else {
            ModelObject::Quantum(vec![1])
        }
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            ModelObject::Classical(n) => *n,
            ModelObject::Quantum(blocks) => blocks.iter().map(|&d| d * d).sum(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ambient_dim() == 0
    }

    pub fn blocks(&self) -> Option<&[usize]> {
        match self {
            ModelObject::Classical(_) => None,
            ModelObject::Quantum(blocks) => Some(blocks),
        }
    }

    /// Diagonal Gram weights of the trace pairing in these coordinates.
    pub fn gram(&self) -> Vector {
        match self {
            ModelObject::Classical(n) => Vector(vec![Rational::one(); *n]),
            ModelObject::Quantum(blocks) => {
                let mut g = Vec::with_capacity(self.ambient_dim());
                for &d in blocks {
                    g.extend(block_gram(d));
                }
                Vector(g)
            }
        }
    }

    /// Monoidal product of carriers; quantum blocks multiply pairwise in
    /// left-major order.
    pub fn tensor(&self, rhs: &ModelObject) -> Result<ModelObject, ModelError> {
        match (self, rhs) {
            (ModelObject::Classical(n), ModelObject::Classical(m)) => {
                ModelObject::classical(n * m)
            }
            (ModelObject::Quantum(a), ModelObject::Quantum(b)) => {
                let mut blocks = Vec::with_capacity(a.len() * b.len());
                for &d in a {
                    for &e in b {
                        blocks.push(d * e);
                    }
                }
                ModelObject::quantum(blocks)
            }
            _ => Err(ModelError::MixedFamilies),
        }
    }

    /// Direct sum of carriers; coordinates concatenate.
    pub fn biproduct(&self, rhs: &ModelObject) -> Result<ModelObject, ModelError> {
        match (self, rhs) {
            (ModelObject::Classical(n), ModelObject::Classical(m)) => {
                ModelObject::classical(n + m)
            }
            (ModelObject::Quantum(a), ModelObject::Quantum(b)) => {
                let mut blocks = a.clone();
                blocks.extend_from_slice(b);
                ModelObject::quantum(blocks)
            }
            _ => Err(ModelError::MixedFamilies),
        }
    }

    fn expect_len(&self, v: &Vector) -> Result<(), ModelError> {
        if v.dim() != self.ambient_dim() {
            return Err(ModelError::VectorLength { expected: self.ambient_dim(), got: v.dim() });
        }
        Ok(())
    }
}

/// Left fold of the monoidal product over a nonempty factor list.
pub fn tensor_many(factors: &[ModelObject]) -> Result<ModelObject, ModelError> {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().try_fold(first.clone(), |acc, f| acc.tensor(f))
}

/// Starting coordinate of each block of a quantum object.
pub fn block_offsets(object: &ModelObject) -> Vec<usize> {
    let blocks = object.blocks().expect("quantum object required");
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &d in blocks {
        offsets.push(acc);
        acc += block_coord_count(d);
    }
    offsets
}

/// Splits a coordinate vector of a quantum object into its block matrices.
pub fn vector_to_blocks(object: &ModelObject, v: &Vector) -> Vec<CMat> {
    let blocks = object.blocks().expect("quantum object required");
    let mut out = Vec::with_capacity(blocks.len());
    let mut off = 0;
    for &d in blocks {
        let len = block_coord_count(d);
        out.push(block_from_coords(d, &v.0[off..off + len]));
        off += len;
    }
    out
}

/// Concatenates block matrices back into a coordinate vector.
pub fn blocks_to_vector(object: &ModelObject, mats: &[CMat]) -> Vector {
    let blocks = object.blocks().expect("quantum object required");
    assert_eq!(blocks.len(), mats.len(), "block count mismatch");
    let mut out = Vec::with_capacity(object.ambient_dim());
    for (&d, m) in blocks.iter().zip(mats) {
        assert_eq!(m.dim(), d, "block dimension mismatch");
        out.extend(block_coords(m));
    }
    Vector(out)
}

/// Discard, uniform, dimension scalar, and the finite causal basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureVectors {
    pub discard: Vector,
    pub uniform: Vector,
    /// None exactly on the zero object, where d = discard(uniform) = 0 is not invertible.
    pub dim_scalar: Option<Rational>,
    pub causal_basis: Vec<Vector>,
}

pub fn structure_vectors(object: &ModelObject) -> StructureVectors {
    match object {
        ModelObject::Classical(n) => {
            let ones = Vector(vec![Rational::one(); *n]);
            StructureVectors {
                discard: ones.clone(),
                uniform: ones,
                dim_scalar: (*n > 0).then(|| Rational::from_int(*n as i64)),
                causal_basis: (0..*n).map(|i| Vector::unit(*n, i)).collect(),
            }
        }
        ModelObject::Quantum(blocks) => {
            let identity: Vec<CMat> = blocks.iter().map(|&d| CMat::identity(d)).collect();
            let id_coords = blocks_to_vector(object, &identity);
            let dim: usize = blocks.iter().sum();
            StructureVectors {
                discard: id_coords.clone(),
                uniform: id_coords,
                dim_scalar: (dim > 0).then(|| Rational::from_int(dim as i64)),
                causal_basis: quantum_causal_basis(object),
            }
        }
    }
}

/// Trace-one fiducial states spanning each block: basis state projectors plus
/// the two families of rank-one projectors onto |i>+|j> and |i>+i|j>.
fn quantum_causal_basis(object: &ModelObject) -> Vec<Vector> {
    let blocks = object.blocks().expect("quantum object required");
    let ambient = object.ambient_dim();
    let mut basis = Vec::with_capacity(ambient);
    let half = Rational::new(1, 2);
    let mut offset = 0;
    for &d in blocks {
        let len = block_coord_count(d);
        let mut push = |m: &CMat| {
            let mut v = Vector::zeros(ambient);
            for (k, c) in block_coords(m).into_iter().enumerate() {
                v[offset + k] = c;
            }
            basis.push(v);
        };
        for i in 0..d {
            push(&CMat::matrix_unit(d, i, i));
        }
        for i in 0..d {
            for j in i + 1..d {
                // (|i>+|j>)(<i|+<j|)/2
                let mut sym = CMat::matrix_unit(d, i, i).add(&CMat::matrix_unit(d, j, j));
                sym = sym.add(&CMat::matrix_unit(d, i, j)).add(&CMat::matrix_unit(d, j, i));
                push(&sym.scale(&half));
                // (|i>+i|j>)(<i|-i<j|)/2
                let mut skew = CMat::matrix_unit(d, i, i).add(&CMat::matrix_unit(d, j, j));
                skew = skew
                    .add(&CMat::matrix_unit(d, i, j).scale_complex(&Rational::zero(), &-Rational::one()))
                    .add(&CMat::matrix_unit(d, j, i).scale_complex(&Rational::zero(), &Rational::one()));
                push(&skew.scale(&half));
            }
        }
        offset += len;
    }
    basis
}

/// Membership of a coordinate vector in the state/effect cone.
pub fn cone_member(backend: Backend, object: &ModelObject, x: &Vector) -> Result<bool, ModelError> {
    if !backend.admits(object) {
        return Err(ModelError::BackendMismatch { backend, object: object.clone() });
    }
    object.expect_len(x)?;
    Ok(match backend {
        Backend::ClassicalNonneg => x.0.iter().all(|e| !e.is_negative()),
        Backend::ClassicalAffine => true,
        Backend::QuantumCp => vector_to_blocks(object, x).iter().all(quantum::is_psd),
    })
}

/// Full pairing of an effect with a state: Gram-weighted dot product. For
/// quantum objects this equals tr(E X) of the corresponding block matrices.
pub fn pair_full(object: &ModelObject, e: &Vector, x: &Vector) -> Result<Rational, ModelError> {
    object.expect_len(e)?;
    object.expect_len(x)?;
    Ok(e.hadamard(&object.gram()).dot(x))
}

/// Kronecker product of states along `a.tensor(b)` coordinates.
pub fn kron_states(
    a: &ModelObject,
    b: &ModelObject,
    x: &Vector,
    y: &Vector,
) -> Result<Vector, ModelError> {
    a.expect_len(x)?;
    b.expect_len(y)?;
    match (a, b) {
        (ModelObject::Classical(_), ModelObject::Classical(_)) => Ok(x.kron(y)),
        (ModelObject::Quantum(_), ModelObject::Quantum(_)) => {
            let target = a.tensor(b)?;
            let xb = vector_to_blocks(a, x);
            let yb = vector_to_blocks(b, y);
            let mut out = Vec::with_capacity(xb.len() * yb.len());
            for xi in &xb {
                for yj in &yb {
                    out.push(xi.kron(yj));
                }
            }
            Ok(blocks_to_vector(&target, &out))
        }
        _ => Err(ModelError::MixedFamilies),
    }
}

/// Contracts the B side of a state of A (x) B with an effect on B.
pub fn partial_right(
    a: &ModelObject,
    b: &ModelObject,
    effect_b: &Vector,
    h: &Vector,
) -> Result<Vector, ModelError> {
    b.expect_len(effect_b)?;
    let ab = a.tensor(b)?;
    ab.expect_len(h)?;
    match (a, b) {
        (ModelObject::Classical(n), ModelObject::Classical(m)) => {
            let mut out = Vector::zeros(*n);
            for i in 0..*n {
                for j in 0..*m {
                    let t = &effect_b[j] * &h[i * m + j];
                    out[i] += &t;
                }
            }
            Ok(out)
        }
        (ModelObject::Quantum(ba), ModelObject::Quantum(bb)) => {
            let eb = vector_to_blocks(b, effect_b);
            let hb = vector_to_blocks(&ab, h);
            let mut out: Vec<CMat> = ba.iter().map(|&d| CMat::zeros(d)).collect();
            for (bi, &di) in ba.iter().enumerate() {
                for (bj, &dj) in bb.iter().enumerate() {
                    let hij = &hb[bi * bb.len() + bj];
                    let lifted = CMat::identity(di).kron(&eb[bj]);
                    let prod = lifted.mul(hij);
                    // Partial trace over the second tensor factor.
                    for u in 0..di {
                        for v in 0..di {
                            let mut re = out[bi].re(u, v).clone();
                            let mut im = out[bi].im(u, v).clone();
                            for c in 0..dj {
                                re += prod.re(u * dj + c, v * dj + c);
                                im += prod.im(u * dj + c, v * dj + c);
                            }
                            out[bi].set(u, v, re, im);
                        }
                    }
                }
            }
            Ok(blocks_to_vector(a, &out))
        }
        _ => Err(ModelError::MixedFamilies),
    }
}

/// Contracts the A side of a state of A (x) B with an effect on A.
pub fn partial_left(
    a: &ModelObject,
    b: &ModelObject,
    effect_a: &Vector,
    h: &Vector,
) -> Result<Vector, ModelError> {
    a.expect_len(effect_a)?;
    let ab = a.tensor(b)?;
    ab.expect_len(h)?;
    match (a, b) {
        (ModelObject::Classical(n), ModelObject::Classical(m)) => {
            let mut out = Vector::zeros(*m);
            for j in 0..*m {
                for i in 0..*n {
                    let t = &effect_a[i] * &h[i * m + j];
                    out[j] += &t;
                }
            }
            Ok(out)
        }
        (ModelObject::Quantum(ba), ModelObject::Quantum(bb)) => {
            let ea = vector_to_blocks(a, effect_a);
            let hb = vector_to_blocks(&ab, h);
            let mut out: Vec<CMat> = bb.iter().map(|&d| CMat::zeros(d)).collect();
            for (bi, &di) in ba.iter().enumerate() {
                for (bj, &dj) in bb.iter().enumerate() {
                    let hij = &hb[bi * bb.len() + bj];
                    let lifted = ea[bi].kron(&CMat::identity(dj));
                    let prod = lifted.mul(hij);
                    // Partial trace over the first tensor factor.
                    for u in 0..dj {
                        for v in 0..dj {
                            let mut re = out[bj].re(u, v).clone();
                            let mut im = out[bj].im(u, v).clone();
                            for c in 0..di {
                                re += prod.re(c * dj + u, c * dj + v);
                                im += prod.im(c * dj + u, c * dj + v);
                            }
                            out[bj].set(u, v, re, im);
                        }
                    }
                }
            }
            Ok(blocks_to_vector(b, &out))
        }
        _ => Err(ModelError::MixedFamilies),
    }
}

/// Injection into the first summand of `a.biproduct(b)`.
pub fn inject_first(a: &ModelObject, b: &ModelObject, x: &Vector) -> Vector {
    assert_eq!(x.dim(), a.ambient_dim());
    x.concat(&Vector::zeros(b.ambient_dim()))
}

/// Injection into the second summand of `a.biproduct(b)`.
pub fn inject_second(a: &ModelObject, b: &ModelObject, y: &Vector) -> Vector {
    assert_eq!(y.dim(), b.ambient_dim());
    Vector::zeros(a.ambient_dim()).concat(y)
}

/// Projections out of `a.biproduct(b)` coordinates.
pub fn project_first(a: &ModelObject, _b: &ModelObject, z: &Vector) -> Vector {
    Vector(z.0[..a.ambient_dim()].to_vec())
}

pub fn project_second(a: &ModelObject, _b: &ModelObject, z: &Vector) -> Vector {
    Vector(z.0[a.ambient_dim()..].to_vec())
}

/// Result of complementing an effect against the discard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectComplement {
    pub lambda: Rational,
    pub complement: Vector,
}

/// Produces lambda > 0 and pi' in the effect cone with pi + pi' = lambda * discard.
/// Classical lambda is the maximal entry (1 when that is not positive, which
/// covers the zero effect and the unconstrained affine cone); quantum lambda
/// is the total trace.
pub fn effect_complement(
    backend: Backend,
    object: &ModelObject,
    pi: &Vector,
) -> Result<EffectComplement, ModelError> {
    if object.is_zero() {
        return Err(ModelError::ZeroObject);
    }
    if !cone_member(backend, object, pi)? {
        return Err(ModelError::EffectOutsideCone);
    }
    let sv = structure_vectors(object);
    let mut lambda = match backend {
        Backend::ClassicalNonneg | Backend::ClassicalAffine => {
            pi.0.iter().max().cloned().expect("nonzero object has entries")
        }
        Backend::QuantumCp => pair_full(object, &sv.discard, pi)?,
    };
    if !lambda.is_positive() {
        lambda = Rational::one();
    }
    let complement = sv.discard.scale(&lambda).sub(pi);
    #[cfg(debug_assertions)]
    {
        assert!(lambda.is_positive());
        assert_eq!(pi.add(&complement), sv.discard.scale(&lambda));
        assert!(cone_member(backend, object, &complement).unwrap());
    }
    Ok(EffectComplement { lambda, complement })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(blocks: &[usize]) -> ModelObject {
        ModelObject::quantum(blocks.to_vec()).unwrap()
    }

    fn c(n: usize) -> ModelObject {
        ModelObject::classical(n).unwrap()
    }

    // Independent rank oracle over coordinate vectors.
    fn oracle_rank(vs: &[Vector]) -> usize {
        crate::linalg::Matrix::from_rows(vs).rank()
    }

    #[test]
    fn classical_structure_vectors() {
        let sv = structure_vectors(&c(3));
        assert_eq!(sv.discard, Vector::from_ints(&[1, 1, 1]));
        assert_eq!(sv.uniform, Vector::from_ints(&[1, 1, 1]));
        assert_eq!(sv.dim_scalar, Some(Rational::from_int(3)));
        assert_eq!(sv.causal_basis.len(), 3);
        // Basis members are cone points pairing to 1 with the discard.
        for b in &sv.causal_basis {
            assert!(cone_member(Backend::ClassicalNonneg, &c(3), b).unwrap());
            assert_eq!(pair_full(&c(3), &sv.discard, b).unwrap(), Rational::one());
        }
    }

    #[test]
    fn zero_object_is_flagged() {
        let sv = structure_vectors(&c(0));
        assert_eq!(sv.dim_scalar, None);
        assert!(sv.causal_basis.is_empty());
        assert_eq!(sv.discard.dim(), 0);
        let svq = structure_vectors(&q(&[]));
        assert_eq!(svq.dim_scalar, None);
    }

    #[test]
    fn quantum_basis_spans_and_normalizes() {
        let obj = q(&[2]);
        let sv = structure_vectors(&obj);
        assert_eq!(sv.causal_basis.len(), 4);
        // Frozen from the oracle: the four fiducial states span all of
        // ambient dimension 4.
        assert_eq!(oracle_rank(&sv.causal_basis), 4);
        for b in &sv.causal_basis {
            assert!(cone_member(Backend::QuantumCp, &obj, b).unwrap());
            assert_eq!(pair_full(&obj, &sv.discard, b).unwrap(), Rational::one());
        }
        assert_eq!(sv.dim_scalar, Some(Rational::from_int(2)));

        let multi = q(&[2, 1]);
        let sv = structure_vectors(&multi);
        assert_eq!(sv.causal_basis.len(), 5);
        assert_eq!(oracle_rank(&sv.causal_basis), 5);
        assert_eq!(sv.dim_scalar, Some(Rational::from_int(3)));
    }

    #[test]
    fn quantum_cone_frozen_examples() {
        let obj = q(&[2]);
        let half = Rational::new(1, 2);
        // (1/2)[[1,1],[1,1]]: coords (1/2, 1/2, 1/2, 0).
        let good = Vector(vec![half.clone(), half.clone(), half.clone(), Rational::zero()]);
        assert!(cone_member(Backend::QuantumCp, &obj, &good).unwrap());
        // (1/2)[[1,2],[2,1]]: coords (1/2, 1/2, 1, 0).
        let bad = Vector(vec![half.clone(), half, Rational::one(), Rational::zero()]);
        assert!(!cone_member(Backend::QuantumCp, &obj, &bad).unwrap());
    }

    #[test]
    fn tensor_objects_and_kron() {
        assert_eq!(c(2).tensor(&c(3)).unwrap(), c(6));
        assert_eq!(q(&[2]).tensor(&q(&[2])).unwrap(), q(&[4]));
        assert_eq!(q(&[2, 1]).tensor(&q(&[3])).unwrap(), q(&[6, 3]));

        // Classical kron layout.
        let x = Vector::from_ints(&[1, 2]);
        let y = Vector::from_ints(&[5, 7]);
        assert_eq!(
            kron_states(&c(2), &c(2), &x, &y).unwrap(),
            Vector::from_ints(&[5, 7, 10, 14])
        );

        // Quantum: uniform (x) uniform = uniform of the product.
        let (a, b) = (q(&[2]), q(&[3]));
        let (ua, ub) = (structure_vectors(&a).uniform, structure_vectors(&b).uniform);
        let prod = a.tensor(&b).unwrap();
        assert_eq!(
            kron_states(&a, &b, &ua, &ub).unwrap(),
            structure_vectors(&prod).uniform
        );
    }

    #[test]
    fn discard_is_multiplicative_and_additive() {
        // APC1 in coordinates: kron of discards is the tensor discard,
        // concatenation of discards is the biproduct discard.
        for (a, b) in [(c(2), c(3)), (c(1), c(4))] {
            let (da, db) = (structure_vectors(&a).discard, structure_vectors(&b).discard);
            assert_eq!(
                kron_states(&a, &b, &da, &db).unwrap(),
                structure_vectors(&a.tensor(&b).unwrap()).discard
            );
            assert_eq!(
                da.concat(&db),
                structure_vectors(&a.biproduct(&b).unwrap()).discard
            );
        }
        for (a, b) in [(q(&[2]), q(&[2])), (q(&[2, 1]), q(&[3]))] {
            let (da, db) = (structure_vectors(&a).discard, structure_vectors(&b).discard);
            assert_eq!(
                kron_states(&a, &b, &da, &db).unwrap(),
                structure_vectors(&a.tensor(&b).unwrap()).discard
            );
            assert_eq!(
                da.concat(&db),
                structure_vectors(&a.biproduct(&b).unwrap()).discard
            );
        }
    }

    #[test]
    fn partial_contraction_frozen_example() {
        // State (e0 (x) e0 + e1 (x) e1)/2 on 2x2, effect (1,0) on B, leaves (1/2, 0).
        let h = Vector(vec![
            Rational::new(1, 2),
            Rational::zero(),
            Rational::zero(),
            Rational::new(1, 2),
        ]);
        let pi = Vector::from_ints(&[1, 0]);
        let reduced = partial_right(&c(2), &c(2), &pi, &h).unwrap();
        assert_eq!(reduced, Vector(vec![Rational::new(1, 2), Rational::zero()]));
    }

    #[test]
    fn partial_contraction_is_adjoint_to_kron() {
        // <sigma, partial_right(pi, x (x) y)> = <sigma, x> <pi, y>, quantum case.
        let (a, b) = (q(&[2]), q(&[2]));
        let sva = structure_vectors(&a);
        let svb = structure_vectors(&b);
        let x = &sva.causal_basis[1];
        let y = &svb.causal_basis[2];
        let h = kron_states(&a, &b, x, y).unwrap();
        for pi in &svb.causal_basis {
            let red = partial_right(&a, &b, pi, &h).unwrap();
            let direct = pair_full(&b, pi, y).unwrap();
            for sigma in &sva.causal_basis {
                assert_eq!(
                    pair_full(&a, sigma, &red).unwrap(),
                    pair_full(&a, sigma, x).unwrap() * direct.clone()
                );
            }
        }
    }

    #[test]
    fn effect_complement_classical() {
        let obj = c(2);
        let pi = Vector::from_ints(&[1, 0]);
        let ec = effect_complement(Backend::ClassicalNonneg, &obj, &pi).unwrap();
        assert_eq!(ec.lambda, Rational::one());
        assert_eq!(ec.complement, Vector::from_ints(&[0, 1]));

        // A peak above 1 scales the bound: 2e0 complements to 2u - 2e0.
        let ec =
            effect_complement(Backend::ClassicalNonneg, &obj, &Vector::from_ints(&[2, 0])).unwrap();
        assert_eq!(ec.lambda, Rational::from_int(2));
        assert_eq!(ec.complement, Vector::from_ints(&[0, 2]));

        // Zero effect complements to the discard itself.
        let ec = effect_complement(Backend::ClassicalNonneg, &obj, &Vector::zeros(2)).unwrap();
        assert_eq!(ec.lambda, Rational::one());
        assert_eq!(ec.complement, Vector::from_ints(&[1, 1]));

        // Negative entries are rejected in the nonnegative backend but are
        // legal affine effects.
        let neg = Vector::from_ints(&[-1, -2]);
        assert_eq!(
            effect_complement(Backend::ClassicalNonneg, &obj, &neg),
            Err(ModelError::EffectOutsideCone)
        );
        let ec = effect_complement(Backend::ClassicalAffine, &obj, &neg).unwrap();
        assert_eq!(ec.lambda, Rational::one());
        assert_eq!(ec.complement, Vector::from_ints(&[2, 3]));
    }

    #[test]
    fn effect_complement_quantum_frozen_example() {
        // |0><0| on blocks [2]: lambda = 1, complement |1><1|.
        let obj = q(&[2]);
        let pi = Vector(vec![
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ]);
        let ec = effect_complement(Backend::QuantumCp, &obj, &pi).unwrap();
        assert_eq!(ec.lambda, Rational::one());
        assert_eq!(
            ec.complement,
            Vector(vec![Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()])
        );
    }

    #[test]
    fn backend_serialization_names() {
        assert_eq!(serde_json::to_string(&Backend::ClassicalNonneg).unwrap(), "\"classical\"");
        assert_eq!(
            serde_json::to_string(&Backend::ClassicalAffine).unwrap(),
            "\"classical-affine\""
        );
        assert_eq!(serde_json::to_string(&Backend::QuantumCp).unwrap(), "\"quantum\"");
        assert_eq!(serde_json::to_string(&c(2)).unwrap(), "{\"classical\":2}");
        assert_eq!(serde_json::to_string(&q(&[2, 1])).unwrap(), "{\"quantum\":[2,1]}");
    }
}
