//! Linear maps between model objects: composition, monoidal product, cone
//! membership, and complements against discard-then-uniform.
//!
//! A morphism is stored as its coordinate matrix (columns indexed by the
//! source ambient, rows by the target). For quantum backends the cone test
//! goes through Choi matrices, one per (source block, target block) pair:
//! the map is completely positive exactly when every Choi block is PSD.

use super::quantum::{block_coord_count, block_coords, is_psd, CMat};
use super::{
    block_offsets, structure_vectors, vector_to_blocks, Backend, ModelError, ModelObject,
};
use crate::linalg::{Matrix, Vector};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub backend: Backend,
    pub src: ModelObject,
    pub dst: ModelObject,
    pub matrix: Matrix,
}

impl Morphism {
    pub fn new(
        backend: Backend,
        src: ModelObject,
        dst: ModelObject,
        matrix: Matrix,
    ) -> Result<Self, ModelError> {
        for obj in [&src, &dst] {
            if !backend.admits(obj) {
                return Err(ModelError::BackendMismatch { backend, object: obj.clone() });
            }
        }
        if matrix.rows() != dst.ambient_dim() || matrix.cols() != src.ambient_dim() {
            return Err(ModelError::MatrixShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: dst.ambient_dim(),
                expected_cols: src.ambient_dim(),
            });
        }
        Ok(Morphism { backend, src, dst, matrix })
    }

    pub fn identity(backend: Backend, object: &ModelObject) -> Result<Self, ModelError> {
        Morphism::new(
            backend,
            object.clone(),
            object.clone(),
            Matrix::identity(object.ambient_dim()),
        )
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector, ModelError> {
        if x.dim() != self.src.ambient_dim() {
            return Err(ModelError::VectorLength { expected: self.src.ambient_dim(), got: x.dim() });
        }
        Ok(self.matrix.mul_vec(x))
    }

    /// Diagrammatic composition: `self` first, `then` second.
    pub fn compose(&self, then: &Morphism) -> Result<Morphism, ModelError> {
        if self.backend != then.backend || self.dst != then.src {
            return Err(ModelError::MixedFamilies);
        }
        Morphism::new(
            self.backend,
            self.src.clone(),
            then.dst.clone(),
            then.matrix.mul_mat(&self.matrix),
        )
    }

    /// Monoidal product of maps. Classical backends reduce to the Kronecker
    /// product; quantum maps act factorwise on matrix units, which the
    /// Hermitian coordinates see through `unit_images`.
    pub fn tensor(&self, rhs: &Morphism) -> Result<Morphism, ModelError> {
        if self.backend != rhs.backend {
            return Err(ModelError::MixedFamilies);
        }
        let src = self.src.tensor(&rhs.src)?;
        let dst = self.dst.tensor(&rhs.dst)?;
        let matrix = if self.backend.is_classical() {
            self.matrix.kron(&rhs.matrix)
        } else {
            quantum_tensor_matrix(self, rhs, &src, &dst)?
        };
        Morphism::new(self.backend, src, dst, matrix)
    }
}

/// Coordinate matrix of `x -> <discard_src, x> * uniform_dst`.
pub fn discard_then_uniform(src: &ModelObject, dst: &ModelObject) -> Matrix {
    let u = structure_vectors(dst).uniform;
    let w = structure_vectors(src).discard.hadamard(&src.gram());
    let mut m = Matrix::zeros(u.dim(), w.dim());
    for r in 0..u.dim() {
        if u[r].is_zero() {
            continue;
        }
        for c in 0..w.dim() {
            m[(r, c)] = &u[r] * &w[c];
        }
    }
    m
}

/// Whether the morphism lies in the base-category cone: entrywise nonnegative
/// matrices, everything, or completely positive maps, by backend.
pub fn morphism_in_cone(m: &Morphism) -> Result<bool, ModelError> {
    match m.backend {
        Backend::ClassicalNonneg => Ok(m.matrix.entries().all(|e| !e.is_negative())),
        Backend::ClassicalAffine => Ok(true),
        Backend::QuantumCp => Ok(choi_blocks(m)?.iter().flatten().all(is_psd)),
    }
}

/// Complement of a cone morphism: lambda > 0 and f' in the cone with
/// f + f' = lambda * (discard ; uniform).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessComplement {
    pub lambda: Rational,
    pub complement: Morphism,
}

pub fn process_complement(m: &Morphism) -> Result<ProcessComplement, ModelError> {
    if !morphism_in_cone(m)? {
        return Err(ModelError::MorphismOutsideCone);
    }
    let (lambda, matrix) = match m.backend {
        Backend::ClassicalNonneg | Backend::ClassicalAffine => {
            let mut lambda = m.matrix.max_entry().unwrap_or_else(Rational::zero);
            if !lambda.is_positive() {
                lambda = Rational::one();
            }
            let matrix = discard_then_uniform(&m.src, &m.dst).scale(&lambda).sub(&m.matrix);
            (lambda, matrix)
        }
        Backend::QuantumCp => {
            let chois = choi_blocks(m)?;
            let mut lambda = Rational::zero();
            for c in chois.iter().flatten() {
                let (tr, tr_im) = c.trace();
                debug_assert!(tr_im.is_zero());
                lambda += &tr;
            }
            if !lambda.is_positive() {
                lambda = Rational::one();
            }
            let comp_chois: Vec<Vec<CMat>> = chois
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| CMat::identity(c.dim()).scale(&lambda).sub(c))
                        .collect()
                })
                .collect();
            let comp = map_from_choi(m.backend, &m.src, &m.dst, &comp_chois)?;
            (lambda, comp.matrix)
        }
    };
    let complement = Morphism::new(m.backend, m.src.clone(), m.dst.clone(), matrix)?;
    #[cfg(debug_assertions)]
    {
        let target = discard_then_uniform(&m.src, &m.dst).scale(&lambda);
        assert_eq!(m.matrix.add(&complement.matrix), target);
        assert!(morphism_in_cone(&complement).unwrap());
    }
    Ok(ProcessComplement { lambda, complement })
}

/// Local coordinate index of the symmetric element of pair (i, j), i < j;
/// the antisymmetric one follows at +1.
fn pair_base(d: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < d);
    let before_i: usize = (0..i).map(|t| d - 1 - t).sum();
    d + 2 * (before_i + (j - i - 1))
}

/// Expansion of the mu-th Hermitian basis element of a block into matrix
/// units: entries (a, b, re, im) meaning (re + i im) E_ab.
fn basis_units(d: usize, mu: usize) -> Vec<(usize, usize, Rational, Rational)> {
    let (one, zero) = (Rational::one(), Rational::zero());
    if mu < d {
        return vec![(mu, mu, one, zero)];
    }
    let mut idx = d;
    for i in 0..d {
        for j in i + 1..d {
            if idx == mu {
                return vec![(i, j, one.clone(), zero.clone()), (j, i, one, zero)];
            }
            if idx + 1 == mu {
                return vec![(i, j, zero.clone(), one.clone()), (j, i, zero, -one)];
            }
            idx += 2;
        }
    }
    unreachable!("coordinate index out of range")
}

/// Images of every matrix unit under a quantum morphism, as
/// `[src_block][a * d + b][dst_block]`.
fn unit_images(m: &Morphism) -> Result<Vec<Vec<Vec<CMat>>>, ModelError> {
    let src_blocks = m.src.blocks().ok_or(ModelError::QuantumOnly)?;
    let ndst = m.dst.blocks().ok_or(ModelError::QuantumOnly)?.len();
    let src_offsets = block_offsets(&m.src);
    let half = Rational::new(1, 2);
    let neg_half = Rational::new(-1, 2);
    let zero = Rational::zero();
    let mut out = Vec::with_capacity(src_blocks.len());
    for (i, &d) in src_blocks.iter().enumerate() {
        let coord_imgs: Vec<Vec<CMat>> = (0..block_coord_count(d))
            .map(|mu| vector_to_blocks(&m.dst, &m.matrix.col(src_offsets[i] + mu)))
            .collect();
        let mut units = vec![Vec::new(); d * d];
        for a in 0..d {
            units[a * d + a] = coord_imgs[a].clone();
        }
        for a in 0..d {
            for b in a + 1..d {
                let base = pair_base(d, a, b);
                let (s, k) = (&coord_imgs[base], &coord_imgs[base + 1]);
                // E_ab = (S - iK)/2 and E_ba = (S + iK)/2 for the pair's
                // symmetric S and antisymmetric K basis elements.
                let mut eab = Vec::with_capacity(ndst);
                let mut eba = Vec::with_capacity(ndst);
                for j in 0..ndst {
                    eab.push(s[j].scale(&half).add(&k[j].scale_complex(&zero, &neg_half)));
                    eba.push(s[j].scale(&half).add(&k[j].scale_complex(&zero, &half)));
                }
                units[a * d + b] = eab;
                units[b * d + a] = eba;
            }
        }
        out.push(units);
    }
    Ok(out)
}

/// Choi matrices of a quantum morphism, one per (source, target) block pair,
/// with row index `a * k + u` for source index a and target index u.
pub fn choi_blocks(m: &Morphism) -> Result<Vec<Vec<CMat>>, ModelError> {
    let src_blocks = m.src.blocks().ok_or(ModelError::QuantumOnly)?;
    let dst_blocks = m.dst.blocks().ok_or(ModelError::QuantumOnly)?;
    let units = unit_images(m)?;
    let mut out = Vec::with_capacity(src_blocks.len());
    for (i, &d) in src_blocks.iter().enumerate() {
        let mut row = Vec::with_capacity(dst_blocks.len());
        for (j, &k) in dst_blocks.iter().enumerate() {
            let mut c = CMat::zeros(d * k);
            for a in 0..d {
                for b in 0..d {
                    let y = &units[i][a * d + b][j];
                    for u in 0..k {
                        for v in 0..k {
                            c.set(a * k + u, b * k + v, y.re(u, v).clone(), y.im(u, v).clone());
                        }
                    }
                }
            }
            debug_assert!(c.is_hermitian());
            row.push(c);
        }
        out.push(row);
    }
    Ok(out)
}

/// Rebuilds the coordinate matrix of a quantum morphism from Choi blocks.
pub fn map_from_choi(
    backend: Backend,
    src: &ModelObject,
    dst: &ModelObject,
    chois: &[Vec<CMat>],
) -> Result<Morphism, ModelError> {
    let src_blocks = src.blocks().ok_or(ModelError::QuantumOnly)?;
    let dst_blocks = dst.blocks().ok_or(ModelError::QuantumOnly)?;
    assert_eq!(chois.len(), src_blocks.len(), "Choi row count mismatch");
    let src_offsets = block_offsets(src);
    let dst_offsets = block_offsets(dst);
    let mut matrix = Matrix::zeros(dst.ambient_dim(), src.ambient_dim());
    for (i, &d) in src_blocks.iter().enumerate() {
        assert_eq!(chois[i].len(), dst_blocks.len(), "Choi column count mismatch");
        for mu in 0..block_coord_count(d) {
            let units = basis_units(d, mu);
            for (j, &k) in dst_blocks.iter().enumerate() {
                let cij = &chois[i][j];
                assert_eq!(cij.dim(), d * k, "Choi block dimension mismatch");
                let mut y = CMat::zeros(k);
                for (a, b, cr, ci) in &units {
                    let mut sub = CMat::zeros(k);
                    for u in 0..k {
                        for v in 0..k {
                            sub.set(
                                u,
                                v,
                                cij.re(a * k + u, b * k + v).clone(),
                                cij.im(a * k + u, b * k + v).clone(),
                            );
                        }
                    }
                    y = y.add(&sub.scale_complex(cr, ci));
                }
                debug_assert!(y.is_hermitian());
                for (t, val) in block_coords(&y).into_iter().enumerate() {
                    if !val.is_zero() {
                        matrix[(dst_offsets[j] + t, src_offsets[i] + mu)] = val;
                    }
                }
            }
        }
    }
    Morphism::new(backend, src.clone(), dst.clone(), matrix)
}

fn quantum_tensor_matrix(
    lhs: &Morphism,
    rhs: &Morphism,
    src: &ModelObject,
    dst: &ModelObject,
) -> Result<Matrix, ModelError> {
    let sb1 = lhs.src.blocks().ok_or(ModelError::QuantumOnly)?;
    let sb2 = rhs.src.blocks().ok_or(ModelError::QuantumOnly)?;
    let db1 = lhs.dst.blocks().ok_or(ModelError::QuantumOnly)?;
    let db2 = rhs.dst.blocks().ok_or(ModelError::QuantumOnly)?;
    let u1 = unit_images(lhs)?;
    let u2 = unit_images(rhs)?;
    let src_offsets = block_offsets(src);
    let dst_offsets = block_offsets(dst);
    let mut matrix = Matrix::zeros(dst.ambient_dim(), src.ambient_dim());
    for (i1, &d1) in sb1.iter().enumerate() {
        for (i2, &d2) in sb2.iter().enumerate() {
            let src_off = src_offsets[i1 * sb2.len() + i2];
            let big = d1 * d2;
            for mu in 0..block_coord_count(big) {
                let units = basis_units(big, mu);
                for (j1, &k1) in db1.iter().enumerate() {
                    for (j2, &k2) in db2.iter().enumerate() {
                        let mut y = CMat::zeros(k1 * k2);
                        for (pa, pb, cr, ci) in &units {
                            // Product index pa = a1 * d2 + a2.
                            let (a1, a2) = (pa / d2, pa % d2);
                            let (b1, b2) = (pb / d2, pb % d2);
                            let y1 = &u1[i1][a1 * d1 + b1][j1];
                            let y2 = &u2[i2][a2 * d2 + b2][j2];
                            y = y.add(&y1.kron(y2).scale_complex(cr, ci));
                        }
                        if y.is_zero() {
                            continue;
                        }
                        debug_assert!(y.is_hermitian());
                        let dst_off = dst_offsets[j1 * db2.len() + j2];
                        for (t, val) in block_coords(&y).into_iter().enumerate() {
                            if !val.is_zero() {
                                matrix[(dst_off + t, src_off + mu)] = val;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(matrix)
}

fn decompose(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for f in (0..dims.len()).rev() {
        digits[f] = idx % dims[f];
        idx /= dims[f];
    }
    debug_assert_eq!(idx, 0);
    digits
}

fn compose_digits(digits: &[usize], dims: &[usize]) -> usize {
    let mut idx = 0;
    for (d, n) in digits.iter().zip(dims) {
        debug_assert!(d < n);
        idx = idx * n + d;
    }
    idx
}

/// Coordinate matrix of the structural map reordering tensor factors:
/// position p of the target holds source factor `perm[p]`. Classical factors
/// permute index digits; quantum factors conjugate by the permutation
/// unitary, which acts on Hermitian coordinates as a signed permutation
/// (antisymmetric coordinates flip sign when a pair changes orientation).
pub fn factor_perm_matrix(
    factors: &[ModelObject],
    perm: &[usize],
) -> Result<Matrix, ModelError> {
    assert_eq!(factors.len(), perm.len(), "permutation length mismatch");
    {
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            assert!(p < perm.len() && !seen[p], "not a permutation");
            seen[p] = true;
        }
    }
    let classical = matches!(factors.first(), Some(ModelObject::Classical(_)));
    if factors
        .iter()
        .any(|f| matches!(f, ModelObject::Classical(_)) != classical)
    {
        return Err(ModelError::MixedFamilies);
    }
    if classical {
        let dims: Vec<usize> = factors.iter().map(ModelObject::ambient_dim).collect();
        let dst_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let total: usize = dims.iter().product();
        let mut m = Matrix::zeros(total, total);
        for s in 0..total {
            let digits = decompose(s, &dims);
            let dst_digits: Vec<usize> = perm.iter().map(|&p| digits[p]).collect();
            m[(compose_digits(&dst_digits, &dst_dims), s)] = Rational::one();
        }
        return Ok(m);
    }

    let src = super::tensor_many(factors)?;
    let permuted: Vec<ModelObject> = perm.iter().map(|&p| factors[p].clone()).collect();
    let dst = super::tensor_many(&permuted)?;
    let block_lists: Vec<&[usize]> = factors.iter().map(|f| f.blocks().unwrap()).collect();
    let counts: Vec<usize> = block_lists.iter().map(|b| b.len()).collect();
    let dst_counts: Vec<usize> = perm.iter().map(|&p| counts[p]).collect();
    let src_offsets = block_offsets(&src);
    let dst_offsets = block_offsets(&dst);
    let total_blocks: usize = counts.iter().product();
    let mut m = Matrix::zeros(dst.ambient_dim(), src.ambient_dim());
    let one = Rational::one();
    for blk in 0..total_blocks {
        let tuple = decompose(blk, &counts);
        let dims: Vec<usize> = tuple.iter().zip(&block_lists).map(|(&t, b)| b[t]).collect();
        let dst_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
        let dst_tuple: Vec<usize> = perm.iter().map(|&p| tuple[p]).collect();
        let src_off = src_offsets[blk];
        let dst_off = dst_offsets[compose_digits(&dst_tuple, &dst_counts)];
        let big: usize = dims.iter().product();
        let rel: Vec<usize> = (0..big)
            .map(|r| {
                let digits = decompose(r, &dims);
                let moved: Vec<usize> = perm.iter().map(|&p| digits[p]).collect();
                compose_digits(&moved, &dst_dims)
            })
            .collect();
        for r in 0..big {
            m[(dst_off + rel[r], src_off + r)] = one.clone();
        }
        let mut local = big;
        for i in 0..big {
            for j in i + 1..big {
                let (ri, rj) = (rel[i], rel[j]);
                if ri < rj {
                    let base = pair_base(big, ri, rj);
                    m[(dst_off + base, src_off + local)] = one.clone();
                    m[(dst_off + base + 1, src_off + local + 1)] = one.clone();
                } else {
                    let base = pair_base(big, rj, ri);
                    m[(dst_off + base, src_off + local)] = one.clone();
                    m[(dst_off + base + 1, src_off + local + 1)] = -&one;
                }
                local += 2;
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::{
        cone_member, kron_states, pair_full, structure_vectors, tensor_many,
    };
    use super::*;

    fn q(blocks: &[usize]) -> ModelObject {
        ModelObject::quantum(blocks.to_vec()).unwrap()
    }

    fn c(n: usize) -> ModelObject {
        ModelObject::classical(n).unwrap()
    }

    fn classical_map(src: usize, dst: usize, rows: &[&[i64]]) -> Morphism {
        Morphism::new(
            Backend::ClassicalNonneg,
            c(src),
            c(dst),
            Matrix::from_int_rows(rows),
        )
        .unwrap()
    }

    #[test]
    fn compose_and_apply() {
        let f = classical_map(2, 3, &[&[1, 0], &[0, 1], &[1, 1]]);
        let g = classical_map(3, 1, &[&[1, 1, 1]]);
        let fg = f.compose(&g).unwrap();
        let x = Vector::from_ints(&[2, 5]);
        assert_eq!(fg.apply(&x).unwrap(), g.apply(&f.apply(&x).unwrap()).unwrap());
        assert_eq!(fg.apply(&x).unwrap(), Vector::from_ints(&[14]));
    }

    #[test]
    fn classical_tensor_is_kron() {
        let f = classical_map(2, 2, &[&[0, 1], &[1, 0]]);
        let g = classical_map(2, 2, &[&[1, 0], &[0, 2]]);
        let fg = f.tensor(&g).unwrap();
        let x = Vector::from_ints(&[1, 2]);
        let y = Vector::from_ints(&[3, 4]);
        let applied = fg.apply(&kron_states(&c(2), &c(2), &x, &y).unwrap()).unwrap();
        let direct = kron_states(
            &c(2),
            &c(2),
            &f.apply(&x).unwrap(),
            &g.apply(&y).unwrap(),
        )
        .unwrap();
        assert_eq!(applied, direct);
    }

    // Transpose map on one qubit block: fixes diagonal and symmetric
    // coordinates, negates the antisymmetric one.
    fn transpose_map() -> Morphism {
        let mut m = Matrix::identity(4);
        m[(3, 3)] = Rational::from_int(-1);
        Morphism::new(Backend::QuantumCp, q(&[2]), q(&[2]), m).unwrap()
    }

    #[test]
    fn choi_of_identity_is_maximally_entangled() {
        let id = Morphism::identity(Backend::QuantumCp, &q(&[2])).unwrap();
        let chois = choi_blocks(&id).unwrap();
        assert_eq!(chois.len(), 1);
        let choi = &chois[0][0];
        assert_eq!(choi.dim(), 4);
        // C[(a,u),(b,v)] = [u==a][v==b]: rank one, trace 2, PSD.
        for a in 0..2 {
            for u in 0..2 {
                for b in 0..2 {
                    for v in 0..2 {
                        let expect = if u == a && v == b { Rational::one() } else { Rational::zero() };
                        assert_eq!(*choi.re(a * 2 + u, b * 2 + v), expect);
                        assert!(choi.im(a * 2 + u, b * 2 + v).is_zero());
                    }
                }
            }
        }
        assert!(is_psd(choi));
        assert!(morphism_in_cone(&id).unwrap());
    }

    #[test]
    fn transpose_is_positive_but_not_completely_positive() {
        let t = transpose_map();
        // Images of the causal basis states stay PSD...
        for b in &structure_vectors(&q(&[2])).causal_basis {
            let img = t.apply(b).unwrap();
            assert!(cone_member(Backend::QuantumCp, &q(&[2]), &img).unwrap());
        }
        // ...yet the Choi matrix is the swap, which has a negative eigenvalue.
        assert!(!morphism_in_cone(&t).unwrap());
    }

    #[test]
    fn choi_round_trips() {
        for m in [
            Morphism::identity(Backend::QuantumCp, &q(&[2])).unwrap(),
            transpose_map(),
            Morphism::identity(Backend::QuantumCp, &q(&[2, 1])).unwrap(),
        ] {
            let chois = choi_blocks(&m).unwrap();
            let back = map_from_choi(m.backend, &m.src, &m.dst, &chois).unwrap();
            assert_eq!(back.matrix, m.matrix);
        }
    }

    #[test]
    fn process_complement_classical_frozen() {
        let f = classical_map(2, 2, &[&[1, 0], &[0, 0]]);
        let pc = process_complement(&f).unwrap();
        assert_eq!(pc.lambda, Rational::one());
        assert_eq!(pc.complement.matrix, Matrix::from_int_rows(&[&[0, 1], &[1, 1]]));

        let id = Morphism::identity(Backend::ClassicalNonneg, &c(2)).unwrap();
        let pc = process_complement(&id).unwrap();
        assert_eq!(pc.lambda, Rational::one());
        assert_eq!(pc.complement.matrix, Matrix::from_int_rows(&[&[0, 1], &[1, 0]]));

        // Zero map: lambda falls back to 1 and the complement is the full
        // discard-then-uniform matrix.
        let z = classical_map(2, 2, &[&[0, 0], &[0, 0]]);
        let pc = process_complement(&z).unwrap();
        assert_eq!(pc.lambda, Rational::one());
        assert_eq!(pc.complement.matrix, Matrix::from_int_rows(&[&[1, 1], &[1, 1]]));
    }

    #[test]
    fn process_complement_quantum_identity() {
        let id = Morphism::identity(Backend::QuantumCp, &q(&[2])).unwrap();
        let pc = process_complement(&id).unwrap();
        // Total Choi trace of the identity on a qubit.
        assert_eq!(pc.lambda, Rational::from_int(2));
        assert!(morphism_in_cone(&pc.complement).unwrap());
        let target = discard_then_uniform(&q(&[2]), &q(&[2])).scale(&pc.lambda);
        assert_eq!(id.matrix.add(&pc.complement.matrix), target);
        assert_eq!(
            process_complement(&transpose_map()),
            Err(ModelError::MorphismOutsideCone)
        );
    }

    #[test]
    fn classical_factor_swap_permutes_kron() {
        let p = factor_perm_matrix(&[c(2), c(3)], &[1, 0]).unwrap();
        let x = Vector::from_ints(&[1, 2]);
        let y = Vector::from_ints(&[3, 4, 5]);
        let xy = kron_states(&c(2), &c(3), &x, &y).unwrap();
        let yx = kron_states(&c(3), &c(2), &y, &x).unwrap();
        assert_eq!(p.mul_vec(&xy), yx);
    }

    #[test]
    fn classical_middle_interchange() {
        // Factors (A,B,C,D) -> (A,C,B,D).
        let factors = [c(2), c(2), c(2), c(2)];
        let p = factor_perm_matrix(&factors, &[0, 2, 1, 3]).unwrap();
        let vs: Vec<Vector> = (0..4)
            .map(|i| Vector::from_ints(&[1 + i as i64, 7 - i as i64]))
            .collect();
        let src = vs[0].kron(&vs[1]).kron(&vs[2]).kron(&vs[3]);
        let dst = vs[0].kron(&vs[2]).kron(&vs[1]).kron(&vs[3]);
        assert_eq!(p.mul_vec(&src), dst);
    }

    #[test]
    fn quantum_factor_swap_is_signed_and_cp() {
        let (a, b) = (q(&[2]), q(&[2]));
        let p = factor_perm_matrix(&[a.clone(), b.clone()], &[1, 0]).unwrap();
        // The antisymmetric coordinates of cross pairs flip orientation.
        assert!(p.entries().any(|e| e == &Rational::from_int(-1)));
        let sva = structure_vectors(&a);
        for x in &sva.causal_basis {
            for y in &structure_vectors(&b).causal_basis {
                let xy = kron_states(&a, &b, x, y).unwrap();
                let yx = kron_states(&b, &a, y, x).unwrap();
                assert_eq!(p.mul_vec(&xy), yx);
            }
        }
        let prod = a.tensor(&b).unwrap();
        let swap = Morphism::new(Backend::QuantumCp, prod.clone(), prod, p).unwrap();
        assert!(morphism_in_cone(&swap).unwrap());
    }

    #[test]
    fn quantum_multiblock_swap() {
        let (a, b) = (q(&[2, 1]), q(&[2]));
        let p = factor_perm_matrix(&[a.clone(), b.clone()], &[1, 0]).unwrap();
        let sva = structure_vectors(&a);
        let svb = structure_vectors(&b);
        for x in &sva.causal_basis {
            for y in &svb.causal_basis {
                let xy = kron_states(&a, &b, x, y).unwrap();
                let yx = kron_states(&b, &a, y, x).unwrap();
                assert_eq!(p.mul_vec(&xy), yx);
            }
        }
        // Pairing with the product discard is preserved.
        let ab = a.tensor(&b).unwrap();
        let ba = b.tensor(&a).unwrap();
        let (da, db) = (structure_vectors(&ab).discard, structure_vectors(&ba).discard);
        let h = kron_states(&a, &b, &sva.uniform, &svb.uniform).unwrap();
        assert_eq!(
            pair_full(&ab, &da, &h).unwrap(),
            pair_full(&ba, &db, &p.mul_vec(&h)).unwrap()
        );
    }

    #[test]
    fn quantum_tensor_matches_factorwise_action() {
        let t = transpose_map();
        let id = Morphism::identity(Backend::QuantumCp, &q(&[2])).unwrap();
        let tid = t.tensor(&id).unwrap();
        assert_eq!(tid.src, q(&[4]));
        let (a, b) = (q(&[2]), q(&[2]));
        for x in &structure_vectors(&a).causal_basis {
            for y in &structure_vectors(&b).causal_basis {
                let xy = kron_states(&a, &b, x, y).unwrap();
                let lhs = tid.apply(&xy).unwrap();
                let rhs = kron_states(&a, &b, &t.apply(x).unwrap(), &id.apply(y).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        // Identity tensor identity is the identity on the product.
        let idid = id.tensor(&id).unwrap();
        assert_eq!(idid.matrix, Matrix::identity(16));
    }

    #[test]
    fn factor_perm_composes_to_identity() {
        let factors = [q(&[2]), q(&[2, 1])];
        let fwd = factor_perm_matrix(&factors, &[1, 0]).unwrap();
        let back = factor_perm_matrix(&[factors[1].clone(), factors[0].clone()], &[1, 0]).unwrap();
        let n = tensor_many(&factors).unwrap().ambient_dim();
        assert_eq!(back.mul_mat(&fwd), Matrix::identity(n));
    }
}
