//! Complex rational matrices, Hermitian coordinates, and exact positivity.
//!
//! A d-dimensional block is coordinatized by the unnormalized Hermitian basis
//! E_ii (diagonal), E_ij + E_ji and i(E_ij - E_ji) for i < j. Coordinates stay
//! rational; the factor-2 Gram weights of the off-diagonal elements are folded
//! into the pairing, never into the coordinates. Coordinate order per block:
//! all d diagonal entries, then for each pair i < j in lexicographic order the
//! symmetric coefficient (re of the ij entry) followed by the antisymmetric
//! one (im of the ij entry).

use crate::linalg::Matrix;
use crate::rational::Rational;

/// Square complex matrix with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CMat {
    dim: usize,
    re: Vec<Rational>,
    im: Vec<Rational>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        CMat { dim, re: vec![Rational::zero(); dim * dim], im: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Rational::one(), Rational::zero());
        }
        m
    }

    /// Matrix unit E_ab: single 1 at row a, column b.
    pub fn matrix_unit(dim: usize, a: usize, b: usize) -> Self {
        let mut m = CMat::zeros(dim);
        m.set(a, b, Rational::one(), Rational::zero());
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn re(&self, i: usize, j: usize) -> &Rational {
        &self.re[i * self.dim + j]
    }

    pub fn im(&self, i: usize, j: usize) -> &Rational {
        &self.im[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, re: Rational, im: Rational) {
        self.re[i * self.dim + j] = re;
        self.im[i * self.dim + j] = im;
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            re: self.re.iter().zip(&rhs.re).map(|(a, b)| a + b).collect(),
            im: self.im.iter().zip(&rhs.im).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        CMat {
            dim: self.dim,
            re: self.re.iter().zip(&rhs.re).map(|(a, b)| a - b).collect(),
            im: self.im.iter().zip(&rhs.im).map(|(a, b)| a - b).collect(),
        }
    }

    /// Multiplication by the complex scalar `s_re + i s_im`.
    pub fn scale_complex(&self, s_re: &Rational, s_im: &Rational) -> CMat {
        let mut out = CMat::zeros(self.dim);
        for k in 0..self.dim * self.dim {
            out.re[k] = &(s_re * &self.re[k]) - &(s_im * &self.im[k]);
            out.im[k] = &(s_re * &self.im[k]) + &(s_im * &self.re[k]);
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> CMat {
        self.scale_complex(s, &Rational::zero())
    }

    pub fn mul(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let (ar, ai) = (self.re(i, k), self.im(i, k));
                if ar.is_zero() && ai.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let (br, bi) = (rhs.re(k, j), rhs.im(k, j));
                    out.re[i * n + j] += &(&(ar * br) - &(ai * bi));
                    out.im[i * n + j] += &(&(ar * bi) + &(ai * br));
                }
            }
        }
        out
    }

    /// Kronecker product; row index layout `i1 * rhs.dim + i2`.
    pub fn kron(&self, rhs: &CMat) -> CMat {
        let n = self.dim * rhs.dim;
        let mut out = CMat::zeros(n);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                let (ar, ai) = (self.re(i1, j1), self.im(i1, j1));
                if ar.is_zero() && ai.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.dim {
                    for j2 in 0..rhs.dim {
                        let (br, bi) = (rhs.re(i2, j2), rhs.im(i2, j2));
                        out.set(
                            i1 * rhs.dim + i2,
                            j1 * rhs.dim + j2,
                            &(ar * br) - &(ai * bi),
                            &(ar * bi) + &(ai * br),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.re(i, j).clone(), -self.im(i, j));
            }
        }
        out
    }

    pub fn trace(&self) -> (Rational, Rational) {
        let mut tr_re = Rational::zero();
        let mut tr_im = Rational::zero();
        for i in 0..self.dim {
            tr_re += self.re(i, i);
            tr_im += self.im(i, i);
        }
        (tr_re, tr_im)
    }

    pub fn is_hermitian(&self) -> bool {
        for i in 0..self.dim {
            if !self.im(i, i).is_zero() {
                return false;
            }
            for j in i + 1..self.dim {
                if self.re(i, j) != self.re(j, i) || *self.im(i, j) != -self.im(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.re.iter().all(Rational::is_zero) && self.im.iter().all(Rational::is_zero)
    }
}

/// Number of real coordinates of a d-dimensional Hermitian block.
pub fn block_coord_count(d: usize) -> usize {
    d * d
}

/// Hermitian coordinates of a block; the input must be Hermitian.
pub fn block_coords(m: &CMat) -> Vec<Rational> {
    debug_assert!(m.is_hermitian(), "coordinates of a non-Hermitian matrix");
    let d = m.dim();
    let mut c = Vec::with_capacity(d * d);
    for i in 0..d {
        c.push(m.re(i, i).clone());
    }
    for i in 0..d {
        for j in i + 1..d {
            c.push(m.re(i, j).clone());
            c.push(m.im(i, j).clone());
        }
    }
    c
}

/// Inverse of `block_coords`.
pub fn block_from_coords(d: usize, coords: &[Rational]) -> CMat {
    assert_eq!(coords.len(), d * d, "coordinate count mismatch");
    let mut m = CMat::zeros(d);
    for i in 0..d {
        m.set(i, i, coords[i].clone(), Rational::zero());
    }
    let mut k = d;
    for i in 0..d {
        for j in i + 1..d {
            let (s, a) = (coords[k].clone(), coords[k + 1].clone());
            k += 2;
            m.set(i, j, s.clone(), a.clone());
            m.set(j, i, s, -a);
        }
    }
    m
}

/// Pairing weights of one block: 1 on diagonal coordinates, 2 off-diagonal,
/// so that sum(g_k e_k x_k) equals tr(E X) for the corresponding matrices.
pub fn block_gram(d: usize) -> Vec<Rational> {
    let mut g = vec![Rational::one(); d];
    g.extend(std::iter::repeat(Rational::from_int(2)).take(d * d - d));
    g
}

/// Real symmetric embedding [[X, -Y], [Y, X]] of X + iY.
pub fn real_embedding(m: &CMat) -> Matrix {
    let d = m.dim();
    let mut out = Matrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = m.re(i, j).clone();
            out[(d + i, d + j)] = m.re(i, j).clone();
            out[(i, d + j)] = -m.im(i, j);
            out[(d + i, j)] = m.im(i, j).clone();
        }
    }
    out
}

/// Exact PSD test for a rational symmetric matrix via LDL^T elimination with
/// diagonal pivots taken in order. A zero pivot is admissible only when its
/// entire trailing row vanishes; a negative pivot refutes positivity.
pub fn real_symmetric_psd(m: &Matrix) -> bool {
    debug_assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let mut a = m.clone();
    for i in 0..n {
        let d = a[(i, i)].clone();
        if d.is_negative() {
            return false;
        }
        if d.is_zero() {
            // PSD forces row i (hence column i, by symmetry) to vanish.
            for j in i + 1..n {
                if !a[(i, j)].is_zero() {
                    return false;
                }
            }
            continue;
        }
        // Schur complement on the trailing submatrix.
        for r in i + 1..n {
            if a[(r, i)].is_zero() {
                continue;
            }
            let f = &a[(r, i)] / &d;
            for c in i + 1..n {
                let t = &f * &a[(i, c)];
                a[(r, c)] -= &t;
            }
        }
    }
    true
}

/// PSD test for a Hermitian complex rational matrix.
pub fn is_psd(m: &CMat) -> bool {
    debug_assert!(m.is_hermitian(), "PSD test on a non-Hermitian matrix");
    real_symmetric_psd(&real_embedding(m))
}
