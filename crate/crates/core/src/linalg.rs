//! Dense exact linear algebra: rational vectors, matrices, and Gaussian
//! elimination. Everything here is deterministic; pivoting always picks the
//! first usable column so reduced forms are canonical.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::OnceLock;

/// Hard cap on ambient dimension, overridable via `CAUS_MAX_AMBIENT` (>= 1).
pub fn max_ambient() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("CAUS_MAX_AMBIENT")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|v| v.max(1))
            .unwrap_or(1024)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ambient dimension {dim} exceeds cap {cap} (set CAUS_MAX_AMBIENT to raise)")]
    AmbientCapExceeded { dim: usize, cap: usize },
    #[error("operation requires a point of an empty subspace")]
    EmptySubspace,
    #[error("input vectors are linearly dependent")]
    DependentInputs,
    #[error("no points supplied")]
    NoPoints,
}

pub fn check_ambient(dim: usize) -> Result<(), LinalgError> {
    let cap = max_ambient();
    if dim > cap {
        return Err(LinalgError::AmbientCapExceeded { dim, cap });
    }
    Ok(())
}

/// Coordinate vector over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut v = Vector::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Vector(entries.iter().map(|&n| Rational::from_int(n)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn add(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector add dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector sub dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn dot(&self, rhs: &Vector) -> Rational {
        assert_eq!(self.dim(), rhs.dim(), "vector dot dimension mismatch");
        self.0.iter().zip(&rhs.0).map(|(a, b)| a * b).sum()
    }

    /// Componentwise product; used to fold a diagonal bilinear form into one side.
    pub fn hadamard(&self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "hadamard dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a * b).collect())
    }

    /// Kronecker product: index layout is `i * rhs.dim() + j`.
    pub fn kron(&self, rhs: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.dim() * rhs.dim());
        for a in &self.0 {
            for b in &rhs.0 {
                out.push(a * b);
            }
        }
        Vector(out)
    }

    pub fn concat(&self, rhs: &Vector) -> Vector {
        let mut out = self.0.clone();
        out.extend(rhs.0.iter().cloned());
        Vector(out)
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from row vectors; all rows must share a length.
    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vector::dim);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.dim(), cols, "ragged rows");
            data.extend(r.0.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let vecs: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(r)).collect();
        Matrix::from_rows(&vecs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vector {
        assert!(i < self.rows);
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> Vector {
        assert!(j < self.cols);
        Vector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn set_row(&mut self, i: usize, v: &Vector) {
        assert_eq!(v.dim(), self.cols);
        for j in 0..self.cols {
            self[(i, j)] = v[j].clone();
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim(), self.cols, "matrix * vector dimension mismatch");
        Vector(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
                .collect(),
        )
    }

    pub fn mul_mat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix * matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= c;
        }
        out
    }

    /// Kronecker product, row index `i1 * rhs.rows + i2`, same for columns.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                if self[(i1, j1)].is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        out[(i1 * rhs.rows + i2, j1 * rhs.cols + j2)] =
                            &self[(i1, j1)] * &rhs[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn max_entry(&self) -> Option<Rational> {
        self.data.iter().max().cloned()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    /// Reduced row echelon form; returns (nonzero rows, pivot columns).
    /// Pivot selection is the first nonzero entry in column order, rows are
    /// normalized to a leading 1, so the output is canonical for the row space.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // First row at or below r with a nonzero entry in column c.
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                m[(r, j)] *= &inv;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let t = &f * &m[(r, j)];
                        m[(i, j)] -= &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate_rows(r);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{ x : self * x = 0 }`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &pivots {
                s[p] = true;
            }
            s
        };
        for free in 0..self.cols {
            if pivot_set[free] {
                continue;
            }
            let mut v = Vector::zeros(self.cols);
            v[free] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// One particular solution of `self * x = b`, or None if inconsistent.
    pub fn solve(&self, b: &Vector) -> Option<Vector> {
        assert_eq!(b.dim(), self.rows, "rhs length mismatch");
        // Reduce the augmented system and read off pivot coordinates.
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = Vector::zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse, or None when singular.
    pub fn invert(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn truncate_rows(&mut self, rows: usize) {
        self.data.truncate(rows * self.cols);
        self.rows = rows;
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical_and_detects_rank() {
        let m = Matrix::from_int_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(r, Matrix::from_int_rows(&[&[1, 0, 1], &[0, 1, 1]]));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = Matrix::from_int_rows(&[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_finds_solutions_and_flags_inconsistency() {
        let m = Matrix::from_int_rows(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&Vector::from_ints(&[3, 1])).unwrap();
        assert_eq!(x, Vector::from_ints(&[2, 1]));

        let singular = Matrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert!(singular.solve(&Vector::from_ints(&[1, 3])).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let m = Matrix::from_int_rows(&[&[1, 2], &[3, 5]]);
        let inv = m.invert().unwrap();
        assert_eq!(m.mul_mat(&inv), Matrix::identity(2));
        assert!(Matrix::from_int_rows(&[&[1, 2], &[2, 4]]).invert().is_none());
    }

    #[test]
    fn kron_layout_matches_vector_layout() {
        let a = Vector::from_ints(&[1, 2]);
        let b = Vector::from_ints(&[3, 4]);
        assert_eq!(a.kron(&b), Vector::from_ints(&[3, 4, 6, 8]));

        let ma = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        let mb = Matrix::identity(2);
        let k = ma.kron(&mb);
        let x = Vector::from_ints(&[1, 2, 3, 4]);
        // (A (x) B)(x (x) y) layout agrees with Vector::kron indexing.
        assert_eq!(k.mul_vec(&x), Vector::from_ints(&[3, 4, 1, 2]));
    }

    #[test]
    fn ambient_cap_is_enforced() {
        assert!(check_ambient(8).is_ok());
        let cap = max_ambient();
        assert!(matches!(
            check_ambient(cap + 1),
            Err(LinalgError::AmbientCapExceeded { .. })
        ));
    }
}
