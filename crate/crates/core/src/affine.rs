//! Affine subspaces of Q^n in canonical form.
//!
//! A subspace is either empty or `basepoint + span(directions)`. Directions
//! are kept in reduced row echelon form and the basepoint is reduced to have
//! zero entries at every pivot column, so two subspaces are equal as sets
//! exactly when their representations are structurally equal.

use crate::linalg::{check_ambient, LinalgError, Matrix, Vector};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AffineSubspace {
    Empty { ambient: usize },
    Span { basepoint: Vector, directions: Vec<Vector> },
}

impl AffineSubspace {
    pub fn empty(ambient: usize) -> Self {
        AffineSubspace::Empty { ambient }
    }

    /// Single point {v}.
    pub fn point(v: Vector) -> Self {
        AffineSubspace::Span { basepoint: v, directions: Vec::new() }
    }

    /// The whole of Q^n.
    pub fn full(ambient: usize) -> Self {
        let dirs = (0..ambient).map(|i| Vector::unit(ambient, i)).collect();
        AffineSubspace::Span { basepoint: Vector::zeros(ambient), directions: dirs }
    }

    /// Canonicalizes an arbitrary basepoint + spanning set presentation.
    pub fn from_parts(basepoint: Vector, directions: Vec<Vector>) -> Result<Self, LinalgError> {
        let ambient = basepoint.dim();
        check_ambient(ambient)?;
        for d in &directions {
            if d.dim() != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, got: d.dim() });
            }
        }
        let (rref, pivots) = Matrix::from_rows(&directions).rref();
        let dirs = rref.row_vectors();
        let mut b = basepoint;
        for (row, &p) in pivots.iter().enumerate() {
            if !b[p].is_zero() {
                let f = b[p].clone();
                b = b.sub(&dirs[row].scale(&f));
            }
        }
        Ok(AffineSubspace::Span { basepoint: b, directions: dirs })
    }

    pub fn ambient(&self) -> usize {
        match self {
            AffineSubspace::Empty { ambient } => *ambient,
            AffineSubspace::Span { basepoint, .. } => basepoint.dim(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, AffineSubspace::Empty { .. })
    }

    /// Affine dimension; None when empty.
    pub fn dim(&self) -> Option<usize> {
        match self {
            AffineSubspace::Empty { .. } => None,
            AffineSubspace::Span { directions, .. } => Some(directions.len()),
        }
    }

    pub fn basepoint(&self) -> Result<&Vector, LinalgError> {
        match self {
            AffineSubspace::Empty { .. } => Err(LinalgError::EmptySubspace),
            AffineSubspace::Span { basepoint, .. } => Ok(basepoint),
        }
    }

    pub fn directions(&self) -> &[Vector] {
        match self {
            AffineSubspace::Empty { .. } => &[],
            AffineSubspace::Span { directions, .. } => directions,
        }
    }

    /// Basepoint plus basepoint+direction points; affinely spans the subspace.
    pub fn affine_basis_points(&self) -> Vec<Vector> {
        match self {
            AffineSubspace::Empty { .. } => Vec::new(),
            AffineSubspace::Span { basepoint, directions } => {
                let mut pts = vec![basepoint.clone()];
                pts.extend(directions.iter().map(|d| basepoint.add(d)));
                pts
            }
        }
    }

    /// Smallest affine subspace containing all points; Empty for no points.
    pub fn affine_hull(ambient: usize, points: &[Vector]) -> Result<Self, LinalgError> {
        check_ambient(ambient)?;
        let Some(first) = points.first() else {
            return Ok(AffineSubspace::empty(ambient));
        };
        for p in points {
            if p.dim() != ambient {
                return Err(LinalgError::DimensionMismatch { expected: ambient, got: p.dim() });
            }
        }
        let dirs: Vec<Vector> = points[1..].iter().map(|p| p.sub(first)).collect();
        AffineSubspace::from_parts(first.clone(), dirs)
    }

    /// Independent linear constraints `E x = rhs` cutting out exactly this
    /// subspace. Errors on the empty subspace.
    pub fn constraints_of(&self) -> Result<(Matrix, Vector), LinalgError> {
        let basepoint = self.basepoint()?;
        let dmat = Matrix::from_rows(self.directions());
        let rows = if dmat.rows() == 0 {
            // A point is cut out by the full identity system.
            Matrix::identity(self.ambient()).row_vectors()
        } else {
            dmat.kernel_basis()
        };
        let e = if rows.is_empty() {
            Matrix::zeros(0, self.ambient())
        } else {
            Matrix::from_rows(&rows)
        };
        let rhs = e.mul_vec(basepoint);
        Ok((e, rhs))
    }

    /// Solution set of `E x = rhs`; Empty when inconsistent.
    pub fn from_constraints(e: &Matrix, rhs: &Vector) -> Result<Self, LinalgError> {
        check_ambient(e.cols())?;
        if rhs.dim() != e.rows() {
            return Err(LinalgError::DimensionMismatch { expected: e.rows(), got: rhs.dim() });
        }
        match e.solve(rhs) {
            None => Ok(AffineSubspace::empty(e.cols())),
            Some(p) => AffineSubspace::from_parts(p, e.kernel_basis()),
        }
    }

    pub fn contains(&self, x: &Vector) -> bool {
        match self {
            AffineSubspace::Empty { .. } => false,
            AffineSubspace::Span { basepoint, directions } => {
                if x.dim() != basepoint.dim() {
                    return false;
                }
                reduces_to_zero(&x.sub(basepoint), directions)
            }
        }
    }

    pub fn is_subset(&self, other: &AffineSubspace) -> bool {
        if self.ambient() != other.ambient() {
            return false;
        }
        match (self, other) {
            (AffineSubspace::Empty { .. }, _) => true,
            (_, AffineSubspace::Empty { .. }) => false,
            (AffineSubspace::Span { basepoint, directions }, t) => {
                t.contains(basepoint)
                    && directions.iter().all(|d| reduces_to_zero(d, t.directions()))
            }
        }
    }

    pub fn intersect(&self, other: &AffineSubspace) -> Result<Self, LinalgError> {
        if self.ambient() != other.ambient() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient(),
                got: other.ambient(),
            });
        }
        if self.is_empty() || other.is_empty() {
            return Ok(AffineSubspace::empty(self.ambient()));
        }
        let (e1, r1) = self.constraints_of()?;
        let (e2, r2) = other.constraints_of()?;
        let mut rows = e1.row_vectors();
        rows.extend(e2.row_vectors());
        let e = if rows.is_empty() {
            Matrix::zeros(0, self.ambient())
        } else {
            Matrix::from_rows(&rows)
        };
        AffineSubspace::from_constraints(&e, &r1.concat(&r2))
    }

    /// Image under the linear map `m` (ambient -> m.rows()).
    pub fn map_through(&self, m: &Matrix) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient() {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient(), got: m.cols() });
        }
        match self {
            AffineSubspace::Empty { .. } => Ok(AffineSubspace::empty(m.rows())),
            AffineSubspace::Span { basepoint, directions } => AffineSubspace::from_parts(
                m.mul_vec(basepoint),
                directions.iter().map(|d| m.mul_vec(d)).collect(),
            ),
        }
    }
}

/// Reduces `v` against RREF rows and reports whether the residual vanishes,
/// i.e. whether `v` lies in their row space.
fn reduces_to_zero(v: &Vector, rref_rows: &[Vector]) -> bool {
    let mut v = v.clone();
    for row in rref_rows {
        // Pivot column of an RREF row is its first nonzero entry.
        let Some(p) = row.0.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if !v[p].is_zero() {
            let f = v[p].clone();
            v = v.sub(&row.scale(&f));
        }
    }
    v.is_zero()
}

/// For independent `states` returns effects `e_j` with `<states_i, e_j> = delta_ij`,
/// each orthogonal to the canonical completion of the input to a full basis.
pub fn dual_basis(states: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    let Some(first) = states.first() else {
        return Ok(Vec::new());
    };
    let n = first.dim();
    check_ambient(n)?;
    for s in states {
        if s.dim() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, got: s.dim() });
        }
    }
    let mut rows: Vec<Vector> = states.to_vec();
    if Matrix::from_rows(&rows).rank() != rows.len() {
        return Err(LinalgError::DependentInputs);
    }
    // Greedy completion by unit vectors keeps the construction deterministic.
    for i in 0..n {
        if rows.len() == n {
            break;
        }
        let candidate = Vector::unit(n, i);
        rows.push(candidate);
        if Matrix::from_rows(&rows).rank() != rows.len() {
            rows.pop();
        }
    }
    let b = Matrix::from_rows(&rows);
    let inv = b.invert().expect("completed basis must be invertible");
    Ok((0..states.len()).map(|j| inv.col(j)).collect())
}

// Serialized form: {"basepoint": [...], "directions": [[...], ...]} or
// {"empty": true, "ambient": n}. Deserialization re-canonicalizes.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SubspaceRepr {
    Empty { empty: bool, ambient: usize },
    Span { basepoint: Vector, directions: Vec<Vector> },
}

impl Serialize for AffineSubspace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            AffineSubspace::Empty { ambient } => {
                SubspaceRepr::Empty { empty: true, ambient: *ambient }
            }
            AffineSubspace::Span { basepoint, directions } => SubspaceRepr::Span {
                basepoint: basepoint.clone(),
                directions: directions.clone(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AffineSubspace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match SubspaceRepr::deserialize(deserializer)? {
            SubspaceRepr::Empty { empty, ambient } => {
                if !empty {
                    return Err(D::Error::custom("subspace with \"empty\": false"));
                }
                Ok(AffineSubspace::empty(ambient))
            }
            SubspaceRepr::Span { basepoint, directions } => {
                AffineSubspace::from_parts(basepoint, directions).map_err(D::Error::custom)
            }
        }
    }
}
