//! Formal differences of base-category morphisms.
//!
//! The base cones have addition but no subtraction, so negatives are
//! adjoined freely: a pair `(pos, neg)` stands for `pos - neg`, and two
//! pairs are identified when they have the same difference, i.e. when
//! `pos + other.neg = other.pos + neg` entrywise. Composition and the
//! monoidal product distribute over the signs. Most production paths work
//! with signed coordinates natively; this module gives the construction a
//! first-class form so its laws can be exercised directly.

use crate::linalg::Matrix;
use crate::model::morphism::Morphism;
use crate::model::ModelError;
use crate::rational::Rational;

/// A signed morphism `pos - neg` between the same objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalDiff {
    pub pos: Morphism,
    pub neg: Morphism,
}

fn sum(a: &Morphism, b: &Morphism) -> Morphism {
    Morphism::new(a.backend, a.src.clone(), a.dst.clone(), a.matrix.add(&b.matrix))
        .expect("summands share shape")
}

fn zero_like(f: &Morphism) -> Morphism {
    Morphism::new(
        f.backend,
        f.src.clone(),
        f.dst.clone(),
        Matrix::zeros(f.matrix.rows(), f.matrix.cols()),
    )
    .expect("zero of a valid shape")
}

impl FormalDiff {
    pub fn new(pos: Morphism, neg: Morphism) -> Result<Self, ModelError> {
        if pos.backend != neg.backend || pos.src != neg.src || pos.dst != neg.dst {
            return Err(ModelError::PairMismatch);
        }
        Ok(FormalDiff { pos, neg })
    }

    /// The canonical inclusion `f -> (f, 0)`. It is faithful: equal images
    /// force equal morphisms, since `f + 0 = g + 0`.
    pub fn embed(f: Morphism) -> Self {
        let neg = zero_like(&f);
        FormalDiff { pos: f, neg }
    }

    fn require_same_shape(&self, other: &FormalDiff) -> Result<(), ModelError> {
        if self.pos.backend != other.pos.backend
            || self.pos.src != other.pos.src
            || self.pos.dst != other.pos.dst
        {
            return Err(ModelError::PairMismatch);
        }
        Ok(())
    }

    /// Whether the two pairs have the same difference.
    pub fn equivalent(&self, other: &FormalDiff) -> Result<bool, ModelError> {
        self.require_same_shape(other)?;
        Ok(sum(&self.pos, &other.neg).matrix == sum(&other.pos, &self.neg).matrix)
    }

    /// Diagrammatic composition, `self` first: the cross terms carry the
    /// sign bookkeeping, `(f,g);(x,y) = (fx + gy, fy + gx)`.
    pub fn compose(&self, then: &FormalDiff) -> Result<FormalDiff, ModelError> {
        let pp = self.pos.compose(&then.pos)?;
        let nn = self.neg.compose(&then.neg)?;
        let pn = self.pos.compose(&then.neg)?;
        let np = self.neg.compose(&then.pos)?;
        FormalDiff::new(sum(&pp, &nn), sum(&pn, &np))
    }

    /// Monoidal product with the same sign bookkeeping as composition.
    pub fn tensor(&self, rhs: &FormalDiff) -> Result<FormalDiff, ModelError> {
        let pp = self.pos.tensor(&rhs.pos)?;
        let nn = self.neg.tensor(&rhs.neg)?;
        let pn = self.pos.tensor(&rhs.neg)?;
        let np = self.neg.tensor(&rhs.pos)?;
        FormalDiff::new(sum(&pp, &nn), sum(&pn, &np))
    }

    pub fn add(&self, other: &FormalDiff) -> Result<FormalDiff, ModelError> {
        self.require_same_shape(other)?;
        FormalDiff::new(sum(&self.pos, &other.pos), sum(&self.neg, &other.neg))
    }

    /// Additive inverse: swap the signs.
    pub fn negate(&self) -> FormalDiff {
        FormalDiff { pos: self.neg.clone(), neg: self.pos.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.pos.matrix == self.neg.matrix
    }

    /// Multiplicative inverse for scalar-shaped differences. The scalar
    /// semiring is totally ordered, so every pair reduces to a one-sided
    /// normal form `(z, 0)` or `(0, z)`; inverting `z` inverts the scalar.
    /// `None` for non-scalar shapes and for zero.
    pub fn scalar_recip(&self) -> Option<FormalDiff> {
        if self.pos.src.ambient_dim() != 1 || self.pos.dst.ambient_dim() != 1 {
            return None;
        }
        let d = &self.pos.matrix[(0, 0)] - &self.neg.matrix[(0, 0)];
        if d.is_zero() {
            return None;
        }
        let (p, n) = if d.is_positive() {
            (d.recip(), Rational::zero())
        } else {
            (Rational::zero(), (-d).recip())
        };
        let shape = |v: Rational| {
            Morphism::new(
                self.pos.backend,
                self.pos.src.clone(),
                self.pos.dst.clone(),
                Matrix::from_rows(&[crate::linalg::Vector(vec![v])]),
            )
            .expect("scalar shape")
        };
        Some(FormalDiff { pos: shape(p), neg: shape(n) })
    }
}

/// Whether a set of states pins down every morphism out of their object:
/// maps agreeing on all of them are equal. In coordinates this is exactly
/// the states spanning the full space, and it is insensitive to signs, so
/// a set keeps or loses this property together with its embedded image.
pub fn is_distinguishing(ambient: usize, states: &[crate::linalg::Vector]) -> bool {
    if ambient == 0 {
        return true;
    }
    if states.is_empty() {
        return false;
    }
    Matrix::from_rows(states).rank() == ambient
}
