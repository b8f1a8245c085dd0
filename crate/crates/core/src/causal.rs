//! Causal sets over a base model and the type constructors on them.
//!
//! A causal set is stored as its affine hull; the cone cut is reapplied at
//! membership time. This representation is lossless for the sets the
//! constructors produce: their duals contain a positive multiple of the
//! discard effect, which pins the affine hull of the cone slice to the
//! stored subspace. Every constructor reduces to hulls, duals (one linear
//! solve), and constraint intersections, so results are exact and canonical.

use crate::affine::AffineSubspace;
use crate::linalg::{LinalgError, Matrix, Vector};
use crate::model::morphism::{factor_perm_matrix, morphism_in_cone, Morphism};
use crate::model::{
    cone_member, kron_states, partial_right, structure_vectors, tensor_many, Backend, ModelError,
    ModelObject,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CausalError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("operands use different backends")]
    BackendMismatch,
    #[error("operands live on different objects")]
    ObjectMismatch,
    #[error("atomic constructor does not apply to this object")]
    KindMismatch,
    #[error("sequence of an empty set on a non-zero object is undefined")]
    EmptyFactorOnNonZero,
    #[error("morphism lies outside the base-category cone")]
    ConeViolation,
    #[error("{name} takes {expected} objects, got {got}")]
    ArityMismatch { name: &'static str, expected: usize, got: usize },
}

/// A closed causal set: backend, carrier object, and the affine hull of its
/// states. `body` empty encodes the initial object's (lack of) states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalSet {
    pub backend: Backend,
    pub object: ModelObject,
    pub body: AffineSubspace,
}

impl CausalSet {
    pub fn new(
        backend: Backend,
        object: ModelObject,
        body: AffineSubspace,
    ) -> Result<Self, CausalError> {
        if !backend.admits(&object) {
            return Err(ModelError::BackendMismatch { backend, object }.into());
        }
        if body.ambient() != object.ambient_dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: object.ambient_dim(),
                got: body.ambient(),
            }
            .into());
        }
        Ok(CausalSet { backend, object, body })
    }

    pub fn ambient(&self) -> usize {
        self.object.ambient_dim()
    }

    /// All normalized states: the hyperplane pairing to 1 with the discard.
    pub fn first_order(backend: Backend, object: ModelObject) -> Result<Self, CausalError> {
        if !backend.admits(&object) {
            return Err(ModelError::BackendMismatch { backend, object }.into());
        }
        let row = structure_vectors(&object).discard.hadamard(&object.gram());
        let body = AffineSubspace::from_constraints(
            &Matrix::from_rows(&[row]),
            &Vector(vec![Rational::one()]),
        )?;
        CausalSet::new(backend, object, body)
    }

    /// The monoidal unit: the single scalar state 1 on the one-dimensional
    /// object.
    pub fn unit(backend: Backend) -> Result<Self, CausalError> {
        let object = ModelObject::unit_for(backend);
        let body = AffineSubspace::point(Vector(vec![Rational::one()]));
        CausalSet::new(backend, object, body)
    }

    /// Initial object: no states on the zero carrier.
    pub fn zero(backend: Backend) -> Result<Self, CausalError> {
        let object = ModelObject::zero_for(backend);
        CausalSet::new(backend, object, AffineSubspace::empty(0))
    }

    /// Terminal object: the unique empty-coordinate state on the zero carrier.
    pub fn one(backend: Backend) -> Result<Self, CausalError> {
        let object = ModelObject::zero_for(backend);
        CausalSet::new(backend, object, AffineSubspace::point(Vector::zeros(0)))
    }

    /// The one-element set containing the normalized uniform state.
    pub fn singleton_uniform(backend: Backend, object: ModelObject) -> Result<Self, CausalError> {
        let sv = structure_vectors(&object);
        let Some(d) = sv.dim_scalar else {
            return Err(CausalError::KindMismatch);
        };
        let body = AffineSubspace::point(sv.uniform.scale(&d.recip()));
        CausalSet::new(backend, object, body)
    }

    /// Dual set: effects pairing to 1 with every state of `self`, as one
    /// linear system. The empty set and the full space are each other's
    /// duals, which on the zero carrier is the initial/terminal pairing.
    pub fn dual(&self) -> Result<Self, CausalError> {
        let body = match &self.body {
            AffineSubspace::Empty { ambient } => AffineSubspace::full(*ambient),
            AffineSubspace::Span { .. } => {
                let g = self.object.gram();
                let base = self.body.basepoint()?;
                let mut rows = vec![base.hadamard(&g)];
                let mut rhs = vec![Rational::one()];
                for d in self.body.directions() {
                    rows.push(d.hadamard(&g));
                    rhs.push(Rational::zero());
                }
                AffineSubspace::from_constraints(&Matrix::from_rows(&rows), &Vector(rhs))?
            }
        };
        CausalSet::new(self.backend, self.object.clone(), body)
    }

    fn require_same_backend(&self, other: &CausalSet) -> Result<(), CausalError> {
        if self.backend != other.backend {
            return Err(CausalError::BackendMismatch);
        }
        Ok(())
    }

    fn require_same_shape(&self, other: &CausalSet) -> Result<(), CausalError> {
        self.require_same_backend(other)?;
        if self.object != other.object {
            return Err(CausalError::ObjectMismatch);
        }
        Ok(())
    }

    /// Monoidal product: hull of pointwise products of affine bases.
    pub fn tensor(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.require_same_backend(other)?;
        let object = self.object.tensor(&other.object)?;
        let ambient = object.ambient_dim();
        if self.body.is_empty() || other.body.is_empty() {
            return CausalSet::new(self.backend, object, AffineSubspace::empty(ambient));
        }
        let mut points = Vec::new();
        for x in self.body.affine_basis_points() {
            for y in other.body.affine_basis_points() {
                points.push(kron_states(&self.object, &other.object, &x, &y)?);
            }
        }
        let body = AffineSubspace::affine_hull(ambient, &points)?;
        CausalSet::new(self.backend, object, body)
    }

    /// De Morgan dual of the monoidal product.
    pub fn par(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.dual()?.tensor(&other.dual()?)?.dual()
    }

    /// Internal hom: processes from `self` to `other`.
    pub fn lolli(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.dual()?.par(other)
    }

    /// One-way signalling composition, `self` before `other`: states of the
    /// par whose contraction with any effect on the second system gives the
    /// same residual first-system state, and that residual lies in `self`.
    pub fn seq(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.require_same_backend(other)?;
        if (self.body.is_empty() && !self.object.is_zero())
            || (other.body.is_empty() && !other.object.is_zero())
        {
            return Err(CausalError::EmptyFactorOnNonZero);
        }
        let par = self.par(other)?;
        if self.body.is_empty() {
            // The initial object absorbs: no states survive the residual cut.
            let ambient = par.ambient();
            return CausalSet::new(par.backend, par.object, AffineSubspace::empty(ambient));
        }
        if par.body.is_empty() {
            return Ok(par);
        }
        let dual_d = other.dual()?;
        if dual_d.body.is_empty() {
            // No effects to vary over: the signalling cut is vacuous.
            return Ok(par);
        }
        let pis = dual_d.body.affine_basis_points();
        let pr: Vec<Matrix> = pis
            .iter()
            .map(|pi| partial_right_matrix(&self.object, &other.object, pi))
            .collect::<Result<_, _>>()?;
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();
        // Residual independence: every dual effect of the second system
        // leaves the same first-system state.
        for k in 1..pr.len() {
            let diff = pr[k].sub(&pr[0]);
            for r in 0..diff.rows() {
                rows.push(diff.row(r));
                rhs.push(Rational::zero());
            }
        }
        // The residual itself lies in the first set.
        let (ec, ac) = self.body.constraints_of()?;
        let res = ec.mul_mat(&pr[0]);
        for r in 0..res.rows() {
            rows.push(res.row(r));
            rhs.push(ac[r].clone());
        }
        // Inside the par body.
        let (ep, ap) = par.body.constraints_of()?;
        for r in 0..ep.rows() {
            rows.push(ep.row(r));
            rhs.push(ap[r].clone());
        }
        let ambient = par.ambient();
        let body = if rows.is_empty() {
            AffineSubspace::full(ambient)
        } else {
            AffineSubspace::from_constraints(&Matrix::from_rows(&rows), &Vector(rhs))?
        };
        CausalSet::new(par.backend, par.object, body)
    }

    /// `other` before `self`, re-indexed onto `self (x) other` coordinates.
    pub fn seq_rev(&self, other: &CausalSet) -> Result<Self, CausalError> {
        let reversed = other.seq(self)?;
        let swap = factor_perm_matrix(
            &[other.object.clone(), self.object.clone()],
            &[1, 0],
        )?;
        let object = self.object.tensor(&other.object)?;
        let body = reversed.body.map_through(&swap)?;
        CausalSet::new(self.backend, object, body)
    }

    /// Cartesian product on the biproduct carrier: componentwise pairs.
    pub fn with_prod(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.require_same_backend(other)?;
        let object = self.object.biproduct(&other.object)?;
        let ambient = object.ambient_dim();
        if self.body.is_empty() || other.body.is_empty() {
            return CausalSet::new(self.backend, object, AffineSubspace::empty(ambient));
        }
        let mut points = Vec::new();
        for x in self.body.affine_basis_points() {
            for y in other.body.affine_basis_points() {
                points.push(x.concat(&y));
            }
        }
        let body = AffineSubspace::affine_hull(ambient, &points)?;
        CausalSet::new(self.backend, object, body)
    }

    /// Coproduct, computed as the De Morgan dual of the product.
    pub fn plus_coprod(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.dual()?.with_prod(&other.dual()?)?.dual()
    }

    /// Intersection on a shared carrier. Verification plumbing: the result
    /// is not guaranteed flat and is not re-checked.
    pub fn intersect_sets(&self, other: &CausalSet) -> Result<Self, CausalError> {
        self.require_same_shape(other)?;
        let body = self.body.intersect(&other.body)?;
        CausalSet::new(self.backend, self.object.clone(), body)
    }

    /// Membership: cone membership plus affine membership.
    pub fn member(&self, x: &Vector) -> Result<bool, CausalError> {
        Ok(cone_member(self.backend, &self.object, x)? && self.body.contains(x))
    }

    /// Exact set equality. Sound because every constructor stores the affine
    /// hull of the actual cone slice, so equal hulls mean equal sets.
    pub fn equal_set(&self, other: &CausalSet) -> Result<bool, CausalError> {
        self.require_same_shape(other)?;
        Ok(self.body == other.body)
    }

    pub fn subset_set(&self, other: &CausalSet) -> Result<bool, CausalError> {
        self.require_same_shape(other)?;
        Ok(self.body.is_subset(&other.body))
    }

    /// Both scalar witnesses exist: some nonzero multiple of the uniform
    /// state lies in the body and some nonzero multiple of the discard in
    /// its dual. Everything on the zero carrier counts as flat outright.
    /// Products of unequal-dimension factors genuinely fail the first
    /// solve, so this is a query, not an invariant.
    pub fn is_flat(&self) -> Result<bool, CausalError> {
        if self.object.is_zero() {
            return Ok(true);
        }
        if self.body.is_empty() {
            return Ok(false);
        }
        let sv = structure_vectors(&self.object);
        if scalar_multiple_in(&self.body, &sv.uniform).is_none() {
            return Ok(false);
        }
        let dual = self.dual()?;
        Ok(scalar_multiple_in(&dual.body, &sv.discard).is_some())
    }

    /// Whether the dual collapses to a single point proportional to the
    /// discard, the defining property of first-order systems. On the zero
    /// carrier the empty-coordinate point is vacuously proportional, which
    /// classifies the initial object as first-order and the terminal one not.
    pub fn is_first_order(&self) -> Result<bool, CausalError> {
        let dual = self.dual()?;
        match &dual.body {
            AffineSubspace::Empty { .. } => Ok(false),
            AffineSubspace::Span { basepoint, directions } => {
                if !directions.is_empty() {
                    return Ok(false);
                }
                let discard = structure_vectors(&self.object).discard;
                Ok(proportional_nonzero(basepoint, &discard).is_some())
            }
        }
    }

}

/// Some nonzero scalar with `lambda * v` in the subspace, if one exists.
pub(crate) fn scalar_multiple_in(sub: &AffineSubspace, v: &Vector) -> Option<Rational> {
    if sub.is_empty() {
        return None;
    }
    let (e, rhs) = sub.constraints_of().ok()?;
    let w = e.mul_vec(v);
    let mut lambda: Option<Rational> = None;
    for i in 0..w.dim() {
        if w[i].is_zero() {
            if !rhs[i].is_zero() {
                return None;
            }
        } else {
            let l = &rhs[i] / &w[i];
            match &lambda {
                None => lambda = Some(l),
                Some(prev) if *prev != l => return None,
                _ => {}
            }
        }
    }
    match lambda {
        // No binding constraint: every multiple lies inside.
        None => Some(Rational::one()),
        Some(l) if l.is_zero() => None,
        some => some,
    }
}

/// Some nonzero scalar with `p = mu * q`, if one exists. Zero `q` (only the
/// zero-carrier case here) matches exactly the zero `p`.
fn proportional_nonzero(p: &Vector, q: &Vector) -> Option<Rational> {
    if q.is_zero() {
        return p.is_zero().then(Rational::one);
    }
    let i = q.0.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let mu = &p[i] / &q[i];
    if mu.is_zero() || *p != q.scale(&mu) {
        return None;
    }
    Some(mu)
}

/// The linear map `h -> partial_right(e, h)` as an explicit matrix.
fn partial_right_matrix(
    a: &ModelObject,
    b: &ModelObject,
    e: &Vector,
) -> Result<Matrix, ModelError> {
    let ab = a.tensor(b)?.ambient_dim();
    let mut m = Matrix::zeros(a.ambient_dim(), ab);
    for k in 0..ab {
        let col = partial_right(a, b, e, &Vector::unit(ab, k))?;
        for r in 0..col.dim() {
            if !col[r].is_zero() {
                m[(r, k)] = col[r].clone();
            }
        }
    }
    Ok(m)
}

/// Whether the base morphism restricts to a map of causal sets: every state
/// of `c` lands in `d`. The cone check failing is reported as an error,
/// distinct from a clean "not causal".
pub fn check_causal(f: &Morphism, c: &CausalSet, d: &CausalSet) -> Result<bool, CausalError> {
    if f.backend != c.backend || f.backend != d.backend {
        return Err(CausalError::BackendMismatch);
    }
    if f.src != c.object || f.dst != d.object {
        return Err(CausalError::ObjectMismatch);
    }
    if !morphism_in_cone(f)? {
        return Err(CausalError::ConeViolation);
    }
    Ok(c.body
        .affine_basis_points()
        .iter()
        .all(|p| d.body.contains(&f.matrix.mul_vec(p))))
}

/// The coherence isomorphisms of the monoidal structures, as explicit
/// coordinate morphisms. Flat coordinate layouts make associators, unitors,
/// and the linear distributor literal identities; the symmetry and the
/// interchange maps are (signed) factor permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralMap {
    Swap,
    AssocL,
    AssocR,
    UnitorL,
    UnitorR,
    InterchangeTensor,
    InterchangePar,
    LinDistrib,
}

impl StructuralMap {
    fn arity(self) -> usize {
        match self {
            StructuralMap::Swap => 2,
            StructuralMap::UnitorL | StructuralMap::UnitorR => 1,
            StructuralMap::AssocL | StructuralMap::AssocR | StructuralMap::LinDistrib => 3,
            StructuralMap::InterchangeTensor | StructuralMap::InterchangePar => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StructuralMap::Swap => "swap",
            StructuralMap::AssocL => "assoc_l",
            StructuralMap::AssocR => "assoc_r",
            StructuralMap::UnitorL => "unitor_l",
            StructuralMap::UnitorR => "unitor_r",
            StructuralMap::InterchangeTensor => "interchange_w_tensor",
            StructuralMap::InterchangePar => "interchange_w_par",
            StructuralMap::LinDistrib => "lin_distrib",
        }
    }
}

pub fn structural_mor(
    backend: Backend,
    map: StructuralMap,
    objs: &[ModelObject],
) -> Result<Morphism, CausalError> {
    if objs.len() != map.arity() {
        return Err(CausalError::ArityMismatch {
            name: map.name(),
            expected: map.arity(),
            got: objs.len(),
        });
    }
    for o in objs {
        if !backend.admits(o) {
            return Err(ModelError::BackendMismatch { backend, object: o.clone() }.into());
        }
    }
    let m = match map {
        StructuralMap::Swap => {
            let src = tensor_many(objs)?;
            let dst = objs[1].tensor(&objs[0])?;
            Morphism::new(backend, src, dst, factor_perm_matrix(objs, &[1, 0])?)?
        }
        StructuralMap::UnitorL | StructuralMap::UnitorR => {
            // The unit carrier multiplies in trivially, so the product object
            // coincides with the factor and the map is the identity.
            Morphism::identity(backend, &objs[0])?
        }
        StructuralMap::AssocL | StructuralMap::AssocR | StructuralMap::LinDistrib => {
            // Both bracketings share the flat index layout.
            Morphism::identity(backend, &tensor_many(objs)?)?
        }
        StructuralMap::InterchangeTensor => {
            // (R, U, T, V) -> (R, T, U, V): identity on the outer factors,
            // symmetry on the middle ones.
            let src = tensor_many(objs)?;
            let reordered =
                [objs[0].clone(), objs[2].clone(), objs[1].clone(), objs[3].clone()];
            let dst = tensor_many(&reordered)?;
            Morphism::new(backend, src, dst, factor_perm_matrix(objs, &[0, 2, 1, 3])?)?
        }
        StructuralMap::InterchangePar => {
            // Transpose of the interchange above: middle factors swap the
            // other way around.
            let reordered =
                [objs[0].clone(), objs[2].clone(), objs[1].clone(), objs[3].clone()];
            let src = tensor_many(&reordered)?;
            let dst = tensor_many(objs)?;
            Morphism::new(backend, src, dst, factor_perm_matrix(&reordered, &[0, 2, 1, 3])?)?
        }
    };
    Ok(m)
}
