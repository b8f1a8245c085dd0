//! Randomized and cataloged checks of the library's main identities: duality
//! closure, the composition laws relating tensor, par, and one-way sequence,
//! additive structure, zero-object behaviour, base-model axioms, and the
//! standard nonlocal-box membership facts.
//!
//! Every check is deterministic for a fixed seed, computes both sides of each
//! asserted equality through separate code paths, and returns a `CheckReport`
//! whose `failures` list is empty exactly when the check passed. `elapsed_ms`
//! is pinned to zero so that serialized reports are reproducible byte for
//! byte; callers wanting wall-clock numbers time the call themselves.

use crate::affine::AffineSubspace;
use crate::causal::{
    check_causal, scalar_multiple_in, structural_mor, CausalError, CausalSet, StructuralMap,
};
use crate::dsl;
use crate::linalg::{Matrix, Vector};
use crate::model::morphism::{
    discard_then_uniform, map_from_choi, morphism_in_cone, process_complement, Morphism,
};
use crate::model::quantum::CMat;
use crate::model::{
    cone_member, effect_complement, inject_first, inject_second, kron_states, pair_full,
    structure_vectors, Backend, ModelObject,
};
use crate::rational::Rational;
use crate::subclosure::{is_distinguishing, FormalDiff};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// One failed assertion: the instance that failed, what was expected, and
/// what was computed instead.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one named check. `failures` empty means the check passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instances: usize,
    pub failures: Vec<CheckFailure>,
    pub elapsed_ms: u64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All check names, in the (alphabetical) order `run_all` reports them.
pub const CHECK_NAMES: [&str; 12] = [
    "additives",
    "affine_closure",
    "apc_axioms",
    "bv_interchange",
    "causality_exception",
    "first_order_char",
    "gnst",
    "no_interaction",
    "nonsignalling_eq",
    "seq_selfdual",
    "sub_laws",
    "zero_tables",
];

pub fn run_check(name: &str, seed: u64) -> Result<CheckReport, SuiteError> {
    match name {
        "additives" => Ok(check_additives(seed)),
        "affine_closure" => Ok(check_affine_closure(seed)),
        "apc_axioms" => Ok(check_apc_axioms(seed)),
        "bv_interchange" => Ok(check_bv_interchange(seed)),
        "causality_exception" => Ok(check_causality_exception(seed)),
        "first_order_char" => Ok(check_first_order_char(seed)),
        "gnst" => Ok(check_gnst(seed)),
        "no_interaction" => Ok(check_no_interaction(seed)),
        "nonsignalling_eq" => Ok(check_nonsignalling_eq(seed)),
        "seq_selfdual" => Ok(check_seq_selfdual(seed)),
        "sub_laws" => Ok(check_sub_laws(seed)),
        "zero_tables" => Ok(check_zero_tables(seed)),
        other => Err(SuiteError::UnknownCheck(other.to_string())),
    }
}

pub fn run_all(seed: u64) -> Vec<CheckReport> {
    CHECK_NAMES
        .iter()
        .map(|name| run_check(name, seed).expect("listed name"))
        .collect()
}

const BACKENDS: [Backend; 3] =
    [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp];

struct Recorder {
    report: CheckReport,
}

impl Recorder {
    fn new(check: &str) -> Self {
        Recorder {
            report: CheckReport {
                check: check.to_string(),
                instances: 0,
                failures: Vec::new(),
                elapsed_ms: 0,
            },
        }
    }

    fn fail(&mut self, inputs: String, expected: &str, got: &str) {
        self.report.instances += 1;
        self.report.failures.push(CheckFailure {
            inputs,
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }

    fn record(&mut self, inputs: &str, expected: &str, got: &str, ok: bool) {
        if ok {
            self.report.instances += 1;
        } else {
            self.fail(inputs.to_string(), expected, got);
        }
    }

    fn bool_eq(&mut self, inputs: &str, expected: bool, got: Result<bool, CausalError>) {
        match got {
            Ok(b) => {
                self.record(inputs, &expected.to_string(), &b.to_string(), b == expected)
            }
            Err(e) => self.fail(inputs.to_string(), &expected.to_string(), &e.to_string()),
        }
    }

    fn require_true(&mut self, inputs: &str, got: Result<bool, CausalError>) {
        self.bool_eq(inputs, true, got);
    }

    fn require_false(&mut self, inputs: &str, got: Result<bool, CausalError>) {
        self.bool_eq(inputs, false, got);
    }

    fn set_eq(&mut self, inputs: &str, lhs: &CausalSet, rhs: &CausalSet) {
        match lhs.equal_set(rhs) {
            Ok(b) => self.record(inputs, "equal sets", if b { "equal sets" } else { "different sets" }, b),
            Err(e) => self.fail(inputs.to_string(), "equal sets", &e.to_string()),
        }
    }

    fn plain(&mut self, inputs: &str, ok: bool) {
        self.record(inputs, "true", &ok.to_string(), ok);
    }

    /// Runs one fallible instance; a construction error becomes a failure
    /// entry instead of aborting the whole check.
    fn guard<F>(&mut self, inputs: &str, body: F)
    where
        F: FnOnce(&mut Recorder) -> Result<(), CausalError>,
    {
        if let Err(e) = body(self) {
            self.fail(inputs.to_string(), "instance to evaluate", &e.to_string());
        }
    }

    fn finish(self) -> CheckReport {
        self.report
    }
}

/// Deterministic source of random carrier objects and flat closed sets.
///
/// Generated sets are affine hulls of cone points whose discard pairing is 1,
/// always including the normalized uniform state, so flatness and closedness
/// hold by construction rather than by rejection.
pub struct RandomTypeGenerator {
    backend: Backend,
    max_ambient: usize,
    rng: ChaCha8Rng,
}

impl RandomTypeGenerator {
    pub fn new(backend: Backend, seed: u64, max_ambient: usize) -> Self {
        RandomTypeGenerator { backend, max_ambient, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn random_object(&mut self) -> ModelObject {
        if self.backend.is_classical() {
            let hi = self.max_ambient.clamp(2, 8);
            ModelObject::classical(self.rng.gen_range(2..=hi)).expect("small ambient")
        } else {
            let menu: [&[usize]; 4] = [&[2], &[1, 1], &[2, 1], &[3]];
            let fitting: Vec<&[usize]> = menu
                .iter()
                .copied()
                .filter(|blocks| blocks.iter().map(|d| d * d).sum::<usize>() <= self.max_ambient)
                .collect();
            let pick = fitting[self.rng.gen_range(0..fitting.len())];
            ModelObject::quantum(pick.to_vec()).expect("small blocks")
        }
    }

    /// A cone point with discard pairing exactly 1: a random convex
    /// combination of the fiducial causal basis.
    pub fn random_cone_point(&mut self, object: &ModelObject) -> Vector {
        let sv = structure_vectors(object);
        let n = sv.causal_basis.len();
        let mut weights: Vec<i64> = Vec::with_capacity(n);
        loop {
            weights.clear();
            for _ in 0..n {
                weights.push(self.rng.gen_range(0..=4));
            }
            if weights.iter().any(|w| *w > 0) {
                break;
            }
        }
        let total: i64 = weights.iter().sum();
        let mut point = Vector::zeros(object.ambient_dim());
        for (w, basis) in weights.iter().zip(&sv.causal_basis) {
            if *w > 0 {
                point = point.add(&basis.scale(&Rational::new(*w, total)));
            }
        }
        point
    }

    /// A random flat closed set on `object` together with the cone points
    /// whose affine hull it is. `max_extra` bounds how many points join the
    /// normalized uniform state.
    pub fn random_flat_set(
        &mut self,
        object: &ModelObject,
        max_extra: usize,
    ) -> (CausalSet, Vec<Vector>) {
        let sv = structure_vectors(object);
        let d = sv.dim_scalar.clone().expect("non-zero object");
        let mut points = vec![sv.uniform.scale(&d.recip())];
        let extra = self.rng.gen_range(0..=max_extra);
        for _ in 0..extra {
            points.push(self.random_cone_point(object));
        }
        let body = AffineSubspace::affine_hull(object.ambient_dim(), &points)
            .expect("consistent ambient");
        let set = CausalSet::new(self.backend, object.clone(), body).expect("flat hull");
        (set, points)
    }
}

fn column_morphism(backend: Backend, object: &ModelObject, v: &Vector) -> Morphism {
    let mut m = Matrix::zeros(v.dim(), 1);
    for r in 0..v.dim() {
        m[(r, 0)] = v[r].clone();
    }
    Morphism::new(backend, ModelObject::unit_for(backend), object.clone(), m)
        .expect("column shape")
}

/// The discard effect as a morphism into the unit object; its matrix row
/// carries the Gram weights so that applying it computes the full pairing.
fn discard_morphism(backend: Backend, object: &ModelObject) -> Morphism {
    let row = structure_vectors(object).discard.hadamard(&object.gram());
    Morphism::new(
        backend,
        object.clone(),
        ModelObject::unit_for(backend),
        Matrix::from_rows(&[row]),
    )
    .expect("row shape")
}

fn inject_morphism_first(backend: Backend, a: &ModelObject, b: &ModelObject) -> Morphism {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let mut m = Matrix::zeros(na + nb, na);
    for r in 0..na {
        m[(r, r)] = Rational::one();
    }
    let dst = a.biproduct(b).expect("biproduct");
    Morphism::new(backend, a.clone(), dst, m).expect("block shape")
}

fn inject_morphism_second(backend: Backend, a: &ModelObject, b: &ModelObject) -> Morphism {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let mut m = Matrix::zeros(na + nb, nb);
    for r in 0..nb {
        m[(na + r, r)] = Rational::one();
    }
    let dst = a.biproduct(b).expect("biproduct");
    Morphism::new(backend, b.clone(), dst, m).expect("block shape")
}

fn project_morphism_first(backend: Backend, a: &ModelObject, b: &ModelObject) -> Morphism {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let mut m = Matrix::zeros(na, na + nb);
    for r in 0..na {
        m[(r, r)] = Rational::one();
    }
    let src = a.biproduct(b).expect("biproduct");
    Morphism::new(backend, src, a.clone(), m).expect("block shape")
}

fn project_morphism_second(backend: Backend, a: &ModelObject, b: &ModelObject) -> Morphism {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let mut m = Matrix::zeros(nb, na + nb);
    for r in 0..nb {
        m[(r, na + r)] = Rational::one();
    }
    let src = a.biproduct(b).expect("biproduct");
    Morphism::new(backend, src, b.clone(), m).expect("block shape")
}

/// Direct coproduct construction: the affine hull of both sets' basis points
/// pushed through the biproduct injections. Used as the independent side
/// when comparing against the duality-defined coproduct.
fn plus_by_injections(c: &CausalSet, d: &CausalSet) -> Result<CausalSet, CausalError> {
    let object = c.object.biproduct(&d.object)?;
    let ambient = object.ambient_dim();
    let mut points = Vec::new();
    for x in c.body.affine_basis_points() {
        points.push(inject_first(&c.object, &d.object, &x));
    }
    for y in d.body.affine_basis_points() {
        points.push(inject_second(&c.object, &d.object, &y));
    }
    let body = AffineSubspace::affine_hull(ambient, &points)?;
    CausalSet::new(c.backend, object, body)
}

fn quantum_cap(backend: Backend) -> usize {
    if backend.is_classical() {
        6
    } else {
        9
    }
}

// ---------------------------------------------------------------------------
// additives

fn check_additives(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("additives");
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        let unit_set = CausalSet::unit(backend).expect("unit");
        let zero_set = CausalSet::zero(backend).expect("zero");
        let one_set = CausalSet::one(backend).expect("one");
        for i in 0..50 {
            let a = gen.random_object();
            let b = gen.random_object();
            let (c, c_pts) = gen.random_flat_set(&a, 3);
            let (d, d_pts) = gen.random_flat_set(&b, 3);
            let ctx = format!("backend={} instance={} a={:?} b={:?}", backend.name(), i, a, b);
            rec.guard(&ctx, |rec| {
                let with_set = c.with_prod(&d)?;
                let plus_set = c.plus_coprod(&d)?;
                let plus_direct = plus_by_injections(&c, &d)?;
                rec.set_eq(&format!("{ctx} coproduct two routes"), &plus_direct, &plus_set);

                // De Morgan, both directions, against the injection-built side.
                let with_dualized = with_set.dual()?;
                let plus_of_duals = plus_by_injections(&c.dual()?, &d.dual()?)?;
                rec.set_eq(&format!("{ctx} dual of product"), &with_dualized, &plus_of_duals);
                let plus_dualized = plus_set.dual()?;
                let with_of_duals = c.dual()?.with_prod(&d.dual()?)?;
                rec.set_eq(&format!("{ctx} dual of coproduct"), &plus_dualized, &with_of_duals);

                // Injections, projections, pairing, copairing are causal.
                let inj1 = inject_morphism_first(backend, &a, &b);
                let inj2 = inject_morphism_second(backend, &a, &b);
                rec.require_true(&format!("{ctx} inject left"), check_causal(&inj1, &c, &plus_set));
                rec.require_true(&format!("{ctx} inject right"), check_causal(&inj2, &d, &plus_set));
                let proj1 = project_morphism_first(backend, &a, &b);
                let proj2 = project_morphism_second(backend, &a, &b);
                rec.require_true(&format!("{ctx} project left"), check_causal(&proj1, &with_set, &c));
                rec.require_true(&format!("{ctx} project right"), check_causal(&proj2, &with_set, &d));

                let pairing = column_morphism(backend, &a.biproduct(&b)?, &c_pts[0].concat(&d_pts[0]));
                rec.require_true(&format!("{ctx} pairing"), check_causal(&pairing, &unit_set, &with_set));
                let copair = {
                    let ra = discard_morphism(backend, &a).matrix.row(0);
                    let rb = discard_morphism(backend, &b).matrix.row(0);
                    Morphism::new(
                        backend,
                        a.biproduct(&b)?,
                        ModelObject::unit_for(backend),
                        Matrix::from_rows(&[ra.concat(&rb)]),
                    )
                    .expect("row shape")
                };
                rec.require_true(&format!("{ctx} copairing"), check_causal(&copair, &plus_set, &unit_set));

                // Units: 0 for the coproduct, 1 for the product.
                rec.set_eq(&format!("{ctx} coproduct unit"), &zero_set.plus_coprod(&c)?, &c);
                rec.set_eq(&format!("{ctx} product unit"), &one_set.with_prod(&c)?, &c);

                // Coproducts preserve first-order sets; products never do on
                // non-zero carriers.
                let fo_a = CausalSet::first_order(backend, a.clone())?;
                let fo_b = CausalSet::first_order(backend, b.clone())?;
                let fo_sum = CausalSet::first_order(backend, a.biproduct(&b)?)?;
                rec.set_eq(&format!("{ctx} coproduct of normalized"), &fo_a.plus_coprod(&fo_b)?, &fo_sum);
                rec.require_false(
                    &format!("{ctx} product of normalized"),
                    fo_a.with_prod(&fo_b)?.is_first_order(),
                );
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// affine_closure

fn check_affine_closure(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("affine_closure");
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        for i in 0..200 {
            let object = gen.random_object();
            let (c, _) = gen.random_flat_set(&object, 3);
            let ctx = format!(
                "backend={} instance={} object={:?} dim={:?}",
                backend.name(),
                i,
                object,
                c.body.dim()
            );
            rec.guard(&ctx, |rec| {
                let dd = c.dual()?.dual()?;
                rec.set_eq(&ctx, &dd, &c);
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// apc_axioms

fn random_classical_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, signed: bool) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            let lo = if signed { -2 } else { 0 };
            m[(r, c)] = Rational::new(rng.gen_range(lo..=3), 1);
        }
    }
    m
}

fn random_psd(rng: &mut ChaCha8Rng, dim: usize) -> CMat {
    let mut g = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(
                i,
                j,
                Rational::new(rng.gen_range(-2..=2), 1),
                Rational::new(rng.gen_range(-2..=2), 1),
            );
        }
    }
    g.mul(&g.adjoint())
}

fn random_cone_morphism(
    rng: &mut ChaCha8Rng,
    backend: Backend,
    src: &ModelObject,
    dst: &ModelObject,
) -> Morphism {
    match backend {
        Backend::ClassicalNonneg | Backend::ClassicalAffine => {
            let m = random_classical_matrix(rng, dst.ambient_dim(), src.ambient_dim(), false);
            Morphism::new(backend, src.clone(), dst.clone(), m).expect("shape")
        }
        Backend::QuantumCp => {
            let sb = src.blocks().expect("quantum src");
            let db = dst.blocks().expect("quantum dst");
            let chois: Vec<Vec<CMat>> = sb
                .iter()
                .map(|&d| db.iter().map(|&e| random_psd(rng, d * e)).collect())
                .collect();
            map_from_choi(backend, src, dst, &chois).expect("choi shapes")
        }
    }
}

fn check_apc_axioms(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("apc_axioms");
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1234_5678);
        for i in 0..50 {
            let a = gen.random_object();
            let b = gen.random_object();
            let ctx = format!("backend={} instance={} a={:?} b={:?}", backend.name(), i, a, b);
            rec.guard(&ctx, |rec| {
                let sva = structure_vectors(&a);
                let svb = structure_vectors(&b);
                let svt = structure_vectors(&a.tensor(&b)?);
                let svs = structure_vectors(&a.biproduct(&b)?);

                // Discards are monoidal for both products.
                let kron = kron_states(&a, &b, &sva.discard, &svb.discard)?;
                rec.plain(&format!("{ctx} discard of tensor"), kron == svt.discard);
                rec.plain(
                    &format!("{ctx} discard of biproduct"),
                    sva.discard.concat(&svb.discard) == svs.discard,
                );

                // Non-zero carriers have invertible global dimension, and it
                // is multiplicative / additive over the two products.
                let da = sva.dim_scalar.clone().expect("non-zero");
                let db = svb.dim_scalar.clone().expect("non-zero");
                let dt = svt.dim_scalar.clone().expect("non-zero");
                let ds = svs.dim_scalar.clone().expect("non-zero");
                rec.plain(&format!("{ctx} dim nonzero"), !da.is_zero() && !db.is_zero());
                rec.plain(&format!("{ctx} dim multiplicative"), dt == &da * &db);
                rec.plain(&format!("{ctx} dim additive"), ds == &da + &db);

                // The fiducial basis spans, lies in the cone, and normalizes.
                rec.plain(
                    &format!("{ctx} fiducial spanning"),
                    is_distinguishing(a.ambient_dim(), &sva.causal_basis),
                );
                for (k, f) in sva.causal_basis.iter().enumerate() {
                    let in_cone = cone_member(backend, &a, f)?;
                    let normalized = pair_full(&a, &sva.discard, f)? == Rational::one();
                    rec.plain(&format!("{ctx} fiducial {k}"), in_cone && normalized);
                }

                // Effect complements: cone effect + complement = scaled discard.
                let pi = {
                    let base = gen.random_cone_point(&a);
                    base.scale(&Rational::new(rng.gen_range(1..=3), 2))
                };
                let ec = effect_complement(backend, &a, &pi)?;
                let exact = pi.add(&ec.complement) == sva.discard.scale(&ec.lambda);
                let ok = ec.lambda.is_positive() && exact && cone_member(backend, &a, &ec.complement)?;
                rec.plain(&format!("{ctx} effect complement"), ok);

                // Process complements: cone morphism + complement = scaled
                // discard-then-uniform, exactly, with the complement in cone.
                let f = random_cone_morphism(&mut rng, backend, &a, &b);
                let pc = process_complement(&f)?;
                let target = discard_then_uniform(&a, &b).scale(&pc.lambda);
                let sum = f.matrix.add(&pc.complement.matrix);
                let ok = pc.lambda.is_positive()
                    && sum == target
                    && morphism_in_cone(&pc.complement)?;
                rec.plain(&format!("{ctx} process complement"), ok);
                Ok(())
            });
        }

        // Additive cancellation in the difference closure: adding a common
        // term never merges distinct embedded morphisms.
        let mut rng2 = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        let obj = if backend.is_classical() {
            ModelObject::classical(2).expect("ambient 2")
        } else {
            ModelObject::quantum(vec![2]).expect("qubit")
        };
        for i in 0..30 {
            let ctx = format!("backend={} cancellation instance={}", backend.name(), i);
            let n = obj.ambient_dim();
            let mf = random_classical_matrix(&mut rng2, n, n, !backend.is_classical());
            let mut mg = random_classical_matrix(&mut rng2, n, n, !backend.is_classical());
            let mh = random_classical_matrix(&mut rng2, n, n, !backend.is_classical());
            let distinct = mf != mg;
            if !distinct {
                mg[(0, 0)] = &mg[(0, 0)] + &Rational::one();
            }
            let f = Morphism::new(backend, obj.clone(), obj.clone(), mf).expect("shape");
            let g = Morphism::new(backend, obj.clone(), obj.clone(), mg).expect("shape");
            let h = Morphism::new(backend, obj.clone(), obj.clone(), mh).expect("shape");
            let ef = FormalDiff::embed(f.clone());
            let eg = FormalDiff::embed(g);
            let eh = FormalDiff::embed(h);
            let lhs = ef.add(&eh).expect("same shape");
            let rhs = eg.add(&eh).expect("same shape");
            let merged = lhs.equivalent(&rhs).expect("same shape");
            rec.plain(&format!("{ctx} distinct stay distinct"), !merged);
            let same = FormalDiff::embed(f.clone()).add(&eh).expect("same shape");
            rec.plain(
                &format!("{ctx} equal stay equal"),
                same.equivalent(&ef.add(&eh).expect("same shape")).expect("same shape"),
            );
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// bv_interchange

fn check_bv_interchange(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("bv_interchange");
    for backend in BACKENDS {
        let max = if backend.is_classical() { 3 } else { 2 };
        let mut gen = RandomTypeGenerator::new(backend, seed, max);
        let unit_set = CausalSet::unit(backend).expect("unit");
        for i in 0..12 {
            let objs: Vec<ModelObject> = (0..4).map(|_| gen.random_object()).collect();
            let sets: Vec<CausalSet> =
                objs.iter().map(|o| gen.random_flat_set(o, 2).0).collect();
            let (r, u, t, v) = (&sets[0], &sets[1], &sets[2], &sets[3]);
            let ctx = format!("backend={} instance={} objects={:?}", backend.name(), i, objs);
            rec.guard(&ctx, |rec| {
                // Sequence interchanges with tensor covariantly and with par
                // contravariantly, along the middle-factor reorderings.
                let m = structural_mor(backend, StructuralMap::InterchangeTensor, &objs)?;
                let src = r.seq(u)?.tensor(&t.seq(v)?)?;
                let dst = r.tensor(t)?.seq(&u.tensor(v)?)?;
                rec.require_true(&format!("{ctx} tensor interchange"), check_causal(&m, &src, &dst));

                let m = structural_mor(backend, StructuralMap::InterchangePar, &objs)?;
                let src = r.par(t)?.seq(&u.par(v)?)?;
                let dst = r.seq(u)?.par(&t.seq(v)?)?;
                rec.require_true(&format!("{ctx} par interchange"), check_causal(&m, &src, &dst));

                // Symmetry, associativity, and unit maps are causal at the
                // multiplicative typings.
                let swap = structural_mor(backend, StructuralMap::Swap, &objs[..2])?;
                rec.require_true(&format!("{ctx} swap tensor"), check_causal(&swap, &r.tensor(u)?, &u.tensor(r)?));
                rec.require_true(&format!("{ctx} swap par"), check_causal(&swap, &r.par(u)?, &u.par(r)?));

                let assoc_l = structural_mor(backend, StructuralMap::AssocL, &objs[..3])?;
                let assoc_r = structural_mor(backend, StructuralMap::AssocR, &objs[..3])?;
                rec.require_true(
                    &format!("{ctx} assoc tensor"),
                    check_causal(&assoc_l, &r.tensor(u)?.tensor(t)?, &r.tensor(&u.tensor(t)?)?),
                );
                rec.require_true(
                    &format!("{ctx} assoc tensor reverse"),
                    check_causal(&assoc_r, &r.tensor(&u.tensor(t)?)?, &r.tensor(u)?.tensor(t)?),
                );
                rec.require_true(
                    &format!("{ctx} assoc par"),
                    check_causal(&assoc_l, &r.par(u)?.par(t)?, &r.par(&u.par(t)?)?),
                );

                let unitor = structural_mor(backend, StructuralMap::UnitorL, &objs[..1])?;
                rec.require_true(
                    &format!("{ctx} unitor tensor"),
                    check_causal(&unitor, &unit_set.tensor(r)?, r),
                );
                rec.require_true(
                    &format!("{ctx} unitor par"),
                    check_causal(&unitor, &unit_set.par(r)?, r),
                );

                // Weak distribution of tensor over par is causal.
                let distrib = structural_mor(backend, StructuralMap::LinDistrib, &objs[..3])?;
                rec.require_true(
                    &format!("{ctx} linear distribution"),
                    check_causal(&distrib, &r.tensor(&u.par(t)?)?, &r.tensor(u)?.par(t)?),
                );

                // Sequence is associative and unital as a set operation.
                rec.set_eq(
                    &format!("{ctx} seq associative"),
                    &r.seq(u)?.seq(t)?,
                    &r.seq(&u.seq(t)?)?,
                );
                rec.set_eq(&format!("{ctx} seq left unit"), &unit_set.seq(r)?, r);
                rec.set_eq(&format!("{ctx} seq right unit"), &r.seq(&unit_set)?, r);
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// causality_exception

/// Two-outcome branching over `c`: picks two separated effects of `c`, a
/// fiducial state the effects disagree on, and its process complement, then
/// checks the branching state lies in the unordered composite with I+I but
/// not in the one-way-ordered one.
fn exception_instance(rec: &mut Recorder, ctx: &str, c: &CausalSet) {
    let backend = c.backend;
    let object = c.object.clone();
    rec.guard(ctx, |rec| {
        let sv = structure_vectors(&object);
        let dual = c.dual()?;
        let pis = dual.body.affine_basis_points();
        if pis.len() < 2 {
            rec.fail(ctx.to_string(), "at least two distinct effects", "dual is a single point");
            return Ok(());
        }
        let delta = pis[0].sub(&pis[1]);
        let f_vec = sv
            .causal_basis
            .iter()
            .find(|f| pair_full(&object, &delta, f).map(|p| !p.is_zero()).unwrap_or(false))
            .cloned();
        let f_vec = match f_vec {
            Some(v) => v,
            None => {
                rec.fail(ctx.to_string(), "a separating fiducial state", "none found");
                return Ok(());
            }
        };
        let f = column_morphism(backend, &object, &f_vec);
        let pc = process_complement(&f)?;
        let mu = match scalar_multiple_in(&c.body, &sv.uniform) {
            Some(m) if m.is_positive() => m,
            other => {
                rec.fail(
                    ctx.to_string(),
                    "a positive scaled uniform state in the set",
                    &format!("{other:?}"),
                );
                return Ok(());
            }
        };
        let scale = &mu * &pc.lambda.recip();
        let unit = ModelObject::unit_for(backend);
        let two = unit.biproduct(&unit)?;
        let e1 = Vector::unit(2, 0);
        let e2 = Vector::unit(2, 1);
        let f2 = pc.complement.matrix.col(0);
        let h = kron_states(&two, &object, &e1, &f_vec)?
            .add(&kron_states(&two, &object, &e2, &f2)?)
            .scale(&scale);
        let unit_set = CausalSet::unit(backend)?;
        let branch = unit_set.plus_coprod(&unit_set)?;
        rec.require_true(&format!("{ctx} unordered admits branch"), branch.par(c)?.member(&h));
        rec.require_false(&format!("{ctx} ordered rejects branch"), branch.seq(c)?.member(&h));
        Ok(())
    });
}

fn check_causality_exception(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("causality_exception");
    // Cataloged carriers that are not first-order: products, channel types,
    // and the singleton uniform set.
    for backend in [Backend::ClassicalNonneg, Backend::ClassicalAffine] {
        let c2 = ModelObject::classical(2).expect("ambient 2");
        let fo2 = CausalSet::first_order(backend, c2.clone()).expect("normalized states");
        let with = fo2.with_prod(&fo2).expect("product");
        exception_instance(&mut rec, &format!("backend={} product of normalized", backend.name()), &with);
        let chan = fo2.lolli(&fo2).expect("channel type");
        exception_instance(&mut rec, &format!("backend={} channel type", backend.name()), &chan);
        let single = CausalSet::singleton_uniform(backend, c2).expect("singleton");
        exception_instance(&mut rec, &format!("backend={} singleton uniform", backend.name()), &single);
    }
    {
        let backend = Backend::QuantumCp;
        let q2 = ModelObject::quantum(vec![2]).expect("qubit");
        let fo = CausalSet::first_order(backend, q2.clone()).expect("normalized states");
        let with = fo.with_prod(&fo).expect("product");
        exception_instance(&mut rec, "backend=quantum_cp product of normalized", &with);
        let single = CausalSet::singleton_uniform(backend, q2).expect("singleton");
        exception_instance(&mut rec, "backend=quantum_cp singleton uniform", &single);
    }
    // Random carriers: keep the hull small enough that the dual stays at
    // least one-dimensional, so two distinct effects always exist.
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        for i in 0..15 {
            let object = gen.random_object();
            let cap = object.ambient_dim().saturating_sub(2);
            let (c, _) = gen.random_flat_set(&object, cap.min(2));
            let ctx = format!("backend={} random instance={} object={:?}", backend.name(), i, object);
            exception_instance(&mut rec, &ctx, &c);
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// first_order_char

fn check_first_order_char(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("first_order_char");
    let catalogue: [(&str, Backend, bool); 7] = [
        ("C[2]", Backend::ClassicalNonneg, true),
        ("C[3]", Backend::ClassicalNonneg, true),
        ("Q[2]", Backend::QuantumCp, true),
        ("C[2] & C[2]", Backend::ClassicalNonneg, false),
        ("C[2] + C[3]", Backend::ClassicalNonneg, true),
        ("C[2] -o C[2]", Backend::ClassicalNonneg, false),
        ("U[2]", Backend::ClassicalNonneg, false),
    ];
    for (src, backend, expected) in catalogue {
        let ctx = format!("catalogue {src} backend={}", backend.name());
        let expr = dsl::parse(src).expect("catalogue strings parse");
        let c = dsl::eval(&expr, backend).expect("catalogue strings evaluate");
        rec.bool_eq(&format!("{ctx} classify"), expected, c.is_first_order());
        rec.guard(&ctx, |rec| {
            let lhs = c.dual()?.par(&c)?;
            let rhs = c.dual()?.seq(&c)?;
            rec.bool_eq(&format!("{ctx} type equality"), expected, lhs.equal_set(&rhs));
            Ok(())
        });
    }
    // Degenerate carriers: the empty set on the zero object is first-order,
    // the one-point set is not; both agree with the type-equality route.
    for backend in BACKENDS {
        for (label, set, expected) in [
            ("zero", CausalSet::zero(backend).expect("zero"), true),
            ("one", CausalSet::one(backend).expect("one"), false),
        ] {
            let ctx = format!("backend={} {label}", backend.name());
            rec.bool_eq(&format!("{ctx} classify"), expected, set.is_first_order());
            rec.guard(&ctx, |rec| {
                let lhs = set.dual()?.par(&set)?;
                let rhs = set.dual()?.seq(&set)?;
                rec.bool_eq(&format!("{ctx} type equality"), expected, lhs.equal_set(&rhs));
                Ok(())
            });
        }
    }
    // Random sets: the two routes agree whatever the answer is, and the
    // normalized-state set of every carrier classifies as first-order.
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        for i in 0..20 {
            let object = gen.random_object();
            let (c, _) = gen.random_flat_set(&object, 3);
            let ctx = format!("backend={} random instance={} object={:?}", backend.name(), i, object);
            rec.guard(&ctx, |rec| {
                let classify = c.is_first_order()?;
                let lhs = c.dual()?.par(&c)?;
                let rhs = c.dual()?.seq(&c)?;
                rec.bool_eq(&format!("{ctx} routes agree"), classify, lhs.equal_set(&rhs));
                Ok(())
            });
            let fo = CausalSet::first_order(backend, object.clone()).expect("normalized states");
            rec.require_true(&format!("{ctx} normalized set"), fo.is_first_order());
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// gnst

/// A measurement scenario carrier: `settings` copies of the `outcomes`-fold
/// coproduct of the unit, combined with the product.
fn scenario_party(backend: Backend, settings: usize, outcomes: usize) -> CausalSet {
    let unit = CausalSet::unit(backend).expect("unit");
    let mut choice = unit.clone();
    for _ in 1..outcomes {
        choice = choice.plus_coprod(&unit).expect("coproduct");
    }
    let mut party = choice.clone();
    for _ in 1..settings {
        party = party.with_prod(&choice).expect("product");
    }
    party
}

fn frozen_set(backend: Backend, ambient: usize, rows: &[&[i64]]) -> CausalSet {
    let points: Vec<Vector> = rows.iter().map(|r| Vector::from_ints(r)).collect();
    let body = AffineSubspace::affine_hull(ambient, &points).expect("consistent ambient");
    let object = ModelObject::classical(ambient).expect("ambient");
    CausalSet::new(backend, object, body).expect("flat hull")
}

fn check_gnst(_seed: u64) -> CheckReport {
    let mut rec = Recorder::new("gnst");
    let backend = Backend::ClassicalNonneg;
    let party = scenario_party(backend, 2, 2);
    rec.plain("party carrier ambient", party.ambient() == 4);

    // The same carrier through the expression language.
    let expr = dsl::parse("(I + I) & (I + I)").expect("fixed string");
    let via_dsl = dsl::eval(&expr, backend).expect("fixed string");
    rec.set_eq("party two routes", &via_dsl, &party);

    // Effects of one party: the per-setting marginalization effects.
    let party_dual = party.dual().expect("dual");
    let expected_dual = frozen_set(backend, 4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
    rec.set_eq("party dual frozen", &party_dual, &expected_dual);

    // Three settings: one marginalization effect per setting.
    let party3 = scenario_party(backend, 3, 2);
    let expected_dual3 = frozen_set(
        backend,
        6,
        &[&[1, 1, 0, 0, 0, 0], &[0, 0, 1, 1, 0, 0], &[0, 0, 0, 0, 1, 1]],
    );
    rec.set_eq("three-setting party dual frozen", &party3.dual().expect("dual"), &expected_dual3);
    // Three outcomes: the effect sums all outcomes of one setting.
    let party23 = scenario_party(backend, 2, 3);
    let expected_dual23 = frozen_set(backend, 6, &[&[1, 1, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 1]]);
    rec.set_eq("three-outcome party dual frozen", &party23.dual().expect("dual"), &expected_dual23);

    // Joint coordinates: entry (2x+a)*4 + (2y+b) is the probability of
    // outcomes (a, b) under settings (x, y).
    let idx = |x: usize, a: usize, y: usize, b: usize| (2 * x + a) * 4 + (2 * y + b);
    let half = Rational::new(1, 2);

    // The correlated box: outcomes agree exactly unless both settings are 1.
    let mut pr = Vector::zeros(16);
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    if (a ^ b) == (x & y) {
                        pr[idx(x, a, y, b)] = half.clone();
                    }
                }
            }
        }
    }
    // Its one-way marginals are uniform: no setting on either side shifts
    // the other side's outcome distribution.
    let mut marginals_uniform = true;
    for x in 0..2 {
        for a in 0..2 {
            for y in 0..2 {
                let sum = &pr[idx(x, a, y, 0)] + &pr[idx(x, a, y, 1)];
                marginals_uniform &= sum == half;
            }
        }
    }
    for y in 0..2 {
        for b in 0..2 {
            for x in 0..2 {
                let sum = &pr[idx(x, 0, y, b)] + &pr[idx(x, 1, y, b)];
                marginals_uniform &= sum == half;
            }
        }
    }
    rec.plain("correlated box marginals uniform", marginals_uniform);

    let joint_tensor = party.tensor(&party).expect("tensor");
    rec.require_true("correlated box in tensor", joint_tensor.member(&pr));

    // The one-way signalling box: the second outcome copies the first
    // setting, with the first outcome uniform.
    let mut copy = Vector::zeros(16);
    for x in 0..2 {
        for y in 0..2 {
            for a in 0..2 {
                copy[idx(x, a, y, x)] = half.clone();
            }
        }
    }
    let joint_par = party.par(&party).expect("par");
    let first_before = party.seq(&party).expect("seq");
    let second_before = party.seq_rev(&party).expect("seq_rev");
    rec.require_true("copy box in par", joint_par.member(&copy));
    rec.require_true("copy box in first-before-second", first_before.member(&copy));
    rec.require_false("copy box not in second-before-first", second_before.member(&copy));
    rec.require_false("copy box not in tensor", joint_tensor.member(&copy));

    // The correlated box threads both one-way orders, as any point of the
    // tensor must.
    rec.require_true("correlated box in first-before-second", first_before.member(&pr));
    rec.require_true("correlated box in second-before-first", second_before.member(&pr));
    rec.finish()
}

// ---------------------------------------------------------------------------
// no_interaction

fn check_no_interaction(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("no_interaction");
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, seed, quantum_cap(backend));
        for i in 0..30 {
            let a = gen.random_object();
            let b = gen.random_object();
            let (d, d_pts) = gen.random_flat_set(&b, 3);
            let ctx = format!("backend={} instance={} a={:?} b={:?}", backend.name(), i, a, b);
            rec.guard(&ctx, |rec| {
                let s = CausalSet::singleton_uniform(backend, a.clone())?;
                let lhs = s.tensor(&d)?;
                // Independent side: translate the second set's description
                // through the fixed left factor.
                let u = s.body.basepoint()?.clone();
                let base = kron_states(&a, &b, &u, d.body.basepoint()?)?;
                let dirs: Result<Vec<Vector>, _> = d
                    .body
                    .directions()
                    .iter()
                    .map(|w| kron_states(&a, &b, &u, w))
                    .collect();
                let body = AffineSubspace::from_parts(base, dirs?)?;
                let rhs = CausalSet::new(backend, a.tensor(&b)?, body)?;
                rec.set_eq(&format!("{ctx} translate"), &lhs, &rhs);
                // Spot membership: the fixed point against any generator.
                let probe = kron_states(&a, &b, &u, &d_pts[0])?;
                rec.require_true(&format!("{ctx} membership"), lhs.member(&probe));
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// nonsignalling_eq

fn check_nonsignalling_eq(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("nonsignalling_eq");
    for backend in [Backend::ClassicalNonneg, Backend::ClassicalAffine] {
        let mut gen = RandomTypeGenerator::new(backend, seed, 4);
        let count = if backend == Backend::ClassicalNonneg { 50 } else { 15 };
        for i in 0..count {
            let a = gen.random_object();
            let b = gen.random_object();
            let (c, _) = gen.random_flat_set(&a, 3);
            let (d, _) = gen.random_flat_set(&b, 3);
            let ctx = format!("backend={} instance={} a={:?} b={:?}", backend.name(), i, a, b);
            rec.guard(&ctx, |rec| {
                let both_orders = c.seq(&d)?.intersect_sets(&c.seq_rev(&d)?)?;
                let tensor = c.tensor(&d)?;
                rec.set_eq(&ctx, &both_orders, &tensor);
                Ok(())
            });
        }
    }
    {
        let backend = Backend::QuantumCp;
        let mut gen = RandomTypeGenerator::new(backend, seed, 4);
        let q2 = ModelObject::quantum(vec![2]).expect("qubit");
        for i in 0..10 {
            let (c, _) = gen.random_flat_set(&q2, 2);
            let (d, _) = gen.random_flat_set(&q2, 2);
            let ctx = format!("backend=quantum_cp instance={i}");
            rec.guard(&ctx, |rec| {
                let both_orders = c.seq(&d)?.intersect_sets(&c.seq_rev(&d)?)?;
                let tensor = c.tensor(&d)?;
                rec.set_eq(&ctx, &both_orders, &tensor);
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// seq_selfdual

fn check_seq_selfdual(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("seq_selfdual");
    for backend in BACKENDS {
        let cap = if backend.is_classical() { 4 } else { 4 };
        let mut gen = RandomTypeGenerator::new(backend, seed, cap);
        for i in 0..25 {
            let a = gen.random_object();
            let b = gen.random_object();
            let (c, c_pts) = gen.random_flat_set(&a, 3);
            let (d, d_pts) = gen.random_flat_set(&b, 3);
            let ctx = format!("backend={} instance={} a={:?} b={:?}", backend.name(), i, a, b);
            rec.guard(&ctx, |rec| {
                let seq = c.seq(&d)?;
                let dualized = c.dual()?.seq(&d.dual()?)?.dual()?;
                rec.set_eq(&format!("{ctx} self-duality"), &seq, &dualized);

                // Mixtures of product states with normalized right factors
                // stay inside the one-way order.
                let m = c_pts.len().max(d_pts.len());
                let w = Rational::new(1, m as i64);
                let mut mix = Vector::zeros(seq.ambient());
                for k in 0..m {
                    let x = &c_pts[k % c_pts.len()];
                    let y = &d_pts[k % d_pts.len()];
                    mix = mix.add(&kron_states(&a, &b, x, y)?.scale(&w));
                }
                rec.require_true(&format!("{ctx} mixture of products"), seq.member(&mix));
                Ok(())
            });
        }
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// sub_laws

fn check_sub_laws(seed: u64) -> CheckReport {
    let mut rec = Recorder::new("sub_laws");
    for backend in [Backend::ClassicalNonneg, Backend::QuantumCp] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
        let obj = if backend.is_classical() {
            ModelObject::classical(2).expect("ambient 2")
        } else {
            ModelObject::quantum(vec![2]).expect("qubit")
        };
        let n = obj.ambient_dim();
        let rand_pair = |rng: &mut ChaCha8Rng| {
            let pos = Morphism::new(
                backend,
                obj.clone(),
                obj.clone(),
                random_classical_matrix(rng, n, n, true),
            )
            .expect("shape");
            let neg = Morphism::new(
                backend,
                obj.clone(),
                obj.clone(),
                random_classical_matrix(rng, n, n, true),
            )
            .expect("shape");
            FormalDiff::new(pos, neg).expect("same shape")
        };
        let shift = |x: &FormalDiff, rng: &mut ChaCha8Rng| {
            let t = Morphism::new(
                backend,
                obj.clone(),
                obj.clone(),
                random_classical_matrix(rng, n, n, false),
            )
            .expect("shape");
            let te = FormalDiff::embed(t);
            // Adding and subtracting the same term moves the representative
            // without moving the class.
            x.add(&te).expect("same shape").add(&te.negate()).expect("same shape")
        };
        for i in 0..100 {
            let ctx = format!("backend={} instance={}", backend.name(), i);
            let x = rand_pair(&mut rng);
            let y = rand_pair(&mut rng);
            let xs = shift(&x, &mut rng);
            let xss = shift(&xs, &mut rng);

            // Equivalence: reflexive on shifted representatives, transitive
            // along a shift chain.
            rec.plain(&format!("{ctx} shift equivalent"), x.equivalent(&xs).expect("same shape"));
            rec.plain(&format!("{ctx} transitive"), x.equivalent(&xss).expect("same shape"));

            // Well-definedness: composing or tensoring shifted
            // representatives lands in the same class.
            let composed = x.compose(&y).expect("same shape");
            let composed_shifted = xs.compose(&shift(&y, &mut rng)).expect("same shape");
            rec.plain(
                &format!("{ctx} compose well-defined"),
                composed.equivalent(&composed_shifted).expect("same shape"),
            );
            let tensored = x.tensor(&y).expect("same backend");
            let tensored_shifted = xs.tensor(&shift(&y, &mut rng)).expect("same backend");
            rec.plain(
                &format!("{ctx} tensor well-defined"),
                tensored.equivalent(&tensored_shifted).expect("same backend"),
            );

            // Additive group: x + (-x) = 0.
            rec.plain(
                &format!("{ctx} additive inverse"),
                x.add(&x.negate()).expect("same shape").is_zero(),
            );
        }
        // Embedding: functorial, monoidal, and faithful.
        for i in 0..100 {
            let ctx = format!("backend={} embed instance={}", backend.name(), i);
            let f = Morphism::new(
                backend,
                obj.clone(),
                obj.clone(),
                random_classical_matrix(&mut rng, n, n, false),
            )
            .expect("shape");
            let g = Morphism::new(
                backend,
                obj.clone(),
                obj.clone(),
                random_classical_matrix(&mut rng, n, n, false),
            )
            .expect("shape");
            let seq = f.compose(&g).expect("matching shapes");
            let lhs = FormalDiff::embed(seq);
            let rhs = FormalDiff::embed(f.clone()).compose(&FormalDiff::embed(g.clone())).expect("same shape");
            rec.plain(&format!("{ctx} functorial"), lhs.equivalent(&rhs).expect("same shape"));

            let tens = f.tensor(&g).expect("same backend");
            let lhs = FormalDiff::embed(tens);
            let rhs = FormalDiff::embed(f.clone()).tensor(&FormalDiff::embed(g.clone())).expect("same backend");
            rec.plain(&format!("{ctx} monoidal"), lhs.equivalent(&rhs).expect("same shape"));

            if f.matrix != g.matrix {
                rec.plain(
                    &format!("{ctx} faithful"),
                    !FormalDiff::embed(f).equivalent(&FormalDiff::embed(g)).expect("same shape"),
                );
            }
        }
    }
    // Scalar inverses in the difference closure of the nonnegative rationals.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7f4a_7c15);
    let unit = ModelObject::classical(1).expect("unit");
    let scalar = |v: i64| {
        let mut m = Matrix::zeros(1, 1);
        m[(0, 0)] = Rational::from_int(v);
        Morphism::new(Backend::ClassicalNonneg, unit.clone(), unit.clone(), m).expect("scalar")
    };
    for i in 0..100 {
        let ctx = format!("scalar instance={i}");
        let p = rng.gen_range(0..=5);
        let q = rng.gen_range(0..=5);
        let x = FormalDiff::new(scalar(p), scalar(q)).expect("same shape");
        match x.scalar_recip() {
            None => rec.plain(&format!("{ctx} zero has no inverse"), p == q),
            Some(inv) => {
                let prod = x.compose(&inv).expect("scalars");
                let one = FormalDiff::embed(scalar(1));
                rec.plain(
                    &format!("{ctx} inverse multiplies to one"),
                    p != q && prod.equivalent(&one).expect("scalars"),
                );
            }
        }
    }
    // Spanning families keep spanning under sign flips of their members.
    for i in 0..100 {
        let ctx = format!("spanning instance={i}");
        let dim = rng.gen_range(2..=4);
        let mut family: Vec<Vector> = Vec::new();
        for _ in 0..dim {
            let entries: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
            family.push(Vector::from_ints(&entries));
        }
        let spans = is_distinguishing(dim, &family);
        let flipped: Vec<Vector> = family
            .iter()
            .enumerate()
            .map(|(k, v)| if k % 2 == 0 { v.scale(&Rational::from_int(-1)) } else { v.clone() })
            .collect();
        rec.plain(&format!("{ctx} sign-insensitive"), spans == is_distinguishing(dim, &flipped));
        let mut padded = family.clone();
        padded.push(family[0].clone());
        rec.plain(&format!("{ctx} duplicates harmless"), spans == is_distinguishing(dim, &padded));
    }
    rec.finish()
}

// ---------------------------------------------------------------------------
// zero_tables

fn check_zero_tables(_seed: u64) -> CheckReport {
    let mut rec = Recorder::new("zero_tables");
    let mut carriers: Vec<(String, CausalSet)> = Vec::new();
    for backend in [Backend::ClassicalNonneg, Backend::ClassicalAffine] {
        let c2 = ModelObject::classical(2).expect("ambient 2");
        let fo = CausalSet::first_order(backend, c2).expect("normalized states");
        carriers.push((format!("backend={} normalized states", backend.name()), fo.clone()));
        carriers.push((
            format!("backend={} channel type", backend.name()),
            fo.lolli(&fo).expect("channel type"),
        ));
    }
    {
        let q2 = ModelObject::quantum(vec![2]).expect("qubit");
        let fo = CausalSet::first_order(Backend::QuantumCp, q2).expect("normalized states");
        carriers.push(("backend=quantum_cp normalized states".to_string(), fo));
    }
    for (label, c) in &carriers {
        let backend = c.backend;
        let z = CausalSet::zero(backend).expect("zero");
        let o = CausalSet::one(backend).expect("one");
        let rows: Vec<(&str, Result<CausalSet, CausalError>, &CausalSet)> = vec![
            ("0 x 0", z.tensor(&z), &z),
            ("0 x 1", z.tensor(&o), &z),
            ("1 x 1", o.tensor(&o), &o),
            ("0 x C", z.tensor(c), &z),
            ("1 x C", o.tensor(c), &o),
            ("0 | 0", z.par(&z), &z),
            ("0 | 1", z.par(&o), &o),
            ("1 | 1", o.par(&o), &o),
            ("0 | C", z.par(c), &z),
            ("1 | C", o.par(c), &o),
            ("0 < 0", z.seq(&z), &z),
            ("0 < 1", z.seq(&o), &z),
            ("1 < 0", o.seq(&z), &o),
            ("1 < 1", o.seq(&o), &o),
            ("0 < C", z.seq(c), &z),
            ("1 < C", o.seq(c), &o),
            ("C < 0", c.seq(&z), &z),
            ("C < 1", c.seq(&o), &o),
        ];
        for (row, lhs, expected) in rows {
            let ctx = format!("{label} row {row}");
            match lhs {
                Ok(set) => rec.set_eq(&ctx, &set, expected),
                Err(e) => rec.fail(ctx, "row to evaluate", &e.to_string()),
            }
        }
    }
    rec.finish()
}
