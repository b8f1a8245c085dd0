//! End-to-end acceptance gate: one test per criterion, each printing a
//! single PASS line with its measured time. Budgets and tolerances are
//! pinned in the asserts.

use std::time::Instant;

use caus_core::causal::CausalSet;
use caus_core::dsl::{self, ParseErrorKind, TypeExpr, UniformAtom};
use caus_core::model::quantum::{is_psd, real_embedding, CMat};
use caus_core::model::{Backend, ModelObject};
use caus_core::rational::Rational;
use caus_core::suite::{run_check, RandomTypeGenerator};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BACKENDS: [Backend; 3] =
    [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp];

fn report(name: &str, started: Instant, detail: &str) {
    println!("criterion {name}: PASS ({detail}, {:.2?})", started.elapsed());
}

#[test]
fn criterion_01_double_dual_closure() {
    let started = Instant::now();
    let mut total = 0usize;
    for backend in BACKENDS {
        let cap = if backend.is_classical() { 8 } else { 9 };
        let mut gen = RandomTypeGenerator::new(backend, 42, cap);
        for _ in 0..200 {
            let object = gen.random_object();
            let (c, _) = gen.random_flat_set(&object, 3);
            let dd = c.dual().unwrap().dual().unwrap();
            assert_eq!(dd.body, c.body, "double dual drifted on {object:?}");
            assert!(dd.equal_set(&c).unwrap());
            total += 1;
        }
    }
    assert!(started.elapsed().as_secs() < 60, "double-dual budget exceeded");
    report("01 double-dual closure", started, &format!("{total} sets, 0 failures"));
}

#[test]
fn criterion_02_dimension_laws() {
    let started = Instant::now();
    for backend in BACKENDS {
        let mut gen = RandomTypeGenerator::new(backend, 42, if backend.is_classical() { 6 } else { 9 });
        for _ in 0..100 {
            let a = gen.random_object();
            let b = gen.random_object();
            let (c, _) = gen.random_flat_set(&a, 3);
            let (d, _) = gen.random_flat_set(&b, 3);
            let dc = c.body.dim().unwrap();
            let dd = d.body.dim().unwrap();

            let dual_dim = c.dual().unwrap().body.dim().unwrap();
            assert_eq!(dc + dual_dim, a.ambient_dim() - 1, "complementary dimensions");

            let tensor_dim = c.tensor(&d).unwrap().body.dim().unwrap();
            assert_eq!(tensor_dim, (dc + 1) * (dd + 1) - 1, "product-hull dimension");

            let with_dim = c.with_prod(&d).unwrap().body.dim().unwrap();
            assert_eq!(with_dim, dc + dd, "pairing dimension");

            let plus_dim = c.plus_coprod(&d).unwrap().body.dim().unwrap();
            assert_eq!(plus_dim, dc + dd + 1, "copairing dimension");
        }
    }
    assert!(started.elapsed().as_secs() < 30, "dimension-law budget exceeded");
    report("02 dimension laws", started, "300 pairs, 4 laws each");
}

#[test]
fn criterion_03_nonsignalling_equality() {
    let started = Instant::now();
    let rep = run_check("nonsignalling_eq", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(rep.instances >= 60, "population too small: {}", rep.instances);
    assert!(started.elapsed().as_secs() < 120, "nonsignalling budget exceeded");
    report("03 nonsignalling equality", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_04_seq_self_duality() {
    let started = Instant::now();
    let rep = run_check("seq_selfdual", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(started.elapsed().as_secs() < 120, "self-duality budget exceeded");
    report("04 seq self-duality", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_05_first_order_catalogue() {
    let started = Instant::now();
    let catalogue: [(&str, Backend, bool); 7] = [
        ("C[2]", Backend::ClassicalNonneg, true),
        ("C[3]", Backend::ClassicalNonneg, true),
        ("Q[2]", Backend::QuantumCp, true),
        ("C[2]&C[2]", Backend::ClassicalNonneg, false),
        ("C[2]+C[3]", Backend::ClassicalNonneg, true),
        ("C[2]-oC[2]", Backend::ClassicalNonneg, false),
        ("U[2]", Backend::ClassicalNonneg, false),
    ];
    for (src, backend, expected) in catalogue {
        let c = dsl::eval(&dsl::parse(src).unwrap(), backend).unwrap();
        // Route one: classify by the shape of the dual.
        assert_eq!(c.is_first_order().unwrap(), expected, "classification of {src}");
        // Route two: compare the unordered and one-way composites with the dual.
        let lhs = c.dual().unwrap().par(&c).unwrap();
        let rhs = c.dual().unwrap().seq(&c).unwrap();
        assert_eq!(lhs.equal_set(&rhs).unwrap(), expected, "type equality of {src}");
    }
    assert!(started.elapsed().as_secs() < 30, "catalogue budget exceeded");
    report("05 first-order catalogue", started, "7 entries, 2 routes");
}

#[test]
fn criterion_06_causality_exception() {
    let started = Instant::now();
    let rep = run_check("causality_exception", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(started.elapsed().as_secs() < 10, "exception budget exceeded");
    report("06 causality exception", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_07_bv_structure() {
    let started = Instant::now();
    let rep = run_check("bv_interchange", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(started.elapsed().as_secs() < 60, "interchange budget exceeded");
    report("07 structural morphisms", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_08_additives() {
    let started = Instant::now();
    let rep = run_check("additives", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(started.elapsed().as_secs() < 30, "additives budget exceeded");
    report("08 additives", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_09_zero_object_tables() {
    let started = Instant::now();
    let rep = run_check("zero_tables", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(rep.instances >= 16, "table rows missing: {}", rep.instances);
    assert!(started.elapsed().as_secs() < 5, "zero-table budget exceeded");
    report("09 zero-object tables", started, &format!("{} identities", rep.instances));
}

#[test]
fn criterion_10_difference_closure_laws() {
    let started = Instant::now();
    let rep = run_check("sub_laws", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());
    assert!(rep.instances >= 500, "population too small: {}", rep.instances);
    assert!(started.elapsed().as_secs() < 30, "difference-closure budget exceeded");
    report("10 difference-closure laws", started, &format!("{} instances", rep.instances));
}

#[test]
fn criterion_11_boxes_and_channel_dimensions() {
    let started = Instant::now();
    let rep = run_check("gnst", 42).unwrap();
    assert!(rep.passed(), "failures: {:?}", rep.failures.first());

    let chan = dsl::eval(&dsl::parse("C[2]-oC[2]").unwrap(), Backend::ClassicalNonneg).unwrap();
    assert_eq!(chan.body.dim(), Some(2), "bit-channel parameter count");
    let qchan = dsl::eval(&dsl::parse("Q[2]-oQ[2]").unwrap(), Backend::QuantumCp).unwrap();
    assert_eq!(qchan.body.dim(), Some(12), "qubit-channel parameter count");

    assert!(started.elapsed().as_secs() < 30, "box budget exceeded");
    report("11 boxes and channel dimensions", started, &format!("{} instances", rep.instances));
}

fn random_expr(rng: &mut ChaCha8Rng, depth: usize) -> TypeExpr {
    if depth == 0 {
        match rng.gen_range(0..7) {
            0 => TypeExpr::AtomC(rng.gen_range(1..=4)),
            1 => {
                let blocks = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(1..=3)).collect();
                TypeExpr::AtomQ(blocks)
            }
            2 => TypeExpr::AtomU(UniformAtom::Classical(rng.gen_range(1..=4))),
            3 => TypeExpr::AtomU(UniformAtom::Quantum(vec![rng.gen_range(1..=3)])),
            4 => TypeExpr::UnitI,
            5 => TypeExpr::Zero,
            _ => TypeExpr::One,
        }
    } else {
        let d = depth - 1;
        match rng.gen_range(0..8) {
            0 => TypeExpr::Dual(Box::new(random_expr(rng, d))),
            1 => TypeExpr::Tensor(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            2 => TypeExpr::Par(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            3 => TypeExpr::Seq(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            4 => TypeExpr::SeqRev(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            5 => TypeExpr::With(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            6 => TypeExpr::Plus(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
            _ => TypeExpr::Lolli(Box::new(random_expr(rng, d)), Box::new(random_expr(rng, d))),
        }
    }
}

#[test]
fn criterion_12_parser_round_trips_and_ambiguity() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for i in 0..500 {
        let depth = rng.gen_range(0..=4);
        let e = random_expr(&mut rng, depth);
        let text = dsl::render(&e);
        let back = dsl::parse(&text).unwrap_or_else(|err| panic!("instance {i}: {text:?}: {err}"));
        assert_eq!(back, e, "round trip of {text:?}");
    }

    let ambiguous: [&str; 20] = [
        "C[2] x C[2] | C[2]",
        "C[2] | C[2] x C[2]",
        "I & I + I",
        "I + I & I",
        "C[2] < C[2] < C[2]",
        "C[2] > C[2] > C[2]",
        "C[2] < C[2] > C[2]",
        "C[2] > C[2] < C[2]",
        "C[2] x C[3] | C[4]",
        "U[2] | U[2] x U[2]",
        "Q[2] x Q[2] | Q[2]",
        "I + I & I + I",
        "C[2] & C[2] + C[2]",
        "C[2]* < C[2] < C[2]",
        "(I + I) & I + I",
        "I x I | I x I",
        "C[2] | C[2] | C[2] x C[2]",
        "C[2] < C[3] < C[4]",
        "ZERO < ONE < ZERO",
        "U[3] x U[3] | U[3]",
    ];
    for src in ambiguous {
        match dsl::parse(src) {
            Err(e) => assert!(
                matches!(e.kind, ParseErrorKind::AmbiguousMixing { .. }),
                "{src:?} failed with the wrong kind: {e}"
            ),
            Ok(ast) => panic!("{src:?} parsed as {ast:?} instead of erroring"),
        }
    }
    assert!(started.elapsed().as_secs() < 5, "parser budget exceeded");
    report("12 parser", started, "500 round trips, 20 ambiguity errors");
}

#[test]
fn criterion_13_psd_oracle_agreement() {
    let started = Instant::now();
    const EIGEN_TOLERANCE: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut disagreements = 0usize;
    for _ in 0..500 {
        let dim = rng.gen_range(1..=3);
        let mut g = CMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                g.set(
                    i,
                    j,
                    Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
                    Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=3)),
                );
            }
        }
        // Random Hermitian input: the average of a matrix and its adjoint.
        let h = g.add(&g.adjoint()).scale(&Rational::new(1, 2));
        let exact = is_psd(&h);

        let real = real_embedding(&h);
        let n = real.rows();
        let float = nalgebra::DMatrix::from_fn(n, n, |i, j| real[(i, j)].to_f64());
        let eigen = float.symmetric_eigen();
        let approx = eigen.eigenvalues.iter().all(|l| *l >= -EIGEN_TOLERANCE);
        if exact != approx {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0, "exact and floating cone decisions diverged");
    assert!(started.elapsed().as_secs() < 10, "oracle budget exceeded");
    report("13 positivity oracle agreement", started, "500 matrices, 0 disagreements");
}

#[test]
fn acceptance_smoke_zero_carriers() {
    // The degenerate carriers thread every acceptance path without panics.
    for backend in BACKENDS {
        let z = CausalSet::zero(backend).unwrap();
        let o = CausalSet::one(backend).unwrap();
        assert!(z.is_flat().unwrap() && o.is_flat().unwrap());
        assert!(z.is_first_order().unwrap());
        assert!(!o.is_first_order().unwrap());
        assert_eq!(ModelObject::zero_for(backend).ambient_dim(), 0);
    }
}
