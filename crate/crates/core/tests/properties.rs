//! Property tests: structural invariants that should hold for arbitrary
//! inputs, with shrinking on failure.

use caus_core::affine::AffineSubspace;
use caus_core::causal::CausalSet;
use caus_core::dsl::{self, TypeExpr, UniformAtom};
use caus_core::linalg::Vector;
use caus_core::model::Backend;
use caus_core::rational::Rational;
use caus_core::suite::RandomTypeGenerator;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = TypeExpr> {
    prop_oneof![
        (1usize..=4).prop_map(TypeExpr::AtomC),
        prop::collection::vec(1usize..=3, 1..=2).prop_map(TypeExpr::AtomQ),
        (1usize..=4).prop_map(|n| TypeExpr::AtomU(UniformAtom::Classical(n))),
        prop::collection::vec(1usize..=3, 1..=2)
            .prop_map(|b| TypeExpr::AtomU(UniformAtom::Quantum(b))),
        Just(TypeExpr::UnitI),
        Just(TypeExpr::Zero),
        Just(TypeExpr::One),
    ]
}

/// (ambient of the whole expression, largest ambient of any subexpression).
/// Atom sizes match every backend that accepts the atom, so this bounds the
/// cost of evaluation without performing any of it.
fn sizes(e: &TypeExpr) -> (usize, usize) {
    fn combine(x: (usize, usize), y: (usize, usize), f: fn(usize, usize) -> usize) -> (usize, usize) {
        let here = f(x.0, y.0);
        (here, here.max(x.1).max(y.1))
    }
    match e {
        TypeExpr::AtomC(n) | TypeExpr::AtomU(UniformAtom::Classical(n)) => (*n, *n),
        TypeExpr::AtomQ(b) | TypeExpr::AtomU(UniformAtom::Quantum(b)) => {
            let a = b.iter().map(|d| d * d).sum();
            (a, a)
        }
        TypeExpr::UnitI => (1, 1),
        TypeExpr::Zero | TypeExpr::One => (0, 0),
        TypeExpr::Dual(x) => sizes(x),
        TypeExpr::With(x, y) | TypeExpr::Plus(x, y) => combine(sizes(x), sizes(y), |a, b| a + b),
        TypeExpr::Tensor(x, y)
        | TypeExpr::Par(x, y)
        | TypeExpr::Seq(x, y)
        | TypeExpr::SeqRev(x, y)
        | TypeExpr::Lolli(x, y) => combine(sizes(x), sizes(y), |a, b| a * b),
    }
}

fn expr() -> impl Strategy<Value = TypeExpr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| TypeExpr::Dual(Box::new(e))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Tensor(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Par(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Seq(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::SeqRev(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::With(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Plus(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| TypeExpr::Lolli(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    // Rendering any tree and parsing it back is the identity.
    #[test]
    fn render_parse_identity(e in expr()) {
        let text = dsl::render(&e);
        let back = dsl::parse(&text);
        prop_assert_eq!(back.as_ref(), Ok(&e), "text was {}", text);
    }

    // Rendering is a fixed point: parse(render(e)) renders identically.
    #[test]
    fn render_is_canonical(e in expr()) {
        let text = dsl::render(&e);
        let again = dsl::render(&dsl::parse(&text).unwrap());
        prop_assert_eq!(text, again);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // An affine hull survives conversion to constraint form and back.
    #[test]
    fn subspace_constraint_round_trip(
        dim in 1usize..=6,
        seed_points in prop::collection::vec(prop::collection::vec((-20i64..=20, 1i64..=6), 6), 1..=5),
    ) {
        let points: Vec<Vector> = seed_points
            .iter()
            .map(|row| Vector(row.iter().take(dim).map(|(n, d)| Rational::new(*n, *d)).collect()))
            .filter(|v| v.dim() == dim)
            .collect();
        prop_assume!(!points.is_empty());
        let sub = AffineSubspace::affine_hull(dim, &points).unwrap();
        let (e, rhs) = sub.constraints_of().unwrap();
        let back = AffineSubspace::from_constraints(&e, &rhs).unwrap();
        prop_assert_eq!(back, sub);
    }

    // Membership in a hull is invariant under the constraint round trip.
    #[test]
    fn constraint_membership_agrees(
        dim in 1usize..=5,
        pts in prop::collection::vec(prop::collection::vec(-8i64..=8, 5), 1..=4),
        probe in prop::collection::vec((-8i64..=8, 1i64..=4), 5),
    ) {
        let points: Vec<Vector> = pts
            .iter()
            .map(|row| Vector::from_ints(&row[..dim]))
            .collect();
        let sub = AffineSubspace::affine_hull(dim, &points).unwrap();
        let x = Vector(probe.iter().take(dim).map(|(n, d)| Rational::new(*n, *d)).collect());
        let (e, rhs) = sub.constraints_of().unwrap();
        let satisfied = {
            let image = e.mul_vec(&x);
            (0..image.dim()).all(|i| image[i] == rhs[i])
        };
        prop_assert_eq!(satisfied, sub.contains(&x));
    }

    // Dualizing twice returns the identical canonical description, for any
    // seed, backend, and generated carrier.
    #[test]
    fn dual_involution(seed in any::<u64>(), which in 0usize..3, extra in 0usize..=3) {
        let backend = [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp][which];
        let mut gen = RandomTypeGenerator::new(backend, seed, if backend.is_classical() { 6 } else { 9 });
        let object = gen.random_object();
        let (c, _) = gen.random_flat_set(&object, extra);
        let dd = c.dual().unwrap().dual().unwrap();
        prop_assert_eq!(dd.body, c.body);
    }

    // Evaluation is compositional: the value of a compound expression is the
    // corresponding operation applied to the values of its parts.
    #[test]
    fn eval_compositional(a in expr(), b in expr(), op in 0usize..7, which in 0usize..3) {
        let backend = [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp][which];
        // Budget before evaluating: exact duals on large ambients dominate
        // the runtime, so discard oversized draws up front.
        let ((amb_a, max_a), (amb_b, max_b)) = (sizes(&a), sizes(&b));
        prop_assume!(max_a <= 36 && max_b <= 36 && amb_a * amb_b <= 64);
        let (ea, eb) = (dsl::eval(&a, backend), dsl::eval(&b, backend));
        let (ca, cb) = match (ea, eb) {
            (Ok(ca), Ok(cb)) => (ca, cb),
            _ => return Ok(()),
        };
        let compound = match op {
            0 => TypeExpr::Tensor(Box::new(a), Box::new(b)),
            1 => TypeExpr::Par(Box::new(a), Box::new(b)),
            2 => TypeExpr::Seq(Box::new(a), Box::new(b)),
            3 => TypeExpr::SeqRev(Box::new(a), Box::new(b)),
            4 => TypeExpr::With(Box::new(a), Box::new(b)),
            5 => TypeExpr::Plus(Box::new(a), Box::new(b)),
            _ => TypeExpr::Lolli(Box::new(a), Box::new(b)),
        };
        let direct = match op {
            0 => ca.tensor(&cb),
            1 => ca.par(&cb),
            2 => ca.seq(&cb),
            3 => ca.seq_rev(&cb),
            4 => ca.with_prod(&cb),
            5 => ca.plus_coprod(&cb),
            _ => ca.lolli(&cb),
        };
        let via_eval = dsl::eval(&compound, backend);
        match (via_eval, direct) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x.backend, y.backend);
                prop_assert_eq!(&x.object, &y.object);
                prop_assert_eq!(&x.body, &y.body);
            }
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "eval {:?} vs direct {:?}", x.is_ok(), y.is_ok()),
        }
    }

    // Dualizing an evaluated expression equals evaluating the dualized one.
    #[test]
    fn eval_respects_dual(a in expr(), which in 0usize..3) {
        let backend = [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp][which];
        let (_, max_sub) = sizes(&a);
        prop_assume!(max_sub <= 36);
        let base = match dsl::eval(&a, backend) {
            Ok(c) => c,
            Err(_) => return Ok(()),
        };
        let dual_expr = TypeExpr::Dual(Box::new(a));
        let via_eval = dsl::eval(&dual_expr, backend).unwrap();
        let direct = base.dual().unwrap();
        prop_assert_eq!(via_eval.body, direct.body);
    }
}

#[test]
fn generated_sets_admit_members() {
    // Every generated hull point is a member of its set: cone and hull agree.
    for backend in [Backend::ClassicalNonneg, Backend::ClassicalAffine, Backend::QuantumCp] {
        let mut gen = RandomTypeGenerator::new(backend, 9, 6);
        for _ in 0..20 {
            let object = gen.random_object();
            let (c, pts) = gen.random_flat_set(&object, 3);
            for p in &pts {
                assert!(c.member(p).unwrap());
            }
            assert!(CausalSet::first_order(backend, object).unwrap().is_flat().unwrap());
        }
    }
}
