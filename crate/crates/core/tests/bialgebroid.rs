mod common;

use bialgd_core::algebra::*;
use bialgd_core::bialgebroid::*;
use bialgd_core::bimodule::*;
use bialgd_core::depth_two::*;
use bialgd_core::linalg::Field;
use common::{build, corpus, failures, group_ext, mutants};

#[test]
fn corpus_t_and_s_satisfy_all_axioms() {
    for (name, ext) in corpus() {
        let bt = build(ext);
        assert!(failures(&bt.t_bialgebroid()).is_empty(), "{name}: T {:?}", failures(&bt.t_bialgebroid()));
        assert!(failures(&bt.s_bialgebroid()).is_empty(), "{name}: S {:?}", failures(&bt.s_bialgebroid()));
    }
}

#[test]
fn coproduct_independent_of_quasibase() {
    for (name, ext) in corpus() {
        let bt = build(ext);
        let alt_r = alternate_quasibase(&bt.ext, &bt.ts, &bt.t, &bt.s, Side::Right).unwrap();
        verify_quasibase(&bt.ext, &bt.ts, &alt_r).unwrap();
        let x = bt.t_bialgebroid();
        let y = build_t_bialgebroid(&bt.ext, &bt.ts, &bt.t, &alt_r, TMultiplication::Composition).unwrap();
        assert_eq!(coproduct_agrees(&x, &y), Ok(()), "{name}: T");
        let alt_l = alternate_quasibase(&bt.ext, &bt.ts, &bt.t, &bt.s, Side::Left).unwrap();
        let y = build_s_bialgebroid(&bt.ext, &bt.ts, &bt.s, &alt_l).unwrap();
        assert_eq!(coproduct_agrees(&bt.s_bialgebroid(), &y), Ok(()), "{name}: S");
    }
}

#[test]
fn wrong_side_quasibase_is_rejected() {
    let bt = build(group_ext("S3", &[vec![vec![1, 2, 3]]]));
    let err = build_t_bialgebroid(&bt.ext, &bt.ts, &bt.t, &bt.left, TMultiplication::Composition).unwrap_err();
    assert_eq!(err, BuildError::WrongSide(Side::Left, Side::Right));
}

#[test]
fn flipped_multiplication_breaks_noncommutative_t() {
    for ext in [group_ext("S3", &[vec![vec![1, 2, 3]]]), RingExtension::over_scalars(matrix_algebra(Field::Rational, 2))] {
        let bt = build(ext);
        let flipped = build_t_bialgebroid(&bt.ext, &bt.ts, &bt.t, &bt.right, TMultiplication::Flipped).unwrap();
        let fails = failures(&flipped);
        assert!(fails.iter().any(|n| n.starts_with("counit_multiplicative")), "{fails:?}");
    }
}

#[test]
fn mutations_are_detected() {
    for base in [build(group_ext("S3", &[vec![vec![1, 2, 3]]])).t_bialgebroid(), build(group_ext("S3", &[vec![vec![1, 2, 3]]])).s_bialgebroid()] {
        let mutants = mutants(&base);
        assert!(mutants.len() >= 10);
        for (label, m) in &mutants {
            assert!(!failures(m).is_empty(), "mutation {label} passed every axiom");
        }
    }
}

#[test]
fn pairing_is_nondegenerate() {
    for (name, ext) in corpus() {
        let bt = build(ext);
        let p = pairing(&bt.ext, &bt.ts, &bt.s, &bt.t);
        assert!(p.nondegenerate(), "{name}");
    }
    let bt = build(RingExtension::over_scalars(quadratic(Field::Rational, 1)));
    let p = pairing(&bt.ext, &bt.ts, &bt.s, &bt.t);
    assert_eq!((p.rank_s, p.rank_t), (4, 4));
}

#[test]
fn bialgebra_when_centralizer_is_trivial() {
    for ext in [RingExtension::improper(ground_field(Field::Rational)), RingExtension::improper(matrix_algebra(Field::Rational, 2))] {
        let b = build(ext).t_bialgebroid();
        let rep = bialgebra_specialize(&b).unwrap();
        assert!(all_pass(&rep.checks), "{:?}", rep.checks);
    }
    let b = build(RingExtension::over_scalars(quadratic(Field::Rational, 1))).t_bialgebroid();
    assert_eq!(bialgebra_specialize(&b).unwrap_err(), BuildError::NontrivialCentralizer(2));
}

#[test]
fn weak_lift_over_separable_centralizer() {
    let b = build(RingExtension::over_scalars(quadratic(Field::Rational, 2)));
    match weak_lift(&b.ext, &b.t_bialgebroid(), 7) {
        WeakLiftOutcome::Lifted(l) => {
            assert!(all_pass(&l.checks), "{:?}", l.checks);
            assert_eq!(l.iota_rank, l.image_dim);
        }
        other => panic!("expected a lift, got {other:?}"),
    }
}

#[test]
fn weak_lift_refuses_inseparable_centralizer() {
    let b = build(RingExtension::over_scalars(truncated_polynomial(Field::Rational, 2)));
    match weak_lift(&b.ext, &b.t_bialgebroid(), 7) {
        WeakLiftOutcome::NotSeparable { nilpotency_index, radical_element } => {
            assert_eq!(nilpotency_index, 2);
            assert!(!radical_element.is_zero());
        }
        other => panic!("expected NotSeparable, got {other:?}"),
    }
}
