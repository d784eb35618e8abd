mod common;

use bialgd_core::algebra::*;
use bialgd_core::bialgebroid::*;
use bialgd_core::depth_two::*;
use bialgd_core::galois::*;
use bialgd_core::linalg::{Field, Matrix, SparseVec};
use common::{build, corpus, group_ext};

fn failures(checks: &[AxiomCheck]) -> Vec<&str> {
    checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect()
}

#[test]
fn corpus_is_galois_with_exact_inverse() {
    for (name, ext) in corpus() {
        let rep = characterize(&ext, 0);
        let g = rep.data.as_ref().unwrap_or_else(|| panic!("{name}: no coaction"));
        assert!(failures(&g.comodule_checks).is_empty(), "{name}: {:?}", g.comodule_checks);
        assert!(g.beta_bijective && g.theta_beta_identity && g.beta_theta_identity, "{name}");
        assert!(g.coinvariants_equal_b, "{name}");
        assert!(rep.galois, "{name}");
        assert_eq!(rep.biconditional(), Some(true), "{name}");
        assert!(is_unital_subalgebra(&ext, &g.coinvariants), "{name}");
        assert!(rep.invariants.same_as(&g.coinvariants), "{name}: A^S ≠ A^coT");
    }
}

#[test]
fn non_normal_subgroup_is_not_galois() {
    let ext = group_ext("S3", &[vec![vec![1, 2]]]);
    let rep = characterize(&ext, 0);
    assert!(!rep.d2.is_d2());
    assert!(rep.data.is_none());
    assert_eq!(rep.reason, Some(NotGaloisReason::NotRightD2));
    assert!(!rep.galois);
    assert_eq!(rep.biconditional(), Some(true));
    // B ⊆ A^S still holds
    assert!(rep.invariants.contains_all(ext.b_space()));
}

#[test]
fn coinvariants_of_quadratic_field_are_scalars() {
    let ext = RingExtension::over_scalars(quadratic(Field::Rational, 2));
    let rep = characterize(&ext, 0);
    let coinv = &rep.data.unwrap().coinvariants;
    assert_eq!(coinv.rank(), 1);
    assert!(coinv.contains(&SparseVec::unit(0, Field::Rational)));
    assert_eq!(rep.invariants.rank(), 1);
}

#[test]
fn improper_extension_has_everything_coinvariant() {
    let ext = RingExtension::improper(matrix_algebra(Field::Rational, 2));
    let rep = characterize(&ext, 0);
    let g = rep.data.unwrap();
    assert_eq!(g.coinvariants.rank(), 4);
    assert_eq!(rep.invariants.rank(), 4);
    assert_eq!(g.beta.rows, 4);
}

#[test]
fn trivial_extension_beta_is_identity() {
    let ext = RingExtension::improper(ground_field(Field::Rational));
    let g = characterize(&ext, 0).data.unwrap();
    assert_eq!(g.beta.to_matrix(Field::Rational), Matrix::identity(Field::Rational, 1));
}

#[test]
fn beta_on_a_tensor_one() {
    let bt = build(group_ext("S3", &[vec![vec![1, 2, 3]]]));
    let f = Field::Rational;
    let tb = bt.t_bialgebroid();
    let co = coaction(&bt.ext, &bt.t, &tb, &bt.right).unwrap();
    let beta = galois_map(&bt.ext, &bt.ts, &co).unwrap();
    let one = SparseVec::from_dense(bt.ext.a().unit());
    for i in 0..bt.ext.n() {
        let e = SparseVec::unit(i, f);
        let x = bt.ts.class_of(&e, &one);
        assert_eq!(beta.apply(&x), co.art.project(&co.art.pure(&e, &tb.one())));
    }
}

/// θ against an independent inverse: dense Gauss–Jordan on β.
#[test]
fn theta_matches_matrix_inverse_on_s3_a3() {
    let ext = group_ext("S3", &[vec![vec![1, 2, 3]]]);
    let g = characterize(&ext, 0).data.unwrap();
    let f = Field::Rational;
    let beta = g.beta.to_matrix(f);
    assert_eq!((beta.rows(), beta.cols()), (12, 12));
    assert_eq!(beta.invert().unwrap(), g.theta.to_matrix(f));
}

#[test]
fn theta_on_source_elements() {
    let bt = build(RingExtension::over_scalars(quadratic(Field::Rational, 2)));
    let f = Field::Rational;
    let tb = bt.t_bialgebroid();
    let art = a_tensor_r_t(&bt.ext, &tb);
    let th = theta(&bt.ext, &bt.ts, &bt.t, &art);
    for i in 0..bt.ext.n() {
        for (k, r) in bt.ext.r_basis().iter().enumerate() {
            let e = SparseVec::unit(i, f);
            let x = art.project(&art.pure(&e, &tb.s(&SparseVec::unit(k, f))));
            assert_eq!(th.apply(&x), bt.ts.class_of(&e, r));
        }
    }
}

#[test]
fn dropping_a_quasibase_pair_breaks_the_counit() {
    let bt = build(group_ext("S3", &[vec![vec![1, 2, 3]]]));
    let tb = bt.t_bialgebroid();
    for drop in 0..bt.right.pairs.len() {
        let mut qb = bt.right.clone();
        qb.pairs.remove(drop);
        let co = coaction(&bt.ext, &bt.t, &tb, &qb).unwrap();
        let checks = verify_comodule_algebra(&bt.ext, &tb, &co);
        let fails = failures(&checks);
        assert!(fails.contains(&"counit"), "dropping pair {drop}: {fails:?}");
    }
}

#[test]
fn coaction_fixes_b() {
    for (name, ext) in corpus() {
        let bt = build(ext);
        let tb = bt.t_bialgebroid();
        let co = coaction(&bt.ext, &bt.t, &tb, &bt.right).unwrap();
        for b in bt.ext.b_basis() {
            assert_eq!(co.apply(b), co.art.project(&co.art.pure(b, &tb.one())), "{name}");
        }
    }
}

#[test]
fn s_invariants_contain_b() {
    let (deg, gens) = named::dihedral4();
    let g = PermGroup::from_cycle_lists(deg, &gens, DEFAULT_ORDER_CAP).unwrap();
    for h in g.subgroups() {
        let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
        let s = bialgd_core::bimodule::compute_s(&ext);
        let inv = s_invariants(&ext, &s);
        assert!(inv.contains_all(ext.b_space()));
        if bialgd_core::bimodule::balanced(&ext).balanced {
            assert!(inv.same_as(ext.b_space()));
        }
    }
}

#[test]
fn wrong_side_quasibase_rejected() {
    let bt = build(group_ext("S3", &[vec![vec![1, 2, 3]]]));
    let tb = bt.t_bialgebroid();
    assert!(matches!(coaction(&bt.ext, &bt.t, &tb, &bt.left), Err(BuildError::WrongSide(Side::Left, Side::Right))));
}
