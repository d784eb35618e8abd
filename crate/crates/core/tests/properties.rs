mod common;

use bialgd_core::algebra::*;
use bialgd_core::bialgebroid::verify_bialgebroid;
use bialgd_core::galois::characterize;
use bialgd_core::linalg::{Echelon, Field, Quotient, Scalar, SparseVec};
use bialgd_core::report::{analyze, render_json, Checks, Verdict};
use proptest::prelude::*;

use common::groups::GroupOracle;
use common::{build, corpus};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::prime(7).unwrap()), Just(Field::prime(101).unwrap())]
}

fn scalar(f: Field) -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(move |(a, b)| f.from_i64(a).div(&f.from_i64(b)).unwrap_or_else(|| f.from_i64(a)))
}

fn sparse(f: Field, dim: usize) -> impl Strategy<Value = SparseVec> {
    proptest::collection::vec(scalar(f), dim).prop_map(|v| SparseVec::from_dense(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, x, y, z) in field().prop_flat_map(|f| (Just(f), scalar(f), scalar(f), scalar(f)))) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        prop_assert_eq!(f.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn echelon_expresses_combinations(
        (f, gens, coeffs) in field().prop_flat_map(|f| (
            Just(f),
            proptest::collection::vec(sparse(f, 6), 1..6),
            proptest::collection::vec(scalar(f), 6),
        ))
    ) {
        let mut ech = Echelon::tracking(f, 6);
        for g in &gens {
            ech.insert(g);
        }
        let target = gens.iter().zip(&coeffs).fold(SparseVec::new(), |acc, (g, c)| acc.axpy(c, g));
        let c = ech.express(&target).expect("combination lies in the span");
        let rebuilt = c.iter().fold(SparseVec::new(), |acc, (i, x)| acc.axpy(x, &gens[*i]));
        prop_assert_eq!(rebuilt, target);
        prop_assert!(ech.rank() <= gens.len().min(6));
    }

    #[test]
    fn quotient_section_splits(
        (f, rels, q) in field().prop_flat_map(|f| (Just(f), proptest::collection::vec(sparse(f, 7), 0..5), sparse(f, 7)))
    ) {
        let quo = Quotient::new(f, 7, rels.clone());
        for r in &rels {
            prop_assert!(quo.project_sparse(r).is_zero());
        }
        let coords = quo.project_sparse(&q);
        prop_assert_eq!(quo.project_sparse(&quo.lift(&coords)), coords.clone());
        prop_assert_eq!(quo.project_sparse(&quo.alt_lift(&coords)), coords);
    }
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn small_corpus() -> Vec<(&'static str, RingExtension)> {
    corpus().into_iter().filter(|(_, e)| e.n() <= 6).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Relabelling the basis of `A` changes none of the verdicts or dimensions.
    #[test]
    fn verdicts_survive_relabelling(idx in 0usize..6, seed in 0u64..1000, raw in permutation(6)) {
        let cases = small_corpus();
        let (name, ext) = &cases[idx % cases.len()];
        let perm: Vec<usize> = raw.into_iter().filter(|&p| p < ext.n()).collect();
        let moved = ext.permute_basis(&perm);
        let (x, y) = (characterize(ext, seed), characterize(&moved, seed));
        prop_assert_eq!(x.tensor_square_dim, y.tensor_square_dim, "{}", name);
        prop_assert_eq!((x.t_dim, x.s_dim), (y.t_dim, y.s_dim), "{}", name);
        prop_assert_eq!(x.frobenius_flag(), y.frobenius_flag(), "{}", name);
        prop_assert_eq!(x.d2.is_d2(), y.d2.is_d2(), "{}", name);
        prop_assert_eq!(x.balanced.balanced, y.balanced.balanced, "{}", name);
        prop_assert_eq!(x.galois, y.galois, "{}", name);
        let bt = build(moved);
        prop_assert!(verify_bialgebroid(&bt.t_bialgebroid()).iter().all(|c| c.passed()), "{}", name);
        prop_assert!(verify_bialgebroid(&bt.s_bialgebroid()).iter().all(|c| c.passed()), "{}", name);
    }

    /// For group algebras, Galois holds exactly on normal subgroups.
    #[test]
    fn galois_iff_normal_for_random_subgroups(which in 0usize..4, picks in proptest::collection::vec(0usize..64, 0..3)) {
        let name = ["S3", "D4", "Q8", "C4"][which];
        let (d, gens) = named::by_name(name).unwrap();
        let g = PermGroup::from_cycle_lists(d, &gens, DEFAULT_ORDER_CAP).unwrap();
        let h = g.closure(&picks.iter().map(|p| p % g.order()).collect::<Vec<_>>());
        let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
        let normal = GroupOracle::of(&g).is_normal(&h);
        let report = characterize(&ext, 0);
        prop_assert_eq!(report.galois, normal, "{} {:?}", name, h);
        prop_assert_eq!(report.biconditional(), Some(true));
    }

    /// Verdicts do not depend on the seed, and a fixed seed gives identical bytes.
    #[test]
    fn reports_are_seed_stable(idx in 0usize..6, s1 in 0u64..10_000, s2 in 0u64..10_000) {
        let cases = small_corpus();
        let (_, ext) = &cases[idx % cases.len()];
        let a = analyze(ext, Checks::all(), s1);
        let b = analyze(ext, Checks::all(), s2);
        let verdicts = |d: &bialgd_core::report::ReportDocument| d.verdicts.iter().map(|v| (v.name.clone(), v.verdict)).collect::<Vec<_>>();
        prop_assert_eq!(verdicts(&a), verdicts(&b));
        prop_assert_eq!(a.overall, Verdict::Pass);
        prop_assert_eq!(render_json(&a), render_json(&analyze(ext, Checks::all(), s1)));
    }
}
