mod common;

use bialgd_core::algebra::*;
use bialgd_core::bimodule::*;
use bialgd_core::depth_two::is_d2;
use bialgd_core::linalg::{Field, Matrix, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::groups::GroupOracle;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Determinant by the Leibniz expansion.
fn leibniz(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Q::zero();
    // Heap's algorithm, tracking the sign
    fn rec(k: usize, perm: &mut Vec<usize>, sign: &mut i32, m: &[Vec<Q>], total: &mut Q) {
        if k <= 1 {
            let mut p = Q::one();
            for (i, &j) in perm.iter().enumerate() {
                p *= &m[i][j];
            }
            if *sign > 0 {
                *total += p;
            } else {
                *total -= p;
            }
            return;
        }
        for i in 0..k - 1 {
            rec(k - 1, perm, sign, m, total);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            perm.swap(j, k - 1);
            *sign = -*sign;
        }
        rec(k - 1, perm, sign, m, total);
    }
    let mut sign = 1;
    if n == 0 {
        return Q::one();
    }
    rec(n, &mut perm, &mut sign, m, &mut total);
    total
}

fn minor(m: &[Vec<Q>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Q>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
}

/// Largest size of a nonvanishing minor.
fn minor_rank(m: &[Vec<Q>]) -> usize {
    let (r, c) = (m.len(), m[0].len());
    (1..=r.min(c))
        .rev()
        .find(|&k| subsets(r, k).iter().any(|rs| subsets(c, k).iter().any(|cs| !leibniz(&minor(m, rs, cs)).is_zero())))
        .unwrap_or(0)
}

fn to_matrix(m: &[Vec<Q>]) -> Matrix {
    Matrix::from_rows(Field::Rational, m.iter().map(|r| r.iter().map(|x| Scalar::Q(x.clone())).collect()).collect())
}

fn entries(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    proptest::collection::vec(proptest::collection::vec((-6i64..=6, 1i64..=3).prop_map(|(a, b)| Q::new(a.into(), b.into())), cols), rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solve_matches_cramer(m in entries(5, 5), b in proptest::collection::vec(-9i64..=9, 5)) {
        let det = leibniz(&m);
        prop_assume!(!det.is_zero());
        let sol = to_matrix(&m).solve(&b.iter().map(|&v| Scalar::Q(q(v))).collect::<Vec<_>>()).unwrap();
        prop_assert!(sol.kernel_basis.is_empty());
        for i in 0..5 {
            let mut mi = m.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = q(b[r]);
            }
            prop_assert_eq!(&sol.particular[i], &Scalar::Q(leibniz(&mi) / &det));
        }
    }

    #[test]
    fn inverse_matches_adjugate(m in entries(6, 6)) {
        let det = leibniz(&m);
        let inv = to_matrix(&m).invert();
        if det.is_zero() {
            prop_assert!(inv.is_err());
        } else {
            let inv = inv.unwrap();
            for i in 0..6 {
                for j in 0..6 {
                    let rows: Vec<usize> = (0..6).filter(|&r| r != j).collect();
                    let cols: Vec<usize> = (0..6).filter(|&c| c != i).collect();
                    let sign = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
                    let cof = sign * leibniz(&minor(&m, &rows, &cols));
                    prop_assert_eq!(inv.get(i, j), &Scalar::Q(cof / &det));
                }
            }
        }
    }

    #[test]
    fn rank_matches_minors(m in entries(4, 5), dup in 0usize..4) {
        // force a dependency between rows so deficient ranks occur
        let mut m = m;
        let src = (dup + 1) % 4;
        m[dup] = m[src].iter().map(|x| x * q(2)).collect();
        prop_assert_eq!(to_matrix(&m).rank(), minor_rank(&m));
    }
}

#[test]
fn leibniz_sanity() {
    let m = vec![vec![q(2), q(0), q(1)], vec![q(1), q(3), q(2)], vec![q(1), q(1), q(1)]];
    // 2(3-2) - 0 + 1(1-3)
    assert_eq!(leibniz(&m), q(0));
    assert_eq!(minor_rank(&m), 2);
}

fn groups() -> Vec<(&'static str, PermGroup)> {
    ["C2", "C3", "C4", "S3", "D4", "Q8"]
        .into_iter()
        .map(|name| {
            let (d, g) = named::by_name(name).unwrap();
            (name, PermGroup::from_cycle_lists(d, &g, DEFAULT_ORDER_CAP).unwrap())
        })
        .collect()
}

#[test]
fn group_table_matches_permutation_product() {
    for (name, g) in groups() {
        let o = GroupOracle::of(&g);
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(g.mul(i, j), o.mul(i, j), "{name}");
            }
            assert_eq!(g.inverse(i), o.inv(i), "{name}");
        }
    }
}

#[test]
fn s3_over_a3_tensor_square_has_dimension_twelve() {
    let (_, g) = groups().into_iter().find(|(n, _)| *n == "S3").unwrap();
    let o = GroupOracle::of(&g);
    let a3 = g.subgroups().into_iter().find(|h| h.len() == 3).unwrap();
    let ext = subgroup_extension(&g, &a3, Field::Rational).unwrap();
    assert_eq!(o.tensor_square_dim(&a3), 12);
    assert_eq!(TensorSquare::new(&ext).dim(), 12);
}

/// Dimensions of `A⊗_B A`, `R`, `S` and `T` against orbit counts, on every subgroup.
#[test]
fn lattice_dimensions_match_orbit_counts() {
    for (name, g) in groups() {
        let o = GroupOracle::of(&g);
        for h in g.subgroups() {
            let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
            let ts = TensorSquare::new(&ext);
            let label = format!("{name} | {h:?}");
            assert_eq!(ts.dim(), g.order() * g.order() / h.len(), "{label}");
            assert_eq!(ts.dim(), o.tensor_square_dim(&h), "{label}");
            assert_eq!(ext.r_basis().len(), o.centralizer_dim(&h), "{label}");
            assert_eq!(compute_s(&ext).dim(), o.bimodule_endo_dim(&h), "{label}");
            assert_eq!(compute_t(&ext, &ts).dim(), o.t_dim(&h), "{label}");
        }
    }
}

/// `k[G]` is free over `k[H]`, so `End(A_B) ≅ M_m(k[H])` and the double commutant is `k[H]`.
#[test]
fn double_commutant_of_free_module() {
    for (name, g) in groups() {
        for h in g.subgroups() {
            let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
            let b = balanced(&ext);
            let m = g.order() / h.len();
            assert_eq!(b.dim_endo, m * m * h.len(), "{name}");
            assert_eq!(b.dim_double_commutant, h.len(), "{name}");
            assert!(b.balanced);
        }
    }
}

#[test]
fn d2_agrees_with_oracle_normality() {
    for (name, g) in groups() {
        let o = GroupOracle::of(&g);
        for h in g.subgroups() {
            let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
            let ts = TensorSquare::new(&ext);
            let d2 = is_d2(&ext, &ts, &compute_t(&ext, &ts), &compute_s(&ext));
            assert_eq!(d2.left.is_ok(), o.is_normal(&h), "{name} {h:?} left");
            assert_eq!(d2.right.is_ok(), o.is_normal(&h), "{name} {h:?} right");
        }
    }
}

#[test]
fn coset_system_and_search_both_satisfy_the_identities() {
    for (name, g) in groups() {
        let o = GroupOracle::of(&g);
        for h in g.subgroups() {
            let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
            let oracle = o.coset_system(&h, Field::Rational);
            o.check_frobenius(&h, &oracle, Field::Rational).unwrap();
            verify_frobenius(&ext, &oracle).unwrap();
            let found = frobenius(&ext, 5);
            let sys = found.system().unwrap_or_else(|| panic!("{name} {h:?}: {found:?}"));
            o.check_frobenius(&h, sys, Field::Rational).unwrap_or_else(|e| panic!("{name} {h:?}: {e}"));
        }
    }
}

#[test]
fn broken_coset_system_is_rejected_by_both() {
    let (_, g) = groups().into_iter().find(|(n, _)| *n == "S3").unwrap();
    let o = GroupOracle::of(&g);
    let h = g.subgroups().into_iter().find(|h| h.len() == 2).unwrap();
    let ext = subgroup_extension(&g, &h, Field::Rational).unwrap();
    let mut sys = o.coset_system(&h, Field::Rational);
    sys.y.swap(0, 1);
    assert!(o.check_frobenius(&h, &sys, Field::Rational).is_err());
    assert!(verify_frobenius(&ext, &sys).is_err());
}
