use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::RingExtension;
use crate::linalg::{kernel_of_rows, solve_sparse, transpose_columns, Echelon, SparseVec};

use super::balanced::commutator_rows;
use super::endo::{apply_endo, endo_from_matrix};

const RANDOM_DRAWS: usize = 8;
const GRID_POINT_CAP: usize = 4096;
const GRID_DIM_CAP: usize = 12;

/// A `B`-bimodule map `E: A → B` (as a flat matrix on `A`) with dual bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSystem {
    pub e: SparseVec,
    pub x: Vec<SparseVec>,
    pub y: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMethod {
    /// a single basis vector of `Hom_{B,B}(A, B)`
    Basis { index: usize },
    /// the sum of all basis vectors
    Sum,
    Random { draw: usize },
    Grid { point: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFoundReason {
    /// A Frobenius extension has `Hom_{B,B}(A,B) ≅ C_A(B)`.
    HomDimension { hom_dim: usize, r_dim: usize },
    /// Every point of `{0..D}^D` failed, so the degree-`D` norm form vanishes identically.
    GridExhausted { points: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusOutcome {
    Found { system: FrobeniusSystem, method: SearchMethod, hom_dim: usize },
    NotFound { reason: NotFoundReason, hom_dim: usize },
    Inconclusive { reason: String, hom_dim: usize },
}

impl FrobeniusOutcome {
    pub fn system(&self) -> Option<&FrobeniusSystem> {
        match self {
            FrobeniusOutcome::Found { system, .. } => Some(system),
            _ => None,
        }
    }
}

/// Basis of `Hom_{B,B}(A, B)`, each map written as a flat matrix on `A`.
pub fn hom_bb_to_b(ext: &RingExtension) -> Vec<SparseVec> {
    let n = ext.n();
    let field = ext.field();
    let bs = ext.b_basis();
    let m = bs.len();
    // E = Σ c_{kq} b_k e_q^T, unknown c_{kq} at index k*n + q
    let substitute = |row: &SparseVec| -> SparseVec {
        let mut out = Vec::new();
        for (idx, coef) in row.iter() {
            let (p, q) = (idx / n, idx % n);
            for (k, b) in bs.iter().enumerate() {
                if let Some(bp) = b.get(p) {
                    out.push((k * n + q, coef * bp));
                }
            }
        }
        SparseVec::from_entries(out)
    };
    let mut rows = Vec::new();
    for mat in ext.lambda_b().iter().chain(ext.rho_b().iter()) {
        rows.extend(commutator_rows(&endo_from_matrix(mat), n).iter().map(substitute).filter(|r| !r.is_zero()));
    }
    let ker = kernel_of_rows(field, m * n, rows);
    ker.basis
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            for (idx, x) in c.iter() {
                let (k, q) = (idx / n, idx % n);
                for (p, bp) in bs[k].iter() {
                    out.push((p * n + q, x * bp));
                }
            }
            SparseVec::from_entries(out)
        })
        .collect()
}

/// Necessary condition for dual bases: `a ↦ E(a·−)` is injective.
fn pairing_injective(ext: &RingExtension, e: &SparseVec) -> bool {
    let a = ext.a();
    let n = ext.n();
    let mut ech = Echelon::new(ext.field(), n * n);
    for r in 0..n {
        let row = SparseVec::from_entries((0..n).flat_map(|p| {
            apply_endo(e, a.basis_product(r, p), n).iter().map(|(s, v)| (p * n + s, v.clone())).collect::<Vec<_>>()
        }));
        if !ech.insert(&row) {
            return false;
        }
    }
    true
}

/// Solves for dual bases of a fixed `E`, returning `None` when none exist.
pub fn dual_bases(ext: &RingExtension, e: &SparseVec) -> Option<FrobeniusSystem> {
    let a = ext.a();
    let n = ext.n();
    let field = ext.field();
    if !pairing_injective(ext, e) {
        return None;
    }
    let unit = |i: usize| SparseVec::unit(i, field);
    let mut cols: Vec<Vec<(usize, crate::linalg::Scalar)>> = vec![Vec::new(); n * n];
    // Σ_{pq} X_pq E(e_r e_p) e_q = e_r   (rows r*n + s)
    // Σ_{pq} X_pq e_p E(e_q e_r) = e_r   (rows n² + r*n + s)
    for r in 0..n {
        for p in 0..n {
            let w = apply_endo(e, a.basis_product(r, p), n);
            if w.is_zero() {
                continue;
            }
            for q in 0..n {
                for (s, v) in a.mul_sparse(&w, &unit(q)).iter() {
                    cols[p * n + q].push((r * n + s, v.clone()));
                }
            }
        }
    }
    for q in 0..n {
        for r in 0..n {
            let w = apply_endo(e, a.basis_product(q, r), n);
            if w.is_zero() {
                continue;
            }
            for p in 0..n {
                for (s, v) in a.mul_sparse(&unit(p), &w).iter() {
                    cols[p * n + q].push((n * n + r * n + s, v.clone()));
                }
            }
        }
    }
    let cols: Vec<SparseVec> = cols.into_iter().map(SparseVec::from_entries).collect();
    let rows = transpose_columns(&cols, 2 * n * n);
    let rhs = |row: usize| {
        let (r, s) = ((row % (n * n)) / n, row % n);
        if r == s {
            field.one()
        } else {
            field.zero()
        }
    };
    let sol = solve_sparse(field, n * n, rows.into_iter().enumerate().map(|(i, row)| (row, rhs(i))))?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for p in 0..n {
        let yp = SparseVec::from_entries(sol.iter().filter(|(idx, _)| idx / n == p).map(|(idx, c)| (idx % n, c.clone())));
        if !yp.is_zero() {
            x.push(unit(p));
            y.push(yp);
        }
    }
    Some(FrobeniusSystem { e: e.clone(), x, y })
}

/// Checks every defining identity of a Frobenius system exactly.
pub fn verify_frobenius(ext: &RingExtension, sys: &FrobeniusSystem) -> Result<(), String> {
    let a = ext.a();
    let n = ext.n();
    let field = ext.field();
    let e = |v: &SparseVec| apply_endo(&sys.e, v, n);
    if sys.x.len() != sys.y.len() {
        return Err("dual bases have different lengths".into());
    }
    for q in 0..n {
        let eq = SparseVec::unit(q, field);
        if !ext.b_space().contains(&e(&eq)) {
            return Err(format!("E({}) is not in B", a.basis_names()[q]));
        }
        for b in ext.b_basis() {
            if e(&a.mul_sparse(b, &eq)) != a.mul_sparse(b, &e(&eq)) || e(&a.mul_sparse(&eq, b)) != a.mul_sparse(&e(&eq), b) {
                return Err(format!("E is not B-bilinear at {}", a.basis_names()[q]));
            }
        }
        let mut left = SparseVec::new();
        let mut right = SparseVec::new();
        for (x, y) in sys.x.iter().zip(&sys.y) {
            left = left.add(&a.mul_sparse(&e(&a.mul_sparse(&eq, x)), y));
            right = right.add(&a.mul_sparse(x, &e(&a.mul_sparse(y, &eq))));
        }
        if left != eq {
            return Err(format!("Σ E(a x_i) y_i ≠ a at a = {}", a.basis_names()[q]));
        }
        if right != eq {
            return Err(format!("Σ x_i E(y_i a) ≠ a at a = {}", a.basis_names()[q]));
        }
    }
    Ok(())
}

fn combine(basis: &[SparseVec], coeffs: &[i64], ext: &RingExtension) -> SparseVec {
    let field = ext.field();
    basis.iter().zip(coeffs).fold(SparseVec::new(), |acc, (b, c)| acc.axpy(&field.from_i64(*c), b))
}

/// Searches `Hom_{B,B}(A,B)` for a Frobenius homomorphism: the sparse basis
/// vectors and their sum, then seeded random integer combinations, then an
/// exhaustive grid that certifies absence.
pub fn frobenius(ext: &RingExtension, seed: u64) -> FrobeniusOutcome {
    let hom = hom_bb_to_b(ext);
    let hom_dim = hom.len();
    let r_dim = ext.r_basis().len();
    if hom_dim != r_dim || hom_dim == 0 {
        return FrobeniusOutcome::NotFound { reason: NotFoundReason::HomDimension { hom_dim, r_dim }, hom_dim };
    }
    for (index, e) in hom.iter().enumerate() {
        if let Some(system) = dual_bases(ext, e) {
            return FrobeniusOutcome::Found { system, method: SearchMethod::Basis { index }, hom_dim };
        }
    }
    if hom_dim > 1 {
        if let Some(system) = dual_bases(ext, &combine(&hom, &vec![1; hom_dim], ext)) {
            return FrobeniusOutcome::Found { system, method: SearchMethod::Sum, hom_dim };
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 0..RANDOM_DRAWS {
        let coeffs: Vec<i64> = (0..hom_dim).map(|_| rng.gen_range(-7..=7)).collect();
        if coeffs.iter().all(|c| *c == 0) {
            continue;
        }
        if let Some(system) = dual_bases(ext, &combine(&hom, &coeffs, ext)) {
            return FrobeniusOutcome::Found { system, method: SearchMethod::Random { draw }, hom_dim };
        }
    }
    let d = hom_dim;
    let points = (d + 1).checked_pow(d as u32).unwrap_or(usize::MAX);
    let char_ok = match ext.field().characteristic() {
        0 => true,
        p => p > d as u64,
    };
    if !char_ok {
        return FrobeniusOutcome::Inconclusive {
            reason: format!(
                "{RANDOM_DRAWS} random draws failed; no grid certificate in characteristic {} for dim Hom = {d}",
                ext.field().characteristic()
            ),
            hom_dim,
        };
    }
    if points > GRID_POINT_CAP || ext.n() > GRID_DIM_CAP {
        return FrobeniusOutcome::Inconclusive {
            reason: format!("{RANDOM_DRAWS} random draws failed; grid certificate needs {points} points over dim {}", ext.n()),
            hom_dim,
        };
    }
    let mut point = vec![0i64; d];
    loop {
        // odometer over {0..d}^d
        let mut k = 0;
        while k < d {
            point[k] += 1;
            if point[k] as usize <= d {
                break;
            }
            point[k] = 0;
            k += 1;
        }
        if k == d {
            break;
        }
        if let Some(system) = dual_bases(ext, &combine(&hom, &point, ext)) {
            return FrobeniusOutcome::Found { system, method: SearchMethod::Grid { point }, hom_dim };
        }
    }
    FrobeniusOutcome::NotFound { reason: NotFoundReason::GridExhausted { points }, hom_dim }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground_field, matrix_algebra, quadratic, truncated_polynomial};
    use crate::linalg::Field;

    #[test]
    fn identity_extension() {
        let q = Field::Rational;
        for a in [ground_field(q), matrix_algebra(q, 2)] {
            let ext = RingExtension::improper(a);
            let out = frobenius(&ext, 1);
            verify_frobenius(&ext, out.system().expect("A|A is Frobenius")).unwrap();
        }
    }

    #[test]
    fn quadratic_field() {
        let q = Field::Rational;
        let ext = RingExtension::over_scalars(quadratic(q, 2));
        let sys = frobenius(&ext, 7).system().cloned().unwrap();
        verify_frobenius(&ext, &sys).unwrap();
        // the coefficient-of-1 functional with dual bases {1, √2}, {1, √2/2}
        let e = SparseVec::from_entries([(0, q.one())]);
        let by_hand = FrobeniusSystem {
            e,
            x: vec![SparseVec::unit(0, q), SparseVec::unit(1, q)],
            y: vec![SparseVec::unit(0, q), SparseVec::from_entries([(1, q.parse("1/2").unwrap())])],
        };
        verify_frobenius(&ext, &by_hand).unwrap();
        assert_eq!(dual_bases(&ext, &by_hand.e).unwrap(), by_hand);
    }

    #[test]
    fn local_algebra_over_scalars_is_frobenius() {
        let q = Field::Rational;
        let ext = RingExtension::over_scalars(truncated_polynomial(q, 3));
        verify_frobenius(&ext, frobenius(&ext, 0).system().unwrap()).unwrap();
    }

    #[test]
    fn non_frobenius_algebra_is_certified() {
        // k[x,y]/(x,y)^2 is not Frobenius over k: its socle is 2-dimensional
        let q = Field::Rational;
        let z = q.zero();
        let o = q.one();
        let mut mult = vec![vec![vec![z.clone(); 3]; 3]; 3];
        for i in 0..3 {
            mult[0][i][i] = o.clone();
            mult[i][0][i] = o.clone();
        }
        let a = crate::algebra::Algebra::new(q, vec!["1".into(), "x".into(), "y".into()], mult, vec![o, z.clone(), z]).unwrap();
        let ext = RingExtension::over_scalars(a);
        assert!(matches!(
            frobenius(&ext, 3),
            FrobeniusOutcome::NotFound { reason: NotFoundReason::HomDimension { hom_dim: 3, r_dim: 3 }, .. }
                | FrobeniusOutcome::NotFound { reason: NotFoundReason::GridExhausted { .. }, .. }
        ));
    }
}
