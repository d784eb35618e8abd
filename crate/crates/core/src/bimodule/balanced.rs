use crate::algebra::RingExtension;
use crate::linalg::{Echelon, Field, Scalar, SparseVec, Subspace};

/// Constraint rows of `αM − Mα = 0` on flat `n×n` matrices α.
pub(super) fn commutator_rows(m: &SparseVec, n: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
    for (idx, v) in m.iter() {
        let (k, q) = (idx / n, idx % n);
        for p in 0..n {
            rows[p * n + q].push((p * n + k, v.clone()));
        }
        let (p, k) = (idx / n, idx % n);
        for q in 0..n {
            rows[p * n + q].push((k * n + q, -v));
        }
    }
    rows.into_iter().map(SparseVec::from_entries).filter(|r| !r.is_zero()).collect()
}

/// All flat `n×n` matrices commuting with every given matrix.
pub fn commutant(field: Field, n: usize, mats: &[SparseVec]) -> Subspace {
    commutant_bounded(field, n, mats, 0)
}

/// Like [`commutant`], but stops absorbing constraints once the solution
/// space has shrunk to `floor` dimensions (the caller knows a subspace of that
/// size is always contained in the answer).
fn commutant_bounded(field: Field, n: usize, mats: &[SparseVec], floor: usize) -> Subspace {
    let mut ech = Echelon::new(field, n * n);
    'outer: for m in mats {
        for r in commutator_rows(m, n) {
            if ech.rank() + floor >= n * n {
                break 'outer;
            }
            ech.insert(&r);
        }
    }
    ech.into_rref().kernel()
}

#[derive(Clone, Debug)]
pub struct BalancedResult {
    pub balanced: bool,
    /// dim End(A_B)
    pub dim_endo: usize,
    /// dim of the double commutant
    pub dim_double_commutant: usize,
    pub dim_b: usize,
    /// An element of the double commutant outside ρ(B), as a flat matrix.
    pub witness: Option<SparseVec>,
}

/// Decides whether `A_B` is balanced: the commutant of `End(A_B)` must be exactly ρ(B).
pub fn balanced(ext: &RingExtension) -> BalancedResult {
    let n = ext.n();
    let field = ext.field();
    let rho: Vec<SparseVec> = ext.rho_b().iter().map(super::endo_from_matrix).collect();
    let endo = commutant(field, n, &rho);
    let dim_b = ext.b_basis().len();
    let double = commutant_bounded(field, n, &endo.basis, dim_b);
    let rho_space = Subspace::span(field, n * n, rho.iter().cloned());
    let witness = double.basis.iter().find(|g| !rho_space.contains(g)).cloned();
    BalancedResult {
        balanced: witness.is_none(),
        dim_endo: endo.rank(),
        dim_double_commutant: double.rank(),
        dim_b,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ground_field, quadratic, truncated_polynomial};

    #[test]
    fn field_extension_is_balanced() {
        let q = Field::Rational;
        let r = balanced(&RingExtension::over_scalars(quadratic(q, 2)));
        assert!(r.balanced);
        assert_eq!(r.dim_endo, 4);
        assert!(balanced(&RingExtension::improper(ground_field(q))).balanced);
    }

    #[test]
    fn summand_of_regular_module_is_balanced() {
        // A = k[x]/(x^3) over B = span{1, x^2}: A_B = B·1 ⊕ k·x contains B as a summand
        let q = Field::Rational;
        let a = truncated_polynomial(q, 3);
        let b = vec![vec![q.one(), q.zero(), q.zero()], vec![q.zero(), q.zero(), q.one()]];
        let r = balanced(&RingExtension::new(a, b).unwrap());
        assert!(r.balanced);
        assert_eq!(r.dim_endo, 5);
        assert!(r.witness.is_none());
    }
}
