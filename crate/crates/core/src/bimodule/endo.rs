//! Linear endomorphisms of `A` stored as flat sparse `n×n` matrices: entry
//! `p*n + q` is the coefficient of `e_p` in `α(e_q)`.

use std::collections::BTreeMap;

use crate::linalg::{Field, Matrix, SparseVec};

pub fn apply_endo(alpha: &SparseVec, x: &SparseVec, n: usize) -> SparseVec {
    let xs: BTreeMap<usize, &crate::linalg::Scalar> = x.iter().map(|(i, c)| (*i, c)).collect();
    let mut out = Vec::new();
    for (idx, c) in alpha.iter() {
        if let Some(v) = xs.get(&(idx % n)) {
            out.push((idx / n, c * *v));
        }
    }
    SparseVec::from_entries(out)
}

/// `α ∘ β`.
pub fn compose_endo(alpha: &SparseVec, beta: &SparseVec, n: usize) -> SparseVec {
    let mut by_col: Vec<Vec<(usize, &crate::linalg::Scalar)>> = vec![Vec::new(); n];
    for (idx, c) in alpha.iter() {
        by_col[idx % n].push((idx / n, c));
    }
    let mut out = Vec::new();
    for (idx, c) in beta.iter() {
        let (k, q) = (idx / n, idx % n);
        for (p, d) in &by_col[k] {
            out.push((p * n + q, *d * c));
        }
    }
    SparseVec::from_entries(out)
}

pub fn endo_from_matrix(m: &Matrix) -> SparseVec {
    SparseVec::from_dense(&m.to_vec())
}

pub fn endo_to_matrix(alpha: &SparseVec, n: usize, field: Field) -> Matrix {
    Matrix::from_flat(field, n, n, alpha.to_dense(n * n, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_dense_matrix_product() {
        let q = Field::Rational;
        let a = Matrix::from_i64(q, &[&[1, 2, 0], &[0, -1, 3], &[4, 0, 1]]);
        let b = Matrix::from_i64(q, &[&[0, 1, 1], &[2, 0, 0], &[1, 1, -2]]);
        let ab = compose_endo(&endo_from_matrix(&a), &endo_from_matrix(&b), 3);
        assert_eq!(endo_to_matrix(&ab, 3, q), a.mul(&b));
        let x = vec![q.from_i64(1), q.from_i64(-2), q.from_i64(5)];
        assert_eq!(apply_endo(&endo_from_matrix(&a), &SparseVec::from_dense(&x), 3), SparseVec::from_dense(&a.mul_vec(&x)));
    }
}
