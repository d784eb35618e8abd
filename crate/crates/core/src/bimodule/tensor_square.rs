use std::collections::BTreeMap;

use crate::algebra::{Algebra, RingExtension};
use crate::linalg::{tensor, Field, Matrix, Quotient, Scalar, SparseVec};

/// `A⊗_B A` as the quotient of `A⊗_k A` (basis `e_i⊗e_j` at index `i*n + j`)
/// by the span of `e_i b ⊗ e_j − e_i ⊗ b e_j`.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    a: Algebra,
    quotient: Quotient,
}

impl TensorSquare {
    pub fn new(ext: &RingExtension) -> TensorSquare {
        let a = ext.a().clone();
        let n = a.dim();
        let field = a.field();
        let mut rels = Vec::new();
        for b in ext.b_basis() {
            let right: Vec<SparseVec> = (0..n).map(|i| a.mul_sparse(&SparseVec::unit(i, field), b)).collect();
            let left: Vec<SparseVec> = (0..n).map(|j| a.mul_sparse(b, &SparseVec::unit(j, field))).collect();
            for i in 0..n {
                for j in 0..n {
                    let r = tensor(&right[i], &SparseVec::unit(j, field), n).sub(&tensor(&SparseVec::unit(i, field), &left[j], n));
                    if !r.is_zero() {
                        rels.push(r);
                    }
                }
            }
        }
        TensorSquare { quotient: Quotient::new(field, n * n, rels), a }
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn algebra(&self) -> &Algebra {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.quotient.ambient_dim()
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    /// π on an element of `A⊗_k A`.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        self.quotient.project_sparse(v)
    }

    /// σ on quotient coordinates.
    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        self.quotient.lift(q)
    }

    pub fn alt_lift(&self, q: &SparseVec) -> SparseVec {
        self.quotient.alt_lift(q)
    }

    /// `x ⊗ y` in `A⊗_k A`.
    pub fn pure(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor(x, y, self.n())
    }

    /// π(x ⊗ y).
    pub fn class_of(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.project(&self.pure(x, y))
    }

    /// `a·(Σ x⊗y) = Σ ax ⊗ y` on `A⊗_k A`.
    pub fn left_ambient(&self, a: &SparseVec, v: &SparseVec) -> SparseVec {
        let n = self.n();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, c) in v.iter() {
            let (i, j) = (idx / n, idx % n);
            for (k, x) in a.iter() {
                let ck = c * x;
                for (m, y) in self.a.basis_product(*k, i).iter() {
                    crate::linalg::sparse_accumulate(&mut acc, m * n + j, &(&ck * y));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    /// `(Σ x⊗y)·a = Σ x ⊗ ya` on `A⊗_k A`.
    pub fn right_ambient(&self, v: &SparseVec, a: &SparseVec) -> SparseVec {
        let n = self.n();
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, c) in v.iter() {
            let (i, j) = (idx / n, idx % n);
            for (k, x) in a.iter() {
                let ck = c * x;
                for (m, y) in self.a.basis_product(j, *k).iter() {
                    crate::linalg::sparse_accumulate(&mut acc, i * n + m, &(&ck * y));
                }
            }
        }
        SparseVec::from_entries(acc)
    }

    /// Left action on quotient coordinates.
    pub fn left(&self, a: &SparseVec, q: &SparseVec) -> SparseVec {
        self.project(&self.left_ambient(a, &self.lift(q)))
    }

    /// Right action on quotient coordinates.
    pub fn right(&self, q: &SparseVec, a: &SparseVec) -> SparseVec {
        self.project(&self.right_ambient(&self.lift(q), a))
    }

    /// π(1⊗1).
    pub fn one(&self) -> SparseVec {
        let u = SparseVec::from_dense(self.a.unit());
        self.class_of(&u, &u)
    }

    /// Matrix of the left action of `e_i` on the quotient.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        let e = SparseVec::unit(i, self.field());
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|q| self.left(&e, &SparseVec::unit(q, self.field())).to_dense(self.dim(), self.field())).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Matrix of the right action of `e_i` on the quotient.
    pub fn right_matrix(&self, i: usize) -> Matrix {
        let e = SparseVec::unit(i, self.field());
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim()).map(|q| self.right(&SparseVec::unit(q, self.field()), &e).to_dense(self.dim(), self.field())).collect();
        Matrix::from_columns(self.field(), self.dim(), &cols)
    }

    /// Human-readable form of a quotient element through its lift.
    pub fn describe(&self, q: &SparseVec) -> String {
        let n = self.n();
        let names = self.a.basis_names();
        let terms: Vec<String> = self
            .lift(q)
            .iter()
            .map(|(idx, c)| {
                let t = format!("{}⊗{}", names[idx / n], names[idx % n]);
                if c.is_one() {
                    t
                } else {
                    format!("{c}*{t}")
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
