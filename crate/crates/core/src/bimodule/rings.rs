use std::collections::BTreeMap;

use crate::algebra::{Algebra, RingExtension};
use crate::linalg::{kernel_of_rows, sparse_accumulate, tensor, transpose_columns, Field, Scalar, SparseVec, Subspace};

use super::balanced::commutant;
use super::endo::{apply_endo, compose_endo, endo_from_matrix};
use super::tensor_square::TensorSquare;

/// Order of the factors in the product of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TMultiplication {
    /// `t·t′ = t′¹t¹ ⊗ t²t′²`, composition in `End_A(A⊗_B A)_A`.
    Composition,
    /// `t·t′ = t¹t′¹ ⊗ t′²t²`, the opposite ring; kept as a negative control.
    Flipped,
}

/// The `B`-central elements of `A⊗_B A`, as a subspace of quotient coordinates.
#[derive(Clone, Debug)]
pub struct TRing {
    space: Subspace,
}

pub fn compute_t(ext: &RingExtension, ts: &TensorSquare) -> TRing {
    let d = ts.dim();
    let mut rows = Vec::new();
    for b in ext.b_basis() {
        let cols: Vec<SparseVec> = (0..d)
            .map(|q| {
                let lift = ts.lift(&SparseVec::unit(q, ts.field()));
                ts.project(&ts.left_ambient(b, &lift).sub(&ts.right_ambient(&lift, b)))
            })
            .collect();
        rows.extend(transpose_columns(&cols, d).into_iter().filter(|r| !r.is_zero()));
    }
    TRing { space: kernel_of_rows(ts.field(), d, rows) }
}

impl TRing {
    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    /// Basis in quotient coordinates of `A⊗_B A`.
    pub fn basis(&self) -> &[SparseVec] {
        &self.space.basis
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Coordinates in the `T` basis of a quotient element, if it is `B`-central.
    pub fn coords(&self, q: &SparseVec) -> Option<Vec<Scalar>> {
        self.space.coords(q)
    }

    pub fn coords_sparse(&self, q: &SparseVec) -> Option<SparseVec> {
        self.coords(q).map(|c| SparseVec::from_dense(&c))
    }

    /// Quotient element with the given `T` coordinates.
    pub fn element(&self, coords: &SparseVec) -> SparseVec {
        let dense = coords.to_dense(self.dim(), self.space.field);
        self.space.element(&dense)
    }

    /// Product of two quotient elements of `T`.
    pub fn mul(&self, ts: &TensorSquare, x: &SparseVec, y: &SparseVec, order: TMultiplication) -> SparseVec {
        let a = ts.algebra();
        let n = ts.n();
        let (lx, ly) = (ts.lift(x), ts.lift(y));
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (ix, c) in lx.iter() {
            let (i, j) = (ix / n, ix % n);
            for (iy, d) in ly.iter() {
                let (k, l) = (iy / n, iy % n);
                let (first, second) = match order {
                    TMultiplication::Composition => (a.basis_product(k, i), a.basis_product(j, l)),
                    TMultiplication::Flipped => (a.basis_product(i, k), a.basis_product(l, j)),
                };
                let cd = c * d;
                for (idx, v) in tensor(first, second, n).iter() {
                    sparse_accumulate(&mut acc, *idx, &(&cd * v));
                }
            }
        }
        ts.project(&SparseVec::from_entries(acc))
    }

    /// `T` as an algebra on its basis.
    pub fn algebra(&self, ts: &TensorSquare, order: TMultiplication) -> Algebra {
        let d = self.dim();
        let field = ts.field();
        let mut mult = Vec::with_capacity(d * d);
        for x in self.basis() {
            for y in self.basis() {
                let p = self.mul(ts, x, y, order);
                mult.push(self.coords_sparse(&p).expect("T is closed under multiplication"));
            }
        }
        let unit = self.coords(&ts.one()).expect("1⊗1 is B-central");
        let names = self
            .basis()
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let s = ts.describe(t);
                if s.chars().count() <= 32 {
                    s
                } else {
                    format!("t{i}")
                }
            })
            .collect();
        Algebra::from_table(field, names, mult, unit)
    }
}

/// `End_B A_B` as a subspace of flat `n×n` matrices.
#[derive(Clone, Debug)]
pub struct SRing {
    n: usize,
    space: Subspace,
}

pub fn compute_s(ext: &RingExtension) -> SRing {
    let mut mats: Vec<SparseVec> = ext.lambda_b().iter().map(endo_from_matrix).collect();
    mats.extend(ext.rho_b().iter().map(endo_from_matrix));
    SRing { n: ext.n(), space: commutant(ext.field(), ext.n(), &mats) }
}

impl SRing {
    pub fn dim(&self) -> usize {
        self.space.rank()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.space.field
    }

    /// Basis as flat matrices.
    pub fn basis(&self) -> &[SparseVec] {
        &self.space.basis
    }

    pub fn coords(&self, alpha: &SparseVec) -> Option<Vec<Scalar>> {
        self.space.coords(alpha)
    }

    pub fn coords_sparse(&self, alpha: &SparseVec) -> Option<SparseVec> {
        self.coords(alpha).map(|c| SparseVec::from_dense(&c))
    }

    pub fn element(&self, coords: &SparseVec) -> SparseVec {
        self.space.element(&coords.to_dense(self.dim(), self.field()))
    }

    pub fn apply(&self, alpha: &SparseVec, x: &SparseVec) -> SparseVec {
        apply_endo(alpha, x, self.n)
    }

    /// `S` as an algebra under composition.
    pub fn algebra(&self, ext: &RingExtension) -> Algebra {
        let d = self.dim();
        let mut mult = Vec::with_capacity(d * d);
        for x in self.basis() {
            for y in self.basis() {
                mult.push(self.coords_sparse(&compose_endo(x, y, self.n)).expect("S is closed under composition"));
            }
        }
        let id = SparseVec::from_entries((0..self.n).map(|i| (i * self.n + i, self.field().one())));
        let unit = self.coords(&id).expect("identity is a bimodule map");
        let a = ext.a();
        let names = self
            .basis()
            .iter()
            .enumerate()
            .map(|(i, alpha)| {
                // name a map by its value at 1 when that is short, otherwise by index
                let at_one = a.describe(&apply_endo(alpha, &SparseVec::from_dense(a.unit()), self.n).to_dense(self.n, self.field()));
                if at_one.chars().count() <= 16 {
                    format!("s{i}[1↦{at_one}]")
                } else {
                    format!("s{i}")
                }
            })
            .collect();
        Algebra::from_table(self.field(), names, mult, unit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, quadratic};

    #[test]
    fn trivial_b_gives_everything() {
        let q = Field::Rational;
        let ext = RingExtension::over_scalars(matrix_algebra(q, 2));
        let ts = TensorSquare::new(&ext);
        assert_eq!(compute_t(&ext, &ts).dim(), 16);
        assert_eq!(compute_s(&ext).dim(), 16);
        assert_eq!(compute_s(&RingExtension::over_scalars(quadratic(q, 2))).dim(), 4);
    }

    #[test]
    fn improper_extension_gives_center() {
        let q = Field::Rational;
        let ext = RingExtension::improper(matrix_algebra(q, 2));
        let ts = TensorSquare::new(&ext);
        assert_eq!(compute_t(&ext, &ts).dim(), 1);
        let comm = RingExtension::improper(quadratic(q, 3));
        assert_eq!(compute_s(&comm).dim(), 2);
    }

    #[test]
    fn rings_are_algebras() {
        let q = Field::Rational;
        let ext = RingExtension::over_scalars(quadratic(q, 2));
        let ts = TensorSquare::new(&ext);
        let t = compute_t(&ext, &ts);
        t.algebra(&ts, TMultiplication::Composition).verify().unwrap();
        t.algebra(&ts, TMultiplication::Flipped).verify().unwrap();
        compute_s(&ext).algebra(&ext).verify().unwrap();
    }
}
