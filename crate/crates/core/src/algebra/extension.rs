use crate::linalg::{kernel_of_rows, Field, Matrix, Scalar, SparseVec, Subspace};

use super::group::PermGroup;
use super::structure::Algebra;
use super::AlgebraError;

/// A unital subalgebra `B ⊆ A` together with the centralizer `R = C_A(B)`.
///
/// Both `B` and `R` are stored as subspaces of `A` in reduced echelon form,
/// so coordinates of an element with respect to their bases are read off at
/// the key columns.
#[derive(Clone, Debug)]
pub struct RingExtension {
    a: Algebra,
    b: Subspace,
    r: Subspace,
    b_algebra: Algebra,
    r_algebra: Algebra,
}

impl RingExtension {
    /// Completes the spanning vectors of `B` to a basis and checks that the
    /// span contains `1_A` and is closed under multiplication.
    pub fn new(a: Algebra, spanning: Vec<Vec<Scalar>>) -> Result<RingExtension, AlgebraError> {
        let n = a.dim();
        let field = a.field();
        if let Some((i, v)) = spanning.iter().enumerate().find(|(_, v)| v.len() != n) {
            return Err(AlgebraError::Shape(format!("subalgebra vector {i} has length {}, expected {n}", v.len())));
        }
        let vecs: Vec<SparseVec> = spanning.iter().map(|v| SparseVec::from_dense(v)).collect();
        let b = Subspace::span(field, n, vecs.iter().cloned());
        if !b.contains(&SparseVec::from_dense(a.unit())) {
            return Err(AlgebraError::SubalgebraMissingUnit);
        }
        for (i, x) in vecs.iter().enumerate() {
            for (j, y) in vecs.iter().enumerate() {
                if !b.contains(&a.mul_sparse(x, y)) {
                    return Err(AlgebraError::SubalgebraNotClosed(i, j));
                }
            }
        }
        Ok(RingExtension::assemble(a, b))
    }

    fn assemble(a: Algebra, b: Subspace) -> RingExtension {
        let r = centralizer_of(&a, &b.basis);
        let b_algebra = subalgebra(&a, &b, "b");
        let r_algebra = subalgebra(&a, &r, "r");
        RingExtension { a, b, r, b_algebra, r_algebra }
    }

    /// The extension `A | A`.
    pub fn improper(a: Algebra) -> RingExtension {
        let b = Subspace::full(a.field(), a.dim());
        RingExtension::assemble(a, b)
    }

    /// The extension `A | k·1`.
    pub fn over_scalars(a: Algebra) -> RingExtension {
        let b = Subspace::span(a.field(), a.dim(), [SparseVec::from_dense(a.unit())]);
        RingExtension::assemble(a, b)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.a.dim()
    }

    /// Basis of `B` inside `A`.
    pub fn b_basis(&self) -> &[SparseVec] {
        &self.b.basis
    }

    pub fn b_space(&self) -> &Subspace {
        &self.b
    }

    /// `B` as an algebra in its own right, on the basis [`RingExtension::b_basis`].
    pub fn b_algebra(&self) -> &Algebra {
        &self.b_algebra
    }

    /// Basis of `R = C_A(B)` inside `A`.
    pub fn r_basis(&self) -> &[SparseVec] {
        &self.r.basis
    }

    pub fn r_space(&self) -> &Subspace {
        &self.r
    }

    /// `R` as an algebra on the basis [`RingExtension::r_basis`].
    pub fn r_algebra(&self) -> &Algebra {
        &self.r_algebra
    }

    /// Coordinates of an element of `R` (given in `A`) in the basis of `R`.
    pub fn r_coords(&self, x: &SparseVec) -> Option<Vec<Scalar>> {
        self.r.coords(x)
    }

    /// λ_b for each basis element of `B`.
    pub fn lambda_b(&self) -> Vec<Matrix> {
        self.b.basis.iter().map(|b| self.a.left_mult_matrix(&b.to_dense(self.n(), self.field()))).collect()
    }

    /// ρ_b for each basis element of `B`.
    pub fn rho_b(&self) -> Vec<Matrix> {
        self.b.basis.iter().map(|b| self.a.right_mult_matrix(&b.to_dense(self.n(), self.field()))).collect()
    }

    /// Same extension with `A`'s basis relabelled (see [`Algebra::permute_basis`]).
    pub fn permute_basis(&self, perm: &[usize]) -> RingExtension {
        let mut inv = vec![0; perm.len()];
        for (k, p) in perm.iter().enumerate() {
            inv[*p] = k;
        }
        let a = self.a.permute_basis(perm);
        let b = Subspace::span(self.field(), self.n(), self.b.basis.iter().map(|v| v.reindex(|i| inv[i])));
        RingExtension::assemble(a, b)
    }
}

/// Joint kernel of `x ↦ xb − bx` over the given elements.
pub(crate) fn centralizer_of(a: &Algebra, elements: &[SparseVec]) -> Subspace {
    let n = a.dim();
    let field = a.field();
    let mut rows = Vec::new();
    for b in elements {
        // column i of the commutator map is e_i b − b e_i
        let cols: Vec<SparseVec> = (0..n)
            .map(|i| {
                let e = SparseVec::unit(i, field);
                a.mul_sparse(&e, b).sub(&a.mul_sparse(b, &e))
            })
            .collect();
        let mut by_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (i, c) in cols.iter().enumerate() {
            for (k, x) in c.iter() {
                by_row[*k].push((i, x.clone()));
            }
        }
        rows.extend(by_row.into_iter().filter(|r| !r.is_empty()).map(SparseVec::from_entries));
    }
    kernel_of_rows(field, n, rows)
}

/// The subalgebra spanned by `space`, on its echelon basis.
fn subalgebra(a: &Algebra, space: &Subspace, prefix: &str) -> Algebra {
    let m = space.rank();
    let field = a.field();
    let mut mult = Vec::with_capacity(m * m);
    for x in &space.basis {
        for y in &space.basis {
            let c = space.coords(&a.mul_sparse(x, y)).expect("subspace is closed under multiplication");
            mult.push(SparseVec::from_dense(&c));
        }
    }
    let unit = space.coords(&SparseVec::from_dense(a.unit())).expect("subspace contains the unit");
    let names = space
        .basis
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d = a.describe(&v.to_dense(a.dim(), field));
            if d.len() <= 24 {
                d
            } else {
                format!("{prefix}{i}")
            }
        })
        .collect();
    Algebra::from_table(field, names, mult, unit)
}

/// `k[G] | k[H]` for a subgroup given by element indices of `group`.
pub fn subgroup_extension(group: &PermGroup, subgroup: &[usize], field: Field) -> Result<RingExtension, AlgebraError> {
    if let Some(&bad) = subgroup.iter().find(|&&h| h >= group.order()) {
        return Err(AlgebraError::NotSubgroup(format!("element index {bad} out of range")));
    }
    let closed = group.closure(subgroup);
    if closed.len() != {
        let mut s = subgroup.to_vec();
        s.sort();
        s.dedup();
        if !s.contains(&0) {
            s.push(0);
        }
        s.len()
    } {
        return Err(AlgebraError::NotSubgroup("element list is not closed under composition".into()));
    }
    let a = group.group_algebra(field);
    let b = Subspace::span(field, a.dim(), closed.iter().map(|h| SparseVec::unit(*h, field)));
    Ok(RingExtension::assemble(a, b))
}

impl PermGroup {
    /// Element indices of the subgroup generated by the given permutations.
    pub fn subgroup_from(&self, gens: &[super::Permutation]) -> Result<Vec<usize>, AlgebraError> {
        let idx = gens
            .iter()
            .map(|g| {
                self.index_of(g).ok_or_else(|| AlgebraError::NotSubgroup(format!("{g} is not an element of the group")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.closure(&idx))
    }
}
