//! Sparse vectors and an incremental row-echelon basis.
//!
//! Almost every space in the workbench (tensor squares, balanced tensor
//! products, joint kernels of commutator constraints) is cut out by a large
//! number of very sparse linear relations. [`Echelon`] absorbs them one at a
//! time; the pivot of a row is always its first nonzero column.

use std::collections::BTreeMap;

use super::scalar::{Field, Scalar};

/// Sorted `(index, nonzero value)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    /// Builds from unsorted, possibly repeated entries (summing repeats).
    pub fn from_entries(items: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, x) in items {
            accumulate(&mut acc, i, &x);
        }
        SparseVec { entries: acc.into_iter().collect() }
    }

    pub fn to_dense(&self, dim: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<&(usize, Scalar)> {
        self.entries.first()
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect() }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, x)) => self.axpy(&x.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            None => self.clone(),
            Some((_, x)) => self.axpy(&-x.field().one(), other),
        }
    }

    /// Maps each index through `f` (which must be injective and monotone
    /// for the result to stay sorted; otherwise entries are re-sorted).
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_entries(self.entries.iter().map(|(i, x)| (f(*i), x.clone())))
    }
}

/// Kronecker product of two coordinate vectors, with the second index fastest.
pub fn tensor(x: &SparseVec, y: &SparseVec, dim_y: usize) -> SparseVec {
    let mut out = Vec::with_capacity(x.nnz() * y.nnz());
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            out.push((i * dim_y + j, a * b));
        }
    }
    SparseVec { entries: out }
}

pub(crate) fn accumulate(acc: &mut BTreeMap<usize, Scalar>, i: usize, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    match acc.get_mut(&i) {
        Some(v) => {
            let s = &*v + x;
            if s.is_zero() {
                acc.remove(&i);
            } else {
                *v = s;
            }
        }
        None => {
            acc.insert(i, x.clone());
        }
    }
}

/// Incremental row-echelon basis of a subspace of `field^dim`.
///
/// Every stored row has leading coefficient 1 at its pivot and only larger
/// columns after it. With tracking enabled, each row also records its
/// expression as a combination of the inserted generators.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    combos: Option<Vec<SparseVec>>,
    generators: usize,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Self {
        Echelon { field, dim, rows: Vec::new(), pivot_row: BTreeMap::new(), combos: None, generators: 0 }
    }

    /// Like [`Echelon::new`] but remembers how each row arose from the inserted vectors.
    pub fn tracking(field: Field, dim: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Echelon::new(field, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Returns the residual of `v` (zero at every pivot column) and, when
    /// tracking, the combination of generators that was subtracted.
    fn reduce_inner(&self, v: &SparseVec, track: bool) -> (SparseVec, Option<BTreeMap<usize, Scalar>>) {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut used: Option<BTreeMap<usize, Scalar>> = if track { Some(BTreeMap::new()) } else { None };
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let r = self.pivot_row[&col];
            for (c, x) in self.rows[r].iter() {
                accumulate(&mut work, *c, &-(&coef * x));
            }
            if let (Some(used), Some(combos)) = (used.as_mut(), self.combos.as_ref()) {
                for (g, x) in combos[r].iter() {
                    accumulate(used, *g, &(&coef * x));
                }
            }
            cursor = col + 1;
        }
        (SparseVec { entries: work.into_iter().collect() }, used)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_inner(v, false).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a generator. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let gen = self.generators;
        self.generators += 1;
        let tracking = self.combos.is_some();
        let (res, used) = self.reduce_inner(v, tracking);
        let Some((pivot, lead)) = res.leading().cloned() else { return false };
        let inv = lead.inv().expect("leading entry is nonzero");
        let row = res.scale(&inv);
        if let Some(combos) = self.combos.as_mut() {
            // row = (v - Σ used_g g) / lead
            let mut combo: BTreeMap<usize, Scalar> = BTreeMap::new();
            combo.insert(gen, self.field.one());
            for (g, x) in used.unwrap_or_default() {
                accumulate(&mut combo, g, &-x);
            }
            combos.push(SparseVec { entries: combo.into_iter().collect() }.scale(&inv));
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Coefficients `c_g` over the inserted generators with `Σ c_g v_g = v`,
    /// or `None` when `v` is outside the span. Requires tracking.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.combos.is_some(), "express() needs a tracking echelon");
        let (res, used) = self.reduce_inner(v, true);
        if !res.is_zero() {
            return None;
        }
        Some(SparseVec { entries: used.unwrap_or_default().into_iter().collect() })
    }

    /// Fully reduced row echelon form: every pivot column is zero outside its own row.
    pub fn into_rref(self) -> Rref {
        let mut order: Vec<(usize, usize)> = self.pivot_row.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort();
        let mut rows: Vec<SparseVec> = order.iter().map(|(_, r)| self.rows[*r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|(c, _)| *c).collect();
        let index: BTreeMap<usize, usize> = pivots.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        // bottom-up: rows with larger pivots are already reduced when used
        for k in (0..rows.len()).rev() {
            loop {
                let hit = rows[k]
                    .iter()
                    .skip(1)
                    .find(|(c, _)| index.contains_key(c))
                    .map(|(c, x)| (*c, x.clone()));
                let Some((c, x)) = hit else { break };
                let other = rows[index[&c]].clone();
                rows[k] = rows[k].axpy(&-x, &other);
            }
        }
        Rref { field: self.field, dim: self.dim, rows, pivots }
    }
}

/// Reduced row echelon form with pivots in increasing order.
#[derive(Clone, Debug)]
pub struct Rref {
    pub field: Field,
    pub dim: usize,
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.dim];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.dim).filter(|c| !is_pivot[*c]).collect()
    }

    /// Basis of `{x : row·x = 0 for every row}`; vector `k` has a 1 at the
    /// `k`-th free column and zeros at all other free columns.
    pub fn kernel(&self) -> Subspace {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.dim];
        for (k, f) in free.iter().enumerate() {
            slot[*f] = k;
        }
        let mut vecs: Vec<Vec<(usize, Scalar)>> = free.iter().map(|f| vec![(*f, self.field.one())]).collect();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row.iter() {
                if *c != *p {
                    vecs[slot[*c]].push((*p, -x));
                }
            }
        }
        let basis = vecs.into_iter().map(SparseVec::from_entries).collect();
        Subspace { field: self.field, dim: self.dim, basis, key_cols: free }
    }
}

/// Joint kernel of a family of linear constraints on `field^dim`.
pub fn kernel_of_rows(field: Field, dim: usize, rows: impl IntoIterator<Item = SparseVec>) -> Subspace {
    let mut ech = Echelon::new(field, dim);
    for r in rows {
        if ech.is_full() {
            break;
        }
        ech.insert(&r);
    }
    ech.into_rref().kernel()
}

/// A subspace with a basis in which coordinates can be read off directly:
/// `basis[k][key_cols[j]] = δ_kj`.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<SparseVec>,
    pub key_cols: Vec<usize>,
}

impl Subspace {
    /// Span of arbitrary vectors, with its reduced-echelon basis.
    pub fn span(field: Field, dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut ech = Echelon::new(field, dim);
        for v in vectors {
            ech.insert(&v);
        }
        let rref = ech.into_rref();
        Subspace { field, dim, basis: rref.rows, key_cols: rref.pivots }
    }

    pub fn full(field: Field, dim: usize) -> Subspace {
        Subspace {
            field,
            dim,
            basis: (0..dim).map(|i| SparseVec::unit(i, field)).collect(),
            key_cols: (0..dim).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Linear combination of the basis.
    pub fn element(&self, coords: &[Scalar]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (i, x) in b.iter() {
                accumulate(&mut acc, *i, &(c * x));
            }
        }
        SparseVec { entries: acc.into_iter().collect() }
    }

    /// Coordinates of `v`, or `None` when `v` lies outside the subspace.
    pub fn coords(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.key_cols.iter().map(|k| v.get(*k).cloned().unwrap_or_else(|| self.field.zero())).collect();
        (self.element(&c) == *v).then_some(c)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coords(v).is_some()
    }

    /// Subspace equality by mutual containment.
    pub fn same_as(&self, other: &Subspace) -> bool {
        self.rank() == other.rank() && other.basis.iter().all(|b| self.contains(b))
    }

    pub fn contains_all(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// `field^dim` modulo a relation subspace, with the section that sends
/// quotient coordinate `i` to the standard vector of the `i`-th non-pivot column.
#[derive(Clone, Debug)]
pub struct Quotient {
    relations: Echelon,
    free: Vec<usize>,
    slot: Vec<Option<usize>>,
    samples: Vec<SparseVec>,
}

impl Quotient {
    pub fn new(field: Field, ambient: usize, relations: impl IntoIterator<Item = SparseVec>) -> Quotient {
        let mut ech = Echelon::new(field, ambient);
        let mut samples = Vec::new();
        for r in relations {
            if ech.is_full() {
                break;
            }
            if !r.is_zero() && samples.len() < 8 {
                samples.push(r.clone());
            }
            ech.insert(&r);
        }
        let mut slot = vec![None; ambient];
        let mut free = Vec::new();
        for c in 0..ambient {
            if !ech.is_pivot(c) {
                slot[c] = Some(free.len());
                free.push(c);
            }
        }
        Quotient { relations: ech, free, slot, samples }
    }

    pub fn field(&self) -> Field {
        self.relations.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.dim()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.relations.rank()
    }

    /// π: ambient → quotient coordinates (sparse).
    pub fn project_sparse(&self, v: &SparseVec) -> SparseVec {
        let res = self.relations.reduce(v);
        SparseVec::from_entries(res.iter().map(|(c, x)| (self.slot[*c].expect("residual off pivots"), x.clone())))
    }

    pub fn project(&self, v: &SparseVec) -> Vec<Scalar> {
        self.project_sparse(v).to_dense(self.dim(), self.field())
    }

    pub fn is_relation(&self, v: &SparseVec) -> bool {
        self.relations.contains(v)
    }

    /// σ on a basis vector of the quotient.
    pub fn section(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.free[i], self.field())
    }

    /// σ on a coordinate vector.
    pub fn lift(&self, coords: &SparseVec) -> SparseVec {
        coords.reindex(|i| self.free[i])
    }

    /// A second section differing from [`Quotient::lift`] by relation vectors,
    /// used to check that constructions do not depend on the representative.
    pub fn alt_lift(&self, coords: &SparseVec) -> SparseVec {
        let mut out = self.lift(coords);
        if self.samples.is_empty() {
            return out;
        }
        for (i, x) in coords.iter() {
            out = out.axpy(x, &self.samples[i % self.samples.len()]);
        }
        out
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }
}

/// Rows of the matrix whose columns are given (`cols[j][i]` becomes `rows[i][j]`).
pub fn transpose_columns(cols: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter() {
            rows[*i].push((j, x.clone()));
        }
    }
    rows.into_iter().map(|r| SparseVec { entries: r }).collect()
}

/// One solution of the sparse system `row_k · x = rhs_k` (free variables set
/// to zero), or `None` when the system is inconsistent.
pub fn solve_sparse(field: Field, nvars: usize, equations: impl IntoIterator<Item = (SparseVec, Scalar)>) -> Option<SparseVec> {
    let mut ech = Echelon::new(field, nvars + 1);
    for (row, rhs) in equations {
        let mut entries = row.entries;
        if !rhs.is_zero() {
            entries.push((nvars, rhs));
        }
        ech.insert(&SparseVec { entries });
    }
    if ech.is_pivot(nvars) {
        return None;
    }
    let rref = ech.into_rref();
    Some(SparseVec::from_entries(
        rref.rows.iter().zip(&rref.pivots).filter_map(|(r, p)| r.get(nvars).map(|x| (*p, x.clone()))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn sv(v: &[i64]) -> SparseVec {
        SparseVec::from_dense(&v.iter().map(|x| q().from_i64(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn axpy_cancels() {
        let a = sv(&[1, 2, 0, 3]);
        let b = sv(&[0, 1, 5, 1]);
        let c = a.axpy(&q().from_i64(-2), &b);
        assert_eq!(c, sv(&[1, 0, -10, 1]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::tracking(q(), 3);
        assert!(e.insert(&sv(&[1, 1, 0])));
        assert!(e.insert(&sv(&[0, 1, 1])));
        assert!(!e.insert(&sv(&[1, 2, 1])));
        assert_eq!(e.rank(), 2);
        let target = sv(&[2, 5, 3]);
        let c = e.express(&target).unwrap();
        let rebuilt = sv(&[1, 1, 0]).scale(c.get(0).unwrap_or(&q().zero()))
            .add(&sv(&[0, 1, 1]).scale(c.get(1).unwrap_or(&q().zero())))
            .add(&sv(&[1, 2, 1]).scale(c.get(2).unwrap_or(&q().zero())));
        assert_eq!(rebuilt, target);
        assert!(e.express(&sv(&[1, 0, 0])).is_none());
    }

    #[test]
    fn kernel_has_identity_on_free_columns() {
        let k = kernel_of_rows(q(), 4, vec![sv(&[1, 1, 0, 0]), sv(&[0, 0, 1, -1])]);
        assert_eq!(k.rank(), 2);
        assert_eq!(k.key_cols, vec![1, 3]);
        let v = sv(&[-3, 3, 7, 7]);
        assert_eq!(k.coords(&v).unwrap(), vec![q().from_i64(3), q().from_i64(7)]);
        assert!(k.coords(&sv(&[1, 0, 0, 0])).is_none());
    }

    #[test]
    fn quotient_sections_split_projection() {
        let quo = Quotient::new(q(), 3, vec![sv(&[1, -1, 0])]);
        assert_eq!(quo.dim(), 2);
        for i in 0..quo.dim() {
            let e = SparseVec::unit(i, q());
            assert_eq!(quo.project_sparse(&quo.lift(&e)), e);
            assert_eq!(quo.project_sparse(&quo.alt_lift(&e)), e);
        }
        assert_eq!(quo.project(&sv(&[1, 0, 0])), quo.project(&sv(&[0, 1, 0])));
    }

    #[test]
    fn sparse_solver() {
        // x + y = 3, y - z = 1
        let eqs = vec![(sv(&[1, 1, 0]), q().from_i64(3)), (sv(&[0, 1, -1]), q().from_i64(1))];
        let x = solve_sparse(q(), 3, eqs.clone()).unwrap();
        for (row, rhs) in &eqs {
            let lhs = row.iter().fold(q().zero(), |acc, (i, c)| acc + c * &x.get(*i).cloned().unwrap_or_else(|| q().zero()));
            assert_eq!(&lhs, rhs);
        }
        assert!(solve_sparse(q(), 1, vec![(sv(&[1]), q().one()), (sv(&[2]), q().one())]).is_none());
    }
}
