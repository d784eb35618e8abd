use crate::algebra::Algebra;
use crate::linalg::{kernel_of_rows, tensor, transpose_columns, Echelon, Field, Quotient, SparseVec};

const ALT_SAMPLES: usize = 8;

/// `M ⊗_R N` for a right `R`-module `M` and a left `R`-module `N`.
///
/// Vectors outside the quotient live in `M⊗_k N` (index `i*dim N + j`).
/// Internally the quotient is either presented directly by all relations
/// `m·r ⊗ n − m ⊗ r·n`, or, when both actions are verified module actions of a
/// known base algebra, as `M^g` modulo `M ⊗ K` where `g` generators of `N` have
/// syzygy module `K`.
#[derive(Clone, Debug)]
pub struct BalancedTensor {
    left_dim: usize,
    right_dim: usize,
    repr: Repr,
    samples: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
enum Repr {
    Relations(Quotient),
    Generated {
        /// basis indices of `N` generating it over `R`
        gens: Vec<usize>,
        /// `n_j = Σ c·r_k·n_{gens[l]}` as `(k, l, c)`
        expand: Vec<Vec<(usize, usize, crate::linalg::Scalar)>>,
        /// `m_i·r_k`
        mr: Vec<Vec<SparseVec>>,
        /// quotient of `M^g` (index `p*g + l`)
        quotient: Quotient,
    },
}

fn naive_relation(mr: &[Vec<SparseVec>], rn: &[Vec<SparseVec>], i: usize, k: usize, j: usize, right_dim: usize, field: Field) -> SparseVec {
    tensor(&mr[i][k], &SparseVec::unit(j, field), right_dim).sub(&tensor(&SparseVec::unit(i, field), &rn[k][j], right_dim))
}

fn tables(
    left_dim: usize,
    right_dim: usize,
    r_dim: usize,
    act_right: impl Fn(usize, usize) -> SparseVec,
    act_left: impl Fn(usize, usize) -> SparseVec,
) -> (Vec<Vec<SparseVec>>, Vec<Vec<SparseVec>>) {
    let mr = (0..left_dim).map(|i| (0..r_dim).map(|k| act_right(i, k)).collect()).collect();
    let rn = (0..r_dim).map(|k| (0..right_dim).map(|j| act_left(k, j)).collect()).collect();
    (mr, rn)
}

/// A few nonzero relation vectors, spread over the index range.
fn samples(mr: &[Vec<SparseVec>], rn: &[Vec<SparseVec>], right_dim: usize, field: Field) -> Vec<SparseVec> {
    let (left_dim, r_dim) = (mr.len(), rn.len());
    let mut out = Vec::new();
    let total = left_dim * r_dim * right_dim;
    let step = (total / (4 * ALT_SAMPLES)).max(1);
    let mut idx = total;
    while idx >= step && out.len() < ALT_SAMPLES {
        idx -= step;
        let (i, k, j) = (idx / (r_dim * right_dim), (idx / right_dim) % r_dim, idx % right_dim);
        let rel = naive_relation(mr, rn, i, k, j, right_dim, field);
        if !rel.is_zero() {
            out.push(rel);
        }
    }
    out
}

/// Basis indices of `base` whose words span it.
fn algebra_generators(base: &Algebra) -> Vec<usize> {
    let f = base.field();
    let d = base.dim();
    let mut span = Echelon::new(f, d);
    let mut members = vec![SparseVec::from_dense(base.unit())];
    span.insert(&members[0]);
    let mut gens = Vec::new();
    for g in 0..d {
        if span.is_full() {
            break;
        }
        let gv = SparseVec::unit(g, f);
        if span.contains(&gv) {
            continue;
        }
        gens.push(g);
        // close the span under right multiplication by all generators so far
        let mut frontier: Vec<SparseVec> = members.clone();
        while let Some(x) = frontier.pop() {
            for &h in &gens {
                let y = base.mul_sparse(&x, &SparseVec::unit(h, f));
                if span.insert(&y) {
                    members.push(y.clone());
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn combine(table: &[SparseVec], coords: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, c) in coords.iter() {
        out = out.axpy(c, &table[*i]);
    }
    out
}

/// Whether `mr` and `rn` are unital module actions of `base`. Multiplicativity is
/// checked against algebra generators only, which suffices by induction on word length.
fn are_modules(base: &Algebra, mr: &[Vec<SparseVec>], rn: &[Vec<SparseVec>]) -> bool {
    let f = base.field();
    let unit = SparseVec::from_dense(base.unit());
    let gens = algebra_generators(base);
    let r_dim = base.dim();
    // right action of r on m_i, and left action of r on n_j
    let right = |x: &SparseVec, r: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in x.iter() {
            out = out.axpy(c, &combine(&mr[*i], r));
        }
        out
    };
    let left = |r: &SparseVec, j: usize| -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in r.iter() {
            out = out.axpy(c, &rn[*k][j]);
        }
        out
    };
    let left_vec = |r: &SparseVec, x: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in x.iter() {
            out = out.axpy(c, &left(r, *j));
        }
        out
    };
    for (i, row) in mr.iter().enumerate() {
        if combine(row, &unit) != SparseVec::unit(i, f) {
            return false;
        }
        for k in 0..r_dim {
            for &g in &gens {
                // (m·r_k)·r_g = m·(r_k r_g)
                if right(&row[k].clone(), &SparseVec::unit(g, f)) != combine(row, base.basis_product(k, g)) {
                    return false;
                }
            }
        }
    }
    for j in 0..rn.first().map_or(0, Vec::len) {
        if left(&unit, j) != SparseVec::unit(j, f) {
            return false;
        }
        for k in 0..r_dim {
            for &g in &gens {
                // r_g·(r_k·n) = (r_g r_k)·n
                if left_vec(&SparseVec::unit(g, f), &rn[k][j]) != left(base.basis_product(g, k), j) {
                    return false;
                }
            }
        }
    }
    true
}

impl BalancedTensor {
    /// Presents the quotient by every relation. `act_right(i, k)` is `m_i · r_k`
    /// and `act_left(k, j)` is `r_k · n_j`; neither needs to be a module action.
    pub fn new(
        field: Field,
        left_dim: usize,
        right_dim: usize,
        r_dim: usize,
        act_right: impl Fn(usize, usize) -> SparseVec,
        act_left: impl Fn(usize, usize) -> SparseVec,
    ) -> BalancedTensor {
        let (mr, rn) = tables(left_dim, right_dim, r_dim, act_right, act_left);
        Self::by_relations(field, left_dim, right_dim, &mr, &rn)
    }

    fn by_relations(field: Field, left_dim: usize, right_dim: usize, mr: &[Vec<SparseVec>], rn: &[Vec<SparseVec>]) -> BalancedTensor {
        let mut rels = Vec::new();
        for i in 0..left_dim {
            for k in 0..rn.len() {
                for j in 0..right_dim {
                    let rel = naive_relation(mr, rn, i, k, j, right_dim, field);
                    if !rel.is_zero() {
                        rels.push(rel);
                    }
                }
            }
        }
        BalancedTensor {
            left_dim,
            right_dim,
            repr: Repr::Relations(Quotient::new(field, left_dim * right_dim, rels)),
            samples: samples(mr, rn, right_dim, field),
        }
    }

    /// Like [`BalancedTensor::new`] with the actions coming from `base`. When both
    /// are genuine unital module actions the smaller generator presentation is used.
    pub fn over(
        base: &Algebra,
        left_dim: usize,
        right_dim: usize,
        act_right: impl Fn(usize, usize) -> SparseVec,
        act_left: impl Fn(usize, usize) -> SparseVec,
    ) -> BalancedTensor {
        let field = base.field();
        let r_dim = base.dim();
        let (mr, rn) = tables(left_dim, right_dim, r_dim, act_right, act_left);
        if !are_modules(base, &mr, &rn) {
            return Self::by_relations(field, left_dim, right_dim, &mr, &rn);
        }
        // generators of N, with every basis vector expressed through r_k·g_l
        let mut ech = Echelon::tracking(field, right_dim);
        let mut labels: Vec<(usize, usize)> = Vec::new();
        let mut gens: Vec<usize> = Vec::new();
        for j in 0..right_dim {
            if ech.is_full() {
                break;
            }
            if ech.contains(&SparseVec::unit(j, field)) {
                continue;
            }
            let l = gens.len();
            gens.push(j);
            for (k, row) in rn.iter().enumerate() {
                labels.push((k, l));
                ech.insert(&row[j]);
            }
        }
        let g = gens.len();
        let expand = (0..right_dim)
            .map(|j| {
                let c = ech.express(&SparseVec::unit(j, field)).expect("generators span N");
                c.iter().map(|(lab, x)| (labels[*lab].0, labels[*lab].1, x.clone())).collect()
            })
            .collect();
        // syzygies: Σ κ_{kl} r_k·g_l = 0, coordinates at index k*g + l
        let cols: Vec<SparseVec> = (0..r_dim * g).map(|idx| rn[idx / g][gens[idx % g]].clone()).collect();
        let syz = kernel_of_rows(field, r_dim * g, transpose_columns(&cols, right_dim));
        let mut rels = Vec::new();
        for row in &mr {
            for kappa in &syz.basis {
                let mut terms = Vec::new();
                for (idx, c) in kappa.iter() {
                    let (k, l) = (idx / g, idx % g);
                    terms.extend(row[k].iter().map(|(p, x)| (p * g + l, c * x)));
                }
                let rel = SparseVec::from_entries(terms);
                if !rel.is_zero() {
                    rels.push(rel);
                }
            }
        }
        let quotient = Quotient::new(field, left_dim * g, rels);
        BalancedTensor {
            left_dim,
            right_dim,
            samples: samples(&mr, &rn, right_dim, field),
            repr: Repr::Generated { gens, expand, mr, quotient },
        }
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Relations(q) => q.dim(),
            Repr::Generated { quotient, .. } => quotient.dim(),
        }
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    /// Whether the generator presentation is in use.
    pub fn is_generated(&self) -> bool {
        matches!(self.repr, Repr::Generated { .. })
    }

    pub fn pure(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        tensor(x, y, self.right_dim)
    }

    /// Quotient coordinates of an element of `M⊗_k N`.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        match &self.repr {
            Repr::Relations(q) => q.project_sparse(v),
            Repr::Generated { gens, expand, mr, quotient } => {
                let g = gens.len();
                let mut terms = Vec::new();
                for (idx, c) in v.iter() {
                    let (i, j) = self.split(*idx);
                    for (k, l, w) in &expand[j] {
                        let cw = c * w;
                        terms.extend(mr[i][*k].iter().map(|(p, x)| (p * g + l, &cw * x)));
                    }
                }
                quotient.project_sparse(&SparseVec::from_entries(terms))
            }
        }
    }

    /// A representative in `M⊗_k N`.
    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        match &self.repr {
            Repr::Relations(quot) => quot.lift(q),
            Repr::Generated { gens, quotient, .. } => {
                let g = gens.len();
                quotient.lift(q).reindex(|idx| (idx / g) * self.right_dim + gens[idx % g])
            }
        }
    }

    /// A second representative, differing from [`BalancedTensor::lift`] by one relation
    /// picked and scaled by the leading coordinate.
    pub fn alt_lift(&self, q: &SparseVec) -> SparseVec {
        let out = self.lift(q);
        match q.leading() {
            Some((i, x)) if !self.samples.is_empty() => out.axpy(x, &self.samples[i % self.samples.len()]),
            _ => out,
        }
    }

    /// Splits an ambient index into its two factor indices.
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.right_dim, idx % self.right_dim)
    }

    /// Applies linear maps factor-wise to an ambient vector; `f` and `g` act on basis indices.
    pub fn map_ambient(&self, v: &SparseVec, f: impl Fn(usize) -> SparseVec, g: impl Fn(usize) -> SparseVec, out_right_dim: usize) -> SparseVec {
        let mut terms = Vec::new();
        for (idx, c) in v.iter() {
            let (i, j) = self.split(*idx);
            for (k, x) in tensor(&f(i), &g(j), out_right_dim).iter() {
                terms.push((*k, c * x));
            }
        }
        SparseVec::from_entries(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, truncated_polynomial};

    #[test]
    fn tensor_over_field_is_plain() {
        let q = Field::Rational;
        let bt = BalancedTensor::new(q, 2, 3, 1, |i, _| SparseVec::unit(i, q), |_, j| SparseVec::unit(j, q));
        assert_eq!(bt.dim(), 6);
    }

    #[test]
    fn tensor_over_itself_collapses() {
        // k×k ⊗_{k×k} k×k ≅ k×k, idempotent basis
        let q = Field::Rational;
        let mul = |i: usize, j: usize| if i == j { SparseVec::unit(i, q) } else { SparseVec::new() };
        let bt = BalancedTensor::new(q, 2, 2, 2, mul, mul);
        assert_eq!(bt.dim(), 2);
    }

    /// Both presentations must agree on dimension and kill the same vectors.
    fn compare(base: &Algebra) {
        let f = base.field();
        let d = base.dim();
        let act = |i: usize, k: usize| base.mul_sparse(&SparseVec::unit(i, f), &SparseVec::unit(k, f));
        let naive = BalancedTensor::new(f, d, d, d, act, act);
        let fast = BalancedTensor::over(base, d, d, act, act);
        assert!(fast.is_generated());
        assert_eq!(naive.dim(), fast.dim());
        for i in 0..d * d {
            let e = SparseVec::unit(i, f);
            // e − lift(project(e)) is a relation in both
            assert!(naive.project(&e.sub(&fast.lift(&fast.project(&e)))).is_zero());
            assert!(fast.project(&e.sub(&naive.lift(&naive.project(&e)))).is_zero());
            assert_eq!(fast.project(&fast.alt_lift(&fast.project(&e))), fast.project(&e));
        }
    }

    #[test]
    fn generator_presentation_matches_relations() {
        let q = Field::Rational;
        compare(&truncated_polynomial(q, 3));
        compare(&matrix_algebra(q, 2));
    }

    #[test]
    fn non_module_falls_back() {
        let q = Field::Rational;
        let base = truncated_polynomial(q, 2);
        // x acting as the identity is not a module action of k[x]/(x²)
        let bt = BalancedTensor::over(&base, 2, 2, |i, _| SparseVec::unit(i, q), |_, j| SparseVec::unit(j, q));
        assert!(!bt.is_generated());
    }
}
