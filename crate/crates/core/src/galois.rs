//! The `T`-coaction on `A`, its comodule-algebra laws, coinvariants, the
//! Galois map `β: A⊗_B A → A⊗_R T` with inverse candidate `θ`, the `S`-action
//! invariants, and the end-to-end characterization.

use serde::Serialize;

use crate::algebra::RingExtension;
use crate::bialgebroid::{build_t_bialgebroid, AxiomCheck, Bialgebroid, BuildError};
use crate::bimodule::{
    apply_endo, balanced, compute_s, compute_t, frobenius, BalancedResult, BalancedTensor, FrobeniusOutcome, SRing, TMultiplication,
    TRing, TensorSquare,
};
use crate::depth_two::{is_d2, D2Result, Quasibase, Side};
use crate::linalg::{kernel_of_rows, tensor, transpose_columns, Echelon, Matrix, Scalar, SparseVec, Subspace};

/// `A ⊗_R T` with `A` a right `R`-module by multiplication and `T` a left one via `t̃`.
pub fn a_tensor_r_t(ext: &RingExtension, tb: &Bialgebroid) -> BalancedTensor {
    let f = ext.field();
    let a = ext.a();
    let r = ext.r_basis();
    BalancedTensor::over(
        ext.r_algebra(),
        ext.n(),
        tb.dim(),
        |i, k| a.mul_sparse(&SparseVec::unit(i, f), &r[k]),
        |k, j| tb.act_left(&SparseVec::unit(k, f), &SparseVec::unit(j, f)),
    )
}

/// `δ(a) = Σ_j γ_j(a) ⊗ u_j`, stored as representatives in `A⊗_k T` per basis element of `A`.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub art: BalancedTensor,
    pub delta: Vec<SparseVec>,
}

impl Coaction {
    pub fn ambient(&self, a: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in a.iter() {
            out = out.axpy(c, &self.delta[*i]);
        }
        out
    }

    /// `δ(a)` in quotient coordinates of `A⊗_R T`.
    pub fn apply(&self, a: &SparseVec) -> SparseVec {
        self.art.project(&self.ambient(a))
    }
}

pub fn coaction(ext: &RingExtension, t: &TRing, tb: &Bialgebroid, qb: &Quasibase) -> Result<Coaction, BuildError> {
    if qb.side != Side::Right {
        return Err(BuildError::WrongSide(qb.side, Side::Right));
    }
    let n = ext.n();
    let f = ext.field();
    let d = tb.dim();
    let u: Vec<SparseVec> = qb
        .pairs
        .iter()
        .map(|(_, u)| t.coords_sparse(u).ok_or_else(|| BuildError::OutOfSpace("quasibase element u_j".into())))
        .collect::<Result<_, _>>()?;
    let delta = (0..n)
        .map(|i| {
            let e = SparseVec::unit(i, f);
            let mut v = SparseVec::new();
            for ((gamma, _), uj) in qb.pairs.iter().zip(&u) {
                v = v.add(&tensor(&apply_endo(gamma, &e, n), uj, d));
            }
            v
        })
        .collect();
    Ok(Coaction { art: a_tensor_r_t(ext, tb), delta })
}

fn r_element(ext: &RingExtension, coords: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, c) in coords.iter() {
        out = out.axpy(c, &ext.r_basis()[*k]);
    }
    out
}

fn first_failure(n: usize, mut bad: impl FnMut(usize) -> Option<String>) -> Result<(), String> {
    (0..n).find_map(&mut bad).map_or(Ok(()), Err)
}

/// The comodule-algebra laws for `δ`, in a fixed order. Multiplicativity is gated on r-compatibility.
pub fn verify_comodule_algebra(ext: &RingExtension, tb: &Bialgebroid, co: &Coaction) -> Vec<AxiomCheck> {
    let n = ext.n();
    let f = ext.field();
    let a = ext.a();
    let d = tb.dim();
    let rd = ext.r_basis().len();
    let art = &co.art;
    let e = |i: usize| SparseVec::unit(i, f);
    let name = |i: usize| a.basis_names()[i].clone();
    let one_t = tb.one();
    // two sections of A⊗_k T → A⊗_R T, applied to δ(e_x)
    let projected: Vec<SparseVec> = co.delta.iter().map(|v| art.project(v)).collect();
    let reps: [Vec<SparseVec>; 2] = [projected.iter().map(|q| art.lift(q)).collect(), projected.iter().map(|q| art.alt_lift(q)).collect()];
    let mut checks = Vec::new();

    // (A⊗_R T)⊗_R T, with A⊗_R T a right R-module through the source map of T
    let q3 = BalancedTensor::over(
        &tb.base,
        art.dim(),
        d,
        |k, r| {
            let lift = art.lift(&SparseVec::unit(k, f));
            art.project(&art.map_ambient(&lift, e, |j| tb.act_right(&e(j), &e(r)), d))
        },
        |r, j| tb.act_left(&e(r), &e(j)),
    );
    let coassoc = |rep: &SparseVec| -> bool {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        for (idx, c) in rep.iter() {
            let (i, j) = art.split(*idx);
            for (k, w) in co.apply(&e(i)).iter() {
                lhs.push((k * d + j, c * w));
            }
            for (pq, w) in tb.coproduct[j].iter() {
                let (p, q) = (pq / d, pq % d);
                for (k, v) in art.project(&art.pure(&e(i), &e(p))).iter() {
                    rhs.push((k * d + q, &(c * w) * v));
                }
            }
        }
        q3.project(&SparseVec::from_entries(lhs)) == q3.project(&SparseVec::from_entries(rhs))
    };
    for (label, rep) in ["coassociativity", "coassociativity_alt_section"].into_iter().zip(&reps) {
        checks.push(AxiomCheck::from_result(
            label,
            first_failure(n, |x| (!coassoc(&rep[x])).then(|| format!("(δ⊗id)δ ≠ (id⊗Δ)δ at {}", name(x)))),
        ));
    }

    let counit = |rep: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (idx, c) in rep.iter() {
            let (i, j) = art.split(*idx);
            out = out.axpy(c, &a.mul_sparse(&e(i), &r_element(ext, &tb.eps(&e(j)))));
        }
        out
    };
    for (label, rep) in ["counit", "counit_alt_section"].into_iter().zip(&reps) {
        checks.push(AxiomCheck::from_result(
            label,
            first_failure(n, |x| (counit(&rep[x]) != e(x)).then(|| format!("a₀ε(a₁) ≠ a at a = {}", name(x)))),
        ));
    }

    let one_a = SparseVec::from_dense(a.unit());
    checks.push(AxiomCheck::from_result(
        "unit",
        if co.apply(&one_a) == art.project(&art.pure(&one_a, &one_t)) { Ok(()) } else { Err("δ(1) ≠ 1⊗1".into()) },
    ));

    let r_compat = (|| {
        for k in 0..rd {
            let r = &ext.r_basis()[k];
            let tr = tb.t(&e(k));
            for x in 0..n {
                let rep = &reps[0][x];
                let lhs = art.map_ambient(rep, |i| a.mul_sparse(r, &e(i)), e, d);
                let rhs = art.map_ambient(rep, e, |j| tb.mul(&tr, &e(j)), d);
                if art.project(&lhs) != art.project(&rhs) {
                    return Err(format!("r·a₀⊗a₁ ≠ a₀⊗t̃(r)a₁ at r = {}, a = {}", tb.r_name(k), name(x)));
                }
            }
        }
        Ok(())
    })();
    let compat_ok = r_compat.is_ok();
    checks.push(AxiomCheck::from_result("r_compatibility", r_compat));

    let t_table: Vec<Vec<SparseVec>> = (0..d).map(|j| (0..d).map(|l| tb.mul(&e(j), &e(l))).collect()).collect();
    let product = |x: &SparseVec, y: &SparseVec| -> SparseVec {
        let mut terms = Vec::new();
        for (ix, c) in x.iter() {
            let (i, j) = art.split(*ix);
            for (iy, w) in y.iter() {
                let (k, l) = art.split(*iy);
                let cw = c * w;
                for (p, v1) in a.basis_product(i, k).iter() {
                    let cwv = &cw * v1;
                    terms.extend(t_table[j][l].iter().map(|(q, v2)| (p * d + q, &cwv * v2)));
                }
            }
        }
        art.project(&SparseVec::from_entries(terms))
    };
    let multiplicative = |rep: &[SparseVec]| -> Result<(), String> {
        for x in 0..n {
            for y in 0..n {
                if co.apply(a.basis_product(x, y)) != product(&rep[x], &rep[y]) {
                    return Err(format!("δ({}·{}) ≠ δ({})δ({})", name(x), name(y), name(x), name(y)));
                }
            }
        }
        Ok(())
    };
    if compat_ok {
        checks.push(AxiomCheck::from_result("multiplicative", multiplicative(&reps[0])));
        checks.push(AxiomCheck::from_result("multiplicative_alt_section", multiplicative(&reps[1])));
    } else {
        checks.push(AxiomCheck::skipped("multiplicative", "r_compatibility failed"));
        checks.push(AxiomCheck::skipped("multiplicative_alt_section", "r_compatibility failed"));
    }

    let co_inv = coinvariants(ext, tb, co);
    checks.push(AxiomCheck::from_result(
        "coinvariants_commute_with_r",
        (|| {
            for c in &co_inv.basis {
                for (k, r) in ext.r_basis().iter().enumerate() {
                    if a.mul_sparse(c, r) != a.mul_sparse(r, c) {
                        return Err(format!("coinvariant fails to commute with {}", tb.r_name(k)));
                    }
                }
            }
            Ok(())
        })(),
    ));
    checks.push(AxiomCheck::from_result(
        "coaction_on_b",
        (|| {
            for b in ext.b_basis() {
                if co.apply(b) != art.project(&art.pure(b, &one_t)) {
                    return Err(format!("δ(b) ≠ b⊗1 at b = {}", a.describe(&b.to_dense(n, f))));
                }
            }
            Ok(())
        })(),
    ));
    checks
}

/// `A^{co T}`: the kernel of `a ↦ δ(a) − a⊗1_T`.
pub fn coinvariants(ext: &RingExtension, tb: &Bialgebroid, co: &Coaction) -> Subspace {
    let f = ext.field();
    let one_t = tb.one();
    let cols: Vec<SparseVec> = (0..ext.n())
        .map(|i| {
            let e = SparseVec::unit(i, f);
            co.apply(&e).sub(&co.art.project(&co.art.pure(&e, &one_t)))
        })
        .collect();
    kernel_of_rows(f, ext.n(), transpose_columns(&cols, co.art.dim()))
}

/// Whether a subspace of `A` contains `1` and is closed under multiplication.
pub fn is_unital_subalgebra(ext: &RingExtension, v: &Subspace) -> bool {
    let a = ext.a();
    v.contains(&SparseVec::from_dense(a.unit())) && v.basis.iter().all(|x| v.basis.iter().all(|y| v.contains(&a.mul_sparse(x, y))))
}

/// `A^S = {a | α(a) = α(1)a for all α ∈ S}`.
pub fn s_invariants(ext: &RingExtension, s: &SRing) -> Subspace {
    let n = ext.n();
    let f = ext.field();
    let a = ext.a();
    let one = SparseVec::from_dense(a.unit());
    let mut rows = Vec::new();
    for alpha in s.basis() {
        let eps = apply_endo(alpha, &one, n);
        let cols: Vec<SparseVec> = (0..n)
            .map(|q| {
                let e = SparseVec::unit(q, f);
                apply_endo(alpha, &e, n).sub(&a.mul_sparse(&eps, &e))
            })
            .collect();
        rows.extend(transpose_columns(&cols, n));
    }
    kernel_of_rows(f, n, rows)
}

/// A linear map stored as images of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl LinearMap {
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out = out.axpy(c, &self.columns[*i]);
        }
        out
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap { rows: self.rows, columns: inner.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.columns.len() && self.columns.iter().enumerate().all(|(i, c)| c.nnz() == 1 && c.get(i).is_some_and(Scalar::is_one))
    }

    pub fn rank(&self, field: crate::linalg::Field) -> usize {
        let mut ech = Echelon::new(field, self.rows);
        for c in &self.columns {
            ech.insert(c);
        }
        ech.rank()
    }

    pub fn to_matrix(&self, field: crate::linalg::Field) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.columns.iter().map(|c| c.to_dense(self.rows, field)).collect();
        Matrix::from_columns(field, self.rows, &cols)
    }
}

/// `β(a⊗a′) = a·δ(a′)`. Fails with the offending relation `(b, a′)` if `β` does not vanish on it.
///
/// Left multiplication on the first factor preserves the relations of both
/// tensor products, so vanishing on `1·b ⊗ a′ − 1 ⊗ b·a′` covers every generator.
pub fn galois_map(ext: &RingExtension, ts: &TensorSquare, co: &Coaction) -> Result<LinearMap, IllDefined> {
    let n = ext.n();
    let f = ext.field();
    let a = ext.a();
    let art = &co.art;
    let d = art.right_dim();
    for b in ext.b_basis() {
        for q in 0..n {
            let e = SparseVec::unit(q, f);
            let lhs = art.map_ambient(&co.ambient(&e), |i| a.mul_sparse(b, &SparseVec::unit(i, f)), |j| SparseVec::unit(j, f), d);
            if art.project(&lhs) != co.apply(&a.mul_sparse(b, &e)) {
                return Err(IllDefined { b: a.describe(&b.to_dense(n, f)), a: a.basis_names()[q].clone() });
            }
        }
    }
    let columns = (0..ts.dim())
        .map(|k| {
            let lift = ts.lift(&SparseVec::unit(k, f));
            let mut out = SparseVec::new();
            for (idx, c) in lift.iter() {
                let (i, j) = (idx / n, idx % n);
                let img = art.map_ambient(&co.delta[j], |p| a.basis_product(i, p).clone(), |t| SparseVec::unit(t, f), d);
                out = out.axpy(c, &img);
            }
            art.project(&out)
        })
        .collect();
    Ok(LinearMap { rows: art.dim(), columns })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("β does not vanish on {b}⊗{a} − 1⊗{b}{a}")]
pub struct IllDefined {
    pub b: String,
    pub a: String,
}

/// `θ(a⊗t) = a t¹ ⊗ t²`.
pub fn theta(ext: &RingExtension, ts: &TensorSquare, t: &TRing, art: &BalancedTensor) -> LinearMap {
    let f = ext.field();
    let columns = (0..art.dim())
        .map(|k| {
            let lift = art.lift(&SparseVec::unit(k, f));
            let mut out = SparseVec::new();
            for (idx, c) in lift.iter() {
                let (i, j) = art.split(*idx);
                out = out.axpy(c, &ts.left(&SparseVec::unit(i, f), &t.basis()[j]));
            }
            out
        })
        .collect();
    LinearMap { rows: ts.dim(), columns }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotGaloisReason {
    NotRightD2,
    BuildFailed,
    GaloisMapIllDefined,
}

impl NotGaloisReason {
    pub fn code(self) -> &'static str {
        match self {
            NotGaloisReason::NotRightD2 => "not_right_d2",
            NotGaloisReason::BuildFailed => "build_failed",
            NotGaloisReason::GaloisMapIllDefined => "galois_map_ill_defined",
        }
    }
}

/// Everything computed once the extension is right D2.
#[derive(Clone, Debug)]
pub struct GaloisData {
    pub t_bialgebroid: Bialgebroid,
    pub coaction: Coaction,
    pub comodule_checks: Vec<AxiomCheck>,
    pub coinvariants: Subspace,
    pub beta: LinearMap,
    pub theta: LinearMap,
    pub beta_bijective: bool,
    pub theta_beta_identity: bool,
    pub beta_theta_identity: bool,
    pub coinvariants_equal_b: bool,
}

#[derive(Clone, Debug)]
pub struct GaloisReport {
    pub frobenius: FrobeniusOutcome,
    pub d2: D2Result,
    pub balanced: BalancedResult,
    pub tensor_square_dim: usize,
    pub t_dim: usize,
    pub s_dim: usize,
    pub invariants: Subspace,
    pub data: Option<GaloisData>,
    pub galois: bool,
    pub reason: Option<NotGaloisReason>,
}

impl GaloisReport {
    /// `Some(true)` found, `Some(false)` excluded, `None` inconclusive.
    pub fn frobenius_flag(&self) -> Option<bool> {
        match self.frobenius {
            FrobeniusOutcome::Found { .. } => Some(true),
            FrobeniusOutcome::NotFound { .. } => Some(false),
            FrobeniusOutcome::Inconclusive { .. } => None,
        }
    }

    /// Whether `(Frobenius ∧ D2 ∧ balanced) ⟺ Galois` holds literally; `None` if Frobenius is undecided.
    pub fn biconditional(&self) -> Option<bool> {
        self.frobenius_flag().map(|fr| (fr && self.d2.is_d2() && self.balanced.balanced) == self.galois)
    }

    /// The theorem's claim on this instance: `D2 ∧ balanced ⟺ Galois` for a Frobenius
    /// extension, vacuous otherwise. `None` if Frobenius is undecided.
    pub fn theorem_holds(&self) -> Option<bool> {
        match self.frobenius_flag()? {
            true => self.biconditional(),
            false => Some(true),
        }
    }
}

/// The intermediate objects `characterize` needs, exposed for callers that want more than the verdict.
pub struct Pipeline {
    pub ts: TensorSquare,
    pub t: TRing,
    pub s: SRing,
}

impl Pipeline {
    pub fn new(ext: &RingExtension) -> Pipeline {
        let ts = TensorSquare::new(ext);
        let t = compute_t(ext, &ts);
        let s = compute_s(ext);
        Pipeline { ts, t, s }
    }
}

/// Only the verdict: `β` bijective and coinvariants equal to `B`. Skips the comodule laws and `θ`.
pub fn galois_verdict(ext: &RingExtension, p: &Pipeline, qb: &Quasibase) -> Result<bool, NotGaloisReason> {
    let tb = build_t_bialgebroid(ext, &p.ts, &p.t, qb, TMultiplication::Composition).map_err(|_| NotGaloisReason::BuildFailed)?;
    let co = coaction(ext, &p.t, &tb, qb).map_err(|_| NotGaloisReason::BuildFailed)?;
    if !coinvariants(ext, &tb, &co).same_as(ext.b_space()) {
        return Ok(false);
    }
    let beta = galois_map(ext, &p.ts, &co).map_err(|_| NotGaloisReason::GaloisMapIllDefined)?;
    Ok(beta.rows == beta.columns.len() && beta.rank(ext.field()) == beta.rows)
}

pub fn galois_data(ext: &RingExtension, p: &Pipeline, qb: &Quasibase) -> Result<GaloisData, NotGaloisReason> {
    let f = ext.field();
    let tb = build_t_bialgebroid(ext, &p.ts, &p.t, qb, TMultiplication::Composition).map_err(|_| NotGaloisReason::BuildFailed)?;
    let co = coaction(ext, &p.t, &tb, qb).map_err(|_| NotGaloisReason::BuildFailed)?;
    let comodule_checks = verify_comodule_algebra(ext, &tb, &co);
    let coinv = coinvariants(ext, &tb, &co);
    let beta = galois_map(ext, &p.ts, &co).map_err(|_| NotGaloisReason::GaloisMapIllDefined)?;
    let th = theta(ext, &p.ts, &p.t, &co.art);
    let beta_bijective = beta.rows == beta.columns.len() && beta.rank(f) == beta.rows;
    let theta_beta_identity = th.compose(&beta).is_identity();
    let beta_theta_identity = beta.compose(&th).is_identity();
    let coinvariants_equal_b = coinv.same_as(ext.b_space());
    Ok(GaloisData {
        t_bialgebroid: tb,
        coaction: co,
        comodule_checks,
        coinvariants: coinv,
        beta,
        theta: th,
        beta_bijective,
        theta_beta_identity,
        beta_theta_identity,
        coinvariants_equal_b,
    })
}

pub fn characterize(ext: &RingExtension, seed: u64) -> GaloisReport {
    let p = Pipeline::new(ext);
    characterize_with(ext, &p, seed)
}

pub fn characterize_with(ext: &RingExtension, p: &Pipeline, seed: u64) -> GaloisReport {
    let frob = frobenius(ext, seed);
    let d2 = is_d2(ext, &p.ts, &p.t, &p.s);
    let bal = balanced(ext);
    let invariants = s_invariants(ext, &p.s);
    let (data, reason) = match &d2.right {
        Err(_) => (None, Some(NotGaloisReason::NotRightD2)),
        Ok(qb) => match galois_data(ext, p, qb) {
            Ok(data) => (Some(data), None),
            Err(r) => (None, Some(r)),
        },
    };
    let galois = data.as_ref().is_some_and(|g| g.beta_bijective && g.coinvariants_equal_b);
    GaloisReport {
        frobenius: frob,
        d2,
        balanced: bal,
        tensor_square_dim: p.ts.dim(),
        t_dim: p.t.dim(),
        s_dim: p.s.dim(),
        invariants,
        data,
        galois,
        reason,
    }
}
