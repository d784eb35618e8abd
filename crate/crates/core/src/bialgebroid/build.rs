use crate::algebra::RingExtension;
use crate::bimodule::{apply_endo, endo_from_matrix, SRing, TMultiplication, TRing, TensorSquare};
use crate::depth_two::{Quasibase, Side};
use crate::linalg::{tensor, SparseVec};

use super::{Bialgebroid, BuildError};

/// Right bialgebroid `T` over `R` from a right quasibase `(γ_j, u_j)`:
/// `s̃(r) = 1⊗r`, `t̃(r) = r⊗1`, `Δ(x) = Σ_j (x¹ ⊗ γ_j(x²)) ⊗_R u_j`, `ε(x) = x¹x²`.
pub fn build_t_bialgebroid(
    ext: &RingExtension,
    ts: &TensorSquare,
    t: &TRing,
    qb: &Quasibase,
    order: TMultiplication,
) -> Result<Bialgebroid, BuildError> {
    if qb.side != Side::Right {
        return Err(BuildError::WrongSide(qb.side, Side::Right));
    }
    let n = ext.n();
    let a = ext.a();
    let d = t.dim();
    let one = SparseVec::from_dense(a.unit());
    let in_t = |q: &SparseVec, what: &str| t.coords_sparse(q).ok_or_else(|| BuildError::OutOfSpace(what.to_string()));
    let in_r = |x: &SparseVec, what: &str| {
        ext.r_coords(x).map(|c| SparseVec::from_dense(&c)).ok_or_else(|| BuildError::OutOfSpace(what.to_string()))
    };

    let mut source = Vec::new();
    let mut target = Vec::new();
    for r in ext.r_basis() {
        source.push(in_t(&ts.class_of(&one, r), "1⊗r")?);
        target.push(in_t(&ts.class_of(r, &one), "r⊗1")?);
    }
    let u_coords: Vec<SparseVec> = qb.pairs.iter().map(|(_, u)| in_t(u, "quasibase element u_j")).collect::<Result<_, _>>()?;

    let mut coproduct = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for x in t.basis() {
        let lift = ts.lift(x);
        let mut delta = SparseVec::new();
        for ((gamma, _), u) in qb.pairs.iter().zip(&u_coords) {
            let mut first = SparseVec::new();
            for (idx, c) in lift.iter() {
                let (i, k) = (idx / n, idx % n);
                let g = apply_endo(gamma, &SparseVec::unit(k, ext.field()), n);
                first = first.axpy(c, &ts.pure(&SparseVec::unit(i, ext.field()), &g));
            }
            let first = in_t(&ts.project(&first), "x¹⊗γ(x²)")?;
            delta = delta.add(&tensor(&first, u, d));
        }
        coproduct.push(delta);
        let mut eps = SparseVec::new();
        for (idx, c) in lift.iter() {
            eps = eps.axpy(c, a.basis_product(idx / n, idx % n));
        }
        counit.push(in_r(&eps, "ε(x) = x¹x²")?);
    }
    Ok(Bialgebroid {
        side: Side::Right,
        base: ext.r_algebra().clone(),
        ring: t.algebra(ts, order),
        source,
        target,
        coproduct,
        counit,
    })
}

/// Left bialgebroid `S` over `R` from a left quasibase `(β_i, t_i)`:
/// `s̄(r) = λ_r`, `t̄(r) = ρ_r`, `Δ(α) = Σ_i [a ↦ α(a t_i¹) t_i²] ⊗_R β_i`, `ε(α) = α(1)`.
pub fn build_s_bialgebroid(ext: &RingExtension, ts: &TensorSquare, s: &SRing, qb: &Quasibase) -> Result<Bialgebroid, BuildError> {
    if qb.side != Side::Left {
        return Err(BuildError::WrongSide(qb.side, Side::Left));
    }
    let n = ext.n();
    let a = ext.a();
    let f = ext.field();
    let d = s.dim();
    let one = SparseVec::from_dense(a.unit());
    let in_s = |m: &SparseVec, what: &str| s.coords_sparse(m).ok_or_else(|| BuildError::OutOfSpace(what.to_string()));

    let mut source = Vec::new();
    let mut target = Vec::new();
    for r in ext.r_basis() {
        let dense = r.to_dense(n, f);
        source.push(in_s(&endo_from_matrix(&a.left_mult_matrix(&dense)), "λ_r")?);
        target.push(in_s(&endo_from_matrix(&a.right_mult_matrix(&dense)), "ρ_r")?);
    }
    let beta_coords: Vec<SparseVec> = qb.pairs.iter().map(|(b, _)| in_s(b, "quasibase map β_i")).collect::<Result<_, _>>()?;
    let t_lifts: Vec<SparseVec> = qb.pairs.iter().map(|(_, t)| ts.lift(t)).collect();

    let mut coproduct = Vec::with_capacity(d);
    let mut counit = Vec::with_capacity(d);
    for alpha in s.basis() {
        let mut delta = SparseVec::new();
        for (lift, beta) in t_lifts.iter().zip(&beta_coords) {
            // column q of the first factor: Σ c_kl α(e_q e_k) e_l
            let mut entries = Vec::new();
            for q in 0..n {
                let mut col = SparseVec::new();
                for (idx, c) in lift.iter() {
                    let (k, l) = (idx / n, idx % n);
                    let v = apply_endo(alpha, a.basis_product(q, k), n);
                    if !v.is_zero() {
                        col = col.axpy(c, &a.mul_sparse(&v, &SparseVec::unit(l, f)));
                    }
                }
                entries.extend(col.iter().map(|(p, x)| (p * n + q, x.clone())));
            }
            let first = in_s(&SparseVec::from_entries(entries), "a ↦ α(a t¹)t²")?;
            delta = delta.add(&tensor(&first, beta, d));
        }
        coproduct.push(delta);
        let at_one = apply_endo(alpha, &one, n);
        counit.push(
            ext.r_coords(&at_one)
                .map(|c| SparseVec::from_dense(&c))
                .ok_or_else(|| BuildError::OutOfSpace("ε(α) = α(1)".into()))?,
        );
    }
    Ok(Bialgebroid { side: Side::Left, base: ext.r_algebra().clone(), ring: s.algebra(ext), source, target, coproduct, counit })
}

/// Whether two coproducts on the same ring agree in `ring ⊗_R ring`; returns the first differing basis index.
pub fn coproduct_agrees(x: &Bialgebroid, y: &Bialgebroid) -> Result<(), usize> {
    let q2 = x.tensor_r();
    for i in 0..x.dim() {
        if q2.project(&x.coproduct[i]) != q2.project(&y.coproduct[i]) {
            return Err(i);
        }
    }
    Ok(())
}
