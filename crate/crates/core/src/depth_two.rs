//! Depth-two quasibases, found as span-membership certificates.
//!
//! Right side: the identity of `A⊗_B A` must be a finite sum of the maps
//! `Ψ_{γ,u}: a⊗a′ ↦ aγ(a′)u` with `γ ∈ S`, `u ∈ T`. Both sides of that
//! identity are left `A`-linear, so it suffices to compare them on `1⊗e_q`.
//! Since `Ψ_{γ, r·u} = Ψ_{ρ_r∘γ, u}` and `S` is stable under `ρ_r`, `u` may be
//! restricted to generators of `T` as a left `R`-module. The left side is the
//! mirror image with `Φ_{β,t}: a⊗a′ ↦ tβ(a)a′`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::RingExtension;
use crate::bimodule::{apply_endo, SRing, TRing, TensorSquare};
use crate::linalg::{Echelon, Scalar, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Pairs `(α, t)` with `α ∈ S` as a flat matrix and `t ∈ T` in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quasibase {
    pub side: Side,
    pub pairs: Vec<(SparseVec, SparseVec)>,
}

/// The span of all product maps misses the identity: the extension is not D2 on this side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotD2 {
    pub side: Side,
    /// rank of the span of product maps, evaluated on the module generators
    pub span_rank: usize,
    /// dimension of the space the identity map lives in
    pub ambient: usize,
    pub generators_of_t: usize,
}

#[derive(Clone, Debug)]
pub struct D2Result {
    pub left: Result<Quasibase, NotD2>,
    pub right: Result<Quasibase, NotD2>,
}

impl D2Result {
    pub fn is_d2(&self) -> bool {
        self.left.is_ok() && self.right.is_ok()
    }
}

/// Generators of `T` under the action `act(r, t)` of the centralizer.
fn module_generators(ext: &RingExtension, t: &TRing, ts: &TensorSquare, act: impl Fn(&SparseVec, &SparseVec) -> SparseVec) -> Vec<SparseVec> {
    let mut ech = Echelon::new(ts.field(), ts.dim());
    let mut gens = Vec::new();
    for u in t.basis() {
        if ech.rank() == t.dim() {
            break;
        }
        if ech.contains(u) {
            continue;
        }
        gens.push(u.clone());
        for r in ext.r_basis() {
            ech.insert(&act(r, u));
        }
    }
    gens
}

fn solve_side(ext: &RingExtension, ts: &TensorSquare, t: &TRing, s: &SRing, side: Side, reverse: bool) -> Result<Quasibase, NotD2> {
    let n = ext.n();
    let field = ext.field();
    let dq = ts.dim();
    let a = ext.a();
    let one = SparseVec::from_dense(a.unit());
    let gens = match side {
        Side::Right => module_generators(ext, t, ts, |r, u| ts.left(r, u)),
        Side::Left => module_generators(ext, t, ts, |r, u| ts.right(u, r)),
    };
    // action[g][i]: e_i·g (right side) or g·e_i (left side)
    let action: Vec<Vec<SparseVec>> = gens
        .iter()
        .map(|g| {
            (0..n)
                .map(|i| {
                    let e = SparseVec::unit(i, field);
                    match side {
                        Side::Right => ts.left(&e, g),
                        Side::Left => ts.right(g, &e),
                    }
                })
                .collect()
        })
        .collect();
    // component q: π(1⊗e_q) on the right, π(e_q⊗1) on the left
    let target = SparseVec::from_entries((0..n).flat_map(|q| {
        let eq = SparseVec::unit(q, field);
        let v = match side {
            Side::Right => ts.class_of(&one, &eq),
            Side::Left => ts.class_of(&eq, &one),
        };
        v.iter().map(|(k, x)| (q * dq + k, x.clone())).collect::<Vec<_>>()
    }));
    let ambient = n * dq;
    let mut ech = Echelon::tracking(field, ambient);
    let mut labels: Vec<(usize, usize)> = Vec::new();
    let mut found = None;
    let mut order: Vec<usize> = (0..s.dim()).collect();
    if reverse {
        order.reverse();
    }
    for si in order {
        let alpha = &s.basis()[si];
        for (gi, act) in action.iter().enumerate() {
            let mut terms = Vec::new();
            for (idx, c) in alpha.iter() {
                let (p, q) = (idx / n, idx % n);
                for (k, x) in act[p].iter() {
                    terms.push((q * dq + k, c * x));
                }
            }
            labels.push((si, gi));
            ech.insert(&SparseVec::from_entries(terms));
        }
        if let Some(c) = ech.express(&target) {
            found = Some(c);
            break;
        }
    }
    let Some(coeffs) = found else {
        return Err(NotD2 { side, span_rank: ech.rank(), ambient, generators_of_t: gens.len() });
    };
    let mut grouped: BTreeMap<usize, SparseVec> = BTreeMap::new();
    for (label, c) in coeffs.iter() {
        let (si, gi) = labels[*label];
        let entry = grouped.entry(si).or_default();
        *entry = entry.axpy(c, &gens[gi]);
    }
    let pairs = grouped
        .into_iter()
        .filter(|(_, u)| !u.is_zero())
        .map(|(si, u)| (s.basis()[si].clone(), u))
        .collect();
    Ok(Quasibase { side, pairs })
}

pub fn right_quasibase(ext: &RingExtension, ts: &TensorSquare, t: &TRing, s: &SRing) -> Result<Quasibase, NotD2> {
    solve_side(ext, ts, t, s, Side::Right, false)
}

pub fn left_quasibase(ext: &RingExtension, ts: &TensorSquare, t: &TRing, s: &SRing) -> Result<Quasibase, NotD2> {
    solve_side(ext, ts, t, s, Side::Left, false)
}

/// A second quasibase, found by scanning the basis of `S` in reverse order.
pub fn alternate_quasibase(ext: &RingExtension, ts: &TensorSquare, t: &TRing, s: &SRing, side: Side) -> Result<Quasibase, NotD2> {
    solve_side(ext, ts, t, s, side, true)
}

pub fn is_d2(ext: &RingExtension, ts: &TensorSquare, t: &TRing, s: &SRing) -> D2Result {
    D2Result { left: left_quasibase(ext, ts, t, s), right: right_quasibase(ext, ts, t, s) }
}

/// Re-checks the quasibase identity on every pair of basis elements `e_p ⊗ e_q`.
/// Returns the first failing `(p, q)`.
pub fn verify_quasibase(ext: &RingExtension, ts: &TensorSquare, qb: &Quasibase) -> Result<(), (usize, usize)> {
    let n = ext.n();
    let field = ext.field();
    let a = ext.a();
    for p in 0..n {
        for q in 0..n {
            let (ep, eq) = (SparseVec::unit(p, field), SparseVec::unit(q, field));
            let mut sum = SparseVec::new();
            for (alpha, t) in &qb.pairs {
                let lt = ts.lift(t);
                let v = match qb.side {
                    Side::Right => {
                        let x = a.mul_sparse(&ep, &apply_endo(alpha, &eq, n));
                        ts.left_ambient(&x, &lt)
                    }
                    Side::Left => {
                        let x = a.mul_sparse(&apply_endo(alpha, &ep, n), &eq);
                        ts.right_ambient(&lt, &x)
                    }
                };
                sum = sum.add(&ts.project(&v));
            }
            if sum != ts.class_of(&ep, &eq) {
                return Err((p, q));
            }
        }
    }
    Ok(())
}

/// `Σ_j γ_j(a) ⊗ u_j` style readout used in reports: `(S-coordinates, T-coordinates)` per pair.
pub fn quasibase_coordinates(qb: &Quasibase, s: &SRing, t: &TRing) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    qb.pairs
        .iter()
        .map(|(alpha, u)| {
            (
                s.coords(alpha).expect("quasibase map lies in S"),
                t.coords(u).expect("quasibase element lies in T"),
            )
        })
        .collect()
}
