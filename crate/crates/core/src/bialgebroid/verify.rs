use std::cell::RefCell;
use std::collections::HashMap;

use crate::bimodule::BalancedTensor;
use crate::depth_two::Side;
use crate::linalg::SparseVec;

use super::{AxiomCheck, Bialgebroid};

struct Ctx<'a> {
    b: &'a Bialgebroid,
    q2: BalancedTensor,
    pair_cache: RefCell<HashMap<(usize, usize), SparseVec>>,
}

impl<'a> Ctx<'a> {
    fn e(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.b.field())
    }

    fn r(&self, k: usize) -> SparseVec {
        SparseVec::unit(k, self.b.field())
    }

    /// `Σ f(x_i) ⊗ g(y_j)` over the terms of an ambient vector of `ring ⊗_k ring`.
    fn map2(&self, v: &SparseVec, f: impl Fn(&SparseVec) -> SparseVec, g: impl Fn(&SparseVec) -> SparseVec) -> SparseVec {
        let d = self.b.dim();
        self.q2.map_ambient(v, |i| f(&self.e(i)), |j| g(&self.e(j)), d)
    }

    fn p2(&self, v: &SparseVec) -> SparseVec {
        self.q2.project(v)
    }

    /// π(e_i ⊗ e_a) in `ring ⊗_R ring`.
    fn pair(&self, i: usize, a: usize) -> SparseVec {
        if let Some(v) = self.pair_cache.borrow().get(&(i, a)) {
            return v.clone();
        }
        let v = self.p2(&self.q2.pure(&self.e(i), &self.e(a)));
        self.pair_cache.borrow_mut().insert((i, a), v.clone());
        v
    }

    fn reps(&self, i: usize) -> [SparseVec; 2] {
        let p = self.p2(&self.b.coproduct[i]);
        [self.q2.lift(&p), self.q2.alt_lift(&p)]
    }
}

fn first_failure<I: IntoIterator<Item = T>, T>(items: I, check: impl Fn(&T) -> Option<String>) -> Result<(), String> {
    for it in items {
        if let Some(w) = check(&it) {
            return Err(w);
        }
    }
    Ok(())
}

/// Checks every bialgebroid axiom exactly. The Takeuchi condition is checked
/// before multiplicativity of `Δ`, which is skipped when it fails.
pub fn verify_bialgebroid(b: &Bialgebroid) -> Vec<AxiomCheck> {
    let d = b.dim();
    let rd = b.r_dim();
    let ctx = Ctx { b, q2: b.tensor_r(), pair_cache: RefCell::new(HashMap::new()) };
    let xs = || 0..d;
    let rs = || 0..rd;
    let mut out = Vec::new();

    out.push(AxiomCheck::from_result(
        "ring_associative_unital",
        b.ring.verify().map_err(|e| e.to_string()),
    ));

    out.push(AxiomCheck::from_result(
        "source_homomorphism",
        (|| {
            if b.s(&b.r_one()) != b.one() {
                return Err("s(1) ≠ 1".to_string());
            }
            first_failure(rs().flat_map(|k| rs().map(move |l| (k, l))), |&(k, l)| {
                let rr = b.base.mul_sparse(&ctx.r(k), &ctx.r(l));
                (b.s(&rr) != b.mul(&b.s(&ctx.r(k)), &b.s(&ctx.r(l))))
                    .then(|| format!("s({}·{}) ≠ s({})s({})", b.r_name(k), b.r_name(l), b.r_name(k), b.r_name(l)))
            })
        })(),
    ));

    out.push(AxiomCheck::from_result(
        "target_antihomomorphism",
        (|| {
            if b.t(&b.r_one()) != b.one() {
                return Err("t(1) ≠ 1".to_string());
            }
            first_failure(rs().flat_map(|k| rs().map(move |l| (k, l))), |&(k, l)| {
                let rr = b.base.mul_sparse(&ctx.r(k), &ctx.r(l));
                (b.t(&rr) != b.mul(&b.t(&ctx.r(l)), &b.t(&ctx.r(k))))
                    .then(|| format!("t({}·{}) ≠ t({})t({})", b.r_name(k), b.r_name(l), b.r_name(l), b.r_name(k)))
            })
        })(),
    ));

    out.push(AxiomCheck::from_result(
        "source_target_commute",
        first_failure(rs().flat_map(|k| rs().map(move |l| (k, l))), |&(k, l)| {
            let (s, t) = (b.s(&ctx.r(k)), b.t(&ctx.r(l)));
            (b.mul(&s, &t) != b.mul(&t, &s)).then(|| format!("s({}) and t({}) do not commute", b.r_name(k), b.r_name(l)))
        }),
    ));

    out.push(AxiomCheck::from_result(
        "counit_unit",
        if b.eps(&b.one()) == b.r_one() { Ok(()) } else { Err("ε(1) ≠ 1".into()) },
    ));

    out.push(AxiomCheck::from_result(
        "counit_bimodule",
        first_failure(rs().flat_map(|k| xs().flat_map(move |i| rs().map(move |l| (k, i, l)))), |&(k, i, l)| {
            let x = b.act_left(&ctx.r(k), &b.act_right(&ctx.e(i), &ctx.r(l)));
            let want = b.base.mul_sparse(&b.base.mul_sparse(&ctx.r(k), &b.eps(&ctx.e(i))), &ctx.r(l));
            (b.eps(&x) != want).then(|| format!("ε({}·{}·{}) ≠ {}ε({}){}", b.r_name(k), b.name(i), b.r_name(l), b.r_name(k), b.name(i), b.r_name(l)))
        }),
    ));

    let bimodule = first_failure(rs().flat_map(|k| xs().flat_map(move |i| rs().map(move |l| (k, i, l)))), |&(k, i, l)| {
        let x = b.act_left(&ctx.r(k), &b.act_right(&ctx.e(i), &ctx.r(l)));
        let lhs = ctx.p2(&b.delta(&x));
        let rhs = ctx.p2(&ctx.map2(&b.coproduct[i], |y| b.act_left(&ctx.r(k), y), |y| b.act_right(y, &ctx.r(l))));
        (lhs != rhs).then(|| format!("Δ({}·{}·{}) ≠ {}·Δ({})·{}", b.r_name(k), b.name(i), b.r_name(l), b.r_name(k), b.name(i), b.r_name(l)))
    });
    let bimodule_ok = bimodule.is_ok();
    out.push(AxiomCheck::from_result("coproduct_bimodule", bimodule));

    if bimodule_ok {
        out.extend(coassociativity(&ctx));
    } else {
        out.push(AxiomCheck::skipped("coassociativity", "coproduct is not an R-bimodule map"));
        out.push(AxiomCheck::skipped("coassociativity_alt_section", "coproduct is not an R-bimodule map"));
    }

    out.push(AxiomCheck::from_result(
        "counit_left",
        first_failure(xs(), |&i| {
            let v: SparseVec = b.coproduct[i].iter().fold(SparseVec::new(), |acc, (idx, c)| {
                let (p, q) = (idx / d, idx % d);
                acc.axpy(c, &b.act_left(&b.eps(&ctx.e(p)), &ctx.e(q)))
            });
            (v != ctx.e(i)).then(|| format!("ε(x₁)·x₂ ≠ x at x = {}", b.name(i)))
        }),
    ));
    out.push(AxiomCheck::from_result(
        "counit_right",
        first_failure(xs(), |&i| {
            let v: SparseVec = b.coproduct[i].iter().fold(SparseVec::new(), |acc, (idx, c)| {
                let (p, q) = (idx / d, idx % d);
                acc.axpy(c, &b.act_right(&ctx.e(p), &b.eps(&ctx.e(q))))
            });
            (v != ctx.e(i)).then(|| format!("x₁·ε(x₂) ≠ x at x = {}", b.name(i)))
        }),
    ));

    let takeuchi = first_failure(rs().flat_map(|k| xs().map(move |i| (k, i))), |&(k, i)| {
        let r = ctx.r(k);
        let (lhs, rhs) = match b.side {
            // s(r)x₁ ⊗ x₂ = x₁ ⊗ t(r)x₂
            Side::Right => (
                ctx.map2(&b.coproduct[i], |y| b.mul(&b.s(&r), y), |y| y.clone()),
                ctx.map2(&b.coproduct[i], |y| y.clone(), |y| b.mul(&b.t(&r), y)),
            ),
            // x₁t(r) ⊗ x₂ = x₁ ⊗ x₂s(r)
            Side::Left => (
                ctx.map2(&b.coproduct[i], |y| b.mul(y, &b.t(&r)), |y| y.clone()),
                ctx.map2(&b.coproduct[i], |y| y.clone(), |y| b.mul(y, &b.s(&r))),
            ),
        };
        (ctx.p2(&lhs) != ctx.p2(&rhs)).then(|| format!("fails at r = {}, x = {}", b.r_name(k), b.name(i)))
    });
    let takeuchi_ok = takeuchi.is_ok();
    out.push(AxiomCheck::from_result("takeuchi", takeuchi));

    out.push(AxiomCheck::from_result(
        "coproduct_unit",
        if ctx.p2(&b.delta(&b.one())) == ctx.p2(&ctx.q2.pure(&b.one(), &b.one())) { Ok(()) } else { Err("Δ(1) ≠ 1⊗1".into()) },
    ));

    if takeuchi_ok {
        for (name, which) in [("coproduct_multiplicative", 0), ("coproduct_multiplicative_alt_section", 1)] {
            out.push(AxiomCheck::from_result(
                name,
                first_failure(xs().flat_map(|i| xs().map(move |j| (i, j))), |&(i, j)| {
                    let (dx, dy) = (&ctx.reps(i)[which], &ctx.reps(j)[which]);
                    let mut prod = SparseVec::new();
                    for (ix, c) in dx.iter() {
                        let (x1, x2) = (ix / d, ix % d);
                        for (iy, e) in dy.iter() {
                            let (y1, y2) = (iy / d, iy % d);
                            let t = ctx.q2.pure(b.ring.basis_product(x1, y1), b.ring.basis_product(x2, y2));
                            prod = prod.axpy(&(c * e), &t);
                        }
                    }
                    let xy = b.ring.basis_product(i, j);
                    (ctx.p2(&prod) != ctx.p2(&b.delta(xy))).then(|| format!("Δ({}·{}) ≠ Δ({})Δ({})", b.name(i), b.name(j), b.name(i), b.name(j)))
                }),
            ));
        }
    } else {
        out.push(AxiomCheck::skipped("coproduct_multiplicative", "takeuchi condition fails"));
        out.push(AxiomCheck::skipped("coproduct_multiplicative_alt_section", "takeuchi condition fails"));
    }

    for (name, use_source) in [("counit_multiplicative_source", true), ("counit_multiplicative_target", false)] {
        out.push(AxiomCheck::from_result(
            name,
            first_failure(xs().flat_map(|i| xs().map(move |j| (i, j))), |&(i, j)| {
                let (x, y) = (ctx.e(i), ctx.e(j));
                let lhs = b.eps(&b.mul(&x, &y));
                let embed = |r: &SparseVec| if use_source { b.s(r) } else { b.t(r) };
                let rhs = match b.side {
                    // ε(xy) = ε(s(ε(x))y) = ε(t(ε(x))y)
                    Side::Right => b.eps(&b.mul(&embed(&b.eps(&x)), &y)),
                    // ε(xy) = ε(x s(ε(y))) = ε(x t(ε(y)))
                    Side::Left => b.eps(&b.mul(&x, &embed(&b.eps(&y)))),
                };
                (lhs != rhs).then(|| format!("fails at (x, y) = ({}, {})", b.name(i), b.name(j)))
            }),
        ));
    }
    out
}

fn coassociativity(ctx: &Ctx) -> Vec<AxiomCheck> {
    let b = ctx.b;
    let d = b.dim();
    let f = b.field();
    let q2 = &ctx.q2;
    let q3 = BalancedTensor::over(
        &b.base,
        q2.dim(),
        d,
        |k, r| {
            let lift = q2.lift(&SparseVec::unit(k, f));
            q2.project(&ctx.map2(&lift, |y| y.clone(), |y| b.act_right(y, &SparseVec::unit(r, f))))
        },
        |r, j| b.act_left(&SparseVec::unit(r, f), &SparseVec::unit(j, f)),
    );
    let projected: Vec<SparseVec> = (0..d).map(|i| q2.project(&b.coproduct[i])).collect();
    let mut out = Vec::new();
    for (name, which) in [("coassociativity", 0), ("coassociativity_alt_section", 1)] {
        let res = first_failure(0..d, |&x| {
            let rep = &ctx.reps(x)[which];
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for (idx, c) in rep.iter() {
                let (i, j) = (idx / d, idx % d);
                // (Δ⊗id): Δ(x_i) ⊗ x_j
                for (k, v) in projected[i].iter() {
                    lhs.push((k * d + j, c * v));
                }
                // (id⊗Δ): x_i ⊗ Δ(x_j)
                for (idx2, w) in b.coproduct[j].iter() {
                    let (a, bb) = (idx2 / d, idx2 % d);
                    for (k, u) in ctx.pair(i, a).iter() {
                        rhs.push((k * d + bb, &(c * w) * u));
                    }
                }
            }
            let l = q3.project(&SparseVec::from_entries(lhs));
            let r = q3.project(&SparseVec::from_entries(rhs));
            (l != r).then(|| format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ at x = {}", b.name(x)))
        });
        out.push(AxiomCheck::from_result(name, res));
    }
    out
}
