use crate::linalg::{Scalar, SparseVec};

use super::{AxiomCheck, Bialgebroid, BuildError};

/// The ordinary `k`-bialgebra obtained when `R = k·1`, with its axiom checks.
#[derive(Clone, Debug)]
pub struct BialgebraReport {
    pub dim: usize,
    pub checks: Vec<AxiomCheck>,
}

pub fn bialgebra_specialize(b: &Bialgebroid) -> Result<BialgebraReport, BuildError> {
    if b.r_dim() != 1 {
        return Err(BuildError::NontrivialCentralizer(b.r_dim()));
    }
    let d = b.dim();
    let f = b.field();
    let e = |i: usize| SparseVec::unit(i, f);
    // the base basis vector is u⁻¹·1 where 1_R = u·r₀
    let u_inv = b.base.unit()[0].inv().expect("unit of R is nonzero");
    let eps = |x: &SparseVec| -> Scalar { &b.eps(x).get(0).cloned().unwrap_or_else(|| f.zero()) * &u_inv };
    let mut checks = Vec::new();

    let scalar_one = b.one().scale(&u_inv);
    checks.push(AxiomCheck::from_result(
        "source_target_scalar",
        if b.source[0] == scalar_one && b.target[0] == scalar_one { Ok(()) } else { Err("s or t is not the unit map k → ring".into()) },
    ));

    checks.push(AxiomCheck::from_result(
        "counit_algebra_map",
        (|| {
            if !eps(&b.one()).is_one() {
                return Err("ε(1) ≠ 1".to_string());
            }
            for i in 0..d {
                for j in 0..d {
                    if eps(b.ring.basis_product(i, j)) != &eps(&e(i)) * &eps(&e(j)) {
                        return Err(format!("ε({}·{}) ≠ ε({})ε({})", b.name(i), b.name(j), b.name(i), b.name(j)));
                    }
                }
            }
            Ok(())
        })(),
    ));

    let delta_of = |x: &SparseVec| b.delta(x);
    checks.push(AxiomCheck::from_result(
        "coproduct_algebra_map",
        (|| {
            if delta_of(&b.one()) != crate::linalg::tensor(&b.one(), &b.one(), d) {
                return Err("Δ(1) ≠ 1⊗1".to_string());
            }
            for i in 0..d {
                for j in 0..d {
                    let mut prod = SparseVec::new();
                    for (ix, c) in b.coproduct[i].iter() {
                        for (iy, w) in b.coproduct[j].iter() {
                            let t = crate::linalg::tensor(b.ring.basis_product(ix / d, iy / d), b.ring.basis_product(ix % d, iy % d), d);
                            prod = prod.axpy(&(c * w), &t);
                        }
                    }
                    if prod != delta_of(b.ring.basis_product(i, j)) {
                        return Err(format!("Δ({}·{}) ≠ Δ({})Δ({})", b.name(i), b.name(j), b.name(i), b.name(j)));
                    }
                }
            }
            Ok(())
        })(),
    ));

    checks.push(AxiomCheck::from_result(
        "coassociativity",
        (|| {
            for x in 0..d {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for (idx, c) in b.coproduct[x].iter() {
                    let (i, j) = (idx / d, idx % d);
                    for (idx2, w) in b.coproduct[i].iter() {
                        lhs.push((idx2 * d + j, c * w));
                    }
                    for (idx2, w) in b.coproduct[j].iter() {
                        rhs.push((i * d * d + idx2, c * w));
                    }
                }
                if SparseVec::from_entries(lhs) != SparseVec::from_entries(rhs) {
                    return Err(format!("(Δ⊗id)Δ ≠ (id⊗Δ)Δ at {}", b.name(x)));
                }
            }
            Ok(())
        })(),
    ));

    checks.push(AxiomCheck::from_result(
        "counit_laws",
        (|| {
            for x in 0..d {
                let mut left = SparseVec::new();
                let mut right = SparseVec::new();
                for (idx, c) in b.coproduct[x].iter() {
                    let (i, j) = (idx / d, idx % d);
                    left = left.axpy(&(c * &eps(&e(i))), &e(j));
                    right = right.axpy(&(c * &eps(&e(j))), &e(i));
                }
                if left != e(x) || right != e(x) {
                    return Err(format!("counit law fails at {}", b.name(x)));
                }
            }
            Ok(())
        })(),
    ));

    Ok(BialgebraReport { dim: d, checks })
}
