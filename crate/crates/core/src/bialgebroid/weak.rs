use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, RingExtension};
use crate::bimodule::BalancedTensor;
use crate::linalg::{tensor, Echelon, Matrix, Scalar, SparseVec};

use super::{AxiomCheck, Bialgebroid};

const RANDOM_FUNCTIONALS: usize = 6;

/// An index-one Frobenius system `(φ, e_i, f_i)` of `R` and the resulting
/// `k`-coalgebra structure on `T`.
#[derive(Clone, Debug)]
pub struct WeakLift {
    /// φ on the basis of `R`
    pub phi: Vec<Scalar>,
    /// `e_i` and `f_i` in `R` coordinates
    pub e: Vec<SparseVec>,
    pub f: Vec<SparseVec>,
    /// Δ_w on the basis of `T`, in `T⊗_k T`
    pub coproduct: Vec<SparseVec>,
    pub counit: Vec<Scalar>,
    pub a_tensor_r_t_dim: usize,
    pub iota_rank: usize,
    pub image_dim: usize,
    pub checks: Vec<AxiomCheck>,
}

#[derive(Clone, Debug)]
pub enum WeakLiftOutcome {
    Lifted(WeakLift),
    /// The trace form of `R` is degenerate in characteristic 0; the witness
    /// lies in its radical and is nilpotent.
    NotSeparable { radical_element: SparseVec, nilpotency_index: usize },
    Inconclusive { reason: String },
}

fn trace_functional(r: &Algebra) -> Vec<Scalar> {
    let dim = r.dim();
    (0..dim)
        .map(|k| {
            let m = r.left_mult_matrix(&r.basis_vector(k));
            (0..dim).fold(r.field().zero(), |acc, i| acc + m.get(i, i))
        })
        .collect()
}

fn apply_phi(phi: &[Scalar], x: &SparseVec, zero: &Scalar) -> Scalar {
    x.iter().fold(zero.clone(), |acc, (k, c)| acc + c * &phi[*k])
}

/// Dual bases for φ, normalized so that `Σ e_i f_i = 1`.
fn index_one(r: &Algebra, phi: &[Scalar]) -> Option<(Vec<Scalar>, Vec<SparseVec>, Vec<SparseVec>)> {
    let dim = r.dim();
    let f = r.field();
    let gram = Matrix::from_rows(
        f,
        (0..dim)
            .map(|k| (0..dim).map(|l| apply_phi(phi, r.basis_product(k, l), &f.zero())).collect())
            .collect(),
    );
    let h = gram.invert().ok()?;
    let e: Vec<SparseVec> = (0..dim).map(|k| SparseVec::unit(k, f)).collect();
    let fs: Vec<SparseVec> = (0..dim).map(|k| SparseVec::from_dense(h.row(k))).collect();
    let z = e.iter().zip(&fs).fold(SparseVec::new(), |acc, (x, y)| acc.add(&r.mul_sparse(x, y)));
    let lz = r.left_mult_matrix(&z.to_dense(dim, f));
    let z_inv = SparseVec::from_dense(&lz.invert().ok()?.mul_vec(r.unit()));
    let phi2: Vec<Scalar> = (0..dim).map(|k| apply_phi(phi, &r.mul_sparse(&z, &SparseVec::unit(k, f)), &f.zero())).collect();
    let fs2 = fs.iter().map(|y| r.mul_sparse(&z_inv, y)).collect();
    Some((phi2, e, fs2))
}

/// Searches for an index-one Frobenius system of `R` and assembles the weak coalgebra on `T`.
pub fn weak_lift(ext: &RingExtension, b: &Bialgebroid, seed: u64) -> WeakLiftOutcome {
    let r = &b.base;
    let field = r.field();
    let rd = r.dim();
    let trace = trace_functional(r);
    let mut candidates = vec![trace.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_FUNCTIONALS {
        candidates.push((0..rd).map(|_| field.from_i64(rng.gen_range(-5..=5))).collect());
    }
    let Some((phi, e, f)) = candidates.iter().find_map(|phi| index_one(r, phi)) else {
        if field.characteristic() == 0 {
            let gram = Matrix::from_rows(
                field,
                (0..rd).map(|k| (0..rd).map(|l| apply_phi(&trace, r.basis_product(k, l), &field.zero())).collect()).collect(),
            );
            if let Some(v) = gram.kernel().into_iter().next() {
                let rad = SparseVec::from_dense(&v);
                let mut power = rad.clone();
                let mut k = 1;
                while !power.is_zero() && k <= rd + 1 {
                    power = r.mul_sparse(&power, &rad);
                    k += 1;
                }
                if power.is_zero() {
                    let in_a = rad.iter().fold(SparseVec::new(), |acc, (i, c)| acc.axpy(c, &ext.r_basis()[*i]));
                    return WeakLiftOutcome::NotSeparable { radical_element: in_a, nilpotency_index: k };
                }
            }
        }
        return WeakLiftOutcome::Inconclusive {
            reason: format!("no index-one system among the trace form and {RANDOM_FUNCTIONALS} random functionals"),
        };
    };
    WeakLiftOutcome::Lifted(assemble(ext, b, phi, e, f))
}

fn assemble(ext: &RingExtension, b: &Bialgebroid, phi: Vec<Scalar>, e: Vec<SparseVec>, f: Vec<SparseVec>) -> WeakLift {
    let r = &b.base;
    let field = r.field();
    let zero = field.zero();
    let d = b.dim();
    let rd = r.dim();
    let unit_t = |i: usize| SparseVec::unit(i, field);
    let mut checks = Vec::new();

    checks.push(AxiomCheck::from_result(
        "index_one_system",
        (|| {
            let z = e.iter().zip(&f).fold(SparseVec::new(), |acc, (x, y)| acc.add(&r.mul_sparse(x, y)));
            if z != b.r_one() {
                return Err("Σ e_i f_i ≠ 1".to_string());
            }
            for k in 0..rd {
                let rk = SparseVec::unit(k, field);
                let left = e.iter().zip(&f).fold(SparseVec::new(), |acc, (x, y)| acc.axpy(&apply_phi(&phi, &r.mul_sparse(&rk, x), &zero), y));
                let right = e.iter().zip(&f).fold(SparseVec::new(), |acc, (x, y)| acc.axpy(&apply_phi(&phi, &r.mul_sparse(y, &rk), &zero), x));
                if left != rk || right != rk {
                    return Err(format!("dual basis identity fails at {}", r.basis_names()[k]));
                }
            }
            Ok(())
        })(),
    ));

    // x⊗y ↦ Σ_i x·e_i ⊗ f_i·y on ring⊗_k ring
    let transport = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (idx, c) in v.iter() {
            let (p, q) = (idx / d, idx % d);
            for (ei, fi) in e.iter().zip(&f) {
                let t = tensor(&b.act_right(&unit_t(p), ei), &b.act_left(fi, &unit_t(q)), d);
                out = out.axpy(c, &t);
            }
        }
        out
    };
    let coproduct: Vec<SparseVec> = b.coproduct.iter().map(&transport).collect();
    let counit: Vec<Scalar> = b.counit.iter().map(|c| apply_phi(&phi, c, &zero)).collect();
    let eps_w = |x: &SparseVec| x.iter().fold(zero.clone(), |acc, (i, c)| acc + c * &counit[*i]);
    let delta_w = |x: &SparseVec| x.iter().fold(SparseVec::new(), |acc, (i, c)| acc.axpy(c, &coproduct[*i]));

    let q2 = b.tensor_r();
    checks.push(AxiomCheck::from_result(
        "transport_section_independent",
        (|| {
            for i in 0..d {
                let alt = q2.alt_lift(&q2.project(&b.coproduct[i]));
                if transport(&alt) != coproduct[i] {
                    return Err(format!("Δ_w depends on the representative at {}", b.name(i)));
                }
            }
            for i in 0..d {
                for k in 0..rd {
                    let rk = SparseVec::unit(k, field);
                    for j in 0..d {
                        let rel = tensor(&b.act_right(&unit_t(i), &rk), &unit_t(j), d).sub(&tensor(&unit_t(i), &b.act_left(&rk, &unit_t(j)), d));
                        if !transport(&rel).is_zero() {
                            return Err(format!("relation ({}·{})⊗{} − {}⊗({}·{}) is not killed", b.name(i), b.r_name(k), b.name(j), b.name(i), b.r_name(k), b.name(j)));
                        }
                    }
                }
            }
            Ok(())
        })(),
    ));

    checks.push(AxiomCheck::from_result(
        "weak_coassociativity",
        (|| {
            for x in 0..d {
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for (idx, c) in coproduct[x].iter() {
                    let (i, j) = (idx / d, idx % d);
                    lhs.extend(coproduct[i].iter().map(|(k, w)| (k * d + j, c * w)));
                    rhs.extend(coproduct[j].iter().map(|(k, w)| (i * d * d + k, c * w)));
                }
                if SparseVec::from_entries(lhs) != SparseVec::from_entries(rhs) {
                    return Err(format!("fails at {}", b.name(x)));
                }
            }
            Ok(())
        })(),
    ));

    checks.push(AxiomCheck::from_result(
        "weak_counit",
        (|| {
            for x in 0..d {
                let mut left = SparseVec::new();
                let mut right = SparseVec::new();
                for (idx, c) in coproduct[x].iter() {
                    let (i, j) = (idx / d, idx % d);
                    left = left.axpy(&(c * &eps_w(&unit_t(i))), &unit_t(j));
                    right = right.axpy(&(c * &eps_w(&unit_t(j))), &unit_t(i));
                }
                if left != unit_t(x) || right != unit_t(x) {
                    return Err(format!("fails at {}", b.name(x)));
                }
            }
            Ok(())
        })(),
    ));

    checks.push(AxiomCheck::from_result(
        "weak_multiplicative",
        (|| {
            for x in 0..d {
                for y in 0..d {
                    let mut prod = SparseVec::new();
                    for (ix, c) in coproduct[x].iter() {
                        for (iy, w) in coproduct[y].iter() {
                            let t = tensor(b.ring.basis_product(ix / d, iy / d), b.ring.basis_product(ix % d, iy % d), d);
                            prod = prod.axpy(&(c * w), &t);
                        }
                    }
                    if prod != delta_w(b.ring.basis_product(x, y)) {
                        return Err(format!("Δ_w({}·{}) ≠ Δ_w({})Δ_w({})", b.name(x), b.name(y), b.name(x), b.name(y)));
                    }
                }
            }
            Ok(())
        })(),
    ));

    // ι: A⊗_R T → A⊗_k T, a⊗t ↦ Σ a e_i ⊗ f_i·t; its image should be (A⊗_k T)Δ_w(1)
    let a = ext.a();
    let n = a.dim();
    let r_in_a = |x: &SparseVec| x.iter().fold(SparseVec::new(), |acc, (k, c)| acc.axpy(c, &ext.r_basis()[*k]));
    let e_a: Vec<SparseVec> = e.iter().map(r_in_a).collect();
    let unit_a = |i: usize| SparseVec::unit(i, field);
    let art = BalancedTensor::over(
        ext.r_algebra(),
        n,
        d,
        |i, k| a.mul_sparse(&unit_a(i), &ext.r_basis()[k]),
        |k, j| b.act_left(&SparseVec::unit(k, field), &unit_t(j)),
    );
    let p = |v: &SparseVec| -> SparseVec {
        let mut out = SparseVec::new();
        for (idx, c) in v.iter() {
            let (i, j) = (idx / d, idx % d);
            for (ea, fi) in e_a.iter().zip(&f) {
                out = out.axpy(c, &tensor(&a.mul_sparse(&unit_a(i), ea), &b.act_left(fi, &unit_t(j)), d));
            }
        }
        out
    };
    let mut iota = Echelon::new(field, n * d);
    for k in 0..art.dim() {
        iota.insert(&p(&art.lift(&SparseVec::unit(k, field))));
    }
    let mut image = Echelon::new(field, n * d);
    for idx in 0..n * d {
        image.insert(&p(&SparseVec::unit(idx, field)));
    }
    let (iota_rank, image_dim) = (iota.rank(), image.rank());
    checks.push(AxiomCheck::from_result(
        "iota_bijective",
        if iota_rank == art.dim() && iota_rank == image_dim {
            Ok(())
        } else {
            Err(format!("rank ι = {iota_rank}, dim A⊗_R T = {}, dim (A⊗_k T)Δ_w(1) = {image_dim}", art.dim()))
        },
    ));

    WeakLift { phi, e, f, coproduct, counit, a_tensor_r_t_dim: art.dim(), iota_rank, image_dim, checks }
}
