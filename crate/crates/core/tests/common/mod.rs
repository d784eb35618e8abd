#![allow(dead_code)]

pub mod groups;

use bialgd_core::algebra::*;
use bialgd_core::bialgebroid::*;
use bialgd_core::bimodule::*;
use bialgd_core::depth_two::*;
use bialgd_core::linalg::{Field, SparseVec};

pub fn group_ext(name: &str, sub: &[Vec<Vec<usize>>]) -> RingExtension {
    let (deg, gens) = named::by_name(name).unwrap();
    let g = PermGroup::from_cycle_lists(deg, &gens, DEFAULT_ORDER_CAP).unwrap();
    let perms: Vec<Permutation> = sub.iter().map(|c| Permutation::from_cycles(deg, c).unwrap()).collect();
    let h = g.subgroup_from(&perms).unwrap();
    subgroup_extension(&g, &h, Field::Rational).unwrap()
}

pub fn corpus() -> Vec<(&'static str, RingExtension)> {
    let q = Field::Rational;
    vec![
        ("Q|Q", RingExtension::improper(ground_field(q))),
        ("M2|M2", RingExtension::improper(matrix_algebra(q, 2))),
        ("Q(sqrt2)|Q", RingExtension::over_scalars(quadratic(q, 2))),
        ("QC2|Q", RingExtension::over_scalars(quadratic(q, 1))),
        ("S3|A3", group_ext("S3", &[vec![vec![1, 2, 3]]])),
        ("D4|<r>", group_ext("D4", &[vec![vec![1, 2, 3, 4]]])),
        ("M2|Q", RingExtension::over_scalars(matrix_algebra(q, 2))),
    ]
}

pub struct Built {
    pub ext: RingExtension,
    pub ts: TensorSquare,
    pub t: TRing,
    pub s: SRing,
    pub right: Quasibase,
    pub left: Quasibase,
}

pub fn build(ext: RingExtension) -> Built {
    let ts = TensorSquare::new(&ext);
    let t = compute_t(&ext, &ts);
    let s = compute_s(&ext);
    let d2 = is_d2(&ext, &ts, &t, &s);
    let right = d2.right.expect("right D2");
    let left = d2.left.expect("left D2");
    Built { ext, ts, t, s, right, left }
}

impl Built {
    pub fn t_bialgebroid(&self) -> Bialgebroid {
        build_t_bialgebroid(&self.ext, &self.ts, &self.t, &self.right, TMultiplication::Composition).unwrap()
    }

    pub fn s_bialgebroid(&self) -> Bialgebroid {
        build_s_bialgebroid(&self.ext, &self.ts, &self.s, &self.left).unwrap()
    }
}

pub fn failures(b: &Bialgebroid) -> Vec<String> {
    verify_bialgebroid(b).into_iter().filter(|c| !c.passed()).map(|c| c.name).collect()
}

/// Single-entry perturbations of source, target, counit, coproduct and ring product.
pub fn mutants(base: &Bialgebroid) -> Vec<(String, Bialgebroid)> {
    let f = base.field();
    let d = base.dim();
    let one = f.one();
    let bump = |v: &SparseVec, i: usize| v.axpy(&one, &SparseVec::unit(i, f));
    let q2 = base.tensor_r();
    let mut out: Vec<(String, Bialgebroid)> = Vec::new();
    for k in 0..base.r_dim() {
        let mut m = base.clone();
        m.source[k] = bump(&m.source[k], (k + 1) % d);
        out.push((format!("source[{k}]"), m));
        let mut m = base.clone();
        m.target[k] = bump(&m.target[k], (k + 2) % d);
        out.push((format!("target[{k}]"), m));
    }
    for i in [0, 1, d / 2, d - 1] {
        let mut m = base.clone();
        m.counit[i] = bump(&m.counit[i], 0);
        out.push((format!("counit[{i}]"), m));
    }
    // a pure tensor that is nonzero in the tensor square over R
    let extra = (0..d * d).map(|j| SparseVec::unit(j, f)).find(|e| !q2.project(e).is_zero()).unwrap();
    for i in [0, 1, d - 1] {
        let mut m = base.clone();
        m.coproduct[i] = m.coproduct[i].add(&extra);
        out.push((format!("coproduct[{i}]"), m));
    }
    for (i, j) in [(1, 1), (1, 2), (d - 1, d - 1)] {
        let mut m = base.clone();
        let p = bump(m.ring.basis_product(i, j), 0);
        m.ring.set_basis_product(i, j, p);
        out.push((format!("product[{i},{j}]"), m));
    }
    out
}
