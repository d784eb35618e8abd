use crate::algebra::RingExtension;
use crate::bimodule::{apply_endo, SRing, TRing, TensorSquare};
use crate::linalg::{Echelon, SparseVec};

/// The `R`-valued pairing `⟨α, t⟩ = t¹α(t²)` on basis elements.
#[derive(Clone, Debug)]
pub struct Pairing {
    /// `grid[i][j]` holds `⟨α_i, t_j⟩` in `R` coordinates.
    pub grid: Vec<Vec<SparseVec>>,
    pub dim_s: usize,
    pub dim_t: usize,
    /// rank of `S → Hom_k(T, R)`
    pub rank_s: usize,
    /// rank of `T → Hom_k(S, R)`
    pub rank_t: usize,
}

impl Pairing {
    pub fn nondegenerate(&self) -> bool {
        self.dim_s == self.dim_t && self.rank_s == self.dim_s && self.rank_t == self.dim_t
    }
}

pub fn pairing(ext: &RingExtension, ts: &TensorSquare, s: &SRing, t: &TRing) -> Pairing {
    let n = ext.n();
    let a = ext.a();
    let f = ext.field();
    let rd = ext.r_basis().len();
    let lifts: Vec<SparseVec> = t.basis().iter().map(|x| ts.lift(x)).collect();
    let grid: Vec<Vec<SparseVec>> = s
        .basis()
        .iter()
        .map(|alpha| {
            lifts
                .iter()
                .map(|lift| {
                    let mut v = SparseVec::new();
                    for (idx, c) in lift.iter() {
                        let (k, l) = (idx / n, idx % n);
                        let img = apply_endo(alpha, &SparseVec::unit(l, f), n);
                        v = v.axpy(c, &a.mul_sparse(&SparseVec::unit(k, f), &img));
                    }
                    SparseVec::from_dense(&ext.r_coords(&v).expect("pairing values lie in the centralizer"))
                })
                .collect()
        })
        .collect();
    let (ds, dt) = (s.dim(), t.dim());
    let mut by_s = Echelon::new(f, dt * rd);
    for row in &grid {
        by_s.insert(&SparseVec::from_entries(row.iter().enumerate().flat_map(|(j, v)| v.iter().map(move |(k, x)| (j * rd + k, x.clone())))));
    }
    let mut by_t = Echelon::new(f, ds * rd);
    for j in 0..dt {
        by_t.insert(&SparseVec::from_entries(
            grid.iter().enumerate().flat_map(|(i, row)| row[j].iter().map(move |(k, x)| (i * rd + k, x.clone()))),
        ));
    }
    Pairing { grid, dim_s: ds, dim_t: dt, rank_s: by_s.rank(), rank_t: by_t.rank() }
}
