//! Group-theoretic oracles computed from permutation images alone, without the
//! library's multiplication tables, span machinery or Frobenius search.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use bialgd_core::algebra::PermGroup;
use bialgd_core::bimodule::FrobeniusSystem;
use bialgd_core::linalg::{Field, Scalar, SparseVec};

pub struct GroupOracle {
    pub elems: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

fn add(acc: &mut BTreeMap<usize, Scalar>, i: usize, c: Scalar) {
    let e = acc.entry(i).or_insert_with(|| c.field().zero());
    *e = e.clone() + c;
}

fn collect(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    SparseVec::from_entries(acc.into_iter().filter(|(_, c)| !c.is_zero()))
}

impl GroupOracle {
    /// Uses the library's element numbering so vectors are comparable.
    pub fn of(g: &PermGroup) -> GroupOracle {
        let elems: Vec<Vec<usize>> = g.elements().iter().map(|p| p.images().to_vec()).collect();
        let index = elems.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        GroupOracle { elems, index }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    /// `a ∘ b`, applying `b` first.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let img: Vec<usize> = self.elems[b].iter().map(|&x| self.elems[a][x]).collect();
        self.index[&img]
    }

    pub fn inv(&self, a: usize) -> usize {
        let mut img = vec![0; self.elems[a].len()];
        for (i, &x) in self.elems[a].iter().enumerate() {
            img[x] = i;
        }
        self.index[&img]
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let hs: BTreeSet<usize> = h.iter().copied().collect();
        (0..self.order()).all(|g| h.iter().all(|&x| hs.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    fn orbit_count<T: Ord + Clone>(points: Vec<T>, moves: impl Fn(&T) -> Vec<T>) -> usize {
        let mut seen: BTreeSet<T> = BTreeSet::new();
        let mut count = 0;
        for p in points {
            if seen.contains(&p) {
                continue;
            }
            count += 1;
            let mut stack = vec![p];
            while let Some(q) = stack.pop() {
                if seen.insert(q.clone()) {
                    stack.extend(moves(&q));
                }
            }
        }
        count
    }

    /// dim of the centralizer of `k[H]` in `k[G]`: `H`-conjugacy classes of `G`.
    pub fn centralizer_dim(&self, h: &[usize]) -> usize {
        Self::orbit_count((0..self.order()).collect(), |&x| h.iter().map(|&k| self.mul(self.mul(k, x), self.inv(k))).collect())
    }

    /// dim End of `k[G]` as a `k[H]`-bimodule: `H×H` orbits on `G×G`.
    pub fn bimodule_endo_dim(&self, h: &[usize]) -> usize {
        let n = self.order();
        let pts: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        Self::orbit_count(pts, |&(x, y)| {
            let mut out = Vec::new();
            for &a in h {
                for &b in h {
                    let bi = self.inv(b);
                    out.push((self.mul(self.mul(a, x), bi), self.mul(self.mul(a, y), bi)));
                }
            }
            out
        })
    }

    /// Canonical representatives of `G ×_H G = (G×G)/((xh, y) ~ (x, hy))`.
    fn balanced_pairs(&self, h: &[usize]) -> BTreeSet<(usize, usize)> {
        let n = self.order();
        let canon = |x: usize, y: usize| h.iter().map(|&k| (self.mul(x, k), self.mul(self.inv(k), y))).min().unwrap();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| canon(x, y)).collect()
    }

    pub fn tensor_square_dim(&self, h: &[usize]) -> usize {
        self.balanced_pairs(h).len()
    }

    /// dim `(k[G]⊗_{k[H]} k[G])^H`: orbits of `H` acting by `(x, y) ↦ (kx, yk⁻¹)`.
    pub fn t_dim(&self, h: &[usize]) -> usize {
        let canon = |x: usize, y: usize| h.iter().map(|&k| (self.mul(x, k), self.mul(self.inv(k), y))).min().unwrap();
        let pts: Vec<(usize, usize)> = self.balanced_pairs(h).into_iter().collect();
        Self::orbit_count(pts, |&(x, y)| h.iter().map(|&k| canon(self.mul(k, x), self.mul(y, self.inv(k)))).collect())
    }

    /// Product in `k[G]` from the permutation images.
    pub fn product(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = BTreeMap::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                add(&mut acc, self.mul(*i, *j), x * y);
            }
        }
        collect(acc)
    }

    /// `E` given as a flat matrix (entry `p·n + q` is the `e_p` coefficient of `E(e_q)`).
    pub fn apply_flat(&self, e: &SparseVec, v: &SparseVec) -> SparseVec {
        let n = self.order();
        let mut acc = BTreeMap::new();
        for (idx, c) in e.iter() {
            if let Some(x) = v.get(idx % n) {
                add(&mut acc, idx / n, c * x);
            }
        }
        collect(acc)
    }

    /// `E(g) = g` on `H` and `0` off it; `x_i` left coset representatives, `y_i = x_i⁻¹`.
    pub fn coset_system(&self, h: &[usize], field: Field) -> FrobeniusSystem {
        let n = self.order();
        let hs: BTreeSet<usize> = h.iter().copied().collect();
        let e = SparseVec::from_entries(h.iter().map(|&q| (q * n + q, field.one())));
        let mut covered = BTreeSet::new();
        let mut reps = Vec::new();
        for g in 0..n {
            if covered.contains(&g) {
                continue;
            }
            reps.push(g);
            covered.extend(hs.iter().map(|&k| self.mul(g, k)));
        }
        FrobeniusSystem {
            e,
            x: reps.iter().map(|&g| SparseVec::unit(g, field)).collect(),
            y: reps.iter().map(|&g| SparseVec::unit(self.inv(g), field)).collect(),
        }
    }

    /// The defining identities on every group element `a`, plus `E` being an `H`-bimodule map into `k[H]`.
    pub fn check_frobenius(&self, h: &[usize], sys: &FrobeniusSystem, field: Field) -> Result<(), String> {
        let hs: BTreeSet<usize> = h.iter().copied().collect();
        let e = |v: &SparseVec| self.apply_flat(&sys.e, v);
        for a in 0..self.order() {
            let av = SparseVec::unit(a, field);
            let ea = e(&av);
            if ea.iter().any(|(i, _)| !hs.contains(i)) {
                return Err(format!("E(e_{a}) leaves k[H]"));
            }
            for &k in h {
                let kv = SparseVec::unit(k, field);
                if e(&self.product(&kv, &av)) != self.product(&kv, &ea) || e(&self.product(&av, &kv)) != self.product(&ea, &kv) {
                    return Err(format!("E is not H-bilinear at e_{a}, e_{k}"));
                }
            }
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (x, y) in sys.x.iter().zip(&sys.y) {
                left = left.add(&self.product(&e(&self.product(&av, x)), y));
                right = right.add(&self.product(x, &e(&self.product(y, &av))));
            }
            if left != av {
                return Err(format!("Σ E(a x_i) y_i ≠ a at e_{a}"));
            }
            if right != av {
                return Err(format!("Σ x_i E(y_i a) ≠ a at e_{a}"));
            }
        }
        Ok(())
    }
}
