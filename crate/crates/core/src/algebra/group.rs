//! Permutation groups, their group algebras and subgroup lattices.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::linalg::{Field, SparseVec};

use super::structure::Algebra;
use super::AlgebraError;

/// Default cap on the order of a generated group.
pub const DEFAULT_ORDER_CAP: usize = 512;
/// Default cap on the order of a group whose full subgroup lattice is scanned.
pub const DEFAULT_SCAN_CAP: usize = 24;

/// A permutation of `{0, …, degree-1}` stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree).collect())
    }

    /// From disjoint or overlapping 1-based cycles, composed right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles {
            let mut seen = BTreeSet::new();
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(AlgebraError::Group(format!("point {p} outside 1..={degree}")));
                }
                if !seen.insert(p) {
                    return Err(AlgebraError::Group(format!("point {p} repeated in cycle {cycle:?}")));
                }
            }
            let mut img: Vec<usize> = (0..degree).collect();
            for (k, &p) in cycle.iter().enumerate() {
                img[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            acc = acc.compose(&Permutation(img));
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle notation with 1-based points, `"e"` for the identity.
    pub fn cycle_notation(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut p = self.0[start];
            while p != start {
                seen[p] = true;
                cyc.push(p + 1);
                p = self.0[p];
            }
            let body: Vec<String> = cyc.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("({})", body.join(" ")));
        }
        if out.is_empty() {
            "e".into()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// A finite permutation group with its elements in lexicographic order of
/// their image lists (so the identity comes first).
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: Vec<usize>,
}

impl PermGroup {
    /// Closure of the generators under composition; fails once more than `cap` elements appear.
    pub fn generate(degree: usize, generators: &[Permutation], cap: usize) -> Result<PermGroup, AlgebraError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(AlgebraError::Group(format!("generator {g} has degree {} not {degree}", g.degree())));
        }
        let id = Permutation::identity(degree);
        let mut found: BTreeSet<Permutation> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x);
                if found.insert(y.clone()) {
                    if found.len() > cap {
                        return Err(AlgebraError::OrderCapExceeded { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(PermGroup::from_elements(degree, found.into_iter().collect()))
    }

    /// Parses 1-based cycle lists per generator.
    pub fn from_cycle_lists(degree: usize, gens: &[Vec<Vec<usize>>], cap: usize) -> Result<PermGroup, AlgebraError> {
        let perms = gens.iter().map(|c| Permutation::from_cycles(degree, c)).collect::<Result<Vec<_>, _>>()?;
        PermGroup::generate(degree, &perms, cap)
    }

    fn from_elements(degree: usize, elements: Vec<Permutation>) -> PermGroup {
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elements.len();
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elements[i].compose(&elements[j])];
            }
        }
        PermGroup { degree, elements, index, table }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `g_i ∘ g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// Sorted element indices of the subgroup generated by the given indices.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut found = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if found.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Every subgroup, ordered by order then by sorted element list.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        all.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            let members: BTreeSet<usize> = h.iter().copied().collect();
            for g in 0..n {
                if members.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if all.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = all.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let members: BTreeSet<usize> = sub.iter().copied().collect();
        (0..self.order()).all(|g| {
            let gi = self.inverse(g);
            sub.iter().all(|&h| members.contains(&self.mul(self.mul(g, h), gi)))
        })
    }

    /// Group algebra `k[G]`: basis indexed by elements, `e_g e_h = e_{gh}`.
    pub fn group_algebra(&self, field: Field) -> Algebra {
        let n = self.order();
        let names = self.elements.iter().map(|p| p.cycle_notation()).collect();
        let mult = (0..n * n).map(|idx| SparseVec::unit(self.table[idx], field)).collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Algebra::from_table(field, names, mult, unit)
    }
}

/// Generators of a few small groups, as 1-based cycle lists.
pub mod named {
    pub fn cyclic(n: usize) -> (usize, Vec<Vec<Vec<usize>>>) {
        if n == 1 {
            return (1, vec![]);
        }
        (n, vec![vec![(1..=n).collect()]])
    }

    pub fn symmetric3() -> (usize, Vec<Vec<Vec<usize>>>) {
        (3, vec![vec![vec![1, 2]], vec![vec![1, 2, 3]]])
    }

    /// Symmetries of a square with vertices 1..4: rotation r = (1 2 3 4), reflection s = (2 4).
    pub fn dihedral4() -> (usize, Vec<Vec<Vec<usize>>>) {
        (4, vec![vec![vec![1, 2, 3, 4]], vec![vec![2, 4]]])
    }

    /// Quaternion group in its regular representation on 8 points.
    pub fn quaternion() -> (usize, Vec<Vec<Vec<usize>>>) {
        (8, vec![vec![vec![1, 2, 3, 4], vec![5, 6, 7, 8]], vec![vec![1, 5, 3, 7], vec![2, 8, 4, 6]]])
    }

    pub fn symmetric4() -> (usize, Vec<Vec<Vec<usize>>>) {
        (4, vec![vec![vec![1, 2]], vec![vec![1, 2, 3, 4]]])
    }

    pub fn by_name(name: &str) -> Option<(usize, Vec<Vec<Vec<usize>>>)> {
        Some(match name {
            "C1" => cyclic(1),
            "C2" => cyclic(2),
            "C3" => cyclic(3),
            "C4" => cyclic(4),
            "C6" => cyclic(6),
            "S3" => symmetric3(),
            "D4" => dihedral4(),
            "Q8" => quaternion(),
            "S4" => symmetric4(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(spec: (usize, Vec<Vec<Vec<usize>>>)) -> PermGroup {
        PermGroup::from_cycle_lists(spec.0, &spec.1, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(named::cyclic(1)).order(), 1);
        assert_eq!(group(named::cyclic(2)).order(), 2);
        assert_eq!(group(named::symmetric3()).order(), 6);
        assert_eq!(group(named::dihedral4()).order(), 8);
        assert_eq!(group(named::quaternion()).order(), 8);
        assert_eq!(group(named::symmetric4()).order(), 24);
    }

    #[test]
    fn identity_is_first() {
        let g = group(named::dihedral4());
        assert!(g.elements()[0].is_identity());
        assert_eq!(g.elements()[0].cycle_notation(), "e");
    }

    #[test]
    fn cap_is_enforced() {
        let (d, gens) = named::symmetric4();
        assert!(matches!(PermGroup::from_cycle_lists(d, &gens, 10), Err(AlgebraError::OrderCapExceeded { cap: 10 })));
    }

    #[test]
    fn bad_cycles_rejected() {
        assert!(Permutation::from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 1]]).is_err());
    }

    #[test]
    fn subgroup_counts_and_normality() {
        // subgroup lattices: S3 has 6 subgroups (3 normal), D4 has 10 (6 normal),
        // Q8 has 6 (all normal), S4 has 30 (4 normal)
        for (spec, total, normal) in [
            (named::symmetric3(), 6, 3),
            (named::dihedral4(), 10, 6),
            (named::quaternion(), 6, 6),
            (named::symmetric4(), 30, 4),
            (named::cyclic(2), 2, 2),
        ] {
            let g = group(spec);
            let subs = g.subgroups();
            assert_eq!(subs.len(), total);
            assert_eq!(subs.iter().filter(|h| g.is_normal(h)).count(), normal);
            for h in &subs {
                assert_eq!(g.order() % h.len(), 0, "Lagrange");
            }
        }
    }

    #[test]
    fn group_algebra_is_an_algebra() {
        let g = group(named::symmetric3());
        let a = g.group_algebra(Field::Rational);
        assert_eq!(a.dim(), 6);
        a.verify().unwrap();
        let trivial = group(named::cyclic(1)).group_algebra(Field::Rational);
        assert_eq!(trivial.dim(), 1);
    }

    #[test]
    fn composition_convention() {
        let a = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![2, 3]]).unwrap();
        // (1 2)∘(2 3) sends 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        assert_eq!(a.compose(&b).cycle_notation(), "(1 2 3)");
    }
}
