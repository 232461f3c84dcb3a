//! Finite matrix groups held as fully enumerated element lists with
//! multiplication and inverse tables, their subgroups, conjugacy, normalizers
//! and quotients.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    elements: Vec<ExactMatrix>,
    generators: Vec<usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    index: HashMap<ExactMatrix, usize>,
}

/// Subgroup as a sorted set of element indices of its parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Wraps an index set, sorting and deduplicating it. Closure is not checked here.
    pub fn from_indices(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&i| other.contains(i))
    }
}

impl FiniteMatrixGroup {
    /// Enumerates the group generated by `generators` breadth-first from the identity.
    pub fn close(generators: &[ExactMatrix], cap: usize) -> Result<Self> {
        let n = match generators.first() {
            Some(g) => g.rows(),
            None => {
                return Err(Error::InvalidRepresentation(
                    "at least one generator is required (use the identity for the trivial group)".into(),
                ))
            }
        };
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.rows().max(g.cols()),
                });
            }
            if g.inverse().is_err() {
                return Err(Error::NonInvertibleGenerator(i));
            }
        }
        let mut elements = vec![ExactMatrix::identity(n)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in generators {
                let prod = &elements[e] * g;
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(Error::GroupNotFiniteWithinCap(cap));
                    }
                    index.insert(prod.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(prod);
                }
            }
        }
        let order = elements.len();
        let mut table = vec![vec![0usize; order]; order];
        for i in 0..order {
            for j in 0..order {
                let prod = &elements[i] * &elements[j];
                table[i][j] = *index
                    .get(&prod)
                    .ok_or_else(|| Error::Inconsistent("closure is not multiplicatively closed".into()))?;
            }
        }
        let inverses = (0..order)
            .map(|i| table[i].iter().position(|&k| k == 0).expect("finite group element has an inverse"))
            .collect();
        let generators = generators.iter().map(|g| index[g]).collect();
        Ok(Self {
            elements,
            generators,
            table,
            inverses,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactMatrix {
        &self.elements[i]
    }

    /// Indices of the generators used for closure, in the order given.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_indices((0..self.order()).collect())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_indices(vec![0])
    }

    /// Smallest subgroup containing the given element indices.
    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let p = self.table[e][g];
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    queue.push_back(p);
                }
            }
        }
        Subgroup::from_indices(out)
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        h.contains(0)
            && h.elements.iter().all(|&i| i < self.order())
            && h.elements
                .iter()
                .all(|&a| h.contains(self.inverses[a]) && h.elements.iter().all(|&b| h.contains(self.table[a][b])))
    }

    /// `x h x^-1` as an index set.
    pub fn conjugate(&self, h: &Subgroup, x: usize) -> Subgroup {
        let xi = self.inverses[x];
        Subgroup::from_indices(h.elements.iter().map(|&e| self.table[self.table[x][e]][xi]).collect())
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup::from_indices(
            (0..self.order()).filter(|&x| self.conjugate(h, x) == *h).collect(),
        ))
    }

    /// Returns a conjugating element `x` with `x h1 x^-1 = h2`, if one exists.
    pub fn are_conjugate(&self, h1: &Subgroup, h2: &Subgroup) -> Option<usize> {
        if h1.order() != h2.order() {
            return None;
        }
        (0..self.order()).find(|&x| self.conjugate(h1, x) == *h2)
    }

    /// True iff `h1` is conjugate to a subgroup of `h2`.
    pub fn is_subconjugate(&self, h1: &Subgroup, h2: &Subgroup) -> bool {
        h2.order().is_multiple_of(h1.order()) && (0..self.order()).any(|x| self.conjugate(h1, x).is_subset_of(h2))
    }

    pub fn is_normal_in(&self, h: &Subgroup, n: &Subgroup) -> bool {
        h.is_subset_of(n) && n.elements.iter().all(|&x| self.conjugate(h, x) == *h)
    }

    /// Left cosets `x h` of `h` inside `n`, each represented by its smallest index.
    pub fn coset_representatives(&self, n: &Subgroup, h: &Subgroup) -> Vec<usize> {
        let mut covered = HashSet::new();
        let mut reps = Vec::new();
        for &x in &n.elements {
            if covered.contains(&x) {
                continue;
            }
            reps.push(x);
            for &e in &h.elements {
                covered.insert(self.table[x][e]);
            }
        }
        reps
    }

    pub fn quotient(&self, n: &Subgroup, h: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_subgroup(n) || !self.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        if !self.is_normal_in(h, n) {
            return Err(Error::NotNormal);
        }
        let reps = self.coset_representatives(n, h);
        let mut coset_of = HashMap::new();
        for (k, &r) in reps.iter().enumerate() {
            for &e in &h.elements {
                coset_of.insert(self.table[r][e], k);
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[&self.table[a][b]]).collect())
            .collect();
        Ok(QuotientGroup {
            numerator: n.clone(),
            denominator: h.clone(),
            representatives: reps,
            table,
        })
    }

    /// All subgroups grouped into conjugacy classes.
    ///
    /// Subgroups are found by starting from the cyclic ones and repeatedly
    /// joining with a cyclic subgroup until nothing new appears.
    pub fn subgroup_classes(&self, cap: usize) -> Result<SubgroupLattice> {
        if self.order() > cap {
            return Err(Error::SizeCapExceeded {
                size: self.order(),
                cap,
            });
        }
        let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
        let mut seen: HashSet<Subgroup> = HashSet::new();
        for g in 0..self.order() {
            let c = self.generated(&[g]);
            if seen.insert(c.clone()) {
                cyclic.push((g, c));
            }
        }
        // each entry keeps a small generating set
        let mut all: Vec<(Vec<usize>, Subgroup)> = cyclic.iter().map(|(g, c)| (vec![*g], c.clone())).collect();
        let mut i = 0;
        while i < all.len() {
            let (gens, sub) = all[i].clone();
            for (g, c) in &cyclic {
                if c.is_subset_of(&sub) {
                    continue;
                }
                let mut ng = gens.clone();
                ng.push(*g);
                let joined = self.generated(&ng);
                if seen.insert(joined.clone()) {
                    all.push((ng, joined));
                }
            }
            i += 1;
        }
        let mut subgroups: Vec<Subgroup> = all.into_iter().map(|(_, s)| s).collect();
        subgroups.sort();
        let mut class_of: HashMap<Subgroup, usize> = HashMap::new();
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        for s in &subgroups {
            if class_of.contains_key(s) {
                continue;
            }
            let mut members: Vec<Subgroup> = (0..self.order()).map(|x| self.conjugate(s, x)).collect();
            members.sort();
            members.dedup();
            for m in &members {
                class_of.insert(m.clone(), classes.len());
            }
            classes.push(members);
        }
        let mut classes: Vec<SubgroupClass> = classes
            .into_iter()
            .map(|members| SubgroupClass {
                representative: members[0].clone(),
                members,
            })
            .collect();
        classes.sort_by(|a, b| {
            a.representative
                .order()
                .cmp(&b.representative.order())
                .then_with(|| a.representative.elements.cmp(&b.representative.elements))
        });
        Ok(SubgroupLattice { classes })
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    /// Lexicographically smallest index set among the members.
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// Conjugacy classes of subgroups ordered by (order, representative).
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
}

impl SubgroupLattice {
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.classes.iter().position(|c| c.members.binary_search(h).is_ok())
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub numerator: Subgroup,
    pub denominator: Subgroup,
    /// One parent-group index per coset; index 0 is the identity coset.
    pub representatives: Vec<usize>,
    pub table: Vec<Vec<usize>>,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

/// 0/1 permutation matrix sending basis vector `i` to `perm[i]` (zero based).
pub fn permutation_matrix(perm: &[usize]) -> ExactMatrix {
    let n = perm.len();
    let mut m = ExactMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        m.set(j, i, crate::exact::int(1));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> FiniteMatrixGroup {
        FiniteMatrixGroup::close(&[permutation_matrix(&[1, 0, 2]), permutation_matrix(&[1, 2, 0])], 100).unwrap()
    }

    pub(crate) fn octahedral() -> FiniteMatrixGroup {
        let rz = ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let rx = ExactMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]);
        FiniteMatrixGroup::close(&[rz, rx], 100).unwrap()
    }

    /// Oracle: a group of order n is generated by at most log2(n) elements, so
    /// adjoining arbitrary elements log2(n) times from the trivial group reaches
    /// every subgroup. Classes are then formed by pairwise conjugacy tests.
    fn brute_force_class_count(g: &FiniteMatrixGroup) -> (usize, usize) {
        let n = g.order();
        let rounds = (usize::BITS - n.leading_zeros()) as usize;
        let mut layer: HashSet<Subgroup> = HashSet::from([g.trivial()]);
        let mut subs: HashSet<Subgroup> = layer.clone();
        for _ in 0..rounds {
            let mut next = HashSet::new();
            for h in &layer {
                for b in 0..n {
                    let mut gens = h.elements().to_vec();
                    gens.push(b);
                    next.insert(g.generated(&gens));
                }
            }
            subs.extend(next.iter().cloned());
            layer = next;
        }
        let subs: Vec<Subgroup> = subs.into_iter().collect();
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        for s in &subs {
            if !classes.iter().any(|c| c.iter().any(|t| g.are_conjugate(t, s).is_some())) {
                classes.push(vec![s.clone()]);
            }
        }
        (subs.len(), classes.len())
    }

    fn exhaustive_subsets(g: &FiniteMatrixGroup) -> Vec<Subgroup> {
        let n = g.order();
        (0u32..(1 << n))
            .map(|mask| Subgroup::from_indices((0..n).filter(|i| mask & (1 << i) != 0).collect()))
            .filter(|s| s.order() > 0 && g.is_subgroup(s))
            .collect()
    }

    #[test]
    fn closure_orders() {
        let minus = ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]]);
        assert_eq!(FiniteMatrixGroup::close(&[minus], 10).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(octahedral().order(), 24);
        // a quarter turn about z with a half turn about x only reaches the dihedral group of order 8
        let rz = ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let hx = ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let d4 = FiniteMatrixGroup::close(&[rz, hx], 100).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.subgroup_classes(1000).unwrap().classes.len(), 8);
    }

    #[test]
    fn octahedral_matches_signed_permutation_enumeration() {
        let g = octahedral();
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let mut count = 0;
        for p in perms {
            for signs in 0..8 {
                let mut m = ExactMatrix::zeros(3, 3);
                for (i, &j) in p.iter().enumerate() {
                    let s = if signs & (1 << i) != 0 { -1 } else { 1 };
                    m.set(i, j, crate::exact::int(s));
                }
                if m.determinant().unwrap() == crate::exact::int(1) {
                    count += 1;
                    assert!(g.index_of(&m).is_some());
                }
            }
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn closure_errors() {
        let rot = ExactMatrix::from_i64(&[&[1, -1], &[1, 1]]);
        assert_eq!(FiniteMatrixGroup::close(&[rot], 50).unwrap_err(), Error::GroupNotFiniteWithinCap(50));
        let sing = ExactMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(FiniteMatrixGroup::close(&[sing], 50).unwrap_err(), Error::NonInvertibleGenerator(0));
    }

    #[test]
    fn tables_are_consistent() {
        let g = octahedral();
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(g.index_of(&(g.element(i) * g.element(j))), Some(g.mul(i, j)));
            }
            assert_eq!(g.mul(i, g.inverse(i)), 0);
        }
    }

    #[test]
    fn subgroup_classes_against_brute_force() {
        let g = s3();
        let exhaustive = exhaustive_subsets(&g);
        let lattice = g.subgroup_classes(1000).unwrap();
        assert_eq!(lattice.subgroup_count(), exhaustive.len());
        assert_eq!(lattice.classes.len(), 4);
        let orders: Vec<usize> = lattice.classes.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);

        let o = octahedral();
        let lattice = o.subgroup_classes(1000).unwrap();
        let (subs, classes) = brute_force_class_count(&o);
        assert_eq!(lattice.subgroup_count(), subs);
        assert_eq!(lattice.classes.len(), classes);
        assert_eq!(classes, 11);
        assert_eq!(subs, 30);
        let d2 = o.generated(&[
            o.index_of(&ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])).unwrap(),
            o.index_of(&ExactMatrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap(),
        ]);
        assert_eq!(d2.order(), 4);
        assert!(lattice.class_of(&d2).is_some());

        let c2 = FiniteMatrixGroup::close(&[ExactMatrix::from_i64(&[&[-1]])], 10).unwrap();
        assert_eq!(c2.subgroup_classes(10).unwrap().classes.len(), 2);
    }

    #[test]
    fn normalizers() {
        let g = s3();
        let swap = g.index_of(&permutation_matrix(&[1, 0, 2])).unwrap();
        let c2 = g.generated(&[swap]);
        assert_eq!(g.normalizer(&c2).unwrap(), c2);
        assert_eq!(g.normalizer(&g.whole()).unwrap(), g.whole());
        let bogus = Subgroup::from_indices(vec![0, 1, 2]);
        assert!(!g.is_subgroup(&bogus) || bogus.order() == 3);

        let o = octahedral();
        let d2 = o.generated(&[
            o.index_of(&ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])).unwrap(),
            o.index_of(&ExactMatrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap(),
        ]);
        assert_eq!(o.normalizer(&d2).unwrap().order(), 24);
        let q = o.quotient(&o.whole(), &d2).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
    }

    #[test]
    fn quotients() {
        let g = s3();
        assert_eq!(g.quotient(&g.whole(), &g.whole()).unwrap().order(), 1);
        let swap = g.index_of(&permutation_matrix(&[1, 0, 2])).unwrap();
        let c2 = g.generated(&[swap]);
        assert_eq!(g.quotient(&g.whole(), &c2).unwrap_err(), Error::NotNormal);

        let r = ExactMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let c4 = FiniteMatrixGroup::close(&[r], 10).unwrap();
        let minus = c4.index_of(&ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]])).unwrap();
        let c2 = c4.generated(&[minus]);
        assert_eq!(c4.quotient(&c4.whole(), &c2).unwrap().order(), 2);
    }

    #[test]
    fn conjugacy_queries() {
        let g = s3();
        let c2s: Vec<Subgroup> = [[1, 0, 2], [0, 2, 1], [2, 1, 0]]
            .iter()
            .map(|p| g.generated(&[g.index_of(&permutation_matrix(p)).unwrap()]))
            .collect();
        for a in &c2s {
            for b in &c2s {
                let x = g.are_conjugate(a, b).unwrap();
                assert_eq!(g.conjugate(a, x), *b);
            }
        }
        let c3 = g.generated(&[g.index_of(&permutation_matrix(&[1, 2, 0])).unwrap()]);
        assert_eq!(g.are_conjugate(&c2s[0], &c3), None);
        assert_eq!(g.are_conjugate(&c3, &c3), Some(0));
    }

    #[test]
    fn conjugation_preserves_class_and_normalizer_properties() {
        let o = octahedral();
        let lattice = o.subgroup_classes(1000).unwrap();
        for class in &lattice.classes {
            for h in &class.members {
                let n = o.normalizer(h).unwrap();
                assert_eq!(n.order() % h.order(), 0);
                assert!(o.is_normal_in(h, &n));
                for x in 0..o.order() {
                    let c = o.conjugate(h, x);
                    assert_eq!(lattice.class_of(&c), lattice.class_of(h));
                    if c.is_subset_of(h) {
                        assert_eq!(c, *h);
                    }
                }
            }
        }
    }
}
