//! Isotropy stratification of a finite linear group action: isotropy classes
//! with witnesses and their poset, principal isotropy, monodromy groups
//! `N(H)/H` acting on fixed loci, and equations of closed strata.

use num_traits::{pow, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, int, ExactMatrix, ExactScalar, ExactVector};
use crate::group::{QuotientGroup, Subgroup, SubgroupLattice};
use crate::poly::MultiPoly;
use crate::rep::{LinearSubspace, Representation};

pub const DEFAULT_EQUATION_CAP: usize = 2000;

/// `sum_i (i+1)^k b_i`, the `k`-th deterministic sample in the span of `basis`.
pub fn sample_point(basis: &[ExactVector], ambient: usize, k: u32) -> ExactVector {
    let mut v = vec![ExactScalar::zero(); ambient];
    for (i, b) in basis.iter().enumerate() {
        let c = pow(int(i as i64 + 1), k as usize);
        for (x, y) in v.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    v
}

/// Number of samples after which every proper fixed subspace has been
/// avoided: `sum_i c_i (i+1)^k` vanishes for at most `m - 1` values of `k`
/// unless every `c_i` does, so each group element spoils at most `m - 1` samples.
fn sample_budget(m: usize, order: usize) -> u32 {
    (m.max(1) * order + 1) as u32
}

/// Point of `V^H` whose stabilizer is exactly `h`, or `None` when some
/// element outside `h` fixes all of `V^H` (then `h` is not an isotropy subgroup).
pub fn open_fixed_witness(rep: &Representation, h: &Subgroup) -> Result<Option<ExactVector>> {
    let n = rep.dim();
    let w = rep.fixed_locus(h);
    let outside: Vec<usize> = (0..rep.group().order()).filter(|&g| !h.contains(g)).collect();
    for &g in &outside {
        if w.basis().iter().all(|b| rep.apply(g, b).map(|x| x == *b).unwrap_or(false)) {
            return Ok(None);
        }
    }
    for k in 1..=sample_budget(w.dim(), rep.group().order()) {
        let v = sample_point(w.basis(), n, k);
        let mut exact = true;
        for &g in &outside {
            if rep.apply(g, &v)? == v {
                exact = false;
                break;
            }
        }
        if exact {
            return Ok(Some(v));
        }
    }
    Err(Error::Inconsistent("witness sampling exceeded its guaranteed budget".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub id: usize,
    /// Index of the conjugacy class in the subgroup lattice.
    pub lattice_class: usize,
    pub representative: Subgroup,
    pub fixed_locus: LinearSubspace,
    pub witness: ExactVector,
    /// Ids of the classes immediately below this one in the order `[H1] <= [H2]`
    /// iff `H1` is conjugate into `H2`.
    pub covers: Vec<usize>,
}

impl StratumRecord {
    pub fn order(&self) -> usize {
        self.representative.order()
    }

    pub fn fixed_dim(&self) -> usize {
        self.fixed_locus.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Stratification {
    pub lattice: SubgroupLattice,
    pub records: Vec<StratumRecord>,
}

/// Isotropy classes ordered by decreasing `|H|`, then by representative.
pub fn isotropy_classes(rep: &Representation, cap: usize) -> Result<Stratification> {
    let group = rep.group();
    let lattice = group.subgroup_classes(cap)?;
    let mut found = Vec::new();
    for (ci, class) in lattice.classes.iter().enumerate() {
        if let Some(w) = open_fixed_witness(rep, &class.representative)? {
            found.push((ci, class.representative.clone(), w));
        }
    }
    found.sort_by(|a, b| b.1.order().cmp(&a.1.order()).then_with(|| a.1.cmp(&b.1)));
    let below = |i: usize, j: usize| {
        i != j && group.is_subconjugate(&found[i].1, &found[j].1) && found[i].1.order() < found[j].1.order()
    };
    let records = (0..found.len())
        .map(|j| {
            let covers = (0..found.len())
                .filter(|&i| below(i, j) && !(0..found.len()).any(|k| below(i, k) && below(k, j)))
                .collect();
            let (ci, rep_h, w) = &found[j];
            StratumRecord {
                id: j,
                lattice_class: *ci,
                representative: rep_h.clone(),
                fixed_locus: rep.fixed_locus(rep_h),
                witness: w.clone(),
                covers,
            }
        })
        .collect();
    Ok(Stratification { lattice, records })
}

impl Stratification {
    pub fn record_of_class(&self, lattice_class: usize) -> Option<&StratumRecord> {
        self.records.iter().find(|r| r.lattice_class == lattice_class)
    }

    /// `[records[a]] <= [records[b]]`.
    pub fn precedes(&self, rep: &Representation, a: usize, b: usize) -> bool {
        rep.group()
            .is_subconjugate(&self.records[a].representative, &self.records[b].representative)
    }

    /// Class id of the stabilizer of `v`.
    pub fn membership(&self, rep: &Representation, v: &[ExactScalar]) -> Result<usize> {
        let stab = rep.stabilizer(v)?;
        let class = self
            .lattice
            .class_of(&stab)
            .ok_or_else(|| Error::Inconsistent("stabilizer missing from the subgroup lattice".into()))?;
        self.record_of_class(class)
            .map(|r| r.id)
            .ok_or_else(|| Error::Inconsistent("stabilizer class has no isotropy record".into()))
    }

    /// The least class, cross-checked against the stabilizer of a generic sample point.
    pub fn principal(&self, rep: &Representation) -> Result<usize> {
        let n = self.records.len();
        let minimal = (0..n)
            .find(|&a| (0..n).all(|b| self.precedes(rep, a, b)))
            .ok_or_else(|| Error::Inconsistent("isotropy poset has no least element".into()))?;
        let v = generic_point(rep)?;
        let sampled = self.membership(rep, &v)?;
        if sampled != minimal {
            return Err(Error::Inconsistent(format!(
                "poset minimum {minimal} disagrees with generic stabilizer class {sampled}"
            )));
        }
        Ok(minimal)
    }
}

/// First sample of the whole space fixed only by elements acting trivially.
pub fn generic_point(rep: &Representation) -> Result<ExactVector> {
    let n = rep.dim();
    let whole = LinearSubspace::whole(n);
    let nontrivial: Vec<usize> = (0..rep.group().order())
        .filter(|&g| !rep.action(g).is_identity())
        .collect();
    for k in 1..=sample_budget(n, rep.group().order()) {
        let v = sample_point(whole.basis(), n, k);
        let mut generic = true;
        for &g in &nontrivial {
            if rep.apply(g, &v)? == v {
                generic = false;
                break;
            }
        }
        if generic {
            return Ok(v);
        }
    }
    Err(Error::Inconsistent("generic sampling exceeded its guaranteed budget".into()))
}

pub fn stratum_membership(rep: &Representation, strata: &Stratification, v: &[ExactScalar]) -> Result<usize> {
    strata.membership(rep, v)
}

pub fn principal_isotropy(rep: &Representation, strata: &Stratification) -> Result<usize> {
    strata.principal(rep)
}

/// `N(H)/H` acting on `V^H` in a chosen basis.
#[derive(Clone, Debug)]
pub struct MonodromyRep {
    pub quotient: QuotientGroup,
    pub basis: Vec<ExactVector>,
    /// One matrix per coset representative, in the quotient's order.
    pub matrices: Vec<ExactMatrix>,
}

impl MonodromyRep {
    pub fn order(&self) -> usize {
        self.quotient.order()
    }
}

/// Matrix of `rho(g)` restricted to the span of `basis`, which it must preserve.
pub fn restricted_matrix(rep: &Representation, g: usize, basis: &[ExactVector]) -> Result<ExactMatrix> {
    let mut columns = Vec::with_capacity(basis.len());
    for b in basis {
        let img = rep.apply(g, b)?;
        let c = LinearSubspace::coordinates_in(basis, &img)?
            .ok_or_else(|| Error::Inconsistent("element does not preserve the subspace".into()))?;
        columns.push(c);
    }
    ExactMatrix::from_columns(&columns, basis.len())
}

/// Checks that `basis` spans `w` and returns it, or the canonical basis of `w` when absent.
pub fn resolve_basis(w: &LinearSubspace, basis: Option<&[ExactVector]>) -> Result<Vec<ExactVector>> {
    match basis {
        None => Ok(w.basis().to_vec()),
        Some(b) => {
            let span = LinearSubspace::span(b, w.ambient_dimension())?;
            if span != *w || b.len() != w.dim() {
                return Err(Error::Inconsistent("the given basis does not span the fixed locus".into()));
            }
            Ok(b.to_vec())
        }
    }
}

/// Monodromy representation of an isotropy subgroup, with faithfulness and
/// `N(H) = {g : g V^H in V^H}` verified.
pub fn monodromy_rep(rep: &Representation, h: &Subgroup, basis: Option<&[ExactVector]>) -> Result<MonodromyRep> {
    let group = rep.group();
    if !group.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    if open_fixed_witness(rep, h)?.is_none() {
        return Err(Error::NotAnIsotropyClass);
    }
    let w = rep.fixed_locus(h);
    let basis = resolve_basis(&w, basis)?;
    let normalizer = group.normalizer(h)?;
    if rep.subspace_stabilizer(&w) != normalizer {
        return Err(Error::Inconsistent("setwise stabilizer of the fixed locus differs from the normalizer".into()));
    }
    let quotient = group.quotient(&normalizer, h)?;
    let matrices = quotient
        .representatives
        .iter()
        .map(|&g| restricted_matrix(rep, g, &basis))
        .collect::<Result<Vec<_>>>()?;
    for (i, a) in matrices.iter().enumerate() {
        if matrices[..i].contains(a) {
            return Err(Error::Inconsistent("monodromy representation is not faithful".into()));
        }
    }
    Ok(MonodromyRep {
        quotient,
        basis,
        matrices,
    })
}

/// Distinct restrictions to `w` of the group elements preserving it, first
/// appearance order. For a subgroup given only through Lie data this is the
/// finite residual symmetry of its fixed locus.
pub fn residual_action(rep: &Representation, w: &LinearSubspace, basis: Option<&[ExactVector]>) -> Result<Vec<ExactMatrix>> {
    let basis = resolve_basis(w, basis)?;
    let mut out: Vec<ExactMatrix> = Vec::new();
    for &g in rep.subspace_stabilizer(w).elements() {
        let m = restricted_matrix(rep, g, &basis)?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Products `prod_t l_{f(t)}(g_t^{-1} x)` over choice functions `f`, where
/// `g_t` run over `G/N(H)` and `l_i` over the annihilator forms of `V^H`.
/// Their common zeros are exactly `G V^H`.
pub fn closed_stratum_equations(rep: &Representation, h: &Subgroup, cap: usize) -> Result<Vec<MultiPoly>> {
    let group = rep.group();
    if !group.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    if open_fixed_witness(rep, h)?.is_none() {
        return Err(Error::NotAnIsotropyClass);
    }
    let vars = rep.coordinates().to_vec();
    let w = rep.fixed_locus(h);
    let forms = w.annihilator();
    if forms.is_empty() {
        return Ok(Vec::new());
    }
    let normalizer = group.normalizer(h)?;
    let cosets = group.coset_representatives(&group.whole(), &normalizer);
    let c = forms.len();
    let r = cosets.len();
    let size = (c as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCapExceeded {
            size: size.min(usize::MAX as u128) as usize,
            cap,
        });
    }
    // translated forms: l(g^{-1} x) has coefficient row l * rho(g)^{-1}
    let translated: Vec<Vec<MultiPoly>> = cosets
        .iter()
        .map(|&g| {
            let inv = rep.action_inverse(g);
            forms
                .iter()
                .map(|l| {
                    let row: ExactVector = (0..vars.len())
                        .map(|j| dot(l, &inv.column(j)))
                        .collect();
                    MultiPoly::linear_form(&vars, &row)
                })
                .collect()
        })
        .collect();
    let mut out: Vec<MultiPoly> = Vec::new();
    let mut choice = vec![0usize; r];
    loop {
        let mut p = MultiPoly::constant(&vars, int(1));
        for (t, &f) in choice.iter().enumerate() {
            p = &p * &translated[t][f];
        }
        if !out.contains(&p) {
            out.push(p);
        }
        let mut t = r;
        loop {
            if t == 0 {
                return Ok(out);
            }
            t -= 1;
            choice[t] += 1;
            if choice[t] < c {
                break;
            }
            choice[t] = 0;
        }
    }
}

/// Whether `v` satisfies every equation.
pub fn satisfies_all(equations: &[MultiPoly], v: &[ExactScalar]) -> Result<bool> {
    for e in equations {
        if !e.eval(v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::permutation_matrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn s3() -> Representation {
        Representation::permutation(&[vec![2, 1, 3], vec![2, 3, 1]], 3, 100).unwrap()
    }

    fn sign2() -> Representation {
        Representation::matrix(&[ExactMatrix::from_i64(&[&[-1, 0], &[0, -1]])], Vec::new(), None, 10).unwrap()
    }

    fn octahedral_gens() -> Vec<ExactMatrix> {
        vec![
            ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
            ExactMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        ]
    }

    fn h2() -> Representation {
        Representation::harmonic(2, &octahedral_gens(), false, 100).unwrap()
    }

    fn h4() -> Representation {
        Representation::harmonic(4, &octahedral_gens(), false, 100).unwrap()
    }

    fn subgroup_of(rep: &Representation, mats: &[ExactMatrix]) -> Subgroup {
        let idx: Vec<usize> = mats.iter().map(|m| rep.element_index(m).unwrap()).collect();
        rep.group().generated(&idx)
    }

    fn d2(rep: &Representation) -> Subgroup {
        subgroup_of(
            rep,
            &[
                ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]),
                ExactMatrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]]),
            ],
        )
    }

    fn v(xs: &[i64]) -> ExactVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn random_point(rng: &mut ChaCha8Rng, n: usize) -> ExactVector {
        (0..n)
            .map(|_| crate::exact::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect()
    }

    /// Oracle: stabilizer classes of every point in a small grid, by brute force.
    fn realized_classes(rep: &Representation, strata: &Stratification, grid: &[i64]) -> Vec<usize> {
        let n = rep.dim();
        let mut seen = Vec::new();
        let total = grid.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let pt: ExactVector = (0..n)
                .map(|_| {
                    let x = grid[c % grid.len()];
                    c /= grid.len();
                    int(x)
                })
                .collect();
            let stab = rep.stabilizer(&pt).unwrap();
            let class = strata.lattice.class_of(&stab).unwrap();
            if !seen.contains(&class) {
                seen.push(class);
            }
        }
        seen.sort();
        seen
    }

    #[test]
    fn s3_classes_and_poset() {
        let r = s3();
        let s = isotropy_classes(&r, 1000).unwrap();
        let orders: Vec<usize> = s.records.iter().map(|x| x.order()).collect();
        assert_eq!(orders, vec![6, 2, 1]);
        assert_eq!(s.records.iter().map(|x| x.fixed_dim()).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(s.records[0].covers, vec![1]);
        assert_eq!(s.records[1].covers, vec![2]);
        assert!(s.records[2].covers.is_empty());
        let mut from_records: Vec<usize> = s.records.iter().map(|x| x.lattice_class).collect();
        from_records.sort();
        assert_eq!(from_records, realized_classes(&r, &s, &[0, 1, 2]));
        assert_eq!(principal_isotropy(&r, &s).unwrap(), 2);
        for rec in &s.records {
            assert_eq!(r.stabilizer(&rec.witness).unwrap(), rec.representative);
        }
    }

    #[test]
    fn trivial_and_sign_groups() {
        let triv = Representation::permutation(&[vec![1, 2]], 2, 10).unwrap();
        let s = isotropy_classes(&triv, 100).unwrap();
        assert_eq!(s.records.len(), 1);
        assert_eq!(principal_isotropy(&triv, &s).unwrap(), 0);

        let r = sign2();
        let s = isotropy_classes(&r, 100).unwrap();
        assert_eq!(s.records.iter().map(|x| x.order()).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(s.records[0].witness, v(&[0, 0]));
        assert_eq!(principal_isotropy(&r, &s).unwrap(), 1);
        let eq = closed_stratum_equations(&r, &r.group().whole(), 100).unwrap();
        let xy = r.coordinates().to_vec();
        assert_eq!(eq, vec![MultiPoly::var(&xy, 0), MultiPoly::var(&xy, 1)]);
    }

    #[test]
    fn s3_witnesses() {
        let r = s3();
        let swap = subgroup_of(&r, &[permutation_matrix(&[1, 0, 2])]);
        let w = open_fixed_witness(&r, &swap).unwrap().unwrap();
        assert_eq!(w[0], w[1]);
        assert_ne!(w[0], w[2]);
        assert_eq!(r.stabilizer(&w).unwrap(), swap);
        let c3 = subgroup_of(&r, &[permutation_matrix(&[1, 2, 0])]);
        // brute force: the diagonal is fixed by all of S3
        assert_eq!(r.stabilizer(&v(&[1, 1, 1])).unwrap().order(), 6);
        assert_eq!(open_fixed_witness(&r, &c3).unwrap(), None);
        assert_eq!(monodromy_rep(&r, &c3, None).unwrap_err(), Error::NotAnIsotropyClass);
        let whole = open_fixed_witness(&r, &r.group().whole()).unwrap().unwrap();
        assert_eq!(r.stabilizer(&whole).unwrap().order(), 6);
    }

    #[test]
    fn membership() {
        let r = s3();
        let s = isotropy_classes(&r, 1000).unwrap();
        assert_eq!(stratum_membership(&r, &s, &v(&[1, 1, 2])).unwrap(), 1);
        assert_eq!(stratum_membership(&r, &s, &v(&[1, 2, 3])).unwrap(), 2);
        assert_eq!(stratum_membership(&r, &s, &v(&[1, 1, 1])).unwrap(), 0);
    }

    #[test]
    fn s3_monodromy() {
        let r = s3();
        let swap = subgroup_of(&r, &[permutation_matrix(&[1, 0, 2])]);
        let m = monodromy_rep(&r, &swap, None).unwrap();
        assert_eq!(m.order(), 1);
        assert!(m.matrices[0].is_identity());
        let whole = monodromy_rep(&r, &r.group().whole(), None).unwrap();
        assert_eq!(whole.order(), 1);
        assert_eq!(whole.matrices[0], ExactMatrix::identity(1));
    }

    #[test]
    fn h4_d2_monodromy_is_s3_on_p_basis() {
        let r = h4();
        let h = d2(&r);
        assert_eq!(r.fixed_locus(&h).dim(), 3);
        let hb = r.harmonic_basis().unwrap();
        let xyz = hb.base_vars().to_vec();
        let p = |s: &str| hb.coordinates(&MultiPoly::parse(s, &xyz).unwrap()).unwrap();
        let basis = vec![
            p("x^4 - 6*x^2*y^2 + y^4"),
            p("x^4 - 6*x^2*z^2 + z^4"),
            p("y^4 - 6*y^2*z^2 + z^4"),
        ];
        let m = monodromy_rep(&r, &h, Some(&basis)).unwrap();
        assert_eq!(m.order(), 6);
        // oracle: the six 3x3 permutation matrices
        let mut perms: Vec<ExactMatrix> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            .iter()
            .map(|q| permutation_matrix(q))
            .collect();
        let mut got = m.matrices.clone();
        let key = |a: &ExactMatrix| format!("{a:?}");
        perms.sort_by_key(key);
        got.sort_by_key(key);
        assert_eq!(got, perms);
        assert!(monodromy_rep(&r, &h, Some(&basis[..2])).is_err());
    }

    #[test]
    fn h2_classes_include_order_eight_and_trivial() {
        let r = h2();
        let s = isotropy_classes(&r, 1000).unwrap();
        let hb = r.harmonic_basis().unwrap();
        let q = hb
            .coordinates(&MultiPoly::parse("-x^2 - y^2 + 2*z^2", hb.base_vars()).unwrap())
            .unwrap();
        let stab = r.stabilizer(&q).unwrap();
        assert_eq!(stab.order(), 8);
        let id = stratum_membership(&r, &s, &q).unwrap();
        assert_eq!(s.records[id].order(), 8);
        assert!(s.records.iter().any(|x| x.order() == 1));
        let p = principal_isotropy(&r, &s).unwrap();
        assert_eq!(s.records[p].order(), 1);
        // oracle: stabilizer classes over sample points of each fixed locus
        let mut seen = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for class in &s.lattice.classes {
            let w = r.fixed_locus(&class.representative);
            for _ in 0..4 {
                let c = random_point(&mut rng, w.dim());
                let pt = w.point(&c);
                let k = s.lattice.class_of(&r.stabilizer(&pt).unwrap()).unwrap();
                if !seen.contains(&k) {
                    seen.push(k);
                }
            }
        }
        seen.sort();
        let mut listed: Vec<usize> = s.records.iter().map(|x| x.lattice_class).collect();
        listed.sort();
        assert_eq!(listed, seen);
    }

    fn check_closed_strata(r: &Representation, seed: u64, samples: usize) {
        let s = isotropy_classes(r, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for rec in &s.records {
            let eq = closed_stratum_equations(r, &rec.representative, DEFAULT_EQUATION_CAP).unwrap();
            for g in 0..r.group().order() {
                for b in rec.fixed_locus.basis() {
                    let img = r.apply(g, b).unwrap();
                    assert!(satisfies_all(&eq, &img).unwrap());
                }
                let c = random_point(&mut rng, rec.fixed_dim());
                let img = r.apply(g, &rec.fixed_locus.point(&c)).unwrap();
                assert!(satisfies_all(&eq, &img).unwrap());
            }
            let mut test_points: Vec<ExactVector> = (0..samples).map(|_| random_point(&mut rng, r.dim())).collect();
            for other in &s.records {
                let c = random_point(&mut rng, other.fixed_dim());
                test_points.push(other.fixed_locus.point(&c));
            }
            for pt in test_points {
                let member = s.membership(r, &pt).unwrap();
                let above = s.precedes(r, rec.id, member);
                assert_eq!(satisfies_all(&eq, &pt).unwrap(), above);
            }
        }
    }

    #[test]
    fn closed_strata_consistency() {
        check_closed_strata(&s3(), 1, 30);
        check_closed_strata(&sign2(), 2, 30);
        check_closed_strata(&h2(), 3, 10);
    }

    #[test]
    fn s3_swap_stratum_is_three_planes() {
        let r = s3();
        let swap = subgroup_of(&r, &[permutation_matrix(&[1, 0, 2])]);
        let eq = closed_stratum_equations(&r, &swap, DEFAULT_EQUATION_CAP).unwrap();
        assert_eq!(eq.len(), 1);
        let disc = &(&MultiPoly::parse("x - y", r.coordinates()).unwrap()
            * &MultiPoly::parse("y - z", r.coordinates()).unwrap())
            * &MultiPoly::parse("z - x", r.coordinates()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..100 {
            let mut pt = random_point(&mut rng, 3);
            if k % 3 == 0 {
                pt[(k / 3) % 3] = pt[(k / 3 + 1) % 3].clone();
            }
            let on_planes = r.stabilizer(&pt).unwrap().order() > 1;
            assert_eq!(disc.eval(&pt).unwrap().is_zero(), on_planes);
            assert_eq!(satisfies_all(&eq, &pt).unwrap(), on_planes);
        }
        let whole = closed_stratum_equations(&r, &r.group().whole(), DEFAULT_EQUATION_CAP).unwrap();
        assert!(whole.iter().all(|e| e.degree() == Some(1)));
        assert_eq!(whole.len(), 2);
    }

    #[test]
    fn equation_cap() {
        let r = h4();
        let c2 = subgroup_of(&r, &[ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])]);
        assert!(open_fixed_witness(&r, &c2).unwrap().is_some());
        // dim V^H = 5 leaves 4 forms over 3 cosets of a normalizer of order 8
        assert_eq!(r.fixed_locus(&c2).dim(), 5);
        assert_eq!(
            closed_stratum_equations(&r, &c2, 10).unwrap_err(),
            Error::SizeCapExceeded { size: 64, cap: 10 }
        );
        assert_eq!(closed_stratum_equations(&r, &c2, 64).unwrap().len(), 64);
    }

    #[test]
    fn kernel_of_normalizer_action_is_exactly_h() {
        for r in [s3(), sign2(), h2(), h4()] {
            let s = isotropy_classes(&r, 1000).unwrap();
            for rec in &s.records {
                let h = &rec.representative;
                let n = r.group().normalizer(h).unwrap();
                assert_eq!(r.subspace_stabilizer(&rec.fixed_locus), n);
                let kernel: Vec<usize> = n
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&g| rec.fixed_locus.basis().iter().all(|b| r.apply(g, b).unwrap() == *b))
                    .collect();
                assert_eq!(kernel, h.elements());
                let m = monodromy_rep(&r, h, None).unwrap();
                assert_eq!(m.order() * h.order(), n.order());
            }
            let p = principal_isotropy(&r, &s).unwrap();
            for b in 0..s.records.len() {
                assert!(s.precedes(&r, p, b));
                assert!(s.precedes(&r, b, 0));
            }
        }
    }

    #[test]
    fn orbits_through_fixed_locus_are_monodromy_orbits() {
        for r in [s3(), h2(), h4()] {
            let s = isotropy_classes(&r, 1000).unwrap();
            for rec in &s.records {
                let h = &rec.representative;
                let n = r.group().normalizer(h).unwrap();
                let w = &rec.fixed_locus;
                let base = &rec.witness;
                let orbit: Vec<ExactVector> = (0..r.group().order()).map(|g| r.apply(g, base).unwrap()).collect();
                for (g, u) in orbit.iter().enumerate() {
                    if !w.contains(u) || r.stabilizer(u).unwrap() != *h {
                        continue;
                    }
                    let via_n = n.elements().iter().any(|&k| r.apply(k, base).unwrap() == *u);
                    assert!(via_n, "element {g} moves the witness within the fixed locus outside N(H)");
                }
                for &k in n.elements() {
                    let u = r.apply(k, base).unwrap();
                    assert!(w.contains(&u));
                    assert_eq!(r.stabilizer(&u).unwrap(), *h);
                }
            }
        }
    }

    #[test]
    fn residual_action_of_a_finite_subgroup_matches_monodromy() {
        let r = h4();
        let h = d2(&r);
        let w = r.fixed_locus(&h);
        let res = residual_action(&r, &w, None).unwrap();
        assert_eq!(res.len(), 6);
    }
}
