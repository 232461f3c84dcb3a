//! Rational expressions of normal-form invariants in terms of restricted
//! global invariants.
//!
//! Given generators `J_k` of the invariants of `(V, G)` and a fixed locus
//! `V^H` with coordinates `s`, the restrictions `j_k = J_k|V^H` are computed,
//! and a monodromy invariant target `f(s)` is written as `A(j)/B(j)` by
//! solving the linear system `f * B(j) - A(j) = 0` on the coefficients of
//! `A` and `B` jointly, graded by the weights `deg j_k`.

use std::collections::{BTreeSet, HashMap};

use num_traits::{pow, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, is_zero_vector, kernel_from_rows, EchelonBasis, ExactMatrix, ExactScalar, ExactVector};
use crate::invariants::product_of_powers;
use crate::poly::{monomials_of_weighted_degree, restrict_to_subspace, Monomial, MultiPoly};

pub const DEFAULT_DEGREE_CAP: u32 = 16;

/// Restrictions `j_k` of global invariants to a subspace, in its coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedInvariantSet {
    names: Vec<String>,
    weights: Vec<u32>,
    polys: Vec<MultiPoly>,
    coordinates: Vec<String>,
    basis: Vec<ExactVector>,
}

impl RestrictedInvariantSet {
    /// Builds a set from polynomials already expressed in subspace coordinates.
    pub fn from_parts(names: Vec<String>, polys: Vec<MultiPoly>, coordinates: Vec<String>) -> Result<Self> {
        if names.len() != polys.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                found: polys.len(),
            });
        }
        for p in &polys {
            if p.vars() != coordinates.as_slice() {
                return Err(Error::VariableMismatch(p.vars().to_vec(), coordinates.clone()));
            }
        }
        let weights = polys.iter().map(|p| p.degree().unwrap_or(0)).collect();
        let m = coordinates.len();
        let basis = (0..m)
            .map(|i| (0..m).map(|k| if i == k { int(1) } else { int(0) }).collect())
            .collect();
        Ok(Self {
            names,
            weights,
            polys,
            coordinates,
            basis,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Weight of each symbol `y_k`: the degree of the global generator.
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    /// Basis of the subspace in ambient coordinates (identity for `from_parts`).
    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Indices of generators whose restriction vanishes identically.
    pub fn zero_restrictions(&self) -> Vec<usize> {
        (0..self.polys.len()).filter(|&k| self.polys[k].is_zero()).collect()
    }

    /// `P(j_1, ..., j_N)` for a polynomial `P` in the symbols.
    pub fn substitute(&self, p: &MultiPoly) -> Result<MultiPoly> {
        if p.vars() != self.names.as_slice() {
            return Err(Error::VariableMismatch(p.vars().to_vec(), self.names.clone()));
        }
        if self.polys.is_empty() {
            return Ok(MultiPoly::constant(&self.coordinates, p.coefficient(&Monomial::one(0))));
        }
        p.compose(&self.polys)
    }
}

/// Restricts each named generator along the parameterization `s -> sum s_i b_i`.
pub fn restrict_invariants(
    generators: &[(String, MultiPoly)],
    basis: &[ExactVector],
    coordinates: &[String],
) -> Result<RestrictedInvariantSet> {
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut polys = Vec::new();
    for (name, g) in generators {
        for b in basis {
            if b.len() != g.nvars() {
                return Err(Error::DimensionMismatch {
                    expected: g.nvars(),
                    found: b.len(),
                });
            }
        }
        names.push(name.clone());
        weights.push(g.degree().unwrap_or(0));
        polys.push(restrict_to_subspace(g, basis, coordinates)?);
    }
    Ok(RestrictedInvariantSet {
        names,
        weights,
        polys,
        coordinates: coordinates.to_vec(),
        basis: basis.to_vec(),
    })
}

/// How an expression was found and why its denominator is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Point of `V^H` (subspace coordinates) with `B(j) != 0`.
    pub witness: ExactVector,
    pub denominator_value: ExactScalar,
    /// Weighted-degree bound the solve ran under.
    pub bound: u32,
    pub numerator_degree: u32,
    pub denominator_degree: u32,
    /// Dimension of the solution space and of its spurious part at the chosen block.
    pub solution_dim: usize,
    pub spurious_dim: usize,
}

/// `A(y)/B(y)` with `y_k` standing for `j_k`.
#[derive(Clone, Debug)]
pub struct RationalInvariantExpression {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
    pub certificate: Certificate,
}

impl RationalInvariantExpression {
    /// Text form such as `(J3)/(J2)`.
    pub fn render(&self) -> String {
        format!("({})/({})", self.numerator, self.denominator)
    }
}

/// Leading monomial of a symbol polynomial: weighted degree first, then graded lex.
fn leading(p: &MultiPoly, weights: &[u32]) -> Option<(Monomial, ExactScalar)> {
    p.terms()
        .max_by(|(a, _), (b, _)| {
            a.weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| a.cmp(b))
        })
        .map(|(m, c)| (m.clone(), c.clone()))
}

/// Rejects targets moved by any of the given matrices (acting on subspace coordinates).
pub fn check_monodromy_invariant(target: &MultiPoly, monodromy: &[ExactMatrix]) -> Result<()> {
    for (i, m) in monodromy.iter().enumerate() {
        if target.act(m)? != *target {
            return Err(Error::TargetNotMonodromyInvariant(i));
        }
    }
    Ok(())
}

/// Points tried in order: `((i+1)^k)_i` for `k = 1, 2, ...`, then integer
/// grids `{-r..r}^m` of growing radius, which a nonzero polynomial of degree
/// `d` cannot vanish on once `2r + 1 > d`.
pub fn find_witness(p: &MultiPoly) -> Option<(ExactVector, ExactScalar)> {
    if p.is_zero() {
        return None;
    }
    let m = p.nvars();
    let d = p.degree().unwrap_or(0);
    let check = |pt: ExactVector| {
        let val = p.eval(&pt).expect("point has one coordinate per variable");
        (!val.is_zero()).then_some((pt, val))
    };
    for k in 1..=16u32 {
        let pt = (0..m).map(|i| pow(int(i as i64 + 1), k as usize)).collect();
        if let Some(found) = check(pt) {
            return Some(found);
        }
    }
    let max_r = d as i64 / 2 + 1;
    for r in 1..=max_r {
        let side = 2 * r + 1;
        let total = (side as u128).pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut pt = Vec::with_capacity(m);
            for _ in 0..m {
                pt.push(int((c % side as u128) as i64 - r));
                c /= side as u128;
            }
            if let Some(found) = check(pt) {
                return Some(found);
            }
        }
    }
    None
}

/// Kernel of the linear map sending unknown coefficients to
/// `sum_i x_i * columns[i]`.
fn relation_kernel(columns: &[MultiPoly]) -> Vec<ExactVector> {
    let monomials: BTreeSet<Monomial> = columns.iter().flat_map(|c| c.terms().map(|(m, _)| m.clone())).collect();
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![vec![ExactScalar::zero(); columns.len()]; monomials.len()];
    for (c, col) in columns.iter().enumerate() {
        for (m, x) in col.terms() {
            rows[index[m]][c] = x.clone();
        }
    }
    kernel_from_rows(rows, columns.len())
}

struct Block {
    b_monomials: Vec<Monomial>,
    a_monomials: Vec<Monomial>,
}

struct Solver<'a> {
    target: &'a MultiPoly,
    j: &'a RestrictedInvariantSet,
    memo: HashMap<Monomial, MultiPoly>,
}

impl Solver<'_> {
    fn power(&mut self, e: &Monomial) -> MultiPoly {
        product_of_powers(self.j.polys(), e, self.j.coordinates(), &mut self.memo)
    }

    fn solve_block(&mut self, block: &Block, bound: u32) -> Result<Option<RationalInvariantExpression>> {
        let nb = block.b_monomials.len();
        let na = block.a_monomials.len();
        if nb == 0 {
            return Ok(None);
        }
        let b_images: Vec<MultiPoly> = block.b_monomials.iter().map(|e| self.power(e)).collect();
        let a_images: Vec<MultiPoly> = block.a_monomials.iter().map(|e| self.power(e)).collect();
        let mut columns: Vec<MultiPoly> = b_images.iter().map(|p| self.target * p).collect();
        columns.extend(a_images.iter().map(|p| -p));
        let kernel = relation_kernel(&columns);
        if kernel.is_empty() {
            return Ok(None);
        }
        let mut spurious = EchelonBasis::new(nb + na);
        for v in relation_kernel(&b_images) {
            let mut full = v;
            full.extend(std::iter::repeat_with(ExactScalar::zero).take(na));
            spurious.insert(full);
        }
        for v in relation_kernel(&a_images) {
            let mut full = vec![ExactScalar::zero(); nb];
            full.extend(v);
            spurious.insert(full);
        }
        let spurious_dim = spurious.rank();
        if kernel.len() == spurious_dim {
            return Ok(None);
        }
        let names = self.j.names().to_vec();
        for v in &kernel {
            if spurious.contains(v) {
                continue;
            }
            let v = spurious.reduce(v.clone());
            let denominator = MultiPoly::from_coefficients(&names, &block.b_monomials, &v[..nb]);
            let b_of_j = self.j.substitute(&denominator)?;
            let Some((witness, value)) = find_witness(&b_of_j) else {
                continue;
            };
            let numerator = MultiPoly::from_coefficients(&names, &block.a_monomials, &v[nb..]);
            let (_, lc) = leading(&denominator, self.j.weights()).expect("denominator is nonzero");
            let inv = lc.recip();
            let degree_of = |p: &MultiPoly| weighted_degree(p, self.j.weights());
            return Ok(Some(RationalInvariantExpression {
                certificate: Certificate {
                    witness,
                    denominator_value: value * &inv,
                    bound,
                    numerator_degree: degree_of(&numerator),
                    denominator_degree: degree_of(&denominator),
                    solution_dim: kernel.len(),
                    spurious_dim,
                },
                numerator: numerator.scale(&inv),
                denominator: denominator.scale(&inv),
            }));
        }
        Ok(None)
    }
}

fn weighted_degree(p: &MultiPoly, weights: &[u32]) -> u32 {
    p.terms().map(|(m, _)| m.weighted_degree(weights)).max().unwrap_or(0)
}

fn monomials_up_to(weights: &[u32], d: u32) -> Vec<Monomial> {
    (0..=d).rev().flat_map(|k| monomials_of_weighted_degree(weights, k)).collect()
}

/// Writes `target` as `A(j)/B(j)` with both weighted degrees at most `bound`.
///
/// The target lives in the subspace coordinates of `j`; `monodromy` are the
/// matrices of the residual group on those coordinates. Among solutions the
/// one with least `deg B`, then least `deg A`, is returned; within a degree
/// block the first canonical kernel vector whose denominator survives on
/// `V^H` is taken, reduced modulo the relations among the `j_k`, and scaled
/// so `B` has leading coefficient 1.
pub fn rationalize(
    target: &MultiPoly,
    j: &RestrictedInvariantSet,
    monodromy: &[ExactMatrix],
    bound: u32,
) -> Result<RationalInvariantExpression> {
    if target.vars() != j.coordinates() {
        return Err(Error::VariableMismatch(target.vars().to_vec(), j.coordinates().to_vec()));
    }
    check_monodromy_invariant(target, monodromy)?;
    if j.weights().contains(&0) {
        return Err(Error::Inconsistent("invariant generators must have positive degree".into()));
    }
    let names = j.names().to_vec();
    if target.is_zero() {
        let point = vec![int(1); j.coordinates().len()];
        return Ok(RationalInvariantExpression {
            numerator: MultiPoly::zero(&names),
            denominator: MultiPoly::constant(&names, int(1)),
            certificate: Certificate {
                witness: point,
                denominator_value: int(1),
                bound,
                numerator_degree: 0,
                denominator_degree: 0,
                solution_dim: 1,
                spurious_dim: 0,
            },
        });
    }
    let mut solver = Solver {
        target,
        j,
        memo: HashMap::new(),
    };
    let weights = j.weights().to_vec();
    let homogeneous = target.is_homogeneous() && j.polys().iter().all(MultiPoly::is_homogeneous);
    if homogeneous {
        let t = target.degree().unwrap_or(0);
        if t > bound {
            return Err(Error::NoSolutionWithinBound(bound as usize));
        }
        for b in 0..=bound - t {
            let block = Block {
                b_monomials: monomials_of_weighted_degree(&weights, b),
                a_monomials: monomials_of_weighted_degree(&weights, b + t),
            };
            if let Some(e) = solver.solve_block(&block, bound)? {
                return Ok(e);
            }
        }
    } else {
        for db in 0..=bound {
            for da in 0..=bound {
                let block = Block {
                    b_monomials: monomials_up_to(&weights, db),
                    a_monomials: monomials_up_to(&weights, da),
                };
                if let Some(e) = solver.solve_block(&block, bound)? {
                    return Ok(e);
                }
            }
        }
    }
    Err(Error::NoSolutionWithinBound(bound as usize))
}

/// Starting bound used when none is given: the largest degree among the
/// target and the restricted generators.
pub fn default_start_bound(target: &MultiPoly, j: &RestrictedInvariantSet) -> u32 {
    j.weights()
        .iter()
        .copied()
        .chain(target.degree())
        .max()
        .unwrap_or(1)
        .max(1)
}

/// Runs `rationalize` from `start` (or the default), doubling the bound on
/// failure until `cap` has been tried.
pub fn rationalize_with_retry(
    target: &MultiPoly,
    j: &RestrictedInvariantSet,
    monodromy: &[ExactMatrix],
    start: Option<u32>,
    cap: u32,
) -> Result<RationalInvariantExpression> {
    let mut bound = start.unwrap_or_else(|| default_start_bound(target, j)).min(cap);
    loop {
        match rationalize(target, j, monodromy, bound) {
            Err(Error::NoSolutionWithinBound(_)) if bound < cap => bound = (bound * 2).min(cap),
            other => return other,
        }
    }
}

/// `A1(j) B2(j) = A2(j) B1(j)` as polynomials on the subspace.
pub fn expressions_equivalent(
    e1: &RationalInvariantExpression,
    e2: &RationalInvariantExpression,
    j: &RestrictedInvariantSet,
) -> Result<bool> {
    let a1 = j.substitute(&e1.numerator)?;
    let b1 = j.substitute(&e1.denominator)?;
    let a2 = j.substitute(&e2.numerator)?;
    let b2 = j.substitute(&e2.denominator)?;
    Ok(&a1 * &b2 == &a2 * &b1)
}

/// Checks the defining identity `target * B(j) = A(j)` and `B(j) != 0`.
pub fn verify_expression(target: &MultiPoly, e: &RationalInvariantExpression, j: &RestrictedInvariantSet) -> Result<bool> {
    let a = j.substitute(&e.numerator)?;
    let b = j.substitute(&e.denominator)?;
    Ok(!b.is_zero() && target * &b == a && !is_zero_vector(&[b.eval(&e.certificate.witness)?]))
}
