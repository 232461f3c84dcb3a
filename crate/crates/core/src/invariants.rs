//! Graded pieces of the invariant ring of a finite group: kernel-based
//! invariant bases, the Reynolds projector, Molien series dimensions and
//! degree-ascending generator extraction.

use std::collections::HashMap;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, kernel_from_rows, ratio, EchelonBasis, ExactMatrix, ExactScalar, ExactVector};
use crate::poly::{monomials_of_degree, monomials_of_weighted_degree, LinearSubstitution, Monomial, MultiPoly, TruncatedSeries};
use crate::rep::Representation;

/// Hard cap on the generator search degree unless the caller overrides it.
pub const DEFAULT_GENERATOR_DEGREE_CAP: u32 = 12;

#[derive(Clone, Debug)]
pub struct InvariantBasisAtDegree {
    pub degree: u32,
    pub basis: Vec<MultiPoly>,
}

impl InvariantBasisAtDegree {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Matrix of `p -> p(m v)` on the degree-`d` block, in the graded monomial basis.
pub fn degree_block_matrix(m: &ExactMatrix, vars: &[String], d: u32) -> Result<ExactMatrix> {
    let monomials = monomials_of_degree(vars.len(), d);
    let mut sub = LinearSubstitution::new(m, vars);
    let columns = monomials
        .iter()
        .map(|mono| sub.image(mono).coefficients_in(&monomials))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::from_columns(&columns, monomials.len())
}

/// Canonical basis of the degree-`d` invariants: the common kernel of
/// `(g - 1)` over the group generators acting on degree-`d` forms.
pub fn invariant_basis(rep: &Representation, d: u32) -> Result<InvariantBasisAtDegree> {
    let vars = rep.coordinates().to_vec();
    let monomials = monomials_of_degree(vars.len(), d);
    let n = monomials.len();
    let mut rows: Vec<ExactVector> = Vec::new();
    for &g in rep.group().generators() {
        let block = degree_block_matrix(rep.action_inverse(g), &vars, d)?;
        for r in 0..n {
            let mut row = block.row(r).to_vec();
            row[r] -= ExactScalar::one();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let basis = kernel_from_rows(rows, n)
        .into_iter()
        .map(|v| MultiPoly::from_coefficients(&vars, &monomials, &v))
        .collect();
    Ok(InvariantBasisAtDegree { degree: d, basis })
}

/// Group average `(1/|G|) sum_g g.p`.
pub fn reynolds(rep: &Representation, p: &MultiPoly) -> Result<MultiPoly> {
    check_ring(rep, p)?;
    let mut acc = MultiPoly::zero(p.vars());
    for g in 0..rep.group().order() {
        acc = &acc + &rep.act_on_poly(g, p)?;
    }
    Ok(acc.scale(&ratio(1, rep.group().order() as i64)))
}

fn check_ring(rep: &Representation, p: &MultiPoly) -> Result<()> {
    if p.vars() != rep.coordinates() {
        return Err(Error::VariableMismatch(p.vars().to_vec(), rep.coordinates().to_vec()));
    }
    Ok(())
}

/// Coefficients of `det(t I - m)` from degree 0 up to `n` (Faddeev-LeVerrier).
pub fn characteristic_polynomial(m: &ExactMatrix) -> Vec<ExactScalar> {
    let n = m.rows();
    let mut coeffs = vec![ExactScalar::zero(); n + 1];
    coeffs[n] = ExactScalar::one();
    let id = ExactMatrix::identity(n);
    let mut mk = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&coeffs[n - k + 1]);
        let t = (m * &mk).trace();
        coeffs[n - k] = -t / int(k as i64);
    }
    coeffs
}

/// Dimensions of the graded invariant spaces from the Molien sum
/// `(1/|G|) sum_g 1/det(1 - t rho(g))`, degrees `0..=up_to`.
pub fn molien_dims(rep: &Representation, up_to: usize) -> Result<Vec<usize>> {
    let order = rep.group().order();
    let mut cache: HashMap<&ExactMatrix, TruncatedSeries> = HashMap::new();
    let mut total = TruncatedSeries::zero(up_to);
    for g in 0..order {
        let m = rep.action(g);
        let term = match cache.get(m) {
            Some(s) => s.clone(),
            None => {
                let n = m.rows();
                let cp = characteristic_polynomial(m);
                // det(1 - t M) = t^n cp(1/t)
                let reversed: Vec<ExactScalar> = (0..=n).map(|j| cp[n - j].clone()).collect();
                let s = TruncatedSeries::from_coefficients(reversed, up_to)
                    .inverse()
                    .ok_or_else(|| Error::Inconsistent("det(1 - t M) has zero constant term".into()))?;
                cache.insert(m, s.clone());
                s
            }
        };
        total = total.add(&term);
    }
    let avg = total.scale(&ratio(1, order as i64));
    avg.coefficients()
        .iter()
        .map(|c| {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Inconsistent(format!("non-integral Molien coefficient {c}")));
            }
            c.to_integer()
                .to_usize()
                .ok_or_else(|| Error::Inconsistent("Molien coefficient overflow".into()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct NamedPoly {
    pub name: String,
    pub poly: MultiPoly,
}

/// What was checked at one degree of the generator search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub degree: u32,
    pub invariant_dim: usize,
    pub decomposable_rank: usize,
    pub new_generators: usize,
}

#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub generators: Vec<NamedPoly>,
    /// Highest degree examined.
    pub bound: u32,
    /// Noether bound `|G|`.
    pub noether_bound: u32,
    /// Set when the search stopped below the Noether bound, so completeness is not guaranteed.
    pub truncated: bool,
    pub certificates: Vec<DegreeCertificate>,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.poly.degree().unwrap_or(0)).collect()
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.generators.iter().map(|g| g.poly.clone()).collect()
    }
}

/// Coefficient vectors (over degree-`d` monomials) of all products of the
/// given homogeneous polynomials that have total degree `d`.
pub fn decomposable_span(gens: &[MultiPoly], vars: &[String], d: u32) -> Result<Vec<ExactVector>> {
    let degrees: Vec<u32> = gens
        .iter()
        .map(|g| {
            if !g.is_homogeneous() || g.is_zero() {
                return Err(Error::Inconsistent("generators must be nonzero and homogeneous".into()));
            }
            Ok(g.degree().unwrap_or(0))
        })
        .collect::<Result<_>>()?;
    let monomials = monomials_of_degree(vars.len(), d);
    let mut memo: HashMap<Monomial, MultiPoly> = HashMap::new();
    monomials_of_weighted_degree(&degrees, d)
        .iter()
        .map(|e| product_of_powers(gens, e, vars, &mut memo).coefficients_in(&monomials))
        .collect()
}

pub(crate) fn product_of_powers(
    gens: &[MultiPoly],
    e: &Monomial,
    vars: &[String],
    memo: &mut HashMap<Monomial, MultiPoly>,
) -> MultiPoly {
    if let Some(p) = memo.get(e) {
        return p.clone();
    }
    let p = match e.exponents().iter().position(|&k| k > 0) {
        None => MultiPoly::constant(vars, ExactScalar::one()),
        Some(i) => {
            let mut rest = e.clone();
            rest.0[i] -= 1;
            &product_of_powers(gens, &rest, vars, memo) * &gens[i]
        }
    };
    memo.insert(e.clone(), p.clone());
    p
}

/// Degree-ascending extraction of generators: at each degree the span of
/// products of earlier generators is extended to the full invariant space
/// by canonical basis vectors, which become the new generators.
pub fn minimal_generators(rep: &Representation, bound: Option<u32>, cap: u32) -> Result<GeneratorSet> {
    let noether = rep.group().order() as u32;
    let requested = bound.unwrap_or(noether);
    let effective = requested.min(cap);
    let vars = rep.coordinates().to_vec();
    let mut generators: Vec<NamedPoly> = Vec::new();
    let mut certificates = Vec::new();
    for d in 1..=effective {
        let inv = invariant_basis(rep, d)?;
        let n = monomials_of_degree(vars.len(), d).len();
        let monomials = monomials_of_degree(vars.len(), d);
        let polys: Vec<MultiPoly> = generators.iter().map(|g| g.poly.clone()).collect();
        let mut span = EchelonBasis::new(n);
        for v in decomposable_span(&polys, &vars, d)? {
            span.insert(v);
        }
        let decomposable_rank = span.rank();
        let mut new = 0;
        for b in &inv.basis {
            if span.insert(b.coefficients_in(&monomials)?) {
                new += 1;
                generators.push(NamedPoly {
                    name: format!("J{}", generators.len() + 1),
                    poly: b.clone(),
                });
            }
        }
        if span.rank() != inv.dim() {
            return Err(Error::Inconsistent(format!(
                "products of invariants at degree {d} leave the invariant space"
            )));
        }
        certificates.push(DegreeCertificate {
            degree: d,
            invariant_dim: inv.dim(),
            decomposable_rank,
            new_generators: new,
        });
    }
    Ok(GeneratorSet {
        generators,
        bound: effective,
        noether_bound: noether,
        truncated: effective < noether,
        certificates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Invariant,
    /// Fails for the group generator with this element index.
    FailsGroupElement(usize),
    /// Fails infinitesimally for the named Lie generator.
    FailsLieGenerator(String),
}

impl Verification {
    pub fn holds(&self) -> bool {
        matches!(self, Verification::Invariant)
    }
}

/// Checks `g.p = p` on every group generator and `X.p = 0` for every Lie generator.
pub fn verify_invariant(rep: &Representation, p: &MultiPoly) -> Result<Verification> {
    check_ring(rep, p)?;
    for &g in rep.group().generators() {
        if rep.act_on_poly(g, p)? != *p {
            return Ok(Verification::FailsGroupElement(g));
        }
    }
    for l in rep.lie() {
        if !p.derivation(&l.matrix)?.is_zero() {
            return Ok(Verification::FailsLieGenerator(l.name.clone()));
        }
    }
    Ok(Verification::Invariant)
}
