//! Linear representations of finite matrix groups (optionally with a Lie
//! algebra acting alongside), fixed loci, stabilizers and orthogonal slices.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    dot, int, kernel_basis, kernel_from_rows, rank_of, ExactMatrix, ExactScalar, ExactVector,
};
use crate::group::{permutation_matrix, FiniteMatrixGroup, Subgroup};
use crate::poly::{monomials_of_degree, Monomial, MultiPoly};

/// Subspace of `Q^n` stored by its canonical basis: the RREF free-variable
/// kernel basis of its (canonical) annihilator. Equal subspaces therefore
/// have identical bases. Equality ignores the label.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    basis: Vec<ExactVector>,
    pub label: String,
}

impl PartialEq for LinearSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for LinearSubspace {}

impl LinearSubspace {
    pub fn span(vectors: &[ExactVector], ambient: usize) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        let annihilator = kernel_from_rows(vectors.to_vec(), ambient);
        Ok(Self {
            ambient,
            basis: kernel_from_rows(annihilator, ambient),
            label: String::new(),
        })
    }

    /// Kernel of the matrix; the kernel basis is already in canonical form.
    pub fn kernel_of(m: &ExactMatrix) -> Self {
        Self {
            ambient: m.cols(),
            basis: kernel_basis(m),
            label: String::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::kernel_of(&ExactMatrix::zeros(0, ambient))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    /// Linear forms vanishing exactly on the subspace (canonical basis).
    pub fn annihilator(&self) -> Vec<ExactVector> {
        kernel_from_rows(self.basis.clone(), self.ambient)
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        v.len() == self.ambient && self.annihilator().iter().all(|a| dot(a, v).is_zero())
    }

    pub fn is_subspace_of(&self, other: &LinearSubspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn intersection(&self, other: &LinearSubspace) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut rows = self.annihilator();
        rows.extend(other.annihilator());
        Ok(Self {
            ambient: self.ambient,
            basis: kernel_from_rows(rows, self.ambient),
            label: String::new(),
        })
    }

    /// Coordinates of `v` in an arbitrary basis of this subspace.
    pub fn coordinates_in(basis: &[ExactVector], v: &[ExactScalar]) -> Result<Option<ExactVector>> {
        let n = v.len();
        let m = ExactMatrix::from_columns(basis, n)?;
        m.solve(v)
    }

    pub fn coordinates(&self, v: &[ExactScalar]) -> Result<Option<ExactVector>> {
        Self::coordinates_in(&self.basis, v)
    }

    pub fn point(&self, coords: &[ExactScalar]) -> ExactVector {
        let mut out = vec![ExactScalar::zero(); self.ambient];
        for (b, c) in self.basis.iter().zip(coords) {
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        out
    }
}

/// Harmonic polynomials of a fixed degree in `x, y, z` with the canonical
/// basis given by the kernel of the Laplacian on the graded monomial basis.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    degree: u32,
    vars: Vec<String>,
    monomials: Vec<Monomial>,
    /// index (into `monomials`) of the free monomial carrying each basis element
    free: Vec<usize>,
    polys: Vec<MultiPoly>,
}

impl HarmonicBasis {
    pub fn new(degree: u32) -> Self {
        let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let monomials = monomials_of_degree(3, degree);
        let lower = if degree >= 2 {
            monomials_of_degree(3, degree - 2)
        } else {
            Vec::new()
        };
        let columns: Vec<ExactVector> = monomials
            .iter()
            .map(|m| {
                MultiPoly::from_monomial(&vars, m.clone(), ExactScalar::one())
                    .laplacian()
                    .coefficients_in(&lower)
                    .expect("laplacian lowers degree by two")
            })
            .collect();
        let laplacian = ExactMatrix::from_columns(&columns, lower.len()).expect("laplacian matrix");
        let kernel = kernel_basis(&laplacian);
        // kernel vectors carry a 1 in their own free column and 0 in the others
        let k = kernel.len();
        let free = (0..k)
            .map(|i| {
                (0..monomials.len())
                    .find(|&c| kernel[i][c].is_one() && (0..k).all(|j| j == i || kernel[j][c].is_zero()))
                    .expect("free column")
            })
            .collect();
        let polys = kernel
            .iter()
            .map(|v| MultiPoly::from_coefficients(&vars, &monomials, v))
            .collect();
        Self {
            degree,
            vars,
            monomials,
            free,
            polys,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.polys.len()
    }

    pub fn base_vars(&self) -> &[String] {
        &self.vars
    }

    pub fn polynomials(&self) -> &[MultiPoly] {
        &self.polys
    }

    /// Coordinates of a harmonic polynomial of this degree in the canonical basis.
    pub fn coordinates(&self, p: &MultiPoly) -> Result<ExactVector> {
        p.same_ring(&self.polys[0])?;
        let c = p
            .coefficients_in(&self.monomials)
            .map_err(|_| Error::InvalidRepresentation(format!("`{p}` is not homogeneous of degree {}", self.degree)))?;
        let coords: ExactVector = self.free.iter().map(|&i| c[i].clone()).collect();
        if self.polynomial(&coords) != *p {
            return Err(Error::InvalidRepresentation(format!("`{p}` is not harmonic")));
        }
        Ok(coords)
    }

    pub fn polynomial(&self, coords: &[ExactScalar]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (c, h) in coords.iter().zip(&self.polys) {
            out = &out + &h.scale(c);
        }
        out
    }

    /// Matrix of `h -> h(g^-1 .)` for a 3x3 invertible matrix `g`.
    pub fn lift_matrix(&self, g: &ExactMatrix) -> Result<ExactMatrix> {
        let inv = g.inverse()?;
        let cols = self
            .polys
            .iter()
            .map(|h| self.coordinates(&h.act(&inv)?))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_columns(&cols, self.dim())
    }

    /// Matrix of the derivation `h -> grad h . (a v)` for a 3x3 matrix `a`.
    pub fn lift_derivation(&self, a: &ExactMatrix) -> Result<ExactMatrix> {
        let cols = self
            .polys
            .iter()
            .map(|h| self.coordinates(&h.derivation(a)?))
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::from_columns(&cols, self.dim())
    }

    /// Gram matrix of the apolar product `<p, q> = sum alpha! p_alpha q_alpha`,
    /// which is O(3)-invariant; on quadrics it is twice the trace form.
    pub fn apolar_gram(&self) -> ExactMatrix {
        let weights: Vec<ExactScalar> = self
            .monomials
            .iter()
            .map(|m| m.exponents().iter().fold(int(1), |acc, &e| acc * factorial(e)))
            .collect();
        let n = self.dim();
        let coeffs: Vec<ExactVector> = self
            .polys
            .iter()
            .map(|h| h.coefficients_in(&self.monomials).expect("degree d"))
            .collect();
        let mut g = ExactMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ExactScalar::zero();
                for k in 0..weights.len() {
                    if !coeffs[i][k].is_zero() && !coeffs[j][k].is_zero() {
                        acc += &weights[k] * &coeffs[i][k] * &coeffs[j][k];
                    }
                }
                g.set(i, j, acc);
            }
        }
        g
    }
}

fn factorial(e: u32) -> ExactScalar {
    (1..=e as i64).fold(int(1), |acc, k| acc * int(k))
}

/// The three rotation derivations of so(3) as matrices of the vector fields
/// `v -> a v`: about x (`y d/dz - z d/dy`), about y, about z (`x d/dy - y d/dx`).
pub fn so3_generators() -> Vec<(String, ExactMatrix)> {
    vec![
        ("Lx".into(), ExactMatrix::from_i64(&[&[0, 0, 0], &[0, 0, -1], &[0, 1, 0]])),
        ("Ly".into(), ExactMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 0], &[-1, 0, 0]])),
        ("Lz".into(), ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]])),
    ]
}

#[derive(Clone, Debug)]
pub enum RepresentationKind {
    Permutation,
    Matrix,
    Harmonic(HarmonicBasis),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGenerator {
    pub name: String,
    pub matrix: ExactMatrix,
}

#[derive(Clone, Debug)]
pub struct Representation {
    kind: RepresentationKind,
    coordinates: Vec<String>,
    group: FiniteMatrixGroup,
    action: Vec<ExactMatrix>,
    action_inverse: Vec<ExactMatrix>,
    lie: Vec<LieGenerator>,
    inner_product: ExactMatrix,
}

/// A closed subgroup given by finite generators (acting on V) and Lie
/// algebra elements (acting on V). `elements` is set when the finite part is
/// a subgroup of the representation's finite group and there is no Lie part.
#[derive(Clone, Debug)]
pub struct ClosedSubgroupSpec {
    pub label: String,
    pub finite: Vec<ExactMatrix>,
    pub lie: Vec<ExactMatrix>,
    pub elements: Option<Subgroup>,
}

impl ClosedSubgroupSpec {
    pub fn new(label: impl Into<String>, finite: Vec<ExactMatrix>, lie: Vec<ExactMatrix>, dim: usize) -> Result<Self> {
        if finite.is_empty() && lie.is_empty() {
            return Err(Error::InvalidRepresentation(
                "a subgroup needs at least one finite or Lie generator".into(),
            ));
        }
        for m in finite.iter().chain(&lie) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.rows(),
                });
            }
        }
        Ok(Self {
            label: label.into(),
            finite,
            lie,
            elements: None,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.lie.is_empty()
    }
}

impl Representation {
    /// Permutation representation from one-line permutations of `1..=n`.
    pub fn permutation(perms: &[Vec<usize>], n: usize, cap: usize) -> Result<Self> {
        let mut gens = Vec::new();
        for p in perms {
            gens.push(permutation_matrix(&validate_permutation(p, n)?));
        }
        if gens.is_empty() {
            gens.push(ExactMatrix::identity(n));
        }
        let group = FiniteMatrixGroup::close(&gens, cap)?;
        let action = group.elements().to_vec();
        let coordinates = default_coordinates(n);
        Self::assemble(
            RepresentationKind::Permutation,
            coordinates,
            group,
            action,
            Vec::new(),
            Some(ExactMatrix::identity(n)),
        )
    }

    /// Representation given directly by matrices on V.
    pub fn matrix(
        generators: &[ExactMatrix],
        lie: Vec<LieGenerator>,
        inner_product: Option<ExactMatrix>,
        cap: usize,
    ) -> Result<Self> {
        let group = FiniteMatrixGroup::close(generators, cap)?;
        let n = group.dimension();
        let action = group.elements().to_vec();
        Self::assemble(RepresentationKind::Matrix, default_coordinates(n), group, action, lie, inner_product)
    }

    /// Action of a finite group of rational orthogonal 3x3 matrices on
    /// harmonic polynomials of degree `d`, optionally with the so(3) derivations.
    pub fn harmonic(d: u32, generators: &[ExactMatrix], include_so3_lie: bool, cap: usize) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != 3 || g.cols() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: g.rows(),
                });
            }
            if !(&g.transpose() * g).is_identity() {
                return Err(Error::NonOrthogonalGenerator(i));
            }
        }
        let gens = if generators.is_empty() {
            vec![ExactMatrix::identity(3)]
        } else {
            generators.to_vec()
        };
        let group = FiniteMatrixGroup::close(&gens, cap)?;
        let basis = HarmonicBasis::new(d);
        let action = group
            .elements()
            .iter()
            .map(|g| basis.lift_matrix(g))
            .collect::<Result<Vec<_>>>()?;
        let lie = if include_so3_lie {
            so3_generators()
                .into_iter()
                .map(|(name, a)| Ok(LieGenerator { name, matrix: basis.lift_derivation(&a)? }))
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        let gram = basis.apolar_gram();
        let coordinates = default_coordinates(basis.dim());
        Self::assemble(RepresentationKind::Harmonic(basis), coordinates, group, action, lie, Some(gram))
    }

    fn assemble(
        kind: RepresentationKind,
        coordinates: Vec<String>,
        group: FiniteMatrixGroup,
        action: Vec<ExactMatrix>,
        lie: Vec<LieGenerator>,
        inner_product: Option<ExactMatrix>,
    ) -> Result<Self> {
        let n = action[0].rows();
        let action_inverse = (0..group.order()).map(|i| action[group.inverse(i)].clone()).collect();
        let inner_product = match inner_product {
            Some(g) => g,
            None => {
                // Weyl averaging of the standard form
                let mut acc = ExactMatrix::zeros(n, n);
                for m in &action {
                    acc = &acc + &(&m.transpose() * m);
                }
                acc.scale(&crate::exact::ratio(1, group.order() as i64))
            }
        };
        let rep = Self {
            kind,
            coordinates,
            group,
            action,
            action_inverse,
            lie,
            inner_product,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Homomorphism on generators, bracket closure of the Lie matrices, and
    /// invariance plus positivity of the inner product.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for m in &self.action {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.rows(),
                });
            }
        }
        for &s in self.group.generators() {
            for g in 0..self.group.order() {
                let lhs = &self.action[self.group.mul(s, g)];
                let rhs = &self.action[s] * &self.action[g];
                if *lhs != rhs {
                    return Err(Error::InvalidRepresentation("action is not a homomorphism".into()));
                }
            }
        }
        for l in &self.lie {
            if l.matrix.rows() != n || l.matrix.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: l.matrix.rows(),
                });
            }
        }
        let flat: Vec<ExactVector> = self.lie.iter().map(|l| l.matrix.entries().to_vec()).collect();
        let r = rank_of(&flat, n * n);
        for a in &self.lie {
            for b in &self.lie {
                let bracket = &(&a.matrix * &b.matrix) - &(&b.matrix * &a.matrix);
                let mut with = flat.clone();
                with.push(bracket.entries().to_vec());
                if rank_of(&with, n * n) != r {
                    return Err(Error::InvalidRepresentation(format!(
                        "bracket [{}, {}] leaves the span of the Lie generators",
                        a.name, b.name
                    )));
                }
            }
        }
        let g = &self.inner_product;
        if g.rows() != n || !crate::exact::is_positive_definite(g) {
            return Err(Error::InvalidRepresentation(
                "inner product must be symmetric positive definite".into(),
            ));
        }
        for m in &self.action {
            if &(&m.transpose() * g) * m != *g {
                return Err(Error::InvalidRepresentation("inner product is not group invariant".into()));
            }
        }
        for l in &self.lie {
            let x = &l.matrix;
            if !(&(&x.transpose() * g) + &(g * x)).is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "inner product is not invariant under {}",
                    l.name
                )));
            }
        }
        Ok(())
    }

    pub fn with_coordinates(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: names.len(),
            });
        }
        self.coordinates = names;
        Ok(self)
    }

    pub fn kind(&self) -> &RepresentationKind {
        &self.kind
    }

    pub fn harmonic_basis(&self) -> Option<&HarmonicBasis> {
        match &self.kind {
            RepresentationKind::Harmonic(b) => Some(b),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.inner_product.rows()
    }

    pub fn coordinates(&self) -> &[String] {
        &self.coordinates
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    /// `rho(g)` for the group element with index `g`.
    pub fn action(&self, g: usize) -> &ExactMatrix {
        &self.action[g]
    }

    pub fn action_inverse(&self, g: usize) -> &ExactMatrix {
        &self.action_inverse[g]
    }

    pub fn lie(&self) -> &[LieGenerator] {
        &self.lie
    }

    pub fn inner_product(&self) -> &ExactMatrix {
        &self.inner_product
    }

    pub fn apply(&self, g: usize, v: &[ExactScalar]) -> Result<ExactVector> {
        self.action[g].mul_vec(v)
    }

    /// `g . p = p o rho(g)^-1`.
    pub fn act_on_poly(&self, g: usize, p: &MultiPoly) -> Result<MultiPoly> {
        p.act(&self.action_inverse[g])
    }

    /// Converts a matrix given on the base space (3x3 for harmonic
    /// representations) or on V into the matrix acting on V.
    pub fn lift_group_matrix(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        match &self.kind {
            RepresentationKind::Harmonic(b) if m.rows() == 3 && self.dim() != 3 => b.lift_matrix(m),
            _ => Ok(m.clone()),
        }
    }

    pub fn lift_lie_matrix(&self, m: &ExactMatrix) -> Result<ExactMatrix> {
        match &self.kind {
            RepresentationKind::Harmonic(b) if m.rows() == 3 && self.dim() != 3 => b.lift_derivation(m),
            _ => Ok(m.clone()),
        }
    }

    /// Group element whose base matrix (the matrix the group was closed from) is `m`.
    pub fn element_index(&self, m: &ExactMatrix) -> Option<usize> {
        self.group.index_of(m)
    }

    /// Subgroup spec for a finite subgroup of the representation's group.
    pub fn subgroup_spec(&self, label: impl Into<String>, h: &Subgroup) -> ClosedSubgroupSpec {
        ClosedSubgroupSpec {
            label: label.into(),
            finite: h.elements().iter().map(|&i| self.action[i].clone()).collect(),
            lie: Vec::new(),
            elements: Some(h.clone()),
        }
    }

    pub fn stabilizer(&self, v: &[ExactScalar]) -> Result<Subgroup> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut out = Vec::new();
        for g in 0..self.group.order() {
            if self.apply(g, v)? == v {
                out.push(g);
            }
        }
        Ok(Subgroup::from_indices(out))
    }

    pub fn fixed_locus(&self, h: &Subgroup) -> LinearSubspace {
        let id = ExactMatrix::identity(self.dim());
        let blocks: Vec<ExactMatrix> = h
            .elements()
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| &self.action[g] - &id)
            .collect();
        LinearSubspace::kernel_of(&ExactMatrix::vstack(&blocks, self.dim()).expect("square blocks"))
    }

    pub fn fixed_locus_of_spec(&self, spec: &ClosedSubgroupSpec) -> LinearSubspace {
        let id = ExactMatrix::identity(self.dim());
        let mut blocks: Vec<ExactMatrix> = spec.finite.iter().map(|m| m - &id).collect();
        blocks.extend(spec.lie.iter().cloned());
        LinearSubspace::kernel_of(&ExactMatrix::vstack(&blocks, self.dim()).expect("square blocks"))
            .with_label(spec.label.clone())
    }

    /// `(1/|H|) sum_h tr rho(h)`; must equal `dim V^H`.
    pub fn fixed_dimension_by_character(&self, h: &Subgroup) -> ExactScalar {
        let total = h
            .elements()
            .iter()
            .fold(ExactScalar::zero(), |acc, &g| acc + self.action[g].trace());
        total / int(h.order() as i64)
    }

    /// Elements mapping the subspace into itself.
    pub fn subspace_stabilizer(&self, w: &LinearSubspace) -> Subgroup {
        let ann = w.annihilator();
        Subgroup::from_indices(
            (0..self.group.order())
                .filter(|&g| {
                    w.basis().iter().all(|b| {
                        let img = self.action[g].mul_vec(b).expect("dimension");
                        ann.iter().all(|a| dot(a, &img).is_zero())
                    })
                })
                .collect(),
        )
    }

    /// `{X in g : X v = 0}` in coordinates of the given Lie basis.
    pub fn lie_stabilizer_algebra(&self, v: &[ExactScalar]) -> Result<LinearSubspace> {
        if self.lie.is_empty() {
            return Err(Error::NoLieAction);
        }
        let cols = self.lie_tangent_vectors(v)?;
        let m = ExactMatrix::from_columns(&cols, self.dim())?;
        Ok(LinearSubspace::kernel_of(&m).with_label("stabilizer algebra"))
    }

    fn lie_tangent_vectors(&self, v: &[ExactScalar]) -> Result<Vec<ExactVector>> {
        self.lie.iter().map(|l| l.matrix.mul_vec(v)).collect()
    }

    /// Tangent space `E_v` of the connected orbit through `v` and its
    /// orthogonal complement under the invariant inner product.
    pub fn orthogonal_slice(&self, v: &[ExactScalar]) -> Result<Slice> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        // the identity component of a finite group is trivial, so only the Lie part contributes
        let tangent = LinearSubspace::span(&self.lie_tangent_vectors(v)?, self.dim())?.with_label("E_v");
        let rows: Vec<ExactVector> = tangent
            .basis()
            .iter()
            .map(|e| self.inner_product.mul_vec(e))
            .collect::<Result<_>>()?;
        let slice = LinearSubspace {
            ambient: self.dim(),
            basis: kernel_from_rows(rows, self.dim()),
            label: "slice".into(),
        };
        Ok(Slice { tangent, slice })
    }

    /// Invariant bilinear form `<u, w>`.
    pub fn pairing(&self, u: &[ExactScalar], w: &[ExactScalar]) -> Result<ExactScalar> {
        Ok(dot(u, &self.inner_product.mul_vec(w)?))
    }
}

#[derive(Clone, Debug)]
pub struct Slice {
    pub tangent: LinearSubspace,
    pub slice: LinearSubspace,
}

/// `x, y, z` in dimension 3, otherwise `x1, ..., xn`.
pub fn default_coordinates(n: usize) -> Vec<String> {
    if n == 3 {
        return ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    }
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Converts a one-line permutation of `1..=n` to zero-based images.
pub fn validate_permutation(p: &[usize], n: usize) -> Result<Vec<usize>> {
    if p.len() != n {
        return Err(Error::InvalidPermutation(format!("expected {n} entries, found {}", p.len())));
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for &x in p {
        if x == 0 || x > n || seen[x - 1] {
            return Err(Error::InvalidPermutation(format!("{p:?} is not a permutation of 1..={n}")));
        }
        seen[x - 1] = true;
        out.push(x - 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn v(xs: &[i64]) -> ExactVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn octahedral_gens() -> Vec<ExactMatrix> {
        vec![
            ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
            ExactMatrix::from_i64(&[&[1, 0, 0], &[0, 0, -1], &[0, 1, 0]]),
        ]
    }

    fn s3() -> Representation {
        Representation::permutation(&[vec![2, 1, 3], vec![2, 3, 1]], 3, 100).unwrap()
    }

    /// Coordinates in the degree-2 harmonic basis of the quadric `v^T A v`.
    fn quadric(rep: &Representation, a: [[i64; 3]; 3]) -> ExactVector {
        let b = rep.harmonic_basis().unwrap();
        let xyz = b.base_vars().to_vec();
        let mut q = MultiPoly::zero(&xyz);
        for (i, row) in a.iter().enumerate() {
            for (j, &aij) in row.iter().enumerate() {
                let t = &MultiPoly::var(&xyz, i) * &MultiPoly::var(&xyz, j);
                q = &q + &t.scale(&int(aij));
            }
        }
        b.coordinates(&q).unwrap()
    }

    #[test]
    fn permutation_reps() {
        let r = s3();
        assert_eq!(r.dim(), 3);
        assert_eq!(r.group().order(), 6);
        let triv = Representation::permutation(&[vec![1, 2, 3]], 3, 10).unwrap();
        assert_eq!(triv.group().order(), 1);
        let swap = Representation::permutation(&[vec![2, 1]], 2, 10).unwrap();
        assert_eq!(swap.group().order(), 2);
        assert!(matches!(
            Representation::permutation(&[vec![1, 1, 3]], 3, 10),
            Err(Error::InvalidPermutation(_))
        ));
    }

    #[test]
    fn harmonic_dimensions() {
        assert_eq!(Representation::harmonic(2, &[], true, 10).unwrap().dim(), 5);
        assert_eq!(Representation::harmonic(4, &[], false, 10).unwrap().dim(), 9);
        let h0 = Representation::harmonic(0, &octahedral_gens(), false, 100).unwrap();
        assert_eq!(h0.dim(), 1);
        assert!((0..24).all(|g| h0.action(g).is_identity()));
        let skew = ExactMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            Representation::harmonic(2, &[skew], false, 10).unwrap_err(),
            Error::NonOrthogonalGenerator(0)
        );
    }

    #[test]
    fn harmonic_basis_is_harmonic_and_free_coordinates_read_back() {
        let b = HarmonicBasis::new(4);
        for (i, h) in b.polynomials().iter().enumerate() {
            assert!(h.laplacian().is_zero());
            let mut e = vec![int(0); b.dim()];
            e[i] = int(1);
            assert_eq!(b.coordinates(h).unwrap(), e);
        }
        let xyz = b.base_vars().to_vec();
        assert!(b.coordinates(&MultiPoly::parse("x^4", &xyz).unwrap()).is_err());
    }

    #[test]
    fn stabilizers() {
        let r = s3();
        assert_eq!(r.stabilizer(&v(&[1, 2, 3])).unwrap().order(), 1);
        let h = r.stabilizer(&v(&[1, 1, 2])).unwrap();
        assert_eq!(h.order(), 2);
        let swap = r.element_index(&permutation_matrix(&[1, 0, 2])).unwrap();
        assert!(h.contains(swap));
        assert!(r.stabilizer(&v(&[1, 2])).is_err());

        let h2 = Representation::harmonic(2, &octahedral_gens(), true, 100).unwrap();
        let uni = quadric(&h2, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]);
        let stab = h2.stabilizer(&uni).unwrap();
        // oracle: count the 24 rotations preserving the z axis up to sign
        let brute = h2
            .group()
            .elements()
            .iter()
            .filter(|g| g.get(2, 2).clone() != int(0))
            .count();
        assert_eq!(stab.order(), brute);
        assert_eq!(stab.order(), 8);
    }

    #[test]
    fn fixed_loci() {
        let h2 = Representation::harmonic(2, &octahedral_gens(), true, 100).unwrap();
        let lz = h2.lie()[2].matrix.clone();
        let flip = h2
            .lift_group_matrix(&ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]]))
            .unwrap();
        let o2 = ClosedSubgroupSpec::new("O(2)", vec![flip], vec![lz], 5).unwrap();
        let fixed = h2.fixed_locus_of_spec(&o2);
        assert_eq!(fixed.dim(), 1);
        let uni = quadric(&h2, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]);
        assert_eq!(fixed, LinearSubspace::span(&[uni], 5).unwrap());

        let r = s3();
        assert_eq!(r.fixed_locus(&r.group().trivial()).dim(), 3);
        assert_eq!(r.fixed_locus(&r.group().trivial()), LinearSubspace::whole(3));
    }

    #[test]
    fn character_formula_on_h4() {
        let h4 = Representation::harmonic(4, &octahedral_gens(), false, 100).unwrap();
        let g = h4.group();
        let d2 = g.generated(&[
            g.index_of(&ExactMatrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]])).unwrap(),
            g.index_of(&ExactMatrix::from_i64(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -1]])).unwrap(),
        ]);
        let traces: Vec<ExactScalar> = d2.elements().iter().map(|&e| h4.action(e).trace()).collect();
        let mut sorted = traces.clone();
        sorted.sort();
        assert_eq!(sorted, vec![int(1), int(1), int(1), int(9)]);
        assert_eq!(h4.fixed_dimension_by_character(&d2), int(3));
        assert_eq!(h4.fixed_locus(&d2).dim(), 3);
    }

    #[test]
    fn lie_stabilizer_dimensions() {
        let h2 = Representation::harmonic(2, &octahedral_gens(), true, 100).unwrap();
        // oracle: kernel of the 5x3 matrix of tangent vectors, computed by hand:
        // Lx and Ly move diag(-1,-1,2) off its line, Lz fixes it
        let uni = quadric(&h2, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]);
        let alg = h2.lie_stabilizer_algebra(&uni).unwrap();
        assert_eq!(alg.basis(), &[v(&[0, 0, 1])]);
        let generic = quadric(&h2, [[1, 0, 0], [0, 2, 0], [0, 0, -3]]);
        assert_eq!(h2.lie_stabilizer_algebra(&generic).unwrap().dim(), 0);
        assert_eq!(h2.lie_stabilizer_algebra(&v(&[0, 0, 0, 0, 0])).unwrap().dim(), 3);
        assert_eq!(s3().lie_stabilizer_algebra(&v(&[1, 2, 3])).unwrap_err(), Error::NoLieAction);
    }

    #[test]
    fn slices() {
        let h2 = Representation::harmonic(2, &octahedral_gens(), true, 100).unwrap();
        let uni = quadric(&h2, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]);
        let s = h2.orthogonal_slice(&uni).unwrap();
        assert_eq!(s.tangent.dim(), 2);
        assert_eq!(s.slice.dim(), 3);
        assert!(s.slice.contains(&uni));
        assert_eq!(s.tangent.intersection(&s.slice).unwrap().dim(), 0);
        // the tangent directions are the off-diagonal quadrics xz and yz
        let xz = quadric(&h2, [[0, 0, 1], [0, 0, 0], [1, 0, 0]]);
        let yz = quadric(&h2, [[0, 0, 0], [0, 0, 1], [0, 1, 0]]);
        assert_eq!(s.tangent, LinearSubspace::span(&[xz, yz], 5).unwrap());

        let zero = h2.orthogonal_slice(&v(&[0, 0, 0, 0, 0])).unwrap();
        assert_eq!(zero.slice, LinearSubspace::whole(5));
        let finite = s3().orthogonal_slice(&v(&[1, 2, 3])).unwrap();
        assert_eq!(finite.tangent.dim(), 0);
        assert_eq!(finite.slice, LinearSubspace::whole(3));
    }

    #[test]
    fn apolar_form_is_twice_the_trace_form_on_quadrics() {
        let h2 = Representation::harmonic(2, &[], false, 10).unwrap();
        let a = quadric(&h2, [[-1, 0, 0], [0, -1, 0], [0, 0, 2]]);
        // tr(diag(-1,-1,2)^2) = 6
        assert_eq!(h2.pairing(&a, &a).unwrap(), int(12));
        let b = quadric(&h2, [[0, 1, 0], [1, 0, 0], [0, 0, 0]]);
        assert_eq!(h2.pairing(&b, &b).unwrap(), int(4));
        assert_eq!(h2.pairing(&a, &b).unwrap(), ratio(0, 1));
    }

    #[test]
    fn matrix_rep_validation() {
        let rot = ExactMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let r = Representation::matrix(std::slice::from_ref(&rot), Vec::new(), None, 10).unwrap();
        assert!(r.inner_product().is_identity());
        let bad = Representation::matrix(&[rot], Vec::new(), Some(ExactMatrix::from_i64(&[&[2, 0], &[0, 1]])), 10);
        assert!(matches!(bad, Err(Error::InvalidRepresentation(_))));
    }

    #[test]
    fn subspace_canonical_form() {
        let a = LinearSubspace::span(&[v(&[1, 1, 0]), v(&[0, 0, 1])], 3).unwrap();
        let b = LinearSubspace::span(&[v(&[2, 2, 5]), v(&[1, 1, -1])], 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.annihilator(), vec![v(&[-1, 1, 0])]);
        assert!(a.contains(&v(&[3, 3, 1])));
        assert_eq!(a.coordinates(&v(&[3, 3, 1])).unwrap(), Some(v(&[3, 1])));
        assert_eq!(a.coordinates(&v(&[3, 2, 1])).unwrap(), None);
    }
}
