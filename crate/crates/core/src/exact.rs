//! Exact rational scalars, dense matrices and the linear solving routines
//! (RREF, kernel, rank, span comparison) everything else is built on.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with a positive denominator.
pub type ExactScalar = BigRational;

/// Exact vector in coordinates.
pub type ExactVector = Vec<ExactScalar>;

pub fn int(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q` (q nonzero). Decimal and exponent forms are rejected.
pub fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let s = text.trim();
    let bad = || Error::InvalidScalar(text.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.trim_start_matches('+').parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(x: &ExactScalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn format_vector(v: &[ExactScalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", parts.join(", "))
}

pub fn dot(a: &[ExactScalar], b: &[ExactScalar]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vector(v: &[ExactScalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(format_scalar).collect())
            .collect();
        write!(f, "ExactMatrix{rows:?}")
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ExactScalar::one();
        }
        m
    }

    /// Builds a matrix from explicit rows; an empty row list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`ExactMatrix::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<ExactScalar>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Self { rows: n, cols, data })
    }

    pub fn from_columns(columns: &[ExactVector], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, x) in col.iter().enumerate() {
                m.data[r * m.cols + c] = x.clone();
            }
        }
        Ok(m)
    }

    /// Convenience constructor for integer matrices (panics on ragged input).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_rows(data).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &ExactScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[ExactScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> ExactVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<ExactVector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<ExactVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
    ) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).fold(ExactScalar::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[ExactMatrix], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn determinant(&self) -> Result<ExactScalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Ok(ExactScalar::zero());
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] / &pivot;
                let (upper, lower) = rows.split_at_mut(r);
                for (x, p) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                    *x -= &f * p;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let aug: Vec<ExactVector> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { int(1) } else { int(0) }));
                row
            })
            .collect();
        let (reduced, pivots) = rref_rows(aug, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let data = reduced
            .into_iter()
            .take(n)
            .flat_map(|row| row.into_iter().skip(n))
            .collect();
        Ok(Self { rows: n, cols: n, data })
    }

    /// Solves `self * x = b` for one solution, if any exists.
    pub fn solve(&self, b: &[ExactScalar]) -> Result<Option<ExactVector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let aug: Vec<ExactVector> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(b[r].clone());
                row
            })
            .collect();
        let (reduced, pivots) = rref_rows(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![ExactScalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = reduced[i][self.cols].clone();
        }
        Ok(Some(x))
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

/// Gauss-Jordan elimination on explicit rows. Returns the reduced rows
/// (zero rows removed) and the strictly increasing pivot columns.
///
/// Pivot rows are chosen with the fewest nonzeros to limit fill-in; the
/// result is independent of that choice because the RREF is unique.
pub(crate) fn rref_rows(mut rows: Vec<ExactVector>, cols: usize) -> (Vec<ExactVector>, Vec<usize>) {
    rows.retain(|r| !is_zero_vector(r));
    let mut pivots = Vec::new();
    let mut done = 0;
    for col in 0..cols {
        if done == rows.len() {
            break;
        }
        let best = (done..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r].iter().filter(|x| !x.is_zero()).count());
        let Some(p) = best else { continue };
        rows.swap(done, p);
        let inv = rows[done][col].recip();
        for x in rows[done].iter_mut().skip(col) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let support: Vec<usize> = (col + 1..cols).filter(|&c| !rows[done][c].is_zero()).collect();
        let (head, tail) = rows.split_at_mut(done + 1);
        let pivot_row = &head[done];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut row[col], ExactScalar::zero());
            for &c in &support {
                let delta = &f * &pivot_row[c];
                row[c] -= delta;
            }
        }
        pivots.push(col);
        done += 1;
    }
    rows.truncate(done);
    // back substitution
    for i in (0..pivots.len()).rev() {
        let col = pivots[i];
        let support: Vec<usize> = (col + 1..cols).filter(|&c| !rows[i][c].is_zero()).collect();
        let (head, tail) = rows.split_at_mut(i);
        let pivot_row = &tail[0];
        for row in head.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut row[col], ExactScalar::zero());
            for &c in &support {
                let delta = &f * &pivot_row[c];
                row[c] -= delta;
            }
        }
    }
    (rows, pivots)
}

/// Reduced row echelon form (same shape as the input, zero rows last) and pivot columns.
pub fn rref(m: &ExactMatrix) -> (ExactMatrix, Vec<usize>) {
    let (rows, pivots) = rref_rows(m.to_rows(), m.cols);
    let mut out = ExactMatrix::zeros(m.rows, m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            out.data[r * m.cols + c] = x;
        }
    }
    (out, pivots)
}

/// Kernel basis read off the RREF: one vector per free column, with a 1 in
/// that column and zeros in the other free columns.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<ExactVector> {
    kernel_from_rows(m.to_rows(), m.cols)
}

pub(crate) fn kernel_from_rows(rows: Vec<ExactVector>, cols: usize) -> Vec<ExactVector> {
    let (reduced, pivots) = rref_rows(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![ExactScalar::zero(); cols];
            v[free] = ExactScalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[i][free].clone();
            }
            v
        })
        .collect()
}

/// Incrementally grown row echelon basis: each stored row has a leading
/// 1 in a distinct pivot column.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, ExactVector)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every stored pivot.
    pub fn reduce(&self, mut v: ExactVector) -> ExactVector {
        assert_eq!(v.len(), self.dim, "vector length does not match echelon basis");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[ExactScalar]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was added.
    pub fn insert(&mut self, v: ExactVector) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}

/// Rank of a list of vectors of a common length.
pub fn rank_of(vectors: &[ExactVector], dim: usize) -> usize {
    rref_rows(vectors.to_vec(), dim).1.len()
}

fn common_dimension(a: &[ExactVector], b: &[ExactVector]) -> Result<usize> {
    let mut dim = None;
    for v in a.iter().chain(b) {
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                })
            }
            _ => {}
        }
    }
    Ok(dim.unwrap_or(0))
}

/// True iff the two lists span the same subspace.
pub fn subspace_equal(a: &[ExactVector], b: &[ExactVector]) -> Result<bool> {
    let dim = common_dimension(a, b)?;
    let ra = rank_of(a, dim);
    let rb = rank_of(b, dim);
    if ra != rb {
        return Ok(false);
    }
    let joint: Vec<ExactVector> = a.iter().chain(b).cloned().collect();
    Ok(rank_of(&joint, dim) == ra)
}

/// True iff span(a) is contained in span(b).
pub fn subspace_contained(a: &[ExactVector], b: &[ExactVector]) -> Result<bool> {
    let dim = common_dimension(a, b)?;
    let joint: Vec<ExactVector> = a.iter().chain(b).cloned().collect();
    Ok(rank_of(&joint, dim) == rank_of(b, dim))
}

/// Leading-minor test for positive definiteness of a symmetric matrix.
pub fn is_positive_definite(m: &ExactMatrix) -> bool {
    if !m.is_square() || *m != m.transpose() {
        return false;
    }
    let n = m.rows();
    // Gaussian elimination without pivoting; all pivots positive iff PD.
    let mut rows = m.to_rows();
    for k in 0..n {
        let pivot = rows[k][k].clone();
        if !pivot.is_positive() {
            return false;
        }
        for r in k + 1..n {
            if rows[r][k].is_zero() {
                continue;
            }
            let f = &rows[r][k] / &pivot;
            let (upper, lower) = rows.split_at_mut(r);
            for (x, p) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *x -= &f * p;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> ExactVector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert_eq!(parse_scalar(" 5 ").unwrap(), int(5));
        assert_eq!(parse_scalar("3/-6").unwrap(), ratio(-1, 2));
        for bad in ["1/0", "1.5", "", "x", "2e3", "1//2", "-"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
        let k = kernel_basis(&ExactMatrix::zeros(2, 3));
        assert_eq!(k, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let k = kernel_basis(&ExactMatrix::from_i64(&[&[1, 1, 1]]));
        assert_eq!(k, vec![v(&[-1, 1, 0]), v(&[-1, 0, 1])]);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&ExactMatrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, ExactMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = rref(&ExactMatrix::identity(3));
        assert!(r.is_identity());
        assert_eq!(p, vec![0, 1, 2]);
        let (r, p) = rref(&ExactMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!(r.is_identity());
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn subspace_equal_examples() {
        assert!(subspace_equal(&[v(&[1, 0])], &[v(&[2, 0])]).unwrap());
        assert!(!subspace_equal(&[v(&[1, 0])], &[v(&[0, 1])]).unwrap());
        assert!(subspace_equal(&[v(&[1, 1]), v(&[1, -1])], &[v(&[1, 0]), v(&[0, 1])]).unwrap());
        assert!(matches!(
            subspace_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = ExactMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), int(1));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(
            ExactMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        );
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = ExactMatrix::from_i64(&[&[1, 1], &[1, -1], &[2, 0]]);
        assert_eq!(m.solve(&v(&[3, 1, 4])).unwrap(), Some(v(&[2, 1])));
        assert_eq!(m.solve(&v(&[3, 1, 5])).unwrap(), None);
    }

    #[test]
    fn positive_definite() {
        assert!(is_positive_definite(&ExactMatrix::from_i64(&[&[2, 1], &[1, 2]])));
        assert!(!is_positive_definite(&ExactMatrix::from_i64(&[&[1, 2], &[2, 1]])));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = ExactMatrix> {
            (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                    ExactMatrix::new(r, c, xs.into_iter().map(int).collect()).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn kernel_vectors_are_annihilated(m in matrix()) {
                let k = kernel_basis(&m);
                for vec in &k {
                    prop_assert!(is_zero_vector(&m.mul_vec(vec).unwrap()));
                }
                prop_assert_eq!(m.rank() + k.len(), m.cols());
                prop_assert_eq!(rank_of(&k, m.cols()), k.len());
            }

            #[test]
            fn rref_is_idempotent(m in matrix()) {
                let (r, _) = rref(&m);
                let (rr, _) = rref(&r);
                prop_assert_eq!(r, rr);
            }

            #[test]
            fn reciprocal_round_trip(n in -50i64..50, d in 1i64..50) {
                prop_assume!(n != 0);
                let x = ratio(n, d);
                prop_assert!((&x * x.recip()).is_one());
            }
        }
    }
}
