//! Multivariate polynomials over the rationals.
//!
//! Terms are kept in a map keyed by exponent vectors ordered graded
//! lexicographically with the first variable greatest; zero coefficients are
//! never stored. Text I/O uses the grammar
//!
//! ```text
//! poly   := ["+"|"-"] term { ("+"|"-") term }
//! term   := [coeff "*"] factor { "*" factor } | coeff
//! factor := variable ["^" positive-integer]
//! coeff  := integer ["/" integer]
//! ```
//!
//! e.g. `-1/14*J2 + 4/7*s1^2`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, parse_scalar, ExactMatrix, ExactScalar, ExactVector};

/// Exponent vector; ordered graded-lex with earlier variables greater.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Weighted degree with one weight per variable.
    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Monomials in `n` variables whose weighted degree is exactly `d`, largest first.
pub fn monomials_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let i = prefix.len();
        if i == weights.len() {
            if d == 0 {
                out.push(Monomial(prefix.clone()));
            }
            return;
        }
        let w = weights[i];
        let max = d.checked_div(w).unwrap_or(0);
        for e in (0..=max).rev() {
            prefix.push(e);
            rec(weights, d - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, d, &mut Vec::with_capacity(weights.len()), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        Self {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: ExactScalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::from_monomial(vars, Monomial(e), ExactScalar::one())
    }

    pub fn from_monomial(vars: &[String], m: Monomial, c: ExactScalar) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        p.add_term(m, c);
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear_form(vars: &[String], coeffs: &[ExactScalar]) -> Self {
        let mut p = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from largest to smallest monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &ExactScalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variables: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn same_ring(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(self.vars.clone(), other.vars.clone()));
        }
        Ok(())
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.vars, ExactScalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by another polynomial, adding the product into `acc` scaled by `k`.
    fn mul_into(&self, other: &Self, k: &ExactScalar, acc: &mut Self) {
        for (ma, ca) in &self.terms {
            let cak = ca * k;
            for (mb, cb) in &other.terms {
                acc.add_term(ma.times(mb), &cak * cb);
            }
        }
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut n = m.clone();
                n.0[i] -= 1;
                out.add_term(n, c * int(e as i64));
            }
        }
        out
    }

    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for i in 0..self.nvars() {
            out = &out + &self.derivative(i).derivative(i);
        }
        out
    }

    /// Derivation `p -> sum_i (d p / d x_i) * (m x)_i` induced by a square matrix.
    pub fn derivation(&self, m: &ExactMatrix) -> Result<Self> {
        let n = self.nvars();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.rows(),
            });
        }
        let mut out = Self::zero(&self.vars);
        for i in 0..n {
            let field = Self::linear_form(&self.vars, m.row(i));
            if field.is_zero() {
                continue;
            }
            let d = self.derivative(i);
            d.mul_into(&field, &ExactScalar::one(), &mut out);
        }
        Ok(out)
    }

    /// Substitutes `x_i -> sum_j m[i][j] * y_j` where `y` are `new_vars`.
    pub fn substitute_linear(&self, m: &ExactMatrix, new_vars: &[String]) -> Result<Self> {
        if m.rows() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: m.rows(),
            });
        }
        if m.cols() != new_vars.len() {
            return Err(Error::DimensionMismatch {
                expected: new_vars.len(),
                found: m.cols(),
            });
        }
        let mut cache = LinearSubstitution::new(m, new_vars);
        Ok(cache.apply(self))
    }

    /// `p -> p(m v)`: substitution by a square matrix over the same variables.
    /// Passing `rho(g)^-1` yields the left action `(g.p)(v) = p(g^-1 v)`.
    pub fn act(&self, m: &ExactMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        self.substitute_linear(m, &self.vars.clone())
    }

    /// Replaces each variable by a polynomial; all images must share one ring.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        let target = first.vars().to_vec();
        for im in images {
            im.same_ring(first)?;
        }
        let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = &term * &p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[ExactScalar]) -> Result<ExactScalar> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: point.len(),
            });
        }
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficients against an explicit monomial list; errors if a term falls outside it.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Result<ExactVector> {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![ExactScalar::zero(); basis.len()];
        for (m, c) in &self.terms {
            let Some(&i) = index.get(m) else {
                return Err(Error::Inconsistent(format!(
                    "term of degree {} outside the coefficient basis",
                    m.degree()
                )));
            };
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_coefficients(vars: &[String], basis: &[Monomial], coeffs: &[ExactScalar]) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in basis.iter().zip(coeffs) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Same terms over a renamed (same length) variable list.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        if vars.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: vars.len(),
            });
        }
        Ok(Self {
            vars: vars.to_vec(),
            terms: self.terms.clone(),
        })
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn parse(text: &str, vars: &[String]) -> Result<Self> {
        Parser::new(text, vars).parse()
    }
}

/// `p(s_1 b_1 + ... + s_m b_m)` in fresh coordinates `s`, one per basis vector.
pub fn restrict_to_subspace(p: &MultiPoly, basis: &[ExactVector], new_vars: &[String]) -> Result<MultiPoly> {
    if basis.len() != new_vars.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: new_vars.len(),
        });
    }
    let m = ExactMatrix::from_columns(basis, p.nvars())?;
    p.substitute_linear(&m, new_vars)
}

/// All degree `d` monomials as polynomials, largest first.
pub fn monomial_basis(vars: &[String], d: u32) -> Vec<MultiPoly> {
    monomials_of_degree(vars.len(), d)
        .into_iter()
        .map(|m| MultiPoly::from_monomial(vars, m, ExactScalar::one()))
        .collect()
}

/// Cached linear substitution; images of monomials are memoised so that
/// building the action matrix on a whole degree block costs one product per monomial.
pub struct LinearSubstitution {
    target: Vec<String>,
    forms: Vec<MultiPoly>,
    memo: HashMap<Monomial, MultiPoly>,
}

impl LinearSubstitution {
    pub fn new(m: &ExactMatrix, target: &[String]) -> Self {
        let forms = (0..m.rows()).map(|i| MultiPoly::linear_form(target, m.row(i))).collect();
        Self {
            target: target.to_vec(),
            forms,
            memo: HashMap::new(),
        }
    }

    pub fn image(&mut self, m: &Monomial) -> MultiPoly {
        if let Some(p) = self.memo.get(m) {
            return p.clone();
        }
        let result = match m.0.iter().position(|&e| e > 0) {
            None => MultiPoly::constant(&self.target, ExactScalar::one()),
            Some(i) => {
                let mut rest = m.clone();
                rest.0[i] -= 1;
                let base = self.image(&rest);
                &base * &self.forms[i]
            }
        };
        self.memo.insert(m.clone(), result.clone());
        result
    }

    pub fn apply(&mut self, p: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.target);
        for (m, c) in &p.terms {
            let img = self.image(m);
            for (mi, ci) in &img.terms {
                out.add_term(mi.clone(), c * ci);
            }
        }
        out
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_same_ring(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        self.mul_into(rhs, &ExactScalar::one(), &mut out);
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-ExactScalar::one())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c < &ExactScalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", format_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", format_scalar(&abs), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a [String]) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err(&self, message: &str) -> Error {
        Error::PolyParse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse(mut self) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.vars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, c * int(sign));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, ExactScalar)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coeff = ExactScalar::one();
        let mut expect_factor = true;
        if self.peek().is_some_and(|b| b.is_ascii_digit()) {
            let num = self.digits();
            let mut lit = num;
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let den = self.digits();
                if den.is_empty() {
                    return Err(self.err("expected denominator"));
                }
                lit = format!("{lit}/{den}");
            }
            coeff = parse_scalar(&lit).map_err(|_| self.err("invalid coefficient"))?;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                expect_factor = false;
            }
        }
        while expect_factor {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
            if start == self.pos || self.src[start].is_ascii_digit() {
                return Err(self.err("expected variable"));
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let idx = self
                .vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            let mut e = 1u32;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let d = self.digits();
                e = d.parse().map_err(|_| self.err("expected exponent"))?;
                if e == 0 {
                    return Err(self.err("exponent must be positive"));
                }
            }
            exps[idx] += e;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                expect_factor = false;
            }
        }
        Ok((Monomial(exps), coeff))
    }
}

/// Power series in one variable truncated above degree `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactScalar>,
}

impl TruncatedSeries {
    pub fn zero(cutoff: usize) -> Self {
        Self {
            coeffs: vec![ExactScalar::zero(); cutoff + 1],
        }
    }

    pub fn from_coefficients(mut coeffs: Vec<ExactScalar>, cutoff: usize) -> Self {
        coeffs.resize(cutoff + 1, ExactScalar::zero());
        Self { coeffs }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![ExactScalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let n = self.coeffs.len();
        let mut out = vec![ExactScalar::zero(); n];
        out[0] = inv0.clone();
        for k in 1..n {
            let mut s = ExactScalar::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &out[k - j];
                }
            }
            out[k] = -s * &inv0;
        }
        Some(Self { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Vec<String> {
        ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &xyz()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let vars: Vec<String> = ["J2", "s1"].iter().map(|s| s.to_string()).collect();
        let q = MultiPoly::parse("-1/14*J2 + 4/7*s1^2", &vars).unwrap();
        assert_eq!(q.to_string(), "4/7*s1^2 - 1/14*J2");
        assert_eq!(MultiPoly::parse(&q.to_string(), &vars).unwrap(), q);
        assert_eq!(p("x*y*x - 2 + 3*z^2").to_string(), "x^2*y + 3*z^2 - 2");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("  -  x ^ 2 "), p("-x^2"));
        assert_eq!(p("6/4").to_string(), "3/2");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(MultiPoly::parse("w", &xyz()), Err(Error::UnknownVariable(_))));
        for bad in ["", "x +", "2x", "x^0", "1/0*x", "x y", "x**2"] {
            assert!(MultiPoly::parse(bad, &xyz()).is_err(), "{bad}");
        }
    }

    #[test]
    fn act_examples() {
        let swap = ExactMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(p("x^2").act(&swap).unwrap(), p("y^2"));
        let q = p("x^3 - 2*y*z + 5");
        assert_eq!(q.act(&ExactMatrix::identity(3)).unwrap(), q);
        let p1 = p("-z^4 + 6*y^2*z^2 - y^4");
        let flip = ExactMatrix::from_i64(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert_eq!(p1.act(&flip).unwrap(), p1);
        assert!(p1.act(&ExactMatrix::identity(2)).is_err());
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(p("x^2 + y^2 + z^2").laplacian(), p("6"));
        assert!(p("-y^4 + 6*x^2*y^2 - x^4").laplacian().is_zero());
        assert!(p("7").laplacian().is_zero());
    }

    #[test]
    fn monomial_basis_counts() {
        let b = monomial_basis(&xyz(), 1);
        assert_eq!(b, vec![p("x"), p("y"), p("z")]);
        assert_eq!(monomial_basis(&xyz(), 2).len(), 6);
        let xy: Vec<String> = vec!["x".into(), "y".into()];
        assert_eq!(monomial_basis(&xy, 4).len(), 5);
        let two = monomials_of_degree(3, 2);
        assert!(two.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn restriction_examples() {
        let s: Vec<String> = vec!["s1".into(), "s2".into()];
        let basis = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        let r = restrict_to_subspace(&p("x + y + z"), &basis, &s).unwrap();
        assert_eq!(r, MultiPoly::parse("2*s1 + s2", &s).unwrap());
        assert!(restrict_to_subspace(&p("x"), &basis[..1], &s).is_err());
    }

    #[test]
    fn trace_invariants_on_the_uniaxial_line() {
        // A = diag(a, b, c) parameterised by the line diag(-l, -l, 2l).
        let vars: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let i2 = MultiPoly::parse("a^2 + b^2 + c^2", &vars).unwrap();
        let i3 = MultiPoly::parse("a^3 + b^3 + c^3", &vars).unwrap();
        let l = vec!["l".to_string()];
        let line = vec![vec![int(-1), int(-1), int(2)]];
        assert_eq!(
            restrict_to_subspace(&i2, &line, &l).unwrap(),
            MultiPoly::parse("6*l^2", &l).unwrap()
        );
        assert_eq!(
            restrict_to_subspace(&i3, &line, &l).unwrap(),
            MultiPoly::parse("6*l^3", &l).unwrap()
        );
    }

    #[test]
    fn derivation_of_rotation_generator() {
        let lz = ExactMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]);
        // x d/dy - y d/dx applied via the vector field (-y, x, 0)
        assert_eq!(p("x^2 + y^2").derivation(&lz).unwrap(), p("0"));
        assert_eq!(p("x").derivation(&lz).unwrap(), p("-y"));
    }

    #[test]
    fn series_inverse() {
        // 1 / (1 - t) = 1 + t + t^2 + ...
        let s = TruncatedSeries::from_coefficients(vec![int(1), int(-1)], 5);
        let inv = s.inverse().unwrap();
        assert!(inv.coefficients().iter().all(|c| c.is_one()));
        assert!(TruncatedSeries::zero(3).inverse().is_none());
        assert_eq!(s.mul(&inv).coefficients()[0], int(1));
        assert!(s.mul(&inv).coefficients()[1..].iter().all(Zero::is_zero));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = MultiPoly> {
            proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..5), 0..6).prop_map(|ts| {
                let mut q = MultiPoly::zero(&xyz());
                for ((a, b, c), k) in ts {
                    q.add_term(Monomial(vec![a, b, c]), int(k));
                }
                q
            })
        }

        fn matrix() -> impl Strategy<Value = ExactMatrix> {
            proptest::collection::vec(-2i64..3, 9)
                .prop_map(|xs| ExactMatrix::new(3, 3, xs.into_iter().map(int).collect()).unwrap())
        }

        proptest! {
            #[test]
            fn substitution_is_a_right_action(q in poly(), a in matrix(), b in matrix()) {
                let lhs = q.act(&b).unwrap().act(&a).unwrap();
                let rhs = q.act(&(&b * &a)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn restriction_is_multiplicative(q in poly(), r in poly(), a in -2i64..3, b in -2i64..3) {
                let s: Vec<String> = vec!["s1".into(), "s2".into()];
                let basis = vec![vec![int(1), int(a), int(0)], vec![int(b), int(0), int(1)]];
                let lhs = restrict_to_subspace(&(&q * &r), &basis, &s).unwrap();
                let rhs = &restrict_to_subspace(&q, &basis, &s).unwrap()
                    * &restrict_to_subspace(&r, &basis, &s).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn laplacian_lowers_degree_by_two(q in poly(), d in 0u32..5) {
                let h = q.homogeneous_component(d);
                let l = h.laplacian();
                prop_assert!(l.is_zero() || (l.degree() == Some(d - 2) && l.is_homogeneous()));
            }

            #[test]
            fn text_round_trip(q in poly()) {
                prop_assert_eq!(MultiPoly::parse(&q.to_string(), &xyz()).unwrap(), q);
            }

            #[test]
            fn monomial_basis_expansion_is_unique(q in poly(), d in 0u32..5) {
                let h = q.homogeneous_component(d);
                let basis = monomials_of_degree(3, d);
                let c = h.coefficients_in(&basis).unwrap();
                prop_assert_eq!(MultiPoly::from_coefficients(&xyz(), &basis, &c), h);
            }
        }
    }
}
