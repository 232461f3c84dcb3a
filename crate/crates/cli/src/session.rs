//! Session files: a JSON document describing a representation, named
//! subgroups, user-supplied invariant lists and solver options.
//!
//! ```json
//! {
//!   "variables": ["x", "y", "z"],
//!   "representation": {"kind": "permutation", "degree": 3, "generators": [[2, 1, 3], [2, 3, 1]]},
//!   "subgroups": [{"label": "S2", "finite_generators": [[2, 1, 3]]}],
//!   "invariants": {"sigma": {"sigma1": "x + y + z"}},
//!   "options": {"cap_group_order": 10000}
//! }
//! ```
//!
//! Scalars are JSON integers or strings `"p"` / `"p/q"`. Matrices are arrays
//! of rows. Representation kinds:
//! - `permutation`: `degree`, `generators` (one-line permutations of `1..=degree`);
//! - `matrix`: `generators` (matrices), optional `lie_generators`
//!   (`{"name", "matrix"}`) and `inner_product`;
//! - `harmonic`: `degree`, `group_generators` (rational orthogonal 3x3
//!   matrices), optional `so3_lie` flag.
//!
//! Subgroup finite generators are given in the same form as the
//! representation's generators; Lie generators are names of representation
//! Lie generators (`Lx`, `Ly`, `Lz` for harmonic sessions) or matrices.
//! `normal_form_basis` optionally fixes a basis of the fixed locus (vectors,
//! or harmonic polynomials in `x, y, z`), and `coordinates` names its
//! coordinates (default `s1, s2, ...`).

use serde_json::{json, Map, Value};

use isostrata::exact::{format_scalar, parse_scalar, ExactMatrix, ExactScalar, ExactVector};
use isostrata::group::{DEFAULT_ORDER_CAP, Subgroup};
use isostrata::invariants::DEFAULT_GENERATOR_DEGREE_CAP;
use isostrata::rationality::DEFAULT_DEGREE_CAP;
use isostrata::rep::{default_coordinates, so3_generators, LieGenerator, LinearSubspace, Representation};
use isostrata::strata::DEFAULT_EQUATION_CAP;
use isostrata::{ClosedSubgroupSpec, MultiPoly};

use crate::error::CliError;

/// Path-addressed schema or validation failure.
fn at(path: &str, message: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {message}"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentationInput {
    Permutation { degree: usize, generators: Vec<Vec<usize>> },
    Matrix { generators: Vec<ExactMatrix>, lie: Vec<(String, ExactMatrix)>, inner_product: Option<ExactMatrix> },
    Harmonic { degree: u32, generators: Vec<ExactMatrix>, so3_lie: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteGeneratorInput {
    Permutation(Vec<usize>),
    Matrix(ExactMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieInput {
    Named(String),
    Matrix(ExactMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisInput {
    Vector(ExactVector),
    Harmonic(MultiPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupInput {
    pub label: String,
    pub finite_generators: Vec<FiniteGeneratorInput>,
    pub lie_generators: Vec<LieInput>,
    pub normal_form_basis: Option<Vec<BasisInput>>,
    pub coordinates: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub cap_group_order: usize,
    pub max_degree: Option<u32>,
    pub retry_cap: u32,
    pub equation_cap: usize,
    pub generator_degree_cap: u32,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            cap_group_order: DEFAULT_ORDER_CAP,
            max_degree: None,
            retry_cap: DEFAULT_DEGREE_CAP,
            equation_cap: DEFAULT_EQUATION_CAP,
            generator_degree_cap: DEFAULT_GENERATOR_DEGREE_CAP,
        }
    }
}

/// Everything in the file, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionInput {
    pub variables: Option<Vec<String>>,
    pub representation: RepresentationInput,
    pub subgroups: Vec<SubgroupInput>,
    pub invariants: Vec<(String, Vec<(String, MultiPoly)>)>,
    pub options: Options,
}

/// A subgroup resolved against the representation.
#[derive(Clone, Debug)]
pub struct SubgroupEntry {
    pub label: String,
    pub spec: ClosedSubgroupSpec,
    /// Element set when the subgroup is finite.
    pub finite: Option<Subgroup>,
    pub fixed_locus: LinearSubspace,
    pub normal_form_basis: Option<Vec<ExactVector>>,
    pub coordinates: Vec<String>,
}

impl SubgroupEntry {
    /// The chosen basis of the fixed locus, or its canonical basis.
    pub fn basis(&self) -> Vec<ExactVector> {
        self.normal_form_basis
            .clone()
            .unwrap_or_else(|| self.fixed_locus.basis().to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    pub input: SessionInput,
    pub rep: Representation,
    pub subgroups: Vec<SubgroupEntry>,
}

impl Session {
    pub fn subgroup(&self, label: &str) -> Result<&SubgroupEntry, CliError> {
        self.subgroups.iter().find(|s| s.label == label).ok_or_else(|| {
            let known: Vec<&str> = self.subgroups.iter().map(|s| s.label.as_str()).collect();
            CliError::Input(format!("unknown subgroup `{label}` (known: {})", known.join(", ")))
        })
    }

    pub fn invariant_list(&self, name: &str) -> Result<&[(String, MultiPoly)], CliError> {
        self.input
            .invariants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l.as_slice())
            .ok_or_else(|| CliError::Input(format!("unknown invariant list `{name}`")))
    }

    /// Canonical JSON form; parsing it yields the same session.
    pub fn to_json(&self) -> Value {
        self.input.to_json()
    }
}

/// Parses and validates a session. `cap_override` replaces the closure cap.
pub fn parse_session(text: &str, cap_override: Option<usize>) -> Result<Session, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("$: invalid JSON: {e}")))?;
    let input = SessionInput::from_json(&value)?;
    build(input, cap_override)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Option<&'a Value> {
    obj.get(key)
}

fn object<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let obj = v.as_object().ok_or_else(|| at(path, "expected an object"))?;
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(at(&format!("{path}.{k}"), "unknown key"));
        }
    }
    Ok(obj)
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, CliError> {
    field(obj, key).ok_or_else(|| at(path, format!("missing key `{key}`")))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| at(path, "expected an array"))
}

fn string<'a>(v: &'a Value, path: &str) -> Result<&'a str, CliError> {
    v.as_str().ok_or_else(|| at(path, "expected a string"))
}

fn count(v: &Value, path: &str) -> Result<u64, CliError> {
    v.as_u64().ok_or_else(|| at(path, "expected a non-negative integer"))
}

fn boolean(v: &Value, path: &str) -> Result<bool, CliError> {
    v.as_bool().ok_or_else(|| at(path, "expected true or false"))
}

fn scalar(v: &Value, path: &str) -> Result<ExactScalar, CliError> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| at(path, e)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(ExactScalar::from_integer(i.into()))
            } else if n.is_u64() {
                parse_scalar(&n.to_string()).map_err(|e| at(path, e))
            } else {
                Err(at(path, format!("`{n}` is not exact; write rationals as \"p/q\" strings")))
            }
        }
        _ => Err(at(path, "expected an integer or a \"p/q\" string")),
    }
}

fn vector(v: &Value, path: &str) -> Result<ExactVector, CliError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar(x, &format!("{path}[{i}]")))
        .collect()
}

fn matrix(v: &Value, path: &str) -> Result<ExactMatrix, CliError> {
    let rows: Vec<ExactVector> = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("{path}[{i}]")))
        .collect::<Result<_, _>>()?;
    let cols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.is_empty() || cols == 0 {
        return Err(at(path, "matrix must be non-empty"));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(at(&format!("{path}[{i}]"), format!("row has {} entries, expected {cols}", r.len())));
        }
    }
    ExactMatrix::from_rows(rows).map_err(|e| at(path, e))
}

fn permutation(v: &Value, path: &str) -> Result<Vec<usize>, CliError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| count(x, &format!("{path}[{i}]")).map(|k| k as usize))
        .collect()
}

fn names(v: &Value, path: &str) -> Result<Vec<String>, CliError> {
    let out: Vec<String> = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| string(x, &format!("{path}[{i}]")).map(str::to_string))
        .collect::<Result<_, _>>()?;
    for (i, n) in out.iter().enumerate() {
        if !is_identifier(n) {
            return Err(at(&format!("{path}[{i}]"), format!("`{n}` is not a valid variable name")));
        }
        if out[..i].contains(n) {
            return Err(at(&format!("{path}[{i}]"), format!("duplicate name `{n}`")));
        }
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn scalar_json(x: &ExactScalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn vector_json(v: &[ExactScalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

impl SessionInput {
    pub fn from_json(v: &Value) -> Result<Self, CliError> {
        let top = object(v, "$", &["variables", "representation", "subgroups", "invariants", "options"])?;
        let variables = field(top, "variables").map(|v| names(v, "$.variables")).transpose()?;
        let representation = representation_from_json(required(top, "representation", "$")?, "$.representation")?;
        let subgroups = match field(top, "subgroups") {
            None => Vec::new(),
            Some(v) => array(v, "$.subgroups")?
                .iter()
                .enumerate()
                .map(|(i, s)| subgroup_from_json(s, &format!("$.subgroups[{i}]"), &representation))
                .collect::<Result<_, _>>()?,
        };
        for (i, s) in subgroups.iter().enumerate() {
            if subgroups[..i].iter().any(|t: &SubgroupInput| t.label == s.label) {
                return Err(at(&format!("$.subgroups[{i}].label"), format!("duplicate label `{}`", s.label)));
            }
        }
        let options = match field(top, "options") {
            None => Options::default(),
            Some(v) => options_from_json(v, "$.options")?,
        };
        let vars = match &variables {
            Some(v) => v.clone(),
            None => default_coordinates(representation_dim(&representation)),
        };
        let invariants = match field(top, "invariants") {
            None => Vec::new(),
            Some(v) => {
                let obj = v.as_object().ok_or_else(|| at("$.invariants", "expected an object of named lists"))?;
                obj.iter()
                    .map(|(list, entries)| {
                        let path = format!("$.invariants.{list}");
                        let e = entries.as_object().ok_or_else(|| at(&path, "expected an object of name: polynomial"))?;
                        let polys = e
                            .iter()
                            .map(|(name, text)| {
                                let p = format!("{path}.{name}");
                                if !is_identifier(name) {
                                    return Err(at(&p, "invariant names must be identifiers"));
                                }
                                let poly = MultiPoly::parse(string(text, &p)?, &vars).map_err(|e| at(&p, e))?;
                                Ok((name.clone(), poly))
                            })
                            .collect::<Result<Vec<_>, CliError>>()?;
                        Ok((list.clone(), polys))
                    })
                    .collect::<Result<_, CliError>>()?
            }
        };
        Ok(Self {
            variables,
            representation,
            subgroups,
            invariants,
            options,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        if let Some(v) = &self.variables {
            top.insert("variables".into(), json!(v));
        }
        top.insert("representation".into(), representation_json(&self.representation));
        top.insert(
            "subgroups".into(),
            Value::Array(self.subgroups.iter().map(subgroup_json).collect()),
        );
        let mut inv = Map::new();
        for (list, polys) in &self.invariants {
            let mut m = Map::new();
            for (name, p) in polys {
                m.insert(name.clone(), Value::String(p.to_string()));
            }
            inv.insert(list.clone(), Value::Object(m));
        }
        top.insert("invariants".into(), Value::Object(inv));
        let o = &self.options;
        let mut opts = Map::new();
        opts.insert("cap_group_order".into(), json!(o.cap_group_order));
        if let Some(d) = o.max_degree {
            opts.insert("max_degree".into(), json!(d));
        }
        opts.insert("retry_cap".into(), json!(o.retry_cap));
        opts.insert("equation_cap".into(), json!(o.equation_cap));
        opts.insert("generator_degree_cap".into(), json!(o.generator_degree_cap));
        top.insert("options".into(), Value::Object(opts));
        Value::Object(top)
    }
}

fn representation_dim(r: &RepresentationInput) -> usize {
    match r {
        RepresentationInput::Permutation { degree, .. } => *degree,
        RepresentationInput::Matrix { generators, .. } => generators[0].rows(),
        RepresentationInput::Harmonic { degree, .. } => 2 * *degree as usize + 1,
    }
}

fn representation_from_json(v: &Value, path: &str) -> Result<RepresentationInput, CliError> {
    let kind = v
        .get("kind")
        .ok_or_else(|| at(path, "missing key `kind`"))
        .and_then(|k| string(k, &format!("{path}.kind")))?;
    match kind {
        "permutation" => {
            let obj = object(v, path, &["kind", "degree", "generators"])?;
            let degree = count(required(obj, "degree", path)?, &format!("{path}.degree"))? as usize;
            let gp = format!("{path}.generators");
            let generators = array(required(obj, "generators", path)?, &gp)?
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let p = format!("{gp}[{i}]");
                    let perm = permutation(g, &p)?;
                    isostrata::rep::validate_permutation(&perm, degree).map_err(|e| at(&p, e))?;
                    Ok(perm)
                })
                .collect::<Result<_, CliError>>()?;
            Ok(RepresentationInput::Permutation { degree, generators })
        }
        "matrix" => {
            let obj = object(v, path, &["kind", "generators", "lie_generators", "inner_product"])?;
            let gp = format!("{path}.generators");
            let generators: Vec<ExactMatrix> = array(required(obj, "generators", path)?, &gp)?
                .iter()
                .enumerate()
                .map(|(i, g)| matrix(g, &format!("{gp}[{i}]")))
                .collect::<Result<_, _>>()?;
            let Some(first) = generators.first() else {
                return Err(at(&gp, "at least one generator is required"));
            };
            let n = first.rows();
            for (i, g) in generators.iter().enumerate() {
                if !g.is_square() || g.rows() != n {
                    return Err(at(&format!("{gp}[{i}]"), format!("expected a {n}x{n} matrix")));
                }
            }
            let lp = format!("{path}.lie_generators");
            let lie = match field(obj, "lie_generators") {
                None => Vec::new(),
                Some(l) => array(l, &lp)?
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        let p = format!("{lp}[{i}]");
                        let o = object(e, &p, &["name", "matrix"])?;
                        let name = string(required(o, "name", &p)?, &format!("{p}.name"))?.to_string();
                        let m = matrix(required(o, "matrix", &p)?, &format!("{p}.matrix"))?;
                        if m.rows() != n || m.cols() != n {
                            return Err(at(&format!("{p}.matrix"), format!("expected a {n}x{n} matrix")));
                        }
                        Ok((name, m))
                    })
                    .collect::<Result<_, CliError>>()?,
            };
            let ip = format!("{path}.inner_product");
            let inner_product = field(obj, "inner_product").map(|m| matrix(m, &ip)).transpose()?;
            if let Some(m) = &inner_product {
                if m.rows() != n || m.cols() != n {
                    return Err(at(&ip, format!("expected a {n}x{n} matrix")));
                }
            }
            Ok(RepresentationInput::Matrix {
                generators,
                lie,
                inner_product,
            })
        }
        "harmonic" => {
            let obj = object(v, path, &["kind", "degree", "group_generators", "so3_lie"])?;
            let degree = count(required(obj, "degree", path)?, &format!("{path}.degree"))? as u32;
            let gp = format!("{path}.group_generators");
            let generators: Vec<ExactMatrix> = match field(obj, "group_generators") {
                None => Vec::new(),
                Some(g) => array(g, &gp)?
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        let p = format!("{gp}[{i}]");
                        let m = matrix(m, &p)?;
                        if m.rows() != 3 || m.cols() != 3 {
                            return Err(at(&p, "expected a 3x3 matrix"));
                        }
                        Ok(m)
                    })
                    .collect::<Result<_, CliError>>()?,
            };
            let so3_lie = match field(obj, "so3_lie") {
                None => false,
                Some(b) => boolean(b, &format!("{path}.so3_lie"))?,
            };
            Ok(RepresentationInput::Harmonic {
                degree,
                generators,
                so3_lie,
            })
        }
        other => Err(at(
            &format!("{path}.kind"),
            format!("unknown kind `{other}` (expected permutation, matrix or harmonic)"),
        )),
    }
}

fn representation_json(r: &RepresentationInput) -> Value {
    match r {
        RepresentationInput::Permutation { degree, generators } => json!({
            "kind": "permutation",
            "degree": degree,
            "generators": generators,
        }),
        RepresentationInput::Matrix {
            generators,
            lie,
            inner_product,
        } => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("matrix"));
            m.insert("generators".into(), Value::Array(generators.iter().map(matrix_json).collect()));
            m.insert(
                "lie_generators".into(),
                Value::Array(
                    lie.iter()
                        .map(|(n, x)| json!({"name": n, "matrix": matrix_json(x)}))
                        .collect(),
                ),
            );
            if let Some(g) = inner_product {
                m.insert("inner_product".into(), matrix_json(g));
            }
            Value::Object(m)
        }
        RepresentationInput::Harmonic {
            degree,
            generators,
            so3_lie,
        } => json!({
            "kind": "harmonic",
            "degree": degree,
            "group_generators": generators.iter().map(matrix_json).collect::<Vec<_>>(),
            "so3_lie": so3_lie,
        }),
    }
}

fn subgroup_from_json(v: &Value, path: &str, rep: &RepresentationInput) -> Result<SubgroupInput, CliError> {
    let obj = object(
        v,
        path,
        &["label", "finite_generators", "lie_generators", "normal_form_basis", "coordinates"],
    )?;
    let label = string(required(obj, "label", path)?, &format!("{path}.label"))?.to_string();
    let fp = format!("{path}.finite_generators");
    let finite_generators = match field(obj, "finite_generators") {
        None => Vec::new(),
        Some(f) => array(f, &fp)?
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let p = format!("{fp}[{i}]");
                match rep {
                    RepresentationInput::Permutation { degree, .. } if g.as_array().is_some_and(|a| a.iter().all(Value::is_u64)) => {
                        let perm = permutation(g, &p)?;
                        isostrata::rep::validate_permutation(&perm, *degree).map_err(|e| at(&p, e))?;
                        Ok(FiniteGeneratorInput::Permutation(perm))
                    }
                    _ => Ok(FiniteGeneratorInput::Matrix(matrix(g, &p)?)),
                }
            })
            .collect::<Result<_, CliError>>()?,
    };
    let lp = format!("{path}.lie_generators");
    let lie_generators = match field(obj, "lie_generators") {
        None => Vec::new(),
        Some(l) => array(l, &lp)?
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let p = format!("{lp}[{i}]");
                match g {
                    Value::String(s) => Ok(LieInput::Named(s.clone())),
                    _ => Ok(LieInput::Matrix(matrix(g, &p)?)),
                }
            })
            .collect::<Result<_, CliError>>()?,
    };
    if finite_generators.is_empty() && lie_generators.is_empty() {
        return Err(at(path, "a subgroup needs finite_generators or lie_generators"));
    }
    let bp = format!("{path}.normal_form_basis");
    let normal_form_basis = match field(obj, "normal_form_basis") {
        None => None,
        Some(b) => Some(
            array(b, &bp)?
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let p = format!("{bp}[{i}]");
                    match (e, rep) {
                        (Value::String(s), RepresentationInput::Harmonic { .. }) => {
                            let xyz = ["x", "y", "z"].map(String::from);
                            MultiPoly::parse(s, &xyz).map(BasisInput::Harmonic).map_err(|err| at(&p, err))
                        }
                        _ => vector(e, &p).map(BasisInput::Vector),
                    }
                })
                .collect::<Result<_, CliError>>()?,
        ),
    };
    let coordinates = field(obj, "coordinates")
        .map(|c| names(c, &format!("{path}.coordinates")))
        .transpose()?;
    Ok(SubgroupInput {
        label,
        finite_generators,
        lie_generators,
        normal_form_basis,
        coordinates,
    })
}

fn subgroup_json(s: &SubgroupInput) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), json!(s.label));
    m.insert(
        "finite_generators".into(),
        Value::Array(
            s.finite_generators
                .iter()
                .map(|g| match g {
                    FiniteGeneratorInput::Permutation(p) => json!(p),
                    FiniteGeneratorInput::Matrix(x) => matrix_json(x),
                })
                .collect(),
        ),
    );
    m.insert(
        "lie_generators".into(),
        Value::Array(
            s.lie_generators
                .iter()
                .map(|g| match g {
                    LieInput::Named(n) => json!(n),
                    LieInput::Matrix(x) => matrix_json(x),
                })
                .collect(),
        ),
    );
    if let Some(b) = &s.normal_form_basis {
        m.insert(
            "normal_form_basis".into(),
            Value::Array(
                b.iter()
                    .map(|e| match e {
                        BasisInput::Vector(v) => vector_json(v),
                        BasisInput::Harmonic(p) => Value::String(p.to_string()),
                    })
                    .collect(),
            ),
        );
    }
    if let Some(c) = &s.coordinates {
        m.insert("coordinates".into(), json!(c));
    }
    Value::Object(m)
}

fn options_from_json(v: &Value, path: &str) -> Result<Options, CliError> {
    let obj = object(
        v,
        path,
        &["cap_group_order", "max_degree", "retry_cap", "equation_cap", "generator_degree_cap"],
    )?;
    let mut o = Options::default();
    let get = |k: &str| -> Result<Option<u64>, CliError> {
        field(obj, k).map(|x| count(x, &format!("{path}.{k}"))).transpose()
    };
    if let Some(x) = get("cap_group_order")? {
        o.cap_group_order = x as usize;
    }
    o.max_degree = get("max_degree")?.map(|x| x as u32);
    if let Some(x) = get("retry_cap")? {
        o.retry_cap = x as u32;
    }
    if let Some(x) = get("equation_cap")? {
        o.equation_cap = x as usize;
    }
    if let Some(x) = get("generator_degree_cap")? {
        o.generator_degree_cap = x as u32;
    }
    Ok(o)
}

/// Builds the representation and resolves subgroups, running all validations.
pub fn build(input: SessionInput, cap_override: Option<usize>) -> Result<Session, CliError> {
    let cap = cap_override.unwrap_or(input.options.cap_group_order);
    let rp = "$.representation";
    let rep = match &input.representation {
        RepresentationInput::Permutation { degree, generators } => Representation::permutation(generators, *degree, cap),
        RepresentationInput::Matrix {
            generators,
            lie,
            inner_product,
        } => Representation::matrix(
            generators,
            lie.iter()
                .map(|(name, matrix)| LieGenerator {
                    name: name.clone(),
                    matrix: matrix.clone(),
                })
                .collect(),
            inner_product.clone(),
            cap,
        ),
        RepresentationInput::Harmonic {
            degree,
            generators,
            so3_lie,
        } => Representation::harmonic(*degree, generators, *so3_lie, cap),
    }
    .map_err(|e| CliError::from_core_at(rp, e))?;
    let rep = match &input.variables {
        None => rep,
        Some(v) => {
            if v.len() != rep.dim() {
                return Err(at(
                    "$.variables",
                    format!("{} names given for a {}-dimensional representation", v.len(), rep.dim()),
                ));
            }
            rep.with_coordinates(v.clone()).map_err(|e| at("$.variables", e))?
        }
    };
    let subgroups = input
        .subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| resolve_subgroup(&rep, &input.representation, s, &format!("$.subgroups[{i}]")))
        .collect::<Result<_, _>>()?;
    Ok(Session { input, rep, subgroups })
}

fn resolve_subgroup(
    rep: &Representation,
    input: &RepresentationInput,
    s: &SubgroupInput,
    path: &str,
) -> Result<SubgroupEntry, CliError> {
    let n = rep.dim();
    let mut finite = Vec::new();
    let mut indices = Vec::new();
    for (i, g) in s.finite_generators.iter().enumerate() {
        let p = format!("{path}.finite_generators[{i}]");
        let base = match g {
            FiniteGeneratorInput::Permutation(perm) => {
                let zero: Vec<usize> = perm.iter().map(|k| k - 1).collect();
                isostrata::group::permutation_matrix(&zero)
            }
            FiniteGeneratorInput::Matrix(m) => m.clone(),
        };
        let idx = rep
            .element_index(&base)
            .ok_or_else(|| at(&p, "matrix is not an element of the representation's group"))?;
        indices.push(idx);
        finite.push(rep.action(idx).clone());
    }
    let mut lie = Vec::new();
    for (i, l) in s.lie_generators.iter().enumerate() {
        let p = format!("{path}.lie_generators[{i}]");
        let m = match (l, input) {
            (LieInput::Named(name), RepresentationInput::Harmonic { .. }) => {
                let (_, a) = so3_generators()
                    .into_iter()
                    .find(|(k, _)| k == name)
                    .ok_or_else(|| at(&p, format!("unknown so(3) generator `{name}` (expected Lx, Ly or Lz)")))?;
                rep.lift_lie_matrix(&a).map_err(|e| at(&p, e))?
            }
            (LieInput::Named(name), _) => rep
                .lie()
                .iter()
                .find(|g| &g.name == name)
                .map(|g| g.matrix.clone())
                .ok_or_else(|| at(&p, format!("unknown Lie generator `{name}`")))?,
            (LieInput::Matrix(m), _) => rep.lift_lie_matrix(m).map_err(|e| at(&p, e))?,
        };
        lie.push(m);
    }
    let mut spec = ClosedSubgroupSpec::new(s.label.clone(), finite, lie, n).map_err(|e| at(path, e))?;
    let finite_group = if spec.is_finite() {
        let h = rep.group().generated(&indices);
        spec.elements = Some(h.clone());
        Some(h)
    } else {
        None
    };
    let fixed_locus = match &finite_group {
        Some(h) => rep.fixed_locus(h),
        None => rep.fixed_locus_of_spec(&spec),
    }
    .with_label(s.label.clone());
    let bp = format!("{path}.normal_form_basis");
    let normal_form_basis = match &s.normal_form_basis {
        None => None,
        Some(entries) => {
            let vectors = entries
                .iter()
                .enumerate()
                .map(|(i, e)| match e {
                    BasisInput::Vector(v) if v.len() == n => Ok(v.clone()),
                    BasisInput::Vector(v) => Err(at(&format!("{bp}[{i}]"), format!("expected {n} entries, found {}", v.len()))),
                    BasisInput::Harmonic(p) => rep
                        .harmonic_basis()
                        .expect("harmonic entries are only parsed for harmonic sessions")
                        .coordinates(p)
                        .map_err(|e| at(&format!("{bp}[{i}]"), e)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let span = LinearSubspace::span(&vectors, n).map_err(|e| at(&bp, e))?;
            if span != fixed_locus || vectors.len() != fixed_locus.dim() {
                return Err(at(&bp, format!("does not form a basis of the {}-dimensional fixed locus", fixed_locus.dim())));
            }
            Some(vectors)
        }
    };
    let coordinates = match &s.coordinates {
        Some(c) => {
            if c.len() != fixed_locus.dim() {
                return Err(at(
                    &format!("{path}.coordinates"),
                    format!("{} names given for a {}-dimensional fixed locus", c.len(), fixed_locus.dim()),
                ));
            }
            c.clone()
        }
        None => (1..=fixed_locus.dim()).map(|i| format!("s{i}")).collect(),
    };
    Ok(SubgroupEntry {
        label: s.label.clone(),
        spec,
        finite: finite_group,
        fixed_locus,
        normal_form_basis,
        coordinates,
    })
}
