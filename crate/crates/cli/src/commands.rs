//! Command implementations. Each produces a [`Report`] carrying a JSON value
//! and a text rendering; `holds == false` marks a negative mathematical
//! outcome (exit code 2) that still has a report to show.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use isostrata::exact::{format_scalar, format_vector, parse_scalar, ExactMatrix, ExactVector};
use isostrata::invariants::{invariant_basis, minimal_generators, molien_dims, verify_invariant, Verification};
use isostrata::poly::restrict_to_subspace;
use isostrata::rationality::{check_monodromy_invariant, rationalize_with_retry, restrict_invariants, RestrictedInvariantSet};
use isostrata::strata::{closed_stratum_equations, isotropy_classes, monodromy_rep, residual_action};
use isostrata::MultiPoly;

use crate::error::CliError;
use crate::session::{matrix_json, vector_json, Session, SubgroupEntry};

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub holds: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Self { json, text, holds: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("report values serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn polys_json(ps: &[MultiPoly]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

fn matrices_text(out: &mut String, ms: &[ExactMatrix]) {
    for (i, m) in ms.iter().enumerate() {
        let rows: Vec<String> = m.to_rows().iter().map(|r| format_vector(r)).collect();
        let _ = writeln!(out, "  [{i}] {}", rows.join(" "));
    }
}

/// Molien dimensions, degreewise invariant bases, generators and checks of
/// the supplied invariant lists.
pub fn invariants(session: &Session, max_degree: Option<u32>) -> Result<Report, CliError> {
    let rep = &session.rep;
    let opts = &session.input.options;
    let top = max_degree.or(opts.max_degree).unwrap_or(6);
    let molien = molien_dims(rep, top as usize)?;
    let mut degrees = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "group order {}, dimension {}", rep.group().order(), rep.dim());
    let _ = writeln!(text, "degree  molien  basis");
    for d in 0..=top {
        let b = invariant_basis(rep, d)?;
        if b.dim() != molien[d as usize] {
            return Err(CliError::Input(format!(
                "invariant basis at degree {d} has dimension {} but the Molien coefficient is {}",
                b.dim(),
                molien[d as usize]
            )));
        }
        let _ = writeln!(text, "{d:>6}  {:>6}  {}", molien[d as usize], b.dim());
        degrees.push(json!({"degree": d, "molien": molien[d as usize], "basis": polys_json(&b.basis)}));
    }
    let gens = minimal_generators(rep, Some(generator_search_bound(session, max_degree)), opts.generator_degree_cap)?;
    let _ = writeln!(
        text,
        "generators (searched to degree {}, Noether bound {}{}):",
        gens.bound,
        gens.noether_bound,
        if gens.truncated { ", truncated" } else { "" }
    );
    for g in &gens.generators {
        let _ = writeln!(text, "  {} = {}", g.name, g.poly);
    }
    let (checks, all_hold) = check_lists(session)?;
    for c in &checks {
        let _ = writeln!(
            text,
            "  {}.{}: {}",
            c["list"].as_str().unwrap_or(""),
            c["name"].as_str().unwrap_or(""),
            c["status"].as_str().unwrap_or("")
        );
    }
    let json = json!({
        "command": "invariants",
        "group_order": rep.group().order(),
        "dimension": rep.dim(),
        "molien": molien,
        "degrees": degrees,
        "generators": gens.generators.iter().map(|g| json!({"name": g.name, "degree": g.poly.degree(), "poly": g.poly.to_string()})).collect::<Vec<_>>(),
        "generator_bound": gens.bound,
        "noether_bound": gens.noether_bound,
        "truncated": gens.truncated,
        "supplied": checks,
    });
    Ok(Report {
        json,
        text,
        holds: all_hold,
    })
}

fn verification_json(rep: &isostrata::Representation, v: &Verification) -> Value {
    match v {
        Verification::Invariant => json!({"status": "invariant"}),
        Verification::FailsGroupElement(g) => json!({
            "status": "not invariant",
            "group_element": matrix_json(rep.group().element(*g)),
        }),
        Verification::FailsLieGenerator(name) => json!({"status": "not invariant", "lie_generator": name}),
    }
}

fn check_lists(session: &Session) -> Result<(Vec<Value>, bool), CliError> {
    let mut out = Vec::new();
    let mut all = true;
    for (list, polys) in &session.input.invariants {
        for (name, p) in polys {
            let v = verify_invariant(&session.rep, p)?;
            all &= v.holds();
            let mut j = verification_json(&session.rep, &v);
            let obj = j.as_object_mut().expect("object");
            obj.insert("list".into(), json!(list));
            obj.insert("name".into(), json!(name));
            out.push(Value::Object(reorder(obj, &["list", "name"])));
        }
    }
    Ok((out, all))
}

fn reorder(obj: &Map<String, Value>, first: &[&str]) -> Map<String, Value> {
    let mut m = Map::new();
    for k in first {
        if let Some(v) = obj.get(*k) {
            m.insert(k.to_string(), v.clone());
        }
    }
    for (k, v) in obj {
        if !first.contains(&k.as_str()) {
            m.insert(k.clone(), v.clone());
        }
    }
    m
}

pub fn strata(session: &Session, equations: bool) -> Result<Report, CliError> {
    let rep = &session.rep;
    let s = isotropy_classes(rep, session.input.options.cap_group_order)?;
    let principal = s.principal(rep)?;
    let mut classes = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "{} isotropy classes (principal: {principal})", s.records.len());
    let _ = writeln!(text, "id  order  fixed_dim  covers  witness");
    for r in &s.records {
        let covers: Vec<String> = r.covers.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            text,
            "{:>2}  {:>5}  {:>9}  {:>6}  {}",
            r.id,
            r.order(),
            r.fixed_dim(),
            if covers.is_empty() { "-".to_string() } else { covers.join(",") },
            format_vector(&r.witness)
        );
        let mut c = Map::new();
        c.insert("id".into(), json!(r.id));
        c.insert("order".into(), json!(r.order()));
        c.insert("fixed_dim".into(), json!(r.fixed_dim()));
        c.insert("witness".into(), vector_json(&r.witness));
        c.insert("covers".into(), json!(r.covers));
        if equations {
            match closed_stratum_equations(rep, &r.representative, session.input.options.equation_cap) {
                Ok(eqs) => {
                    for e in &eqs {
                        let _ = writeln!(text, "      {e} = 0");
                    }
                    c.insert("equations".into(), polys_json(&eqs));
                }
                Err(e @ isostrata::Error::SizeCapExceeded { .. }) => {
                    let _ = writeln!(text, "      equations omitted: {e}");
                    c.insert("equations".into(), Value::Null);
                    c.insert("equations_note".into(), json!(e.to_string()));
                }
                Err(e) => return Err(e.into()),
            }
        }
        classes.push(Value::Object(c));
    }
    let json = json!({
        "command": "strata",
        "group_order": rep.group().order(),
        "classes": classes,
        "principal": principal,
    });
    Ok(Report::ok(json, text))
}

fn subgroup<'a>(session: &'a Session, label: Option<&str>) -> Result<&'a SubgroupEntry, CliError> {
    let label = label.ok_or_else(|| CliError::Input("--subgroup is required for this command".into()))?;
    session.subgroup(label)
}

pub fn fixed_locus(session: &Session, label: Option<&str>) -> Result<Report, CliError> {
    let rep = &session.rep;
    let s = subgroup(session, label)?;
    let w = &s.fixed_locus;
    let mut text = String::new();
    let _ = writeln!(text, "fixed locus of {}: dimension {}", s.label, w.dim());
    let mut json = Map::new();
    json.insert("command".into(), json!("fixed-locus"));
    json.insert("subgroup".into(), json!(s.label));
    json.insert("dim".into(), json!(w.dim()));
    json.insert("basis".into(), Value::Array(w.basis().iter().map(|b| vector_json(b)).collect()));
    for b in w.basis() {
        let _ = writeln!(text, "  {}", format_vector(b));
    }
    if let Some(h) = &s.finite {
        let by_character = rep.fixed_dimension_by_character(h);
        let _ = writeln!(text, "subgroup order {}, character formula gives {}", h.order(), format_scalar(&by_character));
        json.insert("subgroup_order".into(), json!(h.order()));
        json.insert("character_dim".into(), json!(format_scalar(&by_character)));
    }
    if let Some(hb) = rep.harmonic_basis() {
        let polys: Vec<MultiPoly> = w.basis().iter().map(|b| hb.polynomial(b)).collect();
        let _ = writeln!(text, "as harmonic polynomials:");
        for p in &polys {
            let _ = writeln!(text, "  {p}");
        }
        json.insert("harmonic".into(), polys_json(&polys));
    }
    if let Some(nf) = &s.normal_form_basis {
        json.insert("normal_form_basis".into(), Value::Array(nf.iter().map(|b| vector_json(b)).collect()));
    }
    json.insert("coordinates".into(), json!(s.coordinates));
    Ok(Report::ok(Value::Object(json), text))
}

/// Monodromy matrices of the subgroup on its fixed locus, in the chosen basis.
pub fn monodromy_matrices(session: &Session, s: &SubgroupEntry) -> Result<Vec<ExactMatrix>, CliError> {
    let basis = s.basis();
    Ok(match &s.finite {
        Some(h) => monodromy_rep(&session.rep, h, Some(&basis))?.matrices,
        None => residual_action(&session.rep, &s.fixed_locus, Some(&basis))?,
    })
}

pub fn monodromy(session: &Session, label: Option<&str>) -> Result<Report, CliError> {
    let rep = &session.rep;
    let s = subgroup(session, label)?;
    let basis = s.basis();
    let mut text = String::new();
    let mut json = Map::new();
    json.insert("command".into(), json!("monodromy"));
    json.insert("subgroup".into(), json!(s.label));
    let matrices = match &s.finite {
        Some(h) => {
            let m = monodromy_rep(rep, h, Some(&basis))?;
            let n = rep.group().normalizer(h)?;
            let _ = writeln!(
                text,
                "N({0}) has order {1}; N({0})/{0} has order {2}{3}",
                s.label,
                n.order(),
                m.order(),
                if m.quotient.is_abelian() { " (abelian)" } else { " (nonabelian)" }
            );
            json.insert("kind".into(), json!("normalizer quotient"));
            json.insert("normalizer_order".into(), json!(n.order()));
            json.insert("order".into(), json!(m.order()));
            json.insert("abelian".into(), json!(m.quotient.is_abelian()));
            m.matrices
        }
        None => {
            let ms = residual_action(rep, &s.fixed_locus, Some(&basis))?;
            let _ = writeln!(
                text,
                "{} is not finite; residual action of the finite group on its fixed locus has {} elements",
                s.label,
                ms.len()
            );
            json.insert("kind".into(), json!("residual finite action"));
            json.insert("order".into(), json!(ms.len()));
            ms
        }
    };
    let _ = writeln!(text, "basis:");
    for b in &basis {
        let _ = writeln!(text, "  {}", format_vector(b));
    }
    let _ = writeln!(text, "matrices (rows):");
    matrices_text(&mut text, &matrices);
    json.insert("basis".into(), Value::Array(basis.iter().map(|b| vector_json(b)).collect()));
    json.insert("matrices".into(), Value::Array(matrices.iter().map(matrix_json).collect()));
    Ok(Report::ok(Value::Object(json), text))
}

/// Largest number of degree-`d` monomials the generator search will handle.
pub const GENERATOR_MONOMIAL_LIMIT: usize = 7000;

fn monomial_count(n: usize, d: u32) -> u128 {
    (1..=d as u128).fold(1u128, |acc, k| acc.saturating_mul(n as u128 + k - 1) / k)
}

/// Generator search degree: the requested bound (or `|G|`) and the degree cap,
/// lowered until the top degree has at most [`GENERATOR_MONOMIAL_LIMIT`] monomials.
pub fn generator_search_bound(session: &Session, requested: Option<u32>) -> u32 {
    let n = session.rep.dim();
    let order = u32::try_from(session.rep.group().order()).unwrap_or(u32::MAX);
    let mut d = requested.unwrap_or(order).min(session.input.options.generator_degree_cap);
    while d > 1 && monomial_count(n, d) > GENERATOR_MONOMIAL_LIMIT as u128 {
        d -= 1;
    }
    d
}

/// Invariant list used for rationalization: named, the only one, or computed generators.
fn generator_list(session: &Session, name: Option<&str>) -> Result<(String, Vec<(String, MultiPoly)>), CliError> {
    if let Some(n) = name {
        return Ok((n.to_string(), session.invariant_list(n)?.to_vec()));
    }
    match session.input.invariants.as_slice() {
        [(n, l)] => Ok((n.clone(), l.clone())),
        [] => {
            let bound = generator_search_bound(session, None);
            let g = minimal_generators(&session.rep, Some(bound), session.input.options.generator_degree_cap)?;
            Ok((
                "computed".into(),
                g.generators.into_iter().map(|g| (g.name, g.poly)).collect(),
            ))
        }
        _ => Err(CliError::Input("several invariant lists are defined; choose one with --invariants".into())),
    }
}

/// Parses a target in subgroup coordinates, or in ambient coordinates and restricts it.
pub fn parse_target(session: &Session, s: &SubgroupEntry, text: &str) -> Result<(MultiPoly, bool), CliError> {
    if let Ok(p) = MultiPoly::parse(text, &s.coordinates) {
        return Ok((p, false));
    }
    match MultiPoly::parse(text, session.rep.coordinates()) {
        Ok(p) => Ok((restrict_to_subspace(&p, &s.basis(), &s.coordinates)?, true)),
        Err(e) => Err(CliError::Input(format!(
            "target `{text}` is neither a polynomial in {:?} nor in {:?}: {e}",
            s.coordinates,
            session.rep.coordinates()
        ))),
    }
}

pub fn restricted_set(session: &Session, s: &SubgroupEntry, list: Option<&str>) -> Result<(String, RestrictedInvariantSet), CliError> {
    let (name, gens) = generator_list(session, list)?;
    Ok((name, restrict_invariants(&gens, &s.basis(), &s.coordinates)?))
}

pub fn rationalize(
    session: &Session,
    label: Option<&str>,
    target: Option<&str>,
    list: Option<&str>,
    max_degree: Option<u32>,
) -> Result<Report, CliError> {
    let s = subgroup(session, label)?;
    let target_text = target.ok_or_else(|| CliError::Input("--target is required for rationalize".into()))?;
    let (target, restricted) = parse_target(session, s, target_text)?;
    let monodromy = monodromy_matrices(session, s)?;
    check_monodromy_invariant(&target, &monodromy)?;
    let (list_name, j) = restricted_set(session, s, list)?;
    let cap = max_degree.or(session.input.options.max_degree).unwrap_or(session.input.options.retry_cap);
    let e = rationalize_with_retry(&target, &j, &monodromy, None, cap)?;
    let a = j.substitute(&e.numerator)?;
    let b = j.substitute(&e.denominator)?;
    let lhs = &target * &b;
    let holds = lhs == a;
    let mut text = String::new();
    let _ = writeln!(text, "subgroup {} with coordinates {}", s.label, s.coordinates.join(", "));
    let _ = writeln!(text, "target: {target}{}", if restricted { " (restricted)" } else { "" });
    let _ = writeln!(text, "restricted invariants ({list_name}):");
    for (n, p) in j.names().iter().zip(j.polys()) {
        let _ = writeln!(text, "  {n} -> {p}");
    }
    let _ = writeln!(text, "expression: {}", e.render());
    let _ = writeln!(text, "identity: ({target}) * ({b}) = {a}: {}", if holds { "verified" } else { "FAILED" });
    let _ = writeln!(
        text,
        "witness {} with denominator value {}",
        format_vector(&e.certificate.witness),
        format_scalar(&e.certificate.denominator_value)
    );
    let _ = writeln!(
        text,
        "bound {} (numerator degree {}, denominator degree {})",
        e.certificate.bound, e.certificate.numerator_degree, e.certificate.denominator_degree
    );
    let json = json!({
        "command": "rationalize",
        "subgroup": s.label,
        "coordinates": s.coordinates,
        "target": target.to_string(),
        "invariant_list": list_name,
        "restricted": j.names().iter().zip(j.polys()).map(|(n, p)| json!({"name": n, "poly": p.to_string()})).collect::<Vec<_>>(),
        "zero_restrictions": j.zero_restrictions().iter().map(|&k| j.names()[k].clone()).collect::<Vec<_>>(),
        "expression": e.render(),
        "numerator": e.numerator.to_string(),
        "denominator": e.denominator.to_string(),
        "identity": {
            "lhs": lhs.to_string(),
            "rhs": a.to_string(),
            "holds": holds,
        },
        "witness": vector_json(&e.certificate.witness),
        "denominator_value": format_scalar(&e.certificate.denominator_value),
        "bound": e.certificate.bound,
        "retry_cap": cap,
        "numerator_degree": e.certificate.numerator_degree,
        "denominator_degree": e.certificate.denominator_degree,
    });
    Ok(Report { json, text, holds })
}

fn parse_point(session: &Session, text: &str) -> Result<ExactVector, CliError> {
    let rep = &session.rep;
    let entries: Result<ExactVector, _> = text.split(',').map(|t| parse_scalar(t.trim())).collect();
    match entries {
        Ok(v) if v.len() == rep.dim() => Ok(v),
        Ok(v) => Err(CliError::Input(format!("point has {} entries, expected {}", v.len(), rep.dim()))),
        Err(e) => match rep.harmonic_basis() {
            Some(hb) => {
                let p = MultiPoly::parse(text, hb.base_vars()).map_err(|pe| {
                    CliError::Input(format!("point is neither a comma-separated vector ({e}) nor a harmonic polynomial ({pe})"))
                })?;
                Ok(hb.coordinates(&p)?)
            }
            None => Err(CliError::Input(format!("invalid point: {e}"))),
        },
    }
}

pub fn slice(session: &Session, point: Option<&str>) -> Result<Report, CliError> {
    let rep = &session.rep;
    let text_point = point.ok_or_else(|| CliError::Input("--point is required for slice".into()))?;
    let v = parse_point(session, text_point)?;
    let sl = rep.orthogonal_slice(&v)?;
    let stab = rep.stabilizer(&v)?;
    let mut text = String::new();
    let _ = writeln!(text, "point {}", format_vector(&v));
    let _ = writeln!(text, "finite stabilizer order {}", stab.order());
    let _ = writeln!(text, "orbit tangent space (dim {}):", sl.tangent.dim());
    for b in sl.tangent.basis() {
        let _ = writeln!(text, "  {}", format_vector(b));
    }
    let _ = writeln!(text, "orthogonal slice (dim {}):", sl.slice.dim());
    for b in sl.slice.basis() {
        let _ = writeln!(text, "  {}", format_vector(b));
    }
    let json = json!({
        "command": "slice",
        "point": vector_json(&v),
        "stabilizer_order": stab.order(),
        "tangent_dim": sl.tangent.dim(),
        "tangent": sl.tangent.basis().iter().map(|b| vector_json(b)).collect::<Vec<_>>(),
        "slice_dim": sl.slice.dim(),
        "slice": sl.slice.basis().iter().map(|b| vector_json(b)).collect::<Vec<_>>(),
    });
    Ok(Report::ok(json, text))
}

pub fn verify(session: &Session, target: Option<&str>) -> Result<Report, CliError> {
    let rep = &session.rep;
    let mut text = String::new();
    let (results, holds) = match target {
        Some(t) => {
            let p = MultiPoly::parse(t, rep.coordinates()).map_err(|e| CliError::Input(format!("target: {e}")))?;
            let v = verify_invariant(rep, &p)?;
            let mut j = verification_json(rep, &v);
            j.as_object_mut().expect("object").insert("name".into(), json!("target"));
            (vec![Value::Object(reorder(j.as_object().expect("object"), &["name"]))], v.holds())
        }
        None => check_lists(session)?,
    };
    for r in &results {
        let name = match (r.get("list").and_then(Value::as_str), r["name"].as_str()) {
            (Some(l), Some(n)) => format!("{l}.{n}"),
            (None, Some(n)) => n.to_string(),
            _ => String::new(),
        };
        let _ = write!(text, "{name}: {}", r["status"].as_str().unwrap_or(""));
        if let Some(g) = r.get("group_element") {
            let _ = write!(text, " (moved by group element {g})");
        }
        if let Some(l) = r.get("lie_generator") {
            let _ = write!(text, " (not annihilated by {})", l.as_str().unwrap_or(""));
        }
        let _ = writeln!(text);
    }
    let json = json!({
        "command": "verify",
        "all_invariant": holds,
        "results": results,
    });
    Ok(Report { json, text, holds })
}
