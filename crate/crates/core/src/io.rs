//! JSON document encoding for tables and structural models.
//!
//! Both kinds share an envelope with `format_version` (currently 1) and
//! `kind` (`"table"` or `"structural"`). The canonical writer sorts object
//! keys, renders probabilities as `"p/q"` strings and orders states by
//! outcome, so `serialize(parse(serialize(x)))` is byte-identical.
//!
//! Keys naming an assignment (alternatives in tables, parent rows in
//! models) are `var=instance` pairs joined by `;` in variable-name order;
//! the empty assignment is `""`.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Assignment, DecisionProblem, RawProblem, RawState, Variable};
use crate::prob::Probability;
use crate::structural::{InfluenceDiagram, Node, NodeKind};

pub const FORMAT_VERSION: u64 = 1;

/// A parsed, unvalidated document.
#[derive(Clone, Debug)]
pub enum RawDocument {
    Table(RawProblem),
    Structural(Vec<Node>),
}

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub enum Document {
    Table(DecisionProblem),
    Structural(InfluenceDiagram),
}

impl Document {
    /// The table view: tables as-is, structural models flattened.
    pub fn into_problem(self) -> Result<DecisionProblem> {
        match self {
            Document::Table(p) => Ok(p),
            Document::Structural(m) => crate::structural::flatten(&m),
        }
    }

    pub fn into_diagram(self) -> Result<InfluenceDiagram> {
        match self {
            Document::Structural(m) => Ok(m),
            Document::Table(_) => Err(Error::Schema {
                path: "kind".into(),
                message: "expected a structural document".into(),
            }),
        }
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates a document.
pub fn parse_problem(text: &str) -> Result<Document> {
    match parse_document(text)? {
        RawDocument::Table(raw) => Ok(Document::Table(DecisionProblem::from_raw(&raw)?)),
        RawDocument::Structural(nodes) => Ok(Document::Structural(InfluenceDiagram::new(nodes)?)),
    }
}

/// Parses a document without checking table or model invariants.
pub fn parse_document(text: &str) -> Result<RawDocument> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = value.as_object().ok_or_else(|| schema("$", "document must be an object"))?;
    match root.get("format_version").and_then(Value::as_u64) {
        Some(FORMAT_VERSION) => {}
        Some(v) => return Err(schema("format_version", format!("unsupported version {v}"))),
        None => return Err(schema("format_version", "missing or not an integer")),
    }
    match root.get("kind").and_then(Value::as_str) {
        Some("table") => parse_table(root).map(RawDocument::Table),
        Some("structural") => parse_structural(root).map(RawDocument::Structural),
        Some(k) => Err(schema("kind", format!("unknown kind `{k}`"))),
        None => Err(schema("kind", "missing")),
    }
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected a string"))
}

fn array_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Vec<Value>> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected an array"))
}

fn object_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Map<String, Value>> {
    obj.get(key)
        .and_then(Value::as_object)
        .ok_or_else(|| schema(format!("{path}.{key}"), "expected an object"))
}

fn string_list(v: &[Value], path: &str) -> Result<Vec<String>> {
    v.iter()
        .enumerate()
        .map(|(i, s)| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| schema(format!("{path}[{i}]"), "expected a string"))
        })
        .collect()
}

fn parse_probability(v: &Value, path: &str) -> Result<Probability> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(schema(path, "expected a probability string or number")),
    };
    text.parse().map_err(|e| schema(path, format!("{e}")))
}

fn parse_assignment(key: &str, path: &str) -> Result<Assignment> {
    key.parse().map_err(|_| schema(path, format!("bad assignment key `{key}`")))
}

fn parse_variables(root: &Map<String, Value>, key: &str) -> Result<Vec<Variable>> {
    array_field(root, key, "$")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let path = format!("{key}[{i}]");
            let obj = v.as_object().ok_or_else(|| schema(&path, "expected an object"))?;
            let name = str_field(obj, "name", &path)?;
            let inst = string_list(array_field(obj, "instances", &path)?, &format!("{path}.instances"))?;
            Ok(Variable::new(name, inst))
        })
        .collect()
}

fn parse_table(root: &Map<String, Value>) -> Result<RawProblem> {
    let decisions = parse_variables(root, "decisions")?;
    let chances = parse_variables(root, "chances")?;
    let mut states = Vec::new();
    for (i, s) in array_field(root, "states", "$")?.iter().enumerate() {
        let path = format!("states[{i}]");
        let obj = s.as_object().ok_or_else(|| schema(&path, "expected an object"))?;
        let label = str_field(obj, "label", &path)?.to_string();
        let probability = parse_probability(
            obj.get("probability").unwrap_or(&Value::Null),
            &format!("{path}.probability"),
        )?;
        let mut outcome = BTreeMap::new();
        for (key, real) in object_field(obj, "outcome", &path)? {
            let kpath = format!("{path}.outcome[{key}]");
            let alt = parse_assignment(key, &kpath)?;
            let robj = real.as_object().ok_or_else(|| schema(&kpath, "expected an object"))?;
            let mut r = Assignment::new();
            for (var, inst) in robj {
                let inst = inst
                    .as_str()
                    .ok_or_else(|| schema(format!("{kpath}.{var}"), "expected a string"))?;
                r.0.insert(var.clone(), inst.to_string());
            }
            outcome.insert(alt, r);
        }
        states.push(RawState {
            label,
            probability,
            outcome,
        });
    }
    Ok(RawProblem {
        decisions,
        chances,
        states,
    })
}

fn row_key_index(key: &Assignment, parents: &[(String, Vec<String>)], path: &str) -> Result<usize> {
    if key.len() != parents.len() {
        return Err(schema(path, format!("row key `{key}` must bind exactly the parents")));
    }
    let mut idx = 0usize;
    for (name, inst) in parents {
        let v = key
            .get(name)
            .ok_or_else(|| schema(path, format!("row key `{key}` misses parent `{name}`")))?;
        let k = inst
            .iter()
            .position(|i| i == v)
            .ok_or_else(|| schema(path, format!("`{v}` is not an instance of `{name}`")))?;
        idx = idx * inst.len() + k;
    }
    Ok(idx)
}

fn parse_structural(root: &Map<String, Value>) -> Result<Vec<Node>> {
    let raw = array_field(root, "nodes", "$")?;
    let mut heads = Vec::with_capacity(raw.len());
    for (i, v) in raw.iter().enumerate() {
        let path = format!("nodes[{i}]");
        let obj = v.as_object().ok_or_else(|| schema(&path, "expected an object"))?;
        let name = str_field(obj, "name", &path)?.to_string();
        let inst = string_list(array_field(obj, "instances", &path)?, &format!("{path}.instances"))?;
        heads.push((name, inst));
    }
    let lookup: BTreeMap<&str, &Vec<String>> = heads.iter().map(|(n, i)| (n.as_str(), i)).collect();
    let mut nodes = Vec::with_capacity(raw.len());
    for (i, v) in raw.iter().enumerate() {
        let path = format!("nodes[{i}]");
        let obj = v.as_object().expect("checked above");
        let (name, instances) = heads[i].clone();
        let kind = str_field(obj, "kind", &path)?;
        let latent = obj.get("latent").and_then(Value::as_bool).unwrap_or(false);
        if kind == "decision" {
            nodes.push(Node::decision(name, instances));
            continue;
        }
        let parents = match obj.get("parents") {
            None => Vec::new(),
            Some(_) => string_list(array_field(obj, "parents", &path)?, &format!("{path}.parents"))?,
        };
        let mut pinfo = Vec::with_capacity(parents.len());
        for p in &parents {
            let inst = lookup
                .get(p.as_str())
                .ok_or_else(|| schema(format!("{path}.parents"), format!("unknown parent `{p}`")))?;
            pinfo.push((p.clone(), (*inst).clone()));
        }
        let rows: usize = pinfo.iter().map(|(_, i)| i.len()).product();
        let node = match kind {
            "chance" => {
                let mut cpt: Vec<Option<Vec<Probability>>> = vec![None; rows];
                for (key, row) in object_field(obj, "cpt", &path)? {
                    let rpath = format!("{path}.cpt[{key}]");
                    let idx = row_key_index(&parse_assignment(key, &rpath)?, &pinfo, &rpath)?;
                    let robj = row.as_object().ok_or_else(|| schema(&rpath, "expected an object"))?;
                    let mut dist = vec![Probability::zero(); instances.len()];
                    for (inst, p) in robj {
                        let k = instances
                            .iter()
                            .position(|x| x == inst)
                            .ok_or_else(|| schema(&rpath, format!("`{inst}` is not an instance of `{name}`")))?;
                        dist[k] = parse_probability(p, &format!("{rpath}.{inst}"))?;
                    }
                    cpt[idx] = Some(dist);
                }
                let cpt = cpt
                    .into_iter()
                    .enumerate()
                    .map(|(r, row)| row.ok_or_else(|| schema(format!("{path}.cpt"), format!("missing row {r}"))))
                    .collect::<Result<Vec<_>>>()?;
                Node::chance(name, instances, parents, cpt)
            }
            "deterministic" => {
                let mut table: Vec<Option<Option<usize>>> = vec![None; rows];
                for (key, out) in object_field(obj, "table", &path)? {
                    let rpath = format!("{path}.table[{key}]");
                    let idx = row_key_index(&parse_assignment(key, &rpath)?, &pinfo, &rpath)?;
                    table[idx] = Some(match out {
                        Value::Null => None,
                        Value::String(s) => Some(
                            instances
                                .iter()
                                .position(|x| x == s)
                                .ok_or_else(|| schema(&rpath, format!("`{s}` is not an instance of `{name}`")))?,
                        ),
                        _ => return Err(schema(&rpath, "expected an instance or null")),
                    });
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(r, row)| row.ok_or_else(|| schema(format!("{path}.table"), format!("missing row {r}"))))
                    .collect::<Result<Vec<_>>>()?;
                Node::deterministic(name, instances, parents, table)
            }
            other => return Err(schema(format!("{path}.kind"), format!("unknown node kind `{other}`"))),
        };
        nodes.push(if latent { node.latent() } else { node });
    }
    Ok(nodes)
}

fn variables_json(vars: &[Variable]) -> Value {
    Value::Array(
        vars.iter()
            .map(|v| json!({"name": v.name, "instances": v.instances}))
            .collect(),
    )
}

pub fn problem_to_json(problem: &DecisionProblem) -> Value {
    let raw = problem.to_raw();
    let states: Vec<Value> = raw
        .states
        .iter()
        .map(|s| {
            let outcome: Map<String, Value> = s
                .outcome
                .iter()
                .map(|(alt, real)| {
                    let r: Map<String, Value> = real.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                    (alt.to_string(), Value::Object(r))
                })
                .collect();
            json!({
                "label": s.label,
                "probability": s.probability.to_string(),
                "outcome": outcome,
            })
        })
        .collect();
    json!({
        "format_version": FORMAT_VERSION,
        "kind": "table",
        "decisions": variables_json(&raw.decisions),
        "chances": variables_json(&raw.chances),
        "states": states,
    })
}

pub fn model_to_json(model: &InfluenceDiagram) -> Value {
    let nodes: Vec<Value> = (0..model.nodes().len())
        .map(|i| {
            let n = model.node(i);
            let mut obj = Map::new();
            obj.insert("name".into(), json!(n.name));
            obj.insert("instances".into(), json!(n.instances));
            let row_keys: Vec<String> = model
                .parent_rows(i)
                .iter()
                .map(|row| {
                    let mut a = Assignment::new();
                    for (&p, &v) in model.parents_of(i).iter().zip(row) {
                        let pn = model.node(p);
                        a.0.insert(pn.name.clone(), pn.instances[v].clone());
                    }
                    a.to_string()
                })
                .collect();
            match &n.kind {
                NodeKind::Decision => {
                    obj.insert("kind".into(), json!("decision"));
                }
                NodeKind::Chance { cpt } => {
                    obj.insert("kind".into(), json!("chance"));
                    obj.insert("parents".into(), json!(n.parents));
                    obj.insert("latent".into(), json!(n.latent));
                    let rows: Map<String, Value> = row_keys
                        .iter()
                        .zip(cpt)
                        .map(|(k, row)| {
                            let dist: Map<String, Value> = n
                                .instances
                                .iter()
                                .zip(row)
                                .map(|(inst, p)| (inst.clone(), json!(p.to_string())))
                                .collect();
                            (k.clone(), Value::Object(dist))
                        })
                        .collect();
                    obj.insert("cpt".into(), Value::Object(rows));
                }
                NodeKind::Deterministic { table } => {
                    obj.insert("kind".into(), json!("deterministic"));
                    obj.insert("parents".into(), json!(n.parents));
                    obj.insert("latent".into(), json!(n.latent));
                    let rows: Map<String, Value> = row_keys
                        .iter()
                        .zip(table)
                        .map(|(k, out)| {
                            (k.clone(), out.map_or(Value::Null, |v| json!(n.instances[v])))
                        })
                        .collect();
                    obj.insert("table".into(), Value::Object(rows));
                }
            }
            Value::Object(obj)
        })
        .collect();
    json!({
        "format_version": FORMAT_VERSION,
        "kind": "structural",
        "nodes": nodes,
    })
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

/// Canonical text of a table document.
pub fn serialize_problem(problem: &DecisionProblem) -> String {
    render(&problem_to_json(problem))
}

/// Canonical text of a structural document.
pub fn serialize_model(model: &InfluenceDiagram) -> String {
    render(&model_to_json(model))
}

pub fn serialize_document(doc: &Document) -> String {
    match doc {
        Document::Table(p) => serialize_problem(p),
        Document::Structural(m) => serialize_model(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_problem("{\n  \"kind\": }").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn schema_errors_carry_path() {
        let err = parse_problem(r#"{"format_version": 1, "kind": "table", "decisions": [{"name": "d"}]}"#).unwrap_err();
        assert_eq!(
            err,
            Error::Schema {
                path: "decisions[0].instances".into(),
                message: "expected an array".into()
            }
        );
        let err = parse_problem(r#"{"format_version": 2, "kind": "table"}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { path, .. } if path == "format_version"));
    }

    #[test]
    fn decimal_probabilities_are_exact() {
        let text = r#"{"format_version": 1, "kind": "structural", "nodes": [
            {"name": "x", "kind": "chance", "instances": ["a", "b"], "cpt": {"": {"a": "0.3", "b": 0.7}}}
        ]}"#;
        let m = parse_problem(text).unwrap().into_diagram().unwrap();
        let NodeKind::Chance { cpt } = &m.nodes()[0].kind else { panic!() };
        assert_eq!(cpt[0][0], Probability::new(3, 10));
        assert_eq!(cpt[0][1], Probability::new(7, 10));
    }

    #[test]
    fn omitted_impossible_rows_give_identical_model() {
        let full = corpus::medical();
        let text = serialize_problem(&full);
        // the canonical writer never emits zero rows; reparse and compare
        let again = parse_problem(&text).unwrap().into_problem().unwrap();
        assert_eq!(full, again);
        assert_eq!(serialize_problem(&again), text);
    }

    #[test]
    fn rationals_are_rendered_as_fractions() {
        let text = serialize_problem(&corpus::medical());
        assert!(text.contains("\"probability\": \"1/12\""));
        assert!(!text.contains("0.08"));
    }
}
