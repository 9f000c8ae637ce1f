//! File formats: the spherical-datum JSON schema, crystal JSON/DOT
//! exports, series CSV, and datum resolution against the embedded catalog.
//! All exports are deterministic: identical inputs produce byte-identical
//! files.

use crate::catalog;
use crate::lattice::{Coweight, Matrix, RootDatum, WeightFunctional};
use crate::spherical::{Color, FrobeniusDatum, SphericalDatum};
use crate::xcrystal::{Part, Provenance, XCrystal};
use num_rational::Rational64;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("datum failed validation:\n{0}")]
    Invalid(String),
    #[error("unknown datum {name}; shipped catalog: {available}")]
    UnknownDatum { name: String, available: String },
}

fn schema_err<T>(pointer: &str, message: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    })
}

/// Resolve a datum reference: an existing file path wins over a catalog
/// name (with a warning on stderr when both match); otherwise the embedded
/// catalog is consulted.
pub fn load_datum(reference: &str) -> Result<SphericalDatum, IoError> {
    let path = Path::new(reference);
    let in_catalog = catalog::spherical_datum(reference).is_some();
    if path.exists() {
        if in_catalog {
            eprintln!("warning: {reference} names both a file and a catalog entry; using the file");
        }
        let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
            path: reference.into(),
            source,
        })?;
        let datum = datum_from_json_str(&text)?;
        let report = datum.validate();
        if !report.is_valid() {
            return Err(IoError::Invalid(report.to_string()));
        }
        return Ok(datum);
    }
    match catalog::spherical_datum(reference) {
        Some(d) => Ok(d),
        None => Err(IoError::UnknownDatum {
            name: reference.into(),
            available: catalog::names().join(", "),
        }),
    }
}

// ---------------------------------------------------------------------------
// Spherical datum JSON

pub fn datum_from_json_str(text: &str) -> Result<SphericalDatum, IoError> {
    let value: Value = serde_json::from_str(text)?;
    datum_from_json(&value)
}

pub fn datum_from_json(value: &Value) -> Result<SphericalDatum, IoError> {
    let obj = match value.as_object() {
        Some(o) => o,
        None => return schema_err("", "expected an object"),
    };
    let rank = match obj.get("rank").and_then(Value::as_u64) {
        Some(r) => r as usize,
        None => return schema_err("/rank", "expected a non-negative integer"),
    };
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("datum")
        .to_string();
    let simple_coroots = coweight_list(obj.get("simple_coroots"), rank, "/simple_coroots")?;
    let simple_roots = functional_list(obj.get("simple_roots"), rank, "/simple_roots")?;
    let labels = match obj.get("labels") {
        None => (0..simple_coroots.len())
            .map(|i| format!("a{}", i + 1))
            .collect(),
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for (k, item) in items.iter().enumerate() {
                match item.as_str() {
                    Some(s) => out.push(s.to_string()),
                    None => return schema_err(&format!("/labels/{k}"), "expected a string"),
                }
            }
            out
        }
        Some(_) => return schema_err("/labels", "expected an array of strings"),
    };
    let root_datum = RootDatum {
        rank,
        simple_coroots,
        simple_roots,
        labels,
    };

    let colors = match obj.get("colors") {
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for (k, item) in items.iter().enumerate() {
                let pointer = format!("/colors/{k}");
                let Some(color) = item.as_object() else {
                    return schema_err(&pointer, "expected an object");
                };
                let Some(cname) = color.get("name").and_then(Value::as_str) else {
                    return schema_err(&format!("{pointer}/name"), "expected a string");
                };
                let valuation = coweight(
                    color.get("valuation"),
                    rank,
                    &format!("{pointer}/valuation"),
                )?;
                out.push(Color {
                    name: cname.to_string(),
                    valuation,
                });
            }
            out
        }
        _ => return schema_err("/colors", "expected an array"),
    };

    let color_pairs = match obj.get("color_pairs") {
        Some(Value::Object(map)) => {
            let mut out = BTreeMap::new();
            for (key, item) in map {
                let pointer = format!("/color_pairs/{key}");
                let Ok(index) = key.parse::<usize>() else {
                    return schema_err(&pointer, "key must be a simple-root index");
                };
                let Some(pair) = item.as_array() else {
                    return schema_err(&pointer, "expected a two-element array");
                };
                if pair.len() != 2 {
                    return schema_err(&pointer, "expected exactly two color names");
                }
                let (Some(a), Some(b)) = (pair[0].as_str(), pair[1].as_str()) else {
                    return schema_err(&pointer, "expected color names");
                };
                out.insert(index, (a.to_string(), b.to_string()));
            }
            out
        }
        _ => return schema_err("/color_pairs", "expected an object"),
    };

    let extra_generators = match obj.get("extra_generators") {
        None => vec![],
        Some(v) => coweight_list(Some(v), rank, "/extra_generators")?,
    };
    let h_char = functional(obj.get("h_char"), rank, "/h_char")?;
    let grading = functional(obj.get("grading"), rank, "/grading")?;

    let frobenius = match obj.get("frobenius") {
        None | Some(Value::Null) => None,
        Some(v) => Some(frobenius_from_json(v, rank)?),
    };

    Ok(SphericalDatum {
        name,
        root_datum,
        colors,
        color_pairs,
        extra_generators,
        h_char,
        grading,
        frobenius,
    })
}

fn frobenius_from_json(value: &Value, rank: usize) -> Result<FrobeniusDatum, IoError> {
    let Some(obj) = value.as_object() else {
        return schema_err("/frobenius", "expected an object");
    };
    let lattice_auto = match obj.get("lattice_auto") {
        Some(Value::Array(rows)) => {
            let mut out: Matrix = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let pointer = format!("/frobenius/lattice_auto/{i}");
                let Some(cells) = row.as_array() else {
                    return schema_err(&pointer, "expected an array");
                };
                if cells.len() != rank {
                    return schema_err(&pointer, format!("expected {rank} entries"));
                }
                let mut r = Vec::new();
                for (j, cell) in cells.iter().enumerate() {
                    match cell.as_i64() {
                        Some(x) => r.push(x),
                        None => {
                            return schema_err(&format!("{pointer}/{j}"), "expected an integer")
                        }
                    }
                }
                out.push(r);
            }
            if out.len() != rank {
                return schema_err("/frobenius/lattice_auto", format!("expected {rank} rows"));
            }
            out
        }
        _ => return schema_err("/frobenius/lattice_auto", "expected a matrix"),
    };
    let color_perm = match obj.get("color_perm") {
        Some(Value::Object(map)) => {
            let mut out = BTreeMap::new();
            for (k, v) in map {
                match v.as_str() {
                    Some(s) => {
                        out.insert(k.clone(), s.to_string());
                    }
                    None => {
                        return schema_err(
                            &format!("/frobenius/color_perm/{k}"),
                            "expected a color name",
                        )
                    }
                }
            }
            out
        }
        _ => return schema_err("/frobenius/color_perm", "expected an object"),
    };
    let dynkin_perm = match obj.get("dynkin_perm") {
        Some(Value::Array(items)) => {
            let mut out = Vec::new();
            for (k, item) in items.iter().enumerate() {
                match item.as_u64() {
                    Some(x) => out.push(x as usize),
                    None => {
                        return schema_err(
                            &format!("/frobenius/dynkin_perm/{k}"),
                            "expected an index",
                        )
                    }
                }
            }
            out
        }
        _ => return schema_err("/frobenius/dynkin_perm", "expected an array"),
    };
    Ok(FrobeniusDatum {
        lattice_auto,
        color_perm,
        dynkin_perm,
    })
}

fn coweight(value: Option<&Value>, rank: usize, pointer: &str) -> Result<Coweight, IoError> {
    let Some(Value::Array(items)) = value else {
        return schema_err(pointer, "expected an array of integers");
    };
    if items.len() != rank {
        return schema_err(
            pointer,
            format!("expected {rank} coordinates, got {}", items.len()),
        );
    }
    let mut coords = Vec::new();
    for (k, item) in items.iter().enumerate() {
        match item.as_i64() {
            Some(x) => coords.push(x),
            None => return schema_err(&format!("{pointer}/{k}"), "expected an integer"),
        }
    }
    Ok(Coweight::new(coords))
}

fn coweight_list(
    value: Option<&Value>,
    rank: usize,
    pointer: &str,
) -> Result<Vec<Coweight>, IoError> {
    let Some(Value::Array(items)) = value else {
        return schema_err(pointer, "expected an array");
    };
    items
        .iter()
        .enumerate()
        .map(|(k, item)| coweight(Some(item), rank, &format!("{pointer}/{k}")))
        .collect()
}

/// Functional coefficients are numbers; half-integral values are exact in
/// JSON decimals (`0.5`), everything else is rejected.
fn functional(
    value: Option<&Value>,
    rank: usize,
    pointer: &str,
) -> Result<WeightFunctional, IoError> {
    let Some(Value::Array(items)) = value else {
        return schema_err(pointer, "expected an array of numbers");
    };
    if items.len() != rank {
        return schema_err(
            pointer,
            format!("expected {rank} coefficients, got {}", items.len()),
        );
    }
    let mut coeffs = Vec::new();
    for (k, item) in items.iter().enumerate() {
        let p = format!("{pointer}/{k}");
        let Some(x) = item.as_f64() else {
            return schema_err(&p, "expected a number");
        };
        let doubled = 2.0 * x;
        if doubled.fract() != 0.0 || doubled.abs() > i64::MAX as f64 / 4.0 {
            return schema_err(&p, "expected an integer or half-integer");
        }
        coeffs.push(Rational64::new(doubled as i64, 2));
    }
    Ok(WeightFunctional::new(coeffs))
}

fn functional_list(
    value: Option<&Value>,
    rank: usize,
    pointer: &str,
) -> Result<Vec<WeightFunctional>, IoError> {
    let Some(Value::Array(items)) = value else {
        return schema_err(pointer, "expected an array");
    };
    items
        .iter()
        .enumerate()
        .map(|(k, item)| functional(Some(item), rank, &format!("{pointer}/{k}")))
        .collect()
}

fn functional_to_json(f: &WeightFunctional) -> Value {
    Value::Array(
        f.coeffs()
            .iter()
            .map(|c| {
                if c.is_integer() {
                    json!(c.to_integer())
                } else {
                    json!(*c.numer() as f64 / *c.denom() as f64)
                }
            })
            .collect(),
    )
}

pub fn datum_to_json(d: &SphericalDatum) -> Value {
    let mut obj = Map::new();
    obj.insert("name".into(), json!(d.name));
    obj.insert("rank".into(), json!(d.root_datum.rank));
    obj.insert(
        "simple_coroots".into(),
        Value::Array(
            d.root_datum
                .simple_coroots
                .iter()
                .map(|c| json!(c.coords()))
                .collect(),
        ),
    );
    obj.insert(
        "simple_roots".into(),
        Value::Array(
            d.root_datum
                .simple_roots
                .iter()
                .map(functional_to_json)
                .collect(),
        ),
    );
    obj.insert("labels".into(), json!(d.root_datum.labels));
    obj.insert(
        "colors".into(),
        Value::Array(
            d.colors
                .iter()
                .map(|c| json!({"name": c.name, "valuation": c.valuation.coords()}))
                .collect(),
        ),
    );
    obj.insert(
        "color_pairs".into(),
        Value::Object(
            d.color_pairs
                .iter()
                .map(|(i, (a, b))| (i.to_string(), json!([a, b])))
                .collect(),
        ),
    );
    obj.insert(
        "extra_generators".into(),
        Value::Array(
            d.extra_generators
                .iter()
                .map(|c| json!(c.coords()))
                .collect(),
        ),
    );
    obj.insert("h_char".into(), functional_to_json(&d.h_char));
    obj.insert("grading".into(), functional_to_json(&d.grading));
    if let Some(fr) = &d.frobenius {
        obj.insert(
            "frobenius".into(),
            json!({
                "lattice_auto": fr.lattice_auto,
                "color_perm": fr.color_perm,
                "dynkin_perm": fr.dynkin_perm,
            }),
        );
    }
    Value::Object(obj)
}

pub fn datum_to_json_string(d: &SphericalDatum) -> String {
    let mut out = serde_json::to_string_pretty(&datum_to_json(d)).expect("serializable");
    out.push('\n');
    out
}

// ---------------------------------------------------------------------------
// Crystal exports

fn part_tag(p: Part) -> &'static str {
    match p {
        Part::Plus => "plus",
        Part::Minus => "minus",
        Part::Unassigned => "unassigned",
    }
}

fn provenance_json(p: &Provenance) -> Value {
    match p {
        Provenance::Open { dominant, copy } => {
            json!({"kind": "open", "dominant": dominant.coords(), "copy": copy})
        }
        Provenance::Boundary { theta } => json!({"kind": "boundary", "theta": theta.coords()}),
    }
}

/// JSON export of a bare crystal: elements with weights, and the lowering
/// edges per simple-root index.
pub fn crystal_to_json(c: &crate::crystal::Crystal) -> Value {
    let elements: Vec<Value> = (0..c.len())
        .map(|b| json!({"id": b, "weight": c.weight(b).coords()}))
        .collect();
    let mut f_edges = Map::new();
    for &i in c.indices() {
        let edges: Vec<Value> = (0..c.len())
            .filter_map(|b| c.f_op(i, b).map(|t| json!([b, t])))
            .collect();
        f_edges.insert(i.to_string(), Value::Array(edges));
    }
    json!({"elements": elements, "f_edges": f_edges})
}

pub fn crystal_to_dot(c: &crate::crystal::Crystal) -> String {
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for b in 0..c.len() {
        out.push_str(&format!("  n{b} [label=\"{b}: {}\"];\n", c.weight(b)));
    }
    for &i in c.indices() {
        for b in 0..c.len() {
            if let Some(t) = c.f_op(i, b) {
                out.push_str(&format!("  n{b} -> n{t} [label=\"{i}\"];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// JSON export of the crystal with its annotations: elements (weight, part,
/// provenance, twist) and the lowering edges per simple-root index.
pub fn xcrystal_to_json(x: &XCrystal) -> Value {
    let c = x.crystal();
    let elements: Vec<Value> = (0..c.len())
        .map(|b| {
            json!({
                "id": b,
                "weight": c.weight(b).coords(),
                "part": part_tag(x.part(b)),
                "provenance": provenance_json(x.provenance(b)),
                "twist": format!("{}", x.twist(b)),
                "dual": x.duality(b),
            })
        })
        .collect();
    let mut f_edges = Map::new();
    for &i in c.indices() {
        let edges: Vec<Value> = (0..c.len())
            .filter_map(|b| c.f_op(i, b).map(|t| json!([b, t])))
            .collect();
        f_edges.insert(i.to_string(), Value::Array(edges));
    }
    json!({
        "datum": x.datum().name,
        "elements": elements,
        "f_edges": f_edges,
        "saturated": x.saturated_elements().iter().map(|t| t.coords().to_vec()).collect::<Vec<_>>(),
        "truncation_warning": x.truncation_warning(),
    })
}

pub fn xcrystal_to_json_string(x: &XCrystal) -> String {
    let mut out = serde_json::to_string_pretty(&xcrystal_to_json(x)).expect("serializable");
    out.push('\n');
    out
}

/// Lowering edges per simple-root index, as (source, target) id pairs.
pub type EdgeTables = BTreeMap<usize, Vec<(usize, usize)>>;

/// Reload the element/weight/edge tables exported by [`xcrystal_to_json`];
/// used for round-trip checks of the export surface.
pub fn crystal_tables_from_json(value: &Value) -> Result<(Vec<Coweight>, EdgeTables), IoError> {
    let Some(obj) = value.as_object() else {
        return schema_err("", "expected an object");
    };
    let Some(elements) = obj.get("elements").and_then(Value::as_array) else {
        return schema_err("/elements", "expected an array");
    };
    let mut weights = Vec::new();
    for (k, el) in elements.iter().enumerate() {
        let pointer = format!("/elements/{k}/weight");
        let Some(w) = el.get("weight").and_then(Value::as_array) else {
            return schema_err(&pointer, "expected an array");
        };
        let coords: Option<Vec<i64>> = w.iter().map(Value::as_i64).collect();
        match coords {
            Some(c) => weights.push(Coweight::new(c)),
            None => return schema_err(&pointer, "expected integers"),
        }
    }
    let Some(edge_map) = obj.get("f_edges").and_then(Value::as_object) else {
        return schema_err("/f_edges", "expected an object");
    };
    let mut edges = BTreeMap::new();
    for (key, list) in edge_map {
        let pointer = format!("/f_edges/{key}");
        let Ok(i) = key.parse::<usize>() else {
            return schema_err(&pointer, "expected an index key");
        };
        let Some(pairs) = list.as_array() else {
            return schema_err(&pointer, "expected an array");
        };
        let mut out = Vec::new();
        for (k, pair) in pairs.iter().enumerate() {
            let p = format!("{pointer}/{k}");
            let Some(pair) = pair.as_array() else {
                return schema_err(&p, "expected a pair");
            };
            match (
                pair.first().and_then(Value::as_u64),
                pair.get(1).and_then(Value::as_u64),
            ) {
                (Some(a), Some(b)) => out.push((a as usize, b as usize)),
                _ => return schema_err(&p, "expected a pair of ids"),
            }
        }
        edges.insert(i, out);
    }
    Ok((weights, edges))
}

/// DOT export of the colored crystal graph; edge labels are simple-root
/// indices, node labels are `id: weight` with the part in the shape.
pub fn xcrystal_to_dot(x: &XCrystal) -> String {
    let c = x.crystal();
    let mut out = String::from("digraph crystal {\n  rankdir=TB;\n");
    for b in 0..c.len() {
        let shape = match x.part(b) {
            Part::Plus => "ellipse",
            Part::Minus => "box",
            Part::Unassigned => "diamond",
        };
        out.push_str(&format!(
            "  n{b} [label=\"{b}: {}\", shape={shape}];\n",
            c.weight(b)
        ));
    }
    for &i in c.indices() {
        for b in 0..c.len() {
            if let Some(t) = c.f_op(i, b) {
                out.push_str(&format!("  n{b} -> n{t} [label=\"{i}\"];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Summary JSON for the quadrature verb.
pub fn quadrature_summary_json(summary: &crate::harmonic::QuadratureSummary) -> String {
    let mut out = serde_json::to_string_pretty(&json!({
        "quadrature": summary.quadrature,
        "parseval": summary.parseval,
        "difference": summary.difference,
        "grid": summary.grid,
        "bound": summary.bound,
        "q": summary.q,
        "grid_ok": summary.grid_ok,
        "weyl_order": summary.weyl_order,
    }))
    .expect("serializable");
    out.push('\n');
    out
}
