//! The strict JSON document format shared by the CLI, the corpus, and the
//! tests: symmetric diagrams, equivariant Goeritz forms, and bound reports.
//!
//! Parsing is strict: unknown fields are rejected with the offending field
//! path, malformed text is rejected with line and column, and integer
//! fields accept arbitrary precision. Serialization emits a stable key
//! order so outputs are diffable byte for byte.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::bounds::{lower_bound_caveats, BoundReport, BoundStep, LowerBounds};
use crate::diagram::{Crossing, CrossingColor, Locus, RegionRef, SymmetricDiagram};
use crate::goeritz::Goeritz;
use crate::matrix::{MatrixError, SymMatrix};
use crate::moves::MoveSpec;
use crate::script::move_script_parse;
use crate::sign::Sign;
use crate::{EquivariantGoeritz, Int};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
}

fn schema(path: &str, message: impl Into<String>) -> DocumentError {
    DocumentError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

/// An ordered JSON tree; integers carry full precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JsonValue {
    Bool(bool),
    Integer(Int),
    Text(String),
    Array(Vec<JsonValue>),
    Object(Vec<(String, JsonValue)>),
}

impl From<bool> for JsonValue {
    fn from(v: bool) -> Self {
        JsonValue::Bool(v)
    }
}

impl From<i64> for JsonValue {
    fn from(v: i64) -> Self {
        JsonValue::Integer(Int::from(v))
    }
}

impl From<usize> for JsonValue {
    fn from(v: usize) -> Self {
        JsonValue::Integer(Int::from(v as u64))
    }
}

impl From<Int> for JsonValue {
    fn from(v: Int) -> Self {
        JsonValue::Integer(v)
    }
}

impl From<&Int> for JsonValue {
    fn from(v: &Int) -> Self {
        JsonValue::Integer(v.clone())
    }
}

impl From<&str> for JsonValue {
    fn from(v: &str) -> Self {
        JsonValue::Text(v.to_string())
    }
}

impl From<String> for JsonValue {
    fn from(v: String) -> Self {
        JsonValue::Text(v)
    }
}

fn escape_into(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

impl JsonValue {
    fn is_scalar(&self) -> bool {
        matches!(
            self,
            JsonValue::Bool(_) | JsonValue::Integer(_) | JsonValue::Text(_)
        )
    }

    /// Inline-friendly: scalars, arrays of scalars, and objects whose values
    /// are scalars or arrays of scalars.
    fn is_simple(&self) -> bool {
        match self {
            JsonValue::Array(items) => items.iter().all(JsonValue::is_scalar),
            JsonValue::Object(fields) => fields.iter().all(|(_, v)| match v {
                JsonValue::Array(items) => items.iter().all(JsonValue::is_scalar),
                other => other.is_scalar(),
            }),
            _ => true,
        }
    }

    fn write_inline(&self, out: &mut String) {
        match self {
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Integer(n) => out.push_str(&n.to_string()),
            JsonValue::Text(s) => escape_into(s, out),
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    item.write_inline(out);
                }
                out.push(']');
            }
            JsonValue::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    escape_into(k, out);
                    out.push_str(": ");
                    v.write_inline(out);
                }
                out.push('}');
            }
        }
    }

    fn write_compact(&self, out: &mut String) {
        match self {
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write_compact(out);
                }
                out.push(']');
            }
            JsonValue::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    escape_into(k, out);
                    out.push(':');
                    v.write_compact(out);
                }
                out.push('}');
            }
            other => other.write_inline(out),
        }
    }

    fn write_pretty(&self, out: &mut String, indent: usize) {
        if self.is_simple() {
            self.write_inline(out);
            return;
        }
        let pad = "  ".repeat(indent);
        let inner_pad = "  ".repeat(indent + 1);
        match self {
            JsonValue::Array(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&inner_pad);
                    item.write_pretty(out, indent + 1);
                    if i + 1 < items.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad);
                out.push(']');
            }
            JsonValue::Object(fields) => {
                out.push_str("{\n");
                for (i, (k, v)) in fields.iter().enumerate() {
                    out.push_str(&inner_pad);
                    escape_into(k, out);
                    out.push_str(": ");
                    v.write_pretty(out, indent + 1);
                    if i + 1 < fields.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                out.push_str(&pad);
                out.push('}');
            }
            _ => unreachable!("scalars are simple"),
        }
    }

    /// One-line rendering with no whitespace (for record-per-line output).
    pub fn compact(&self) -> String {
        let mut out = String::new();
        self.write_compact(&mut out);
        out
    }

    /// Indented rendering for files.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.write_pretty(&mut out, 0);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DocumentBody {
    Diagram(SymmetricDiagram),
    Goeritz(EquivariantGoeritz),
    Report(BoundReport<Int>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub body: DocumentBody,
    pub notes: Option<String>,
}

impl Document {
    pub fn diagram(d: SymmetricDiagram) -> Self {
        Document {
            body: DocumentBody::Diagram(d),
            notes: None,
        }
    }

    pub fn goeritz(g: EquivariantGoeritz) -> Self {
        Document {
            body: DocumentBody::Goeritz(g),
            notes: None,
        }
    }

    pub fn report(r: BoundReport<Int>) -> Self {
        Document {
            body: DocumentBody::Report(r),
            notes: None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match &self.body {
            DocumentBody::Diagram(_) => "symmetric-diagram",
            DocumentBody::Goeritz(_) => "equivariant-goeritz",
            DocumentBody::Report(_) => "bound-report",
        }
    }
}

// ---------------------------------------------------------------------------
// parsing

type JMap = serde_json::Map<String, serde_json::Value>;

struct Fields<'v> {
    path: String,
    map: &'v JMap,
    consumed: BTreeSet<&'v str>,
}

impl<'v> Fields<'v> {
    fn new(path: &str, map: &'v JMap) -> Self {
        Fields {
            path: path.to_string(),
            map,
            consumed: BTreeSet::new(),
        }
    }

    fn child(&self, name: &str) -> String {
        format!("{}.{name}", self.path)
    }

    fn required(&mut self, name: &'static str) -> Result<&'v serde_json::Value, DocumentError> {
        self.consumed.insert(name);
        self.map
            .get(name)
            .ok_or_else(|| schema(&self.path, format!("missing field {name}")))
    }

    fn optional(&mut self, name: &'static str) -> Option<&'v serde_json::Value> {
        self.consumed.insert(name);
        self.map.get(name)
    }

    fn finish(self) -> Result<(), DocumentError> {
        for key in self.map.keys() {
            if !self.consumed.contains(key.as_str()) {
                return Err(schema(&self.child(key), "unknown field"));
            }
        }
        Ok(())
    }
}

fn as_object<'v>(v: &'v serde_json::Value, path: &str) -> Result<&'v JMap, DocumentError> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'v>(
    v: &'v serde_json::Value,
    path: &str,
) -> Result<&'v Vec<serde_json::Value>, DocumentError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn as_text(v: &serde_json::Value, path: &str) -> Result<String, DocumentError> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| schema(path, "expected a string"))
}

fn as_bool(v: &serde_json::Value, path: &str) -> Result<bool, DocumentError> {
    v.as_bool()
        .ok_or_else(|| schema(path, "expected a boolean"))
}

fn as_int(v: &serde_json::Value, path: &str) -> Result<Int, DocumentError> {
    let serde_json::Value::Number(n) = v else {
        return Err(schema(path, "expected an integer"));
    };
    let text = n.to_string();
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(schema(path, format!("expected an integer, got {text}")));
    }
    text.parse::<Int>()
        .map_err(|e| schema(path, format!("bad integer: {e}")))
}

fn as_i64(v: &serde_json::Value, path: &str) -> Result<i64, DocumentError> {
    let n = as_int(v, path)?;
    i64::try_from(n).map_err(|_| schema(path, "integer out of range"))
}

fn as_usize(v: &serde_json::Value, path: &str) -> Result<usize, DocumentError> {
    let n = as_i64(v, path)?;
    usize::try_from(n).map_err(|_| schema(path, "expected a non-negative integer"))
}

fn as_sign(v: &serde_json::Value, path: &str) -> Result<Sign, DocumentError> {
    let n = as_i64(v, path)?;
    Sign::from_i64(n).ok_or_else(|| schema(path, "expected +1 or -1"))
}

fn parse_matrix(
    v: &serde_json::Value,
    path: &str,
    expected_size: usize,
    name: &str,
) -> Result<SymMatrix<Int>, DocumentError> {
    let rows_json = as_array(v, path)?;
    if rows_json.len() != expected_size {
        return Err(schema(
            path,
            format!("{name} must have {expected_size} rows, got {}", rows_json.len()),
        ));
    }
    let mut rows = Vec::with_capacity(expected_size);
    for (i, row_json) in rows_json.iter().enumerate() {
        let row_path = format!("{path}[{i}]");
        let row = as_array(row_json, &row_path)?;
        let mut parsed = Vec::with_capacity(row.len());
        for (j, cell) in row.iter().enumerate() {
            parsed.push(as_int(cell, &format!("{row_path}[{j}]"))?);
        }
        rows.push(parsed);
    }
    SymMatrix::from_rows(rows).map_err(|e| match e {
        MatrixError::NotSymmetric { row, col } => schema(
            path,
            format!("{name} not symmetric: entries ({row},{col}) and ({col},{row}) differ"),
        ),
        MatrixError::RaggedRow { row, found, .. } => schema(
            &format!("{path}[{row}]"),
            format!("row must have {expected_size} entries, got {found}"),
        ),
    })
}

fn parse_goeritz_body(
    fields: &mut Fields<'_>,
) -> Result<EquivariantGoeritz, DocumentError> {
    let label = match fields.optional("label") {
        Some(v) => Some(as_text(v, &fields.child("label"))?),
        None => None,
    };
    let n = as_usize(fields.required("n")?, &fields.child("n"))?;
    if n == 0 {
        return Err(schema(&fields.child("n"), "n must be at least 1"));
    }
    let a = parse_matrix(fields.required("A")?, &fields.child("A"), n, "A")?;
    let b = parse_matrix(fields.required("B")?, &fields.child("B"), n, "B")?;
    let e = as_int(fields.required("e")?, &fields.child("e"))?;
    Goeritz::new(a, b, e, label).map_err(|err| schema(&fields.path, err.to_string()))
}

fn parse_region(v: &serde_json::Value, path: &str) -> Result<RegionRef, DocumentError> {
    let token = as_text(v, path)?;
    RegionRef::parse_token(&token)
        .ok_or_else(|| schema(path, format!("bad region token {token}; want a<i>, a<i>', or fixed")))
}

fn parse_crossing(v: &serde_json::Value, path: &str) -> Result<Crossing, DocumentError> {
    let map = as_object(v, path)?;
    let mut fields = Fields::new(path, map);
    let id = as_text(fields.required("id")?, &fields.child("id"))?;
    let regions_json = as_array(fields.required("regions")?, &fields.child("regions"))?;
    if regions_json.len() != 2 {
        return Err(schema(
            &fields.child("regions"),
            "exactly two region tokens required",
        ));
    }
    let regions = (
        parse_region(&regions_json[0], &format!("{}[0]", fields.child("regions")))?,
        parse_region(&regions_json[1], &format!("{}[1]", fields.child("regions")))?,
    );
    let eta = as_sign(fields.required("eta")?, &fields.child("eta"))?;
    let color_token = as_text(fields.required("color")?, &fields.child("color"))?;
    let epsilon = match fields.optional("epsilon") {
        Some(v) => Some(as_sign(v, &fields.child("epsilon"))?),
        None => None,
    };
    let color = match (color_token.as_str(), epsilon) {
        ("unicolored", None) => CrossingColor::Unicolored,
        ("unicolored", Some(_)) => {
            return Err(schema(
                &fields.child("epsilon"),
                "epsilon is only allowed on bicolored crossings",
            ))
        }
        ("bicolored", Some(epsilon)) => CrossingColor::Bicolored { epsilon },
        ("bicolored", None) => {
            return Err(schema(
                &fields.child("color"),
                "bicolored crossings need an epsilon field",
            ))
        }
        (other, _) => {
            return Err(schema(
                &fields.child("color"),
                format!("bad color {other}; want unicolored or bicolored"),
            ))
        }
    };
    let locus_token = as_text(fields.required("locus")?, &fields.child("locus"))?;
    let locus = Locus::parse_token(&locus_token).ok_or_else(|| {
        schema(
            &fields.child("locus"),
            format!("bad locus {locus_token}; want off-axis, on-axis-h, or on-axis-h'"),
        )
    })?;
    let partner = as_text(fields.required("partner")?, &fields.child("partner"))?;
    fields.finish()?;
    Ok(Crossing {
        id,
        regions,
        eta,
        color,
        locus,
        partner,
    })
}

fn parse_diagram_body(fields: &mut Fields<'_>) -> Result<SymmetricDiagram, DocumentError> {
    let label = match fields.optional("label") {
        Some(v) => Some(as_text(v, &fields.child("label"))?),
        None => None,
    };
    let n = as_usize(fields.required("n")?, &fields.child("n"))?;
    let crossings_json = as_array(fields.required("crossings")?, &fields.child("crossings"))?;
    let mut crossings = Vec::with_capacity(crossings_json.len());
    for (i, c) in crossings_json.iter().enumerate() {
        crossings.push(parse_crossing(c, &format!("{}[{i}]", fields.child("crossings")))?);
    }
    Ok(SymmetricDiagram::new(n, crossings, label))
}

fn parse_move(v: &serde_json::Value, path: &str) -> Result<MoveSpec, DocumentError> {
    let text = as_text(v, path)?;
    let mut moves = move_script_parse(&text)
        .map_err(|e| schema(path, format!("bad move statement: {e}")))?;
    if moves.len() != 1 {
        return Err(schema(path, "expected exactly one move statement"));
    }
    Ok(moves.pop().expect("length checked"))
}

fn parse_step(v: &serde_json::Value, path: &str) -> Result<BoundStep<Int>, DocumentError> {
    let map = as_object(v, path)?;
    let mut fields = Fields::new(path, map);
    let step = BoundStep {
        move_spec: parse_move(fields.required("move")?, &fields.child("move"))?,
        sigma_before: as_int(fields.required("sigma_before")?, &fields.child("sigma_before"))?,
        sigma_after: as_int(fields.required("sigma_after")?, &fields.child("sigma_after"))?,
        delta: as_int(fields.required("delta")?, &fields.child("delta"))?,
        bound: as_i64(fields.required("bound")?, &fields.child("bound"))?,
        compliant: as_bool(fields.required("compliant")?, &fields.child("compliant"))?,
    };
    fields.finish()?;
    Ok(step)
}

fn parse_lower_bounds(
    v: &serde_json::Value,
    path: &str,
) -> Result<LowerBounds<Int>, DocumentError> {
    let map = as_object(v, path)?;
    let mut fields = Fields::new(path, map);
    let bounds = LowerBounds {
        type_a_min: as_int(fields.required("type_a_min")?, &fields.child("type_a_min"))?,
        type_b_min: as_int(fields.required("type_b_min")?, &fields.child("type_b_min"))?,
        type_c_min: as_int(fields.required("type_c_min")?, &fields.child("type_c_min"))?,
        homotopy_self_intersections_min: as_int(
            fields.required("homotopy_self_intersections_min")?,
            &fields.child("homotopy_self_intersections_min"),
        )?,
    };
    // the caveats are fixed text; they must be present but their content is
    // not data
    for key in ["type_a_note", "type_b_note", "type_c_note", "homotopy_note"] {
        let path = fields.child(key);
        as_text(fields.required(key)?, &path)?;
    }
    fields.finish()?;
    Ok(bounds)
}

fn parse_report_body(fields: &mut Fields<'_>) -> Result<BoundReport<Int>, DocumentError> {
    let label = match fields.optional("label") {
        Some(v) => Some(as_text(v, &fields.child("label"))?),
        None => None,
    };
    let initial_sigma = as_int(fields.required("initial_sigma")?, &fields.child("initial_sigma"))?;
    let final_sigma = as_int(fields.required("final_sigma")?, &fields.child("final_sigma"))?;
    let compliant = as_bool(fields.required("compliant")?, &fields.child("compliant"))?;
    let steps_json = as_array(fields.required("steps")?, &fields.child("steps"))?;
    let mut steps = Vec::with_capacity(steps_json.len());
    for (i, s) in steps_json.iter().enumerate() {
        steps.push(parse_step(s, &format!("{}[{i}]", fields.child("steps")))?);
    }
    let lower_bounds = parse_lower_bounds(
        fields.required("lower_bounds")?,
        &fields.child("lower_bounds"),
    )?;
    Ok(BoundReport {
        label,
        initial_sigma,
        final_sigma,
        steps,
        lower_bounds,
        compliant,
    })
}

/// Parses a document, rejecting syntax errors with line/column and schema
/// violations with the offending field path.
pub fn parse_document(text: &str) -> Result<Document, DocumentError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
    let map = as_object(&value, "$")?;
    let mut fields = Fields::new("$", map);
    let kind = as_text(fields.required("kind")?, &fields.child("kind"))?;
    let notes = match fields.optional("notes") {
        Some(v) => Some(as_text(v, &fields.child("notes"))?),
        None => None,
    };
    let body = match kind.as_str() {
        "equivariant-goeritz" => DocumentBody::Goeritz(parse_goeritz_body(&mut fields)?),
        "symmetric-diagram" => DocumentBody::Diagram(parse_diagram_body(&mut fields)?),
        "bound-report" => DocumentBody::Report(parse_report_body(&mut fields)?),
        other => {
            return Err(schema(
                "$.kind",
                format!(
                    "unknown kind {other}; want symmetric-diagram, equivariant-goeritz, or \
                     bound-report"
                ),
            ))
        }
    };
    fields.finish()?;
    Ok(Document { body, notes })
}

// ---------------------------------------------------------------------------
// serialization

fn matrix_json(m: &SymMatrix<Int>) -> JsonValue {
    JsonValue::Array(
        m.rows()
            .into_iter()
            .map(|row| JsonValue::Array(row.into_iter().map(JsonValue::from).collect()))
            .collect(),
    )
}

fn crossing_json(c: &Crossing) -> JsonValue {
    let mut fields: Vec<(String, JsonValue)> = vec![
        ("id".into(), c.id.as_str().into()),
        (
            "regions".into(),
            JsonValue::Array(vec![
                c.regions.0.to_string().into(),
                c.regions.1.to_string().into(),
            ]),
        ),
        ("eta".into(), c.eta.as_i64().into()),
    ];
    match c.color {
        CrossingColor::Unicolored => fields.push(("color".into(), "unicolored".into())),
        CrossingColor::Bicolored { epsilon } => {
            fields.push(("color".into(), "bicolored".into()));
            fields.push(("epsilon".into(), epsilon.as_i64().into()));
        }
    }
    fields.push(("locus".into(), c.locus.token().into()));
    fields.push(("partner".into(), c.partner.as_str().into()));
    JsonValue::Object(fields)
}

fn lower_bounds_json(b: &LowerBounds<Int>) -> JsonValue {
    let caveats = lower_bound_caveats();
    JsonValue::Object(vec![
        ("type_a_min".into(), (&b.type_a_min).into()),
        ("type_a_note".into(), caveats[0].1.into()),
        ("type_b_min".into(), (&b.type_b_min).into()),
        ("type_b_note".into(), caveats[1].1.into()),
        ("type_c_min".into(), (&b.type_c_min).into()),
        ("type_c_note".into(), caveats[2].1.into()),
        (
            "homotopy_self_intersections_min".into(),
            (&b.homotopy_self_intersections_min).into(),
        ),
        ("homotopy_note".into(), caveats[3].1.into()),
    ])
}

fn step_json(s: &BoundStep<Int>) -> JsonValue {
    JsonValue::Object(vec![
        ("move".into(), s.move_spec.to_string().into()),
        ("sigma_before".into(), (&s.sigma_before).into()),
        ("sigma_after".into(), (&s.sigma_after).into()),
        ("delta".into(), (&s.delta).into()),
        ("bound".into(), s.bound.into()),
        ("compliant".into(), s.compliant.into()),
    ])
}

/// The document as an ordered JSON tree.
pub fn document_json(doc: &Document) -> JsonValue {
    let mut fields: Vec<(String, JsonValue)> = vec![("kind".into(), doc.kind().into())];
    match &doc.body {
        DocumentBody::Goeritz(g) => {
            if let Some(label) = g.label() {
                fields.push(("label".into(), label.into()));
            }
            fields.push(("n".into(), g.pair_count().into()));
            fields.push(("A".into(), matrix_json(g.block_a())));
            fields.push(("B".into(), matrix_json(g.block_b())));
            fields.push(("e".into(), g.correction().into()));
        }
        DocumentBody::Diagram(d) => {
            if let Some(label) = &d.label {
                fields.push(("label".into(), label.as_str().into()));
            }
            fields.push(("n".into(), d.n.into()));
            fields.push((
                "crossings".into(),
                JsonValue::Array(d.crossings.iter().map(crossing_json).collect()),
            ));
        }
        DocumentBody::Report(r) => {
            if let Some(label) = &r.label {
                fields.push(("label".into(), label.as_str().into()));
            }
            fields.push(("initial_sigma".into(), (&r.initial_sigma).into()));
            fields.push(("final_sigma".into(), (&r.final_sigma).into()));
            fields.push(("compliant".into(), r.compliant.into()));
            fields.push((
                "steps".into(),
                JsonValue::Array(r.steps.iter().map(step_json).collect()),
            ));
            fields.push(("lower_bounds".into(), lower_bounds_json(&r.lower_bounds)));
        }
    }
    if let Some(notes) = &doc.notes {
        fields.push(("notes".into(), notes.as_str().into()));
    }
    JsonValue::Object(fields)
}

/// Stable, human-editable rendering with a trailing newline.
pub fn serialize_document(doc: &Document) -> String {
    let mut out = document_json(doc).pretty();
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::verify_sequence;
    use crate::corpus;

    #[test]
    fn five_one_document_parses() {
        let text = r#"{
            "kind": "equivariant-goeritz",
            "label": "5_1",
            "n": 2,
            "A": [[-2, 1], [1, -2]],
            "B": [[1, 0], [0, 0]],
            "e": 4
        }"#;
        let doc = parse_document(text).unwrap();
        let DocumentBody::Goeritz(g) = &doc.body else {
            panic!("wrong kind");
        };
        assert_eq!(g.label(), Some("5_1"));
        assert_eq!(*g.correction(), Int::from(4));
    }

    #[test]
    fn asymmetric_block_rejected() {
        let text = r#"{"kind": "equivariant-goeritz", "n": 2,
                       "A": [[0, 1], [2, 0]], "B": [[0, 0], [0, 0]], "e": 0}"#;
        let err = parse_document(text).unwrap_err();
        let DocumentError::Schema { path, message } = &err else {
            panic!("expected schema violation, got {err}");
        };
        assert_eq!(path, "$.A");
        assert!(message.contains("A not symmetric"));
    }

    #[test]
    fn truncated_text_is_a_syntax_error() {
        let err = parse_document("{\"kind\": \"equivariant-goeritz\",\n  \"n\"").unwrap_err();
        assert!(matches!(err, DocumentError::Syntax { line: 2, .. }));
    }

    #[test]
    fn unknown_field_rejected_with_path() {
        let text = r#"{"kind": "equivariant-goeritz", "n": 1,
                       "A": [[1]], "B": [[0]], "e": 0, "extra": 1}"#;
        assert_eq!(
            parse_document(text).unwrap_err(),
            DocumentError::Schema {
                path: "$.extra".into(),
                message: "unknown field".into()
            }
        );
    }

    #[test]
    fn float_entries_rejected() {
        let text = r#"{"kind": "equivariant-goeritz", "n": 1,
                       "A": [[1.5]], "B": [[0]], "e": 0}"#;
        let err = parse_document(text).unwrap_err();
        let DocumentError::Schema { path, .. } = &err else {
            panic!("expected schema violation");
        };
        assert_eq!(path, "$.A[0][0]");
    }

    #[test]
    fn huge_integers_survive() {
        let big = "123456789012345678901234567890123456789";
        let text = format!(
            r#"{{"kind": "equivariant-goeritz", "n": 1, "A": [[{big}]], "B": [[0]], "e": 0}}"#
        );
        let doc = parse_document(&text).unwrap();
        let DocumentBody::Goeritz(g) = &doc.body else {
            panic!();
        };
        assert_eq!(g.block_a().get(0, 0).to_string(), big);
    }

    #[test]
    fn epsilon_must_match_color() {
        let base = r#"{"kind": "symmetric-diagram", "n": 1, "crossings": [
            {"id": "c", "regions": ["a1", "a1'"], "eta": 1, "color": "bicolored",
             "locus": "on-axis-h", "partner": "c"}]}"#;
        let err = parse_document(base).unwrap_err();
        let DocumentError::Schema { message, .. } = &err else {
            panic!();
        };
        assert!(message.contains("epsilon"));
    }

    #[test]
    fn corpus_documents_round_trip() {
        for entry in corpus::matrix_entries() {
            let doc = Document::goeritz(entry.goeritz.clone());
            let text = serialize_document(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc, "{}", entry.name);
        }
        for entry in corpus::diagram_entries() {
            let doc = Document::diagram(entry.diagram.clone());
            let text = serialize_document(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc, "{}", entry.name);
        }
    }

    #[test]
    fn report_documents_round_trip() {
        let g = corpus::matrix_entry("5_1").unwrap().goeritz;
        let report = verify_sequence(
            &g,
            &[MoveSpec::TypeB {
                pair: 1,
                sign: Sign::Plus,
            }],
        )
        .unwrap();
        let doc = Document::report(report);
        let text = serialize_document(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
    }

    #[test]
    fn notes_survive_round_trips() {
        let g = corpus::matrix_entry("6_1").unwrap();
        let mut doc = Document::goeritz(g.goeritz);
        doc.notes = Some(g.note.to_string());
        let text = serialize_document(&doc);
        assert_eq!(parse_document(&text).unwrap(), doc);
    }
}
