//! Canonical JSON documents for matrices, triangles, rational points and
//! decompositions.
//!
//! Output is compact with a fixed field order; rationals are strings `p/q`
//! in lowest terms and no floating-point literal ever appears.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::hull::ConvexDecomposition;
use crate::matrix::SignMatrix;
use crate::point::{RationalMatrixPoint, RationalTrianglePoint};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::triangle::{BooleanTriangle, MagogTriangle, TriangularArray};

#[derive(Clone, Debug, PartialEq)]
pub enum SerializedObject {
    Matrix(SignMatrix),
    RationalMatrix(RationalMatrixPoint),
    MagogTriangle(MagogTriangle),
    BooleanTriangle(BooleanTriangle),
    RationalTriangle(RationalTrianglePoint),
    Decomposition(Vec<(Rational, SerializedObject)>),
}

impl SerializedObject {
    pub fn kind(&self) -> &'static str {
        match self {
            SerializedObject::Matrix(_) | SerializedObject::RationalMatrix(_) => "matrix",
            SerializedObject::MagogTriangle(_) => "magog-triangle",
            SerializedObject::BooleanTriangle(_) => "boolean-triangle",
            SerializedObject::RationalTriangle(_) => "rational-triangle",
            SerializedObject::Decomposition(_) => "decomposition",
        }
    }

    /// Compact canonical JSON without a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            SerializedObject::Matrix(m) => {
                write_header(out, "matrix", m.order(), "entries");
                write_rows(out, m.rows().map(|r| r.iter().map(|v| v.to_string())));
            }
            SerializedObject::RationalMatrix(p) => {
                write_header(out, "matrix", p.order(), "entries");
                write_rows(out, p.entries().chunks(p.order()).map(|r| r.iter().map(quoted)));
            }
            SerializedObject::MagogTriangle(t) => {
                write_header(out, "magog-triangle", t.order(), "rows");
                write_rows(out, t.rows().map(|r| r.iter().map(|v| v.to_string())));
            }
            SerializedObject::BooleanTriangle(b) => {
                write_header(out, "boolean-triangle", b.order(), "rows");
                write_rows(out, b.array().rows().map(|r| r.iter().map(|v| v.to_string())));
            }
            SerializedObject::RationalTriangle(p) => {
                write_header(out, "rational-triangle", p.order(), "rows");
                write_rows(out, p.rows().map(|r| r.iter().map(quoted)));
            }
            SerializedObject::Decomposition(terms) => {
                out.push_str("{\"terms\":[");
                for (k, (w, v)) in terms.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push_str("{\"weight\":");
                    out.push_str(&quoted(w));
                    out.push_str(",\"vertex\":");
                    v.write(out);
                    out.push('}');
                }
                out.push_str("]}");
            }
        }
    }
}

fn quoted(r: &Rational) -> String {
    format!("\"{}\"", format_rational(r))
}

fn write_header(out: &mut String, kind: &str, n: usize, field: &str) {
    out.push_str(&format!("{{\"kind\":\"{kind}\",\"n\":{n},\"{field}\":"));
}

fn write_rows<R, I>(out: &mut String, rows: R)
where
    R: Iterator<Item = I>,
    I: Iterator<Item = String>,
{
    out.push('[');
    for (k, row) in rows.enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push('[');
        out.push_str(&row.collect::<Vec<_>>().join(","));
        out.push(']');
    }
    out.push_str("]}");
}

impl From<SignMatrix> for SerializedObject {
    fn from(m: SignMatrix) -> Self {
        SerializedObject::Matrix(m)
    }
}

impl From<BooleanTriangle> for SerializedObject {
    fn from(b: BooleanTriangle) -> Self {
        SerializedObject::BooleanTriangle(b)
    }
}

impl From<MagogTriangle> for SerializedObject {
    fn from(t: MagogTriangle) -> Self {
        SerializedObject::MagogTriangle(t)
    }
}

impl<V: Clone + Into<SerializedObject>> From<&ConvexDecomposition<V>> for SerializedObject {
    fn from(d: &ConvexDecomposition<V>) -> Self {
        SerializedObject::Decomposition(d.terms().iter().map(|t| (t.weight.clone(), t.vertex.clone().into())).collect())
    }
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| parse_err(format!("missing field {name:?}")))
}

fn expect_fields(obj: &serde_json::Map<String, Value>, allowed: &[&str]) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(parse_err(format!("unexpected field {k:?}"))),
        None => Ok(()),
    }
}

enum Cells {
    Integers(Vec<Vec<i64>>),
    Rationals(Vec<Vec<Rational>>),
}

fn parse_cells(v: &Value) -> Result<Cells> {
    let rows = v.as_array().ok_or_else(|| parse_err("rows must be an array"))?;
    let mut ints = Vec::with_capacity(rows.len());
    let mut rats = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| parse_err("each row must be an array"))?;
        let mut ir = Vec::with_capacity(row.len());
        let mut rr = Vec::with_capacity(row.len());
        for cell in row {
            match cell {
                Value::Number(num) => ir.push(num.as_i64().ok_or_else(|| parse_err(format!("{num} is not an integer")))?),
                Value::String(s) => rr.push(parse_rational(s)?),
                other => return Err(parse_err(format!("unexpected cell {other}"))),
            }
        }
        ints.push(ir);
        rats.push(rr);
    }
    let int_cells: usize = ints.iter().map(Vec::len).sum();
    let rat_cells: usize = rats.iter().map(Vec::len).sum();
    match (int_cells, rat_cells) {
        (_, 0) => Ok(Cells::Integers(ints)),
        (0, _) => Ok(Cells::Rationals(rats)),
        _ => Err(parse_err("integer and rational cells are mixed")),
    }
}

fn parse_order(obj: &serde_json::Map<String, Value>) -> Result<usize> {
    let n = field(obj, "n")?.as_u64().ok_or_else(|| parse_err("n must be a nonnegative integer"))?;
    usize::try_from(n).ok().filter(|&n| n >= 1).ok_or_else(|| parse_err("n must be at least 1"))
}

fn check_order(declared: usize, actual: usize) -> Result<()> {
    if declared != actual {
        return Err(Error::Shape(format!("declared n = {declared} but the rows give order {actual}")));
    }
    Ok(())
}

fn from_value(v: &Value, depth: usize) -> Result<SerializedObject> {
    let obj = v.as_object().ok_or_else(|| parse_err("expected a JSON object"))?;
    if obj.contains_key("terms") {
        if depth > 0 {
            return Err(parse_err("decompositions cannot be nested"));
        }
        expect_fields(obj, &["terms"])?;
        let terms = field(obj, "terms")?.as_array().ok_or_else(|| parse_err("terms must be an array"))?;
        let mut out = Vec::with_capacity(terms.len());
        for term in terms {
            let t = term.as_object().ok_or_else(|| parse_err("each term must be an object"))?;
            expect_fields(t, &["weight", "vertex"])?;
            let w = field(t, "weight")?.as_str().ok_or_else(|| parse_err("weight must be a string"))?;
            out.push((parse_rational(w)?, from_value(field(t, "vertex")?, depth + 1)?));
        }
        return Ok(SerializedObject::Decomposition(out));
    }
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| parse_err("kind must be a string"))?;
    let n = parse_order(obj)?;
    match kind {
        "matrix" => {
            expect_fields(obj, &["kind", "n", "entries"])?;
            match parse_cells(field(obj, "entries")?)? {
                Cells::Integers(rows) => {
                    let m = SignMatrix::from_rows(&rows)?;
                    check_order(n, m.order())?;
                    Ok(SerializedObject::Matrix(m))
                }
                Cells::Rationals(rows) => {
                    let p = RationalMatrixPoint::from_rows(rows)?;
                    check_order(n, p.order())?;
                    Ok(SerializedObject::RationalMatrix(p))
                }
            }
        }
        "magog-triangle" | "boolean-triangle" | "rational-triangle" => {
            expect_fields(obj, &["kind", "n", "rows"])?;
            let cells = parse_cells(field(obj, "rows")?)?;
            match (kind, cells) {
                ("magog-triangle", Cells::Integers(rows)) => {
                    check_order(n, rows.len())?;
                    Ok(SerializedObject::MagogTriangle(MagogTriangle::from_rows(&rows)?))
                }
                ("boolean-triangle", Cells::Integers(rows)) => {
                    check_order(n, rows.len() + 1)?;
                    if rows.is_empty() {
                        return Ok(SerializedObject::BooleanTriangle(BooleanTriangle::zero(1)));
                    }
                    Ok(SerializedObject::BooleanTriangle(BooleanTriangle::from_rows(&rows)?))
                }
                ("rational-triangle", Cells::Rationals(rows)) => {
                    check_order(n, rows.len() + 1)?;
                    Ok(SerializedObject::RationalTriangle(TriangularArray::from_rows(rows)?))
                }
                ("rational-triangle", Cells::Integers(rows)) if rows.iter().all(Vec::is_empty) => {
                    check_order(n, rows.len() + 1)?;
                    let rows = rows.into_iter().map(|_| Vec::new()).collect();
                    Ok(SerializedObject::RationalTriangle(TriangularArray::from_rows(rows)?))
                }
                (k, _) => Err(parse_err(format!("wrong cell type for {k}"))),
            }
        }
        other => Err(parse_err(format!("unknown kind {other:?}"))),
    }
}

/// Parses one canonical document; surrounding whitespace is allowed.
pub fn parse(text: &str) -> Result<SerializedObject> {
    let v: Value = serde_json::from_str(text)?;
    from_value(&v, 0)
}

/// Canonical JSON followed by a newline.
pub fn serialize(obj: &SerializedObject) -> String {
    let mut s = obj.to_json();
    s.push('\n');
    s
}
