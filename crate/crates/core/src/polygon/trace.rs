//! JSON-lines form of a reduction trace.
//!
//! The first line is a header describing the starting gon; each following
//! line records one step: its 0-based position, the 1-based index chosen and
//! the element it produced. Replaying recomputes every step and requires the
//! produced elements to serialize identically.

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use thiserror::Error;

use super::{CevaGon, MenelaosGon, Reducible, ReductionTrace};
use crate::error::GeomError;
use crate::projective::{Line, Point};
use crate::scalar::Scalar;

pub const TRACE_SCHEMA: u64 = 1;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: invalid JSON: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("step {step}: recorded {field} differs from the recomputed value")]
    Mismatch { step: usize, field: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Gons that can be written to and read from trace files.
pub trait Traceable: Reducible {
    const KIND: &'static str;
    fn header_fields(&self) -> Value;
    fn from_header(header: &Value) -> Result<Self, String>;
    /// Fields describing what step `index` produced from `before`.
    fn step_fields(before: &Self, index: usize, after: &Self) -> Value;
}

fn field<T: DeserializeOwned>(v: &Value, name: &str) -> Result<T, String> {
    let raw = v.get(name).ok_or_else(|| format!("missing field `{name}`"))?;
    serde_json::from_value(raw.clone()).map_err(|e| format!("field `{name}`: {e}"))
}

fn backend_name<S: Scalar>() -> &'static str {
    if S::EXACT {
        "exact"
    } else {
        "float"
    }
}

impl<S: Scalar> Traceable for CevaGon<S> {
    const KIND: &'static str = "ceva";

    fn header_fields(&self) -> Value {
        json!({ "vertices": self.vertices(), "lines": self.lines() })
    }

    fn from_header(header: &Value) -> Result<Self, String> {
        let vertices: Vec<Point<S>> = field(header, "vertices")?;
        let lines: Vec<Line<S>> = field(header, "lines")?;
        CevaGon::new(vertices, lines).map_err(|e| e.to_string())
    }

    fn step_fields(before: &Self, index: usize, after: &Self) -> Value {
        let pos = CevaGon::<S>::new_vertex_position(before.len(), index) as isize;
        json!({ "vertex": after.vertex(pos), "line": after.line(pos) })
    }
}

impl<S: Scalar> Traceable for MenelaosGon<S> {
    const KIND: &'static str = "menelaos";

    fn header_fields(&self) -> Value {
        json!({ "vertices": self.vertices(), "points": self.points() })
    }

    fn from_header(header: &Value) -> Result<Self, String> {
        let vertices: Vec<Point<S>> = field(header, "vertices")?;
        let points: Vec<Point<S>> = field(header, "points")?;
        MenelaosGon::new(vertices, points).map_err(|e| e.to_string())
    }

    fn step_fields(before: &Self, index: usize, after: &Self) -> Value {
        let pos = MenelaosGon::<S>::new_point_position(before.len(), index) as isize;
        json!({ "removed": before.vertex(index as isize), "point": after.point(pos) })
    }
}

fn header_of<G: Traceable>(start: &G, backend: &str) -> Value {
    let mut header = json!({
        "schema": TRACE_SCHEMA,
        "kind": G::KIND,
        "backend": backend,
        "n": start.size(),
    });
    if let (Value::Object(h), Value::Object(f)) = (&mut header, start.header_fields()) {
        h.extend(f);
    }
    header
}

fn step_line<G: Traceable>(step: usize, index: usize, before: &G, after: &G) -> Value {
    let mut line = json!({ "step": step, "index": index });
    if let (Value::Object(l), Value::Object(f)) = (&mut line, G::step_fields(before, index, after)) {
        l.extend(f);
    }
    line
}

impl<S: Scalar> ReductionTrace<CevaGon<S>> {
    pub fn to_json_lines(&self) -> String {
        render(self, backend_name::<S>())
    }
}

impl<S: Scalar> ReductionTrace<MenelaosGon<S>> {
    pub fn to_json_lines(&self) -> String {
        render(self, backend_name::<S>())
    }
}

fn render<G: Traceable>(trace: &ReductionTrace<G>, backend: &str) -> String {
    let mut out = String::new();
    out.push_str(&header_of(&trace.start, backend).to_string());
    out.push('\n');
    let mut before = &trace.start;
    for (step, (index, after)) in trace.indices.iter().zip(&trace.gons).enumerate() {
        out.push_str(&step_line(step, *index, before, after).to_string());
        out.push('\n');
        before = after;
    }
    out
}

/// Header information of a trace file, read before choosing the gon type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceHeader {
    pub kind: String,
    pub backend: String,
    pub n: usize,
}

fn parse_lines(text: &str) -> Result<Vec<(usize, Value)>, TraceError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| {
            serde_json::from_str(l)
                .map(|v| (k + 1, v))
                .map_err(|source| TraceError::Json { line: k + 1, source })
        })
        .collect()
}

pub fn read_header(text: &str) -> Result<TraceHeader, TraceError> {
    let lines = parse_lines(text)?;
    let (line, header) = lines.first().ok_or(TraceError::Format {
        line: 1,
        message: "empty trace".into(),
    })?;
    let fmt = |message: String| TraceError::Format { line: *line, message };
    let schema: u64 = field(header, "schema").map_err(fmt)?;
    if schema != TRACE_SCHEMA {
        return Err(fmt(format!("unsupported schema {schema}")));
    }
    Ok(TraceHeader {
        kind: field(header, "kind").map_err(fmt)?,
        backend: field(header, "backend").map_err(fmt)?,
        n: field(header, "n").map_err(fmt)?,
    })
}

/// Recompute every recorded step and compare it with the file.
pub fn replay<G: Traceable>(text: &str) -> Result<ReductionTrace<G>, TraceError> {
    let lines = parse_lines(text)?;
    let header = read_header(text)?;
    if header.kind != G::KIND {
        return Err(TraceError::Format {
            line: 1,
            message: format!("trace kind `{}`, expected `{}`", header.kind, G::KIND),
        });
    }
    let (_, header_value) = &lines[0];
    let start = G::from_header(header_value).map_err(|message| TraceError::Format { line: 1, message })?;
    if start.size() != header.n {
        return Err(TraceError::Format {
            line: 1,
            message: format!("header says n = {}, gon has {}", header.n, start.size()),
        });
    }
    let mut indices = Vec::new();
    let mut gons: Vec<G> = Vec::new();
    for (step, (line, record)) in lines[1..].iter().enumerate() {
        let fmt = |message: String| TraceError::Format { line: *line, message };
        let recorded_step: usize = field(record, "step").map_err(fmt)?;
        if recorded_step != step {
            return Err(fmt(format!("expected step {step}, found {recorded_step}")));
        }
        let index: usize = field(record, "index").map_err(fmt)?;
        let before = gons.last().unwrap_or(&start);
        let after = before.step(index).map_err(|e| GeomError::DegenerateStep {
            step,
            index,
            reason: e.to_string(),
            prefix: indices.clone(),
        })?;
        let expected = step_line(step, index, before, &after);
        if let (Value::Object(exp), Value::Object(got)) = (&expected, record) {
            for (k, v) in exp {
                if got.get(k) != Some(v) {
                    return Err(TraceError::Mismatch { step, field: k.clone() });
                }
            }
        }
        indices.push(index);
        gons.push(after);
    }
    if indices.len() + 3 != start.size() {
        return Err(TraceError::Format {
            line: lines.len(),
            message: format!("{} steps recorded, expected {}", indices.len(), start.size() - 3),
        });
    }
    Ok(ReductionTrace { start, indices, gons })
}
