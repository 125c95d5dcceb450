//! Text formats for polygons, transformations, plans and stage logs.
//!
//! Every file is one JSON object. Coordinates and times are exact: a bare
//! integer or a string `"p/q"`. Emission is canonical (lowest terms, compact,
//! one trailing newline), so parse-then-emit is the identity on canonical
//! input. Vertex indices in files always refer to the order the caller listed
//! the vertices in, whatever the internal orientation.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use sightline_core::motion::{Orbit, Plan, SingleVertexMove, Transformation};
use sightline_core::planner::{FixedOracle, Stage, StageKind, StageLog};
use sightline_core::{GeomError, MotionError, Point, Polygon, Scalar};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {message} (line {line}, column {column})")]
    Parse { path: String, message: String, line: usize, column: usize },
    #[error("invalid polygon: {0}")]
    Geom(#[from] GeomError),
    #[error("invalid motion: {0}")]
    Motion(#[from] MotionError),
    #[error("vertex index {index} out of range for {n} vertices")]
    Index { index: usize, n: usize },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// An exact rational as it appears in files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rat(pub Scalar);

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Rat, String> {
        let s = s.trim();
        let bad = || format!("expected an integer or \"p/q\", got {s:?}");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Rat(Scalar::new(n, d)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match (self.0.denom().is_one(), self.0.numer().to_i64()) {
            (true, Some(i)) => s.serialize_i64(i),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(Scalar::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(Scalar::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Rat, E> {
                Err(E::custom(format!("floating-point number {v} is not exact; write it as \"p/q\"")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                v.parse().map_err(E::custom)
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

fn point_out(p: &Point) -> [Rat; 2] {
    [Rat(p.x.clone()), Rat(p.y.clone())]
}

fn point_in(p: &[Rat; 2]) -> Point {
    Point::new(p[0].0.clone(), p[1].0.clone())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonFile {
    pub vertices: Vec<[Rat; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Keyframe {
    pub t: Rat,
    pub p: [Rat; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformationFile {
    pub start: Rat,
    pub end: Rat,
    /// One keyframe list per vertex, in caller order.
    pub orbits: Vec<Vec<Keyframe>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MoveFile {
    pub vertex: usize,
    pub path: Vec<Keyframe>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub initial: PolygonFile,
    pub moves: Vec<MoveFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StageFile {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interval: Option<[Rat; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tau: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub steps: Option<u64>,
    #[serde(default)]
    pub clamped: bool,
    pub vertex_order: Vec<usize>,
    pub critical: Vec<[usize; 3]>,
    pub nonvisible_before: usize,
    pub nonvisible_after: usize,
    pub moves: usize,
    pub retries: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StageLogFile {
    pub stages: Vec<StageFile>,
}

impl PartialEq for PolygonFile {
    fn eq(&self, o: &PolygonFile) -> bool {
        self.vertices == o.vertices
    }
}

/// Parses JSON into `T`, reporting the path of the offending field.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        FormatError::Parse { path, message: inner.to_string(), line: inner.line(), column: inner.column() }
    })?;
    de.end().map_err(|e| FormatError::Parse {
        path: ".".into(),
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    Ok(value)
}

/// Canonical text: compact JSON and a newline.
pub fn emit_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("file types always serialize");
    s.push('\n');
    s
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn polygon_to_file(poly: &Polygon) -> PolygonFile {
    PolygonFile { vertices: poly.caller_order().iter().map(point_out).collect() }
}

pub fn polygon_from_file(f: &PolygonFile) -> Result<Polygon, FormatError> {
    Ok(Polygon::new(f.vertices.iter().map(point_in).collect())?)
}

pub fn parse_polygon(text: &str) -> Result<Polygon, FormatError> {
    polygon_from_file(&parse_json(text)?)
}

pub fn emit_polygon(poly: &Polygon) -> String {
    emit_json(&polygon_to_file(poly))
}

fn orbit_to_file(o: &Orbit) -> Vec<Keyframe> {
    o.keyframes().iter().map(|(t, p)| Keyframe { t: Rat(t.clone()), p: point_out(p) }).collect()
}

fn orbit_from_file(k: &[Keyframe]) -> Result<Orbit, FormatError> {
    Ok(Orbit::new(k.iter().map(|k| (k.t.0.clone(), point_in(&k.p))).collect())?)
}

pub fn transformation_to_file(t: &Transformation) -> TransformationFile {
    TransformationFile {
        start: Rat(t.start().clone()),
        end: Rat(t.end().clone()),
        orbits: t.caller_orbits().iter().map(orbit_to_file).collect(),
    }
}

pub fn transformation_from_file(f: &TransformationFile) -> Result<Transformation, FormatError> {
    let orbits = f.orbits.iter().map(|k| orbit_from_file(k)).collect::<Result<Vec<_>, _>>()?;
    Ok(Transformation::new(f.start.0.clone(), f.end.0.clone(), orbits)?)
}

pub fn parse_transformation(text: &str) -> Result<Transformation, FormatError> {
    transformation_from_file(&parse_json(text)?)
}

pub fn emit_transformation(t: &Transformation) -> String {
    emit_json(&transformation_to_file(t))
}

pub fn plan_to_file(plan: &Plan) -> PlanFile {
    let init = plan.initial();
    PlanFile {
        initial: polygon_to_file(init),
        moves: plan
            .moves()
            .iter()
            .map(|m| MoveFile { vertex: init.caller_index(m.vertex), path: orbit_to_file(&m.path) })
            .collect(),
    }
}

pub fn plan_from_file(f: &PlanFile) -> Result<Plan, FormatError> {
    let init = polygon_from_file(&f.initial)?;
    let n = init.len();
    let mut moves = Vec::with_capacity(f.moves.len());
    for m in &f.moves {
        if m.vertex >= n {
            return Err(FormatError::Index { index: m.vertex, n });
        }
        moves.push(SingleVertexMove::new(init.internal_index(m.vertex), orbit_from_file(&m.path)?));
    }
    Ok(Plan::new(init, moves)?)
}

pub fn parse_plan(text: &str) -> Result<Plan, FormatError> {
    plan_from_file(&parse_json(text)?)
}

pub fn emit_plan(plan: &Plan) -> String {
    emit_json(&plan_to_file(plan))
}

pub fn stage_kind_name(k: StageKind) -> &'static str {
    match k {
        StageKind::VisibilityIncrease => "visibility-increase",
        StageKind::Discretized => "discretized",
    }
}

/// Converts triples to caller indices, sorted within and across triples.
pub fn caller_triples(poly: &Polygon, triples: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut out: Vec<[usize; 3]> = triples
        .iter()
        .map(|t| {
            let mut c = t.map(|i| poly.caller_index(i));
            c.sort_unstable();
            c
        })
        .collect();
    out.sort_unstable();
    out
}

fn stage_to_file(poly: &Polygon, s: &Stage) -> StageFile {
    StageFile {
        kind: stage_kind_name(s.kind).into(),
        interval: s.interval.as_ref().map(|(a, c)| [Rat(a.clone()), Rat(c.clone())]),
        delta: s.delta.clone().map(Rat),
        tau: s.tau.clone().map(Rat),
        steps: s.steps,
        clamped: s.clamped,
        vertex_order: s.vertex_order.iter().map(|&i| poly.caller_index(i)).collect(),
        critical: caller_triples(poly, &s.critical),
        nonvisible_before: s.nonvisible_before,
        nonvisible_after: s.nonvisible_after,
        moves: s.moves,
        retries: s.retries,
    }
}

/// Stage log with vertex indices in the caller order of `poly`, the plan's
/// initial polygon.
pub fn stage_log_to_file(poly: &Polygon, log: &StageLog) -> StageLogFile {
    StageLogFile { stages: log.stages.iter().map(|s| stage_to_file(poly, s)).collect() }
}

pub fn emit_stage_log(poly: &Polygon, log: &StageLog) -> String {
    emit_json(&stage_log_to_file(poly, log))
}

/// Oracle answering only the initial polygon of the stored transformation.
pub fn oracle_from_file(path: &Path) -> Result<FixedOracle, FormatError> {
    let t = parse_transformation(&read_file(path)?).map_err(|e| match e {
        FormatError::Parse { path: p, message, line, column } => {
            FormatError::Parse { path: format!("{}: {p}", path.display()), message, line, column }
        }
        other => other,
    })?;
    Ok(FixedOracle::new(t)?)
}

/// Exact value as text, e.g. for reports.
pub fn show(x: &Scalar) -> String {
    Rat(x.clone()).to_string()
}

pub fn rat_from_ratio(n: i64, d: i64) -> Rat {
    Rat(Scalar::new(n.into(), d.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_text() {
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
        assert_eq!("-6/3".parse::<Rat>().unwrap().to_string(), "-2");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
        assert_eq!(rat_from_ratio(3, -6).to_string(), "-1/2");
    }
}
