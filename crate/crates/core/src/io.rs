//! JSON input and output with exact rationals.
//!
//! Numbers may be written as strings (`"3/4"`, `"-2"`, `"0.125"`, `"1e-3"`),
//! bare JSON numbers (read from their literal text, so `0.1` is exactly
//! `1/10`), or `[numerator, denominator]` pairs. Output always uses the
//! canonical string form.

use std::fmt;

use num_traits::Zero;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::geometry::{GeometryError, Point, Polytope};
use crate::lattice::{AxisBox, Lattice, LatticeError, PointSet};
use crate::number::{format_rational, parse_rational, Rational};

/// Largest accepted dimension.
pub const MAX_DIM: usize = 6;

/// Largest accepted number of input points for a body in dimension `d`.
/// Hull cost grows quickly with dimension, so the cap shrinks.
pub fn max_vertices(dim: usize) -> usize {
    match dim {
        0..=2 => 100_000,
        3 => 256,
        _ => 32,
    }
}

/// Largest accepted explicit point list.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("input too large: {0}")]
    Limit(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

/// Reads one rational from any of the accepted JSON forms.
pub fn rational_from_value(v: &Value) -> Result<Rational, IoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| IoError::Invalid(e.to_string())),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| IoError::Invalid(e.to_string())),
        Value::Array(pair) if pair.len() == 2 => {
            let p = integer_from_value(&pair[0])?;
            let q = integer_from_value(&pair[1])?;
            if q.is_zero() {
                return Err(IoError::Invalid("zero denominator".into()));
            }
            Ok(p / q)
        }
        other => Err(IoError::Invalid(format!("expected a number, found {other}"))),
    }
}

fn integer_from_value(v: &Value) -> Result<Rational, IoError> {
    let q = rational_from_value(v)?;
    if q.is_integer() {
        Ok(q)
    } else {
        Err(IoError::Invalid(format!("expected an integer, found {q}")))
    }
}

fn rational_list(v: &Value, what: &str) -> Result<Vec<Rational>, IoError> {
    match v {
        Value::Array(items) => items.iter().map(rational_from_value).collect(),
        _ => Err(IoError::Invalid(format!("{what} must be an array"))),
    }
}

fn point_list(v: &Value, what: &str, dim: Option<usize>, cap: usize) -> Result<Vec<Point>, IoError> {
    let Value::Array(rows) = v else {
        return Err(IoError::Invalid(format!("{what} must be an array of points")));
    };
    if rows.len() > cap {
        return Err(IoError::Limit(format!("{} {what}, at most {cap} allowed", rows.len())));
    }
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let coords = rational_list(row, what)?;
        if let Some(d) = dim {
            if coords.len() != d {
                return Err(GeometryError::DimensionMismatch {
                    expected: d,
                    found: coords.len(),
                }
                .into());
            }
        }
        out.push(Point(coords));
    }
    Ok(out)
}

fn dim_field(obj: &serde_json::Map<String, Value>) -> Result<Option<usize>, IoError> {
    match obj.get("dim") {
        None => Ok(None),
        Some(v) => {
            let d = v
                .as_u64()
                .or_else(|| v.to_string().parse::<u64>().ok())
                .ok_or_else(|| IoError::Invalid("dim must be a positive integer".into()))?;
            if d == 0 {
                return Err(GeometryError::ZeroDimension.into());
            }
            if d > MAX_DIM as u64 {
                return Err(IoError::Limit(format!("dimension {d}, at most {MAX_DIM} allowed")));
            }
            Ok(Some(d as usize))
        }
    }
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a serde_json::Map<String, Value>, IoError> {
    v.as_object()
        .ok_or_else(|| IoError::Invalid(format!("{what} must be a JSON object")))
}

fn check_dim(d: usize) -> Result<(), IoError> {
    if d == 0 {
        return Err(GeometryError::ZeroDimension.into());
    }
    if d > MAX_DIM {
        return Err(IoError::Limit(format!("dimension {d}, at most {MAX_DIM} allowed")));
    }
    Ok(())
}

/// `{"dim": d, "vertices": [[...], ...]}`; the body is the hull of the vertices.
pub fn polytope_from_value(v: &Value) -> Result<Polytope, IoError> {
    let obj = as_object(v, "body")?;
    let dim = dim_field(obj)?;
    let raw = obj
        .get("vertices")
        .ok_or_else(|| IoError::Invalid("body needs a \"vertices\" array".into()))?;
    let first_len = raw
        .as_array()
        .and_then(|rows| rows.first())
        .and_then(Value::as_array)
        .map(Vec::len);
    let d = dim.or(first_len).ok_or(GeometryError::EmptyInput)?;
    check_dim(d)?;
    let points = point_list(raw, "vertices", Some(d), max_vertices(d))?;
    Ok(Polytope::hull(d, &points)?)
}

/// `{"basis": [[...], ...]}`; each inner array is one generator.
pub fn lattice_from_value(v: &Value) -> Result<Lattice, IoError> {
    let obj = as_object(v, "lattice")?;
    let raw = obj
        .get("basis")
        .ok_or_else(|| IoError::Invalid("lattice needs a \"basis\" array".into()))?;
    let d = raw.as_array().map_or(0, Vec::len);
    check_dim(d)?;
    let gens = point_list(raw, "basis vectors", Some(d), MAX_DIM)?;
    Ok(Lattice::from_generators(&gens)?)
}

/// `{"lo": [...], "hi": [...]}`.
pub fn box_from_value(v: &Value) -> Result<AxisBox, IoError> {
    let obj = as_object(v, "window")?;
    let get = |k: &str| {
        obj.get(k)
            .ok_or_else(|| IoError::Invalid(format!("window needs \"{k}\"")))
            .and_then(|x| rational_list(x, k))
    };
    let lo = get("lo")?;
    check_dim(lo.len())?;
    Ok(AxisBox::new(lo, get("hi")?)?)
}

/// `{"dim": d, "points": [[...], ...], "window": {"lo": .., "hi": ..}}`;
/// the window is optional and defaults to the bounding box.
pub fn points_from_value(v: &Value) -> Result<PointSet, IoError> {
    let obj = as_object(v, "point set")?;
    let dim = dim_field(obj)?;
    let raw = obj
        .get("points")
        .ok_or_else(|| IoError::Invalid("point set needs a \"points\" array".into()))?;
    let first_len = raw
        .as_array()
        .and_then(|rows| rows.first())
        .and_then(Value::as_array)
        .map(Vec::len);
    let d = dim.or(first_len).ok_or(GeometryError::EmptyInput)?;
    check_dim(d)?;
    let points = point_list(raw, "points", Some(d), MAX_POINTS)?;
    let window = obj.get("window").map(box_from_value).transpose()?;
    Ok(PointSet::new(d, points, window)?)
}

fn parse_json(text: &str) -> Result<Value, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_polytope(text: &str) -> Result<Polytope, IoError> {
    polytope_from_value(&parse_json(text)?)
}

pub fn parse_lattice(text: &str) -> Result<Lattice, IoError> {
    lattice_from_value(&parse_json(text)?)
}

pub fn parse_points(text: &str) -> Result<PointSet, IoError> {
    points_from_value(&parse_json(text)?)
}

/// A candidate spectrum: a lattice (windowed later) or an explicit point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpectrumInput {
    Lattice(Lattice),
    Points(PointSet),
}

/// Accepts either lattice JSON (has `"basis"`) or point-set JSON (has `"points"`).
pub fn parse_spectrum(text: &str) -> Result<SpectrumInput, IoError> {
    let v = parse_json(text)?;
    let obj = as_object(&v, "spectrum")?;
    if obj.contains_key("basis") {
        Ok(SpectrumInput::Lattice(lattice_from_value(&v)?))
    } else if obj.contains_key("points") {
        Ok(SpectrumInput::Points(points_from_value(&v)?))
    } else {
        Err(IoError::Invalid("spectrum needs \"basis\" or \"points\"".into()))
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// `#[serde(with = ...)]` helpers for rational fields.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = Value::deserialize(d)?;
        rational_from_value(&v).map_err(de::Error::custom)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Value::deserialize(d)?;
        rational_list(&v, "list").map_err(de::Error::custom)
    }
}

pub mod rational_opt {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        match Value::deserialize(d)? {
            Value::Null => Ok(None),
            v => rational_from_value(&v).map(Some).map_err(de::Error::custom),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        rational_vec::deserialize(d).map(Point)
    }
}

impl Serialize for Polytope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Polytope", 2)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("vertices", self.vertices())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Polytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        polytope_from_value(&v).map_err(de::Error::custom)
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Lattice", 1)?;
        st.serialize_field("basis", &self.generators())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Lattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        lattice_from_value(&v).map_err(de::Error::custom)
    }
}

impl Serialize for AxisBox {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AxisBox", 2)?;
        st.serialize_field("lo", &Point(self.lo.clone()))?;
        st.serialize_field("hi", &Point(self.hi.clone()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for AxisBox {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        box_from_value(&v).map_err(de::Error::custom)
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PointSet", 3)?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("window", &self.window)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        points_from_value(&v).map_err(de::Error::custom)
    }
}

/// Parses `"a,b,..."` into rationals.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>, IoError> {
    text.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| IoError::Invalid(e.to_string())))
        .collect()
}

/// `"lo,hi"` (every axis) or `"lo_0,hi_0,...,lo_{d-1},hi_{d-1}"`.
pub fn parse_box(text: &str, dim: usize) -> Result<AxisBox, IoError> {
    check_dim(dim)?;
    let vals = parse_rational_list(text)?;
    let (lo, hi) = match vals.len() {
        2 => (vec![vals[0].clone(); dim], vec![vals[1].clone(); dim]),
        n if n == 2 * dim => (
            vals.iter().step_by(2).cloned().collect(),
            vals.iter().skip(1).step_by(2).cloned().collect(),
        ),
        n => return Err(IoError::Invalid(format!("box needs 2 or {} numbers, got {n}", 2 * dim))),
    };
    Ok(AxisBox::new(lo, hi)?)
}

/// Largest probe count per axis accepted from the command line.
pub const MAX_PROBES_PER_AXIS: usize = 4096;

/// `"lo,hi,n"`: `n` evenly spaced probes per axis on `[lo, hi]ᵈ`.
pub fn parse_probes(text: &str, dim: usize) -> Result<crate::fourier::GridDomain, IoError> {
    check_dim(dim)?;
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(IoError::Invalid("probes need \"lo,hi,count\"".into()));
    }
    let lo = crate::number::to_f64(&parse_rational(parts[0]).map_err(|e| IoError::Invalid(e.to_string()))?);
    let hi = crate::number::to_f64(&parse_rational(parts[1]).map_err(|e| IoError::Invalid(e.to_string()))?);
    let n: usize = parts[2]
        .parse()
        .map_err(|_| IoError::Invalid(format!("bad probe count {:?}", parts[2])))?;
    if n == 0 || n > MAX_PROBES_PER_AXIS {
        return Err(IoError::Limit(format!(
            "probe count {n} outside 1..={MAX_PROBES_PER_AXIS}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi || (n > 1 && lo == hi) {
        return Err(IoError::Invalid("probe range must satisfy lo < hi".into()));
    }
    crate::fourier::GridDomain::cube(dim, lo, hi, n).map_err(|e| IoError::Invalid(e.to_string()))
}

/// Parses `"a,b,..."` into floats, for frequencies.
pub fn parse_f64_list(text: &str) -> Result<Vec<f64>, IoError> {
    let vals = parse_rational_list(text)?;
    let out: Vec<f64> = vals.iter().map(crate::number::to_f64).collect();
    if out.iter().any(|x| !x.is_finite()) {
        return Err(IoError::Invalid("coordinates must be finite".into()));
    }
    Ok(out)
}

impl fmt::Display for SpectrumInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumInput::Lattice(l) => write!(f, "lattice of dimension {}", l.dim()),
            SpectrumInput::Points(p) => write!(f, "{} points in dimension {}", p.len(), p.dim),
        }
    }
}
