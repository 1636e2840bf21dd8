//! JSON schemas for the file formats the CLI reads and writes.
//!
//! Scalars may appear as JSON numbers, decimal strings, or exact "p/q"
//! strings. Exact values are emitted as "p/q" strings (integers bare),
//! floats as JSON numbers; emitted files re-parse to equal values.
//!
//! Schemas:
//!   Polytope        {"dim": n, "vertices": [[q, ...], ...]}
//!   HalfspaceSystem {"dim": n, "halfspaces": [{"normal": [...], "bound": q}, ...]}
//!   SurfaceMeasure  {"dim": n, "atoms": [{"normal": [...], "weight": q}, ...]}
//!   SupportSample   {"dim": n, "directions": [[...], ...], "values": [...]}

use serde_json::{json, Map, Value};

use crate::alexandrov::Decomposition;
use crate::error::{GeomError, Result};
use crate::geom::{HalfspaceSystem, Polytope, Vector};
use crate::measures::{SupportSample, SurfaceMeasure};
use crate::scalar::Scalar;
use crate::solver::SolveDiagnostics;

fn parse_scalar<S: Scalar>(v: &Value) -> Result<S> {
    match v {
        Value::Number(x) => x
            .as_f64()
            .map(S::from_f64)
            .ok_or_else(|| GeomError::SchemaError(format!("non-finite number {x}"))),
        Value::String(s) => {
            S::parse_text(s).ok_or_else(|| GeomError::SchemaError(format!("bad scalar '{s}'")))
        }
        other => Err(GeomError::SchemaError(format!("expected scalar, got {other}"))),
    }
}

fn scalar_value<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.format_text())
    } else {
        json!(x.to_f64())
    }
}

fn parse_vector<S: Scalar>(v: &Value, dim: usize, what: &str) -> Result<Vector<S>> {
    let arr = v
        .as_array()
        .ok_or_else(|| GeomError::SchemaError(format!("{what} must be an array")))?;
    if arr.len() != dim {
        return Err(GeomError::SchemaError(format!(
            "{what} has {} coordinates, expected {dim}",
            arr.len()
        )));
    }
    arr.iter().map(parse_scalar).collect()
}

fn vector_value<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(scalar_value).collect())
}

fn get_dim(obj: &Map<String, Value>) -> Result<usize> {
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| GeomError::SchemaError("missing integer field 'dim'".into()))?;
    if dim < 1 {
        return Err(GeomError::SchemaError("dim must be at least 1".into()));
    }
    Ok(dim as usize)
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| GeomError::SchemaError("expected a JSON object".into()))
}

pub fn polytope_from_json<S: Scalar>(v: &Value) -> Result<Polytope<S>> {
    let obj = as_object(v)?;
    let dim = get_dim(obj)?;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::SchemaError("missing array field 'vertices'".into()))?;
    if verts.is_empty() {
        return Err(GeomError::SchemaError("vertex list is empty".into()));
    }
    let points: Result<Vec<Vector<S>>> =
        verts.iter().map(|p| parse_vector(p, dim, "vertex")).collect();
    Ok(Polytope::from_vertices(points?))
}

pub fn polytope_to_json<S: Scalar>(p: &Polytope<S>) -> Value {
    json!({
        "dim": p.dim(),
        "vertices": Value::Array(p.vertices().iter().map(|v| vector_value(v)).collect()),
    })
}

pub fn halfspaces_from_json<S: Scalar>(v: &Value) -> Result<HalfspaceSystem<S>> {
    let obj = as_object(v)?;
    let dim = get_dim(obj)?;
    let list = obj
        .get("halfspaces")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::SchemaError("missing array field 'halfspaces'".into()))?;
    let mut constraints = Vec::with_capacity(list.len());
    for h in list {
        let ho = as_object(h)?;
        let normal = parse_vector(
            ho.get("normal")
                .ok_or_else(|| GeomError::SchemaError("halfspace missing 'normal'".into()))?,
            dim,
            "normal",
        )?;
        let bound = parse_scalar(
            ho.get("bound")
                .ok_or_else(|| GeomError::SchemaError("halfspace missing 'bound'".into()))?,
        )?;
        constraints.push((normal, bound));
    }
    Ok(HalfspaceSystem::new(dim, constraints))
}

pub fn measure_from_json<S: Scalar>(v: &Value) -> Result<SurfaceMeasure<S>> {
    let obj = as_object(v)?;
    let dim = get_dim(obj)?;
    let list = obj
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::SchemaError("missing array field 'atoms'".into()))?;
    let mut pairs = Vec::with_capacity(list.len());
    for a in list {
        let ao = as_object(a)?;
        let normal: Vector<S> = parse_vector(
            ao.get("normal")
                .ok_or_else(|| GeomError::SchemaError("atom missing 'normal'".into()))?,
            dim,
            "normal",
        )?;
        let weight: S = parse_scalar(
            ao.get("weight")
                .ok_or_else(|| GeomError::SchemaError("atom missing 'weight'".into()))?,
        )?;
        if weight <= S::zero() {
            return Err(GeomError::InvariantViolation("atom weight must be positive".into()));
        }
        if normal.iter().all(|x| x.is_zero()) {
            return Err(GeomError::InvariantViolation("atom normal must be nonzero".into()));
        }
        pairs.push((normal, weight));
    }
    Ok(SurfaceMeasure::from_weighted_normals(dim, &pairs).merged())
}

pub fn measure_to_json<S: Scalar>(m: &SurfaceMeasure<S>) -> Value {
    let atoms: Vec<Value> = m
        .unit_normals_f64()
        .iter()
        .zip(m.weights_f64())
        .map(|(u, w)| json!({ "normal": u, "weight": w }))
        .collect();
    json!({ "dim": m.dim, "atoms": atoms })
}

pub fn sample_from_json<S: Scalar>(v: &Value) -> Result<SupportSample<S>> {
    let obj = as_object(v)?;
    let dim = get_dim(obj)?;
    let dirs = obj
        .get("directions")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::SchemaError("missing array field 'directions'".into()))?;
    let vals = obj
        .get("values")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::SchemaError("missing array field 'values'".into()))?;
    let directions: Result<Vec<Vector<S>>> =
        dirs.iter().map(|d| parse_vector(d, dim, "direction")).collect();
    let values: Result<Vec<S>> = vals.iter().map(parse_scalar).collect();
    SupportSample::new(dim, directions?, values?)
}

pub fn sample_to_json<S: Scalar>(f: &SupportSample<S>) -> Value {
    json!({
        "dim": f.dim,
        "directions": Value::Array(f.directions.iter().map(|d| vector_value(d)).collect()),
        "values": Value::Array(f.values.iter().map(scalar_value).collect()),
    })
}

pub fn diagnostics_to_json(d: &SolveDiagnostics) -> Value {
    json!({
        "iterations": d.iterations,
        "max_relative_area_error": d.max_relative_area_error,
        "centroid_defect": d.centroid_defect,
    })
}

pub fn decomposition_to_json<S: Scalar>(d: &Decomposition<S>) -> Value {
    json!({
        "body": polytope_to_json(&d.body),
        "positive_part": sample_to_json(&d.positive_part),
        "negative_part": sample_to_json(&d.negative_part),
        "orthogonality_defect": d.orthogonality_defect.to_f64(),
    })
}
