//! Input file loading: cubical complexes, explicit ball lists, cube specs.

use moebius4::cubical::CubicalComplex2;
use moebius4::inversive::{PointOrInfinity, Sphere};
use moebius4::plinv::CubeInversion;
use moebius4::rat::{parse_rat, Rat, Vec4};
use serde_json::Value;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: JSON parse error at line {line}, column {column}: {message}")]
    Json {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {reason}")]
    Shape { path: String, reason: String },
    #[error("{path}: invalid complex")]
    Complex {
        path: String,
        source: moebius4::cubical::ComplexJsonError,
    },
    #[error("{path}: ball {index}: {reason}")]
    Ball {
        path: String,
        index: usize,
        reason: String,
    },
    #[error("invalid probe {input:?}: expected \"inf\" or four comma-separated rationals")]
    Probe { input: String },
}

/// Either a cubical complex (squares schema) or an explicit sphere family.
pub enum LoadedInput {
    Complex(CubicalComplex2),
    Balls(Vec<Sphere>),
}

fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_value(path: &Path, text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Json {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// A rational from a JSON value: an integer or a `"p/q"` string. Floats are
/// rejected; they would silently lose exactness.
fn rat_from_value(v: &Value, what: &str) -> Result<Rat, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(moebius4::rat::rat_int)
            .ok_or_else(|| format!("{what}: number {n} is not an exact integer; use \"p/q\"")),
        Value::String(s) => parse_rat(s).map_err(|e| format!("{what}: {e}")),
        other => Err(format!("{what}: expected integer or \"p/q\" string, got {other}")),
    }
}

fn vec4_from_value(v: &Value, what: &str) -> Result<Vec4, String> {
    let arr = v
        .as_array()
        .ok_or_else(|| format!("{what}: expected an array of 4 coordinates"))?;
    if arr.len() != 4 {
        return Err(format!("{what}: expected 4 coordinates, got {}", arr.len()));
    }
    Ok([
        rat_from_value(&arr[0], what)?,
        rat_from_value(&arr[1], what)?,
        rat_from_value(&arr[2], what)?,
        rat_from_value(&arr[3], what)?,
    ])
}

/// Load a complex (bare square array, or object with `squares`) or a ball
/// list (object with `balls`).
pub fn load_input(path: &Path) -> Result<LoadedInput, InputError> {
    let text = read_file(path)?;
    let value = parse_value(path, &text)?;
    let path_str = path.display().to_string();
    match &value {
        Value::Array(_) => CubicalComplex2::from_json_str(&text)
            .map(LoadedInput::Complex)
            .map_err(|source| InputError::Complex {
                path: path_str,
                source,
            }),
        Value::Object(map) => {
            if map.contains_key("squares") {
                CubicalComplex2::from_json_str(&text)
                    .map(LoadedInput::Complex)
                    .map_err(|source| InputError::Complex {
                        path: path_str,
                        source,
                    })
            } else if let Some(balls) = map.get("balls") {
                let arr = balls.as_array().ok_or_else(|| InputError::Shape {
                    path: path_str.clone(),
                    reason: "\"balls\" must be an array".to_string(),
                })?;
                let mut spheres = Vec::with_capacity(arr.len());
                for (index, b) in arr.iter().enumerate() {
                    let center = b
                        .get("center")
                        .ok_or_else(|| "missing \"center\"".to_string())
                        .and_then(|c| vec4_from_value(c, "center"))
                        .map_err(|reason| InputError::Ball {
                            path: path_str.clone(),
                            index,
                            reason,
                        })?;
                    let radius_sq = b
                        .get("radius_sq")
                        .ok_or_else(|| "missing \"radius_sq\"".to_string())
                        .and_then(|r| rat_from_value(r, "radius_sq"))
                        .map_err(|reason| InputError::Ball {
                            path: path_str.clone(),
                            index,
                            reason,
                        })?;
                    let sphere =
                        Sphere::new(center, radius_sq).map_err(|e| InputError::Ball {
                            path: path_str.clone(),
                            index,
                            reason: e.to_string(),
                        })?;
                    spheres.push(sphere);
                }
                Ok(LoadedInput::Balls(spheres))
            } else {
                Err(InputError::Shape {
                    path: path_str,
                    reason: "object must contain \"squares\" or \"balls\"".to_string(),
                })
            }
        }
        other => Err(InputError::Shape {
            path: path_str,
            reason: format!("expected array or object, got {other}"),
        }),
    }
}

/// Load a cube spec: `{"center":[...], "half_width":"p/q"}`.
pub fn load_cube(path: &Path) -> Result<CubeInversion, InputError> {
    let text = read_file(path)?;
    let value = parse_value(path, &text)?;
    let path_str = path.display().to_string();
    let obj = value.as_object().ok_or_else(|| InputError::Shape {
        path: path_str.clone(),
        reason: "expected an object with \"center\" and \"half_width\"".to_string(),
    })?;
    let shape_err = |reason: String| InputError::Shape {
        path: path_str.clone(),
        reason,
    };
    let center = obj
        .get("center")
        .ok_or_else(|| "missing \"center\"".to_string())
        .and_then(|c| vec4_from_value(c, "center"))
        .map_err(shape_err)?;
    let half_width = obj
        .get("half_width")
        .ok_or_else(|| "missing \"half_width\"".to_string())
        .and_then(|h| rat_from_value(h, "half_width"))
        .map_err(|reason| InputError::Shape {
            path: path_str.clone(),
            reason,
        })?;
    CubeInversion::new(center, half_width).map_err(|e| InputError::Shape {
        path: path_str,
        reason: e.to_string(),
    })
}

/// `"inf"` or four comma-separated rationals, e.g. `"5,5,5,5"` or `"1/2,0,0,0"`.
pub fn parse_probe(s: &str) -> Result<PointOrInfinity, InputError> {
    if s.trim() == "inf" {
        return Ok(PointOrInfinity::Infinity);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(InputError::Probe {
            input: s.to_string(),
        });
    }
    let mut coords = Vec::with_capacity(4);
    for p in parts {
        coords.push(parse_rat(p.trim()).map_err(|_| InputError::Probe {
            input: s.to_string(),
        })?);
    }
    Ok(PointOrInfinity::Finite([
        coords[0].clone(),
        coords[1].clone(),
        coords[2].clone(),
        coords[3].clone(),
    ]))
}
