//! JSON array files: `{"elements": [{"x", "y", "z", "amplitude", "phase_deg"}, ...]}`.
//!
//! Positions are in wavelengths and phases in degrees.

use std::fs;
use std::path::Path;

use arraydir_core::{AntennaArray, ArrayElement};
use serde_json::{json, Map, Value};

use crate::error::{AppError, AppResult};

const FIELDS: [&str; 5] = ["x", "y", "z", "amplitude", "phase_deg"];

pub fn load_array(path: &Path) -> AppResult<AntennaArray> {
    let text = fs::read_to_string(path).map_err(|source| AppError::Input { path: path.into(), source })?;
    let value: Value =
        serde_json::from_str(&text).map_err(|source| AppError::Json { path: path.into(), source })?;
    parse_array(&value)
}

pub fn parse_array(doc: &Value) -> AppResult<AntennaArray> {
    let list = doc
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| AppError::Format("missing \"elements\" array".into()))?;
    let mut elements = Vec::with_capacity(list.len());
    for (idx, item) in list.iter().enumerate() {
        let n = idx + 1;
        let obj = item.as_object().ok_or_else(|| AppError::Format(format!("element {n} is not an object")))?;
        let mut vals = [0.0; 5];
        for (slot, key) in vals.iter_mut().zip(FIELDS) {
            *slot = field(obj, key).map_err(|what| AppError::Format(format!("element {n}: {what}")))?;
        }
        elements.push(ArrayElement::with_phase_deg(vals[0], vals[1], vals[2], vals[3], vals[4]));
    }
    AntennaArray::new(elements).map_err(|e| AppError::Format(e.to_string()))
}

fn field(obj: &Map<String, Value>, key: &str) -> Result<f64, String> {
    match obj.get(key) {
        None => Err(format!("missing \"{key}\"")),
        Some(v) => v.as_f64().ok_or_else(|| format!("\"{key}\" is not a number")),
    }
}

pub fn array_to_json(array: &AntennaArray) -> Value {
    let elements: Vec<Value> = array
        .elements()
        .iter()
        .map(|e| json!({"x": e.x, "y": e.y, "z": e.z, "amplitude": e.amplitude, "phase_deg": e.phase.to_degrees()}))
        .collect();
    json!({ "elements": elements })
}

pub fn save_array(path: &Path, array: &AntennaArray) -> AppResult<()> {
    let mut text = serde_json::to_string_pretty(&array_to_json(array)).expect("plain numbers serialize");
    text.push('\n');
    fs::write(path, text).map_err(|source| AppError::Io { path: path.into(), source })
}
