//! Minimal JSON Schema (draft-07 subset) validator covering exactly the
//! features the shipped schemas use: `type` (including union types),
//! `properties`, `required`, `additionalProperties`, `items`, `enum`,
//! `pattern`, `minimum`, and `minItems`.

use regex::Regex;
use serde_json::Value;

pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$")
}

fn type_matches(t: &str, value: &Value) -> bool {
    match t {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

fn validate_at(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let obj = schema
        .as_object()
        .ok_or_else(|| format!("{path}: schema is not an object"))?;
    if let Some(t) = obj.get("type") {
        let allowed: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(|x| x.as_str()).collect(),
            _ => return Err(format!("{path}: bad type clause")),
        };
        if !allowed.iter().any(|t| type_matches(t, value)) {
            return Err(format!("{path}: expected type {allowed:?}"));
        }
    }
    if let Some(options) = obj.get("enum").and_then(|e| e.as_array()) {
        if !options.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
    }
    if let Some(pattern) = obj.get("pattern").and_then(|p| p.as_str()) {
        if let Some(s) = value.as_str() {
            let re = Regex::new(pattern).map_err(|e| format!("{path}: bad pattern: {e}"))?;
            if !re.is_match(s) {
                return Err(format!("{path}: {s:?} does not match {pattern:?}"));
            }
        }
    }
    if let Some(min) = obj.get("minimum").and_then(|m| m.as_i64()) {
        if let Some(n) = value.as_i64() {
            if n < min {
                return Err(format!("{path}: {n} below minimum {min}"));
            }
        }
    }
    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(|r| r.as_array()) {
            for key in required.iter().filter_map(|k| k.as_str()) {
                if !map.contains_key(key) {
                    return Err(format!("{path}: missing required key {key:?}"));
                }
            }
        }
        let props = obj.get("properties").and_then(|p| p.as_object());
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for key in map.keys() {
                if props.map(|p| !p.contains_key(key)).unwrap_or(true) {
                    return Err(format!("{path}: unexpected key {key:?}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(v) = map.get(key) {
                    validate_at(sub, v, &format!("{path}.{key}"))?;
                }
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min) = obj.get("minItems").and_then(|m| m.as_u64()) {
            if (arr.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(items) = obj.get("items") {
            for (i, v) in arr.iter().enumerate() {
                validate_at(items, v, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}
