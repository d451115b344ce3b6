//! A small JSON Schema checker covering the keywords used by
//! `schema/report.schema.json`: `$ref` (local), `type`, `const`, `enum`,
//! `required`, `properties`, `additionalProperties: false`, `items`,
//! `oneOf`, `minimum` and `pattern`.

use regex::Regex;
use serde_json::Value;

pub fn load_report_schema() -> Value {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Returns the first violation found, as a JSON pointer and a message.
pub fn validate(schema: &Value, doc: &Value) -> Result<(), String> {
    check(schema, schema, doc, "")
}

fn resolve<'a>(root: &'a Value, reference: &str) -> &'a Value {
    let pointer = reference.strip_prefix('#').expect("local references only");
    root.pointer(pointer).unwrap_or_else(|| panic!("dangling reference {reference}"))
}

fn type_matches(name: &str, v: &Value) -> bool {
    match name {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "integer" => v.is_i64() || v.is_u64(),
        "number" => v.is_number(),
        other => panic!("unsupported type {other}"),
    }
}

fn check(root: &Value, schema: &Value, v: &Value, at: &str) -> Result<(), String> {
    let obj = schema.as_object().expect("schema nodes are objects");
    if let Some(r) = obj.get("$ref") {
        check(root, resolve(root, r.as_str().unwrap()), v, at)?;
    }
    if let Some(t) = obj.get("type") {
        let ok = match t {
            Value::String(s) => type_matches(s, v),
            Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
            _ => panic!("bad type keyword"),
        };
        if !ok {
            return Err(format!("{at}: expected type {t}, found {v}"));
        }
    }
    if let Some(c) = obj.get("const") {
        if c != v {
            return Err(format!("{at}: expected {c}, found {v}"));
        }
    }
    if let Some(Value::Array(options)) = obj.get("enum") {
        if !options.contains(v) {
            return Err(format!("{at}: {v} not among {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (obj.get("minimum"), v.as_f64()) {
        if x < min.as_f64().unwrap() {
            return Err(format!("{at}: {x} below minimum {min}"));
        }
    }
    if let (Some(p), Some(s)) = (obj.get("pattern"), v.as_str()) {
        if !Regex::new(p.as_str().unwrap()).unwrap().is_match(s) {
            return Err(format!("{at}: `{s}` does not match {p}"));
        }
    }
    if let Some(map) = v.as_object() {
        if let Some(Value::Array(req)) = obj.get("required") {
            for key in req {
                let key = key.as_str().unwrap();
                if !map.contains_key(key) {
                    return Err(format!("{at}: missing required `{key}`"));
                }
            }
        }
        let props = obj.get("properties").and_then(Value::as_object);
        for (key, child) in map {
            match props.and_then(|p| p.get(key)) {
                Some(s) => check(root, s, child, &format!("{at}/{key}"))?,
                None if obj.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("{at}: unexpected property `{key}`"));
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (obj.get("items"), v.as_array()) {
        for (i, child) in arr.iter().enumerate() {
            check(root, items, child, &format!("{at}/{i}"))?;
        }
    }
    if let Some(Value::Array(options)) = obj.get("oneOf") {
        let passing = options.iter().filter(|s| check(root, s, v, at).is_ok()).count();
        if passing != 1 {
            return Err(format!("{at}: {passing} of {} alternatives match", options.len()));
        }
    }
    Ok(())
}
