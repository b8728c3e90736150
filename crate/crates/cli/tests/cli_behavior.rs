//! End-to-end checks of the binary: exit codes, report schema
//! conformance, and byte-level determinism of the JSON output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root exists")
}

fn run(args: &[&str]) -> (i32, String) {
    let Output { status, stdout, .. } = Command::new(env!("CARGO_BIN_EXE_k3fibre"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("binary runs");
    (
        status.code().expect("binary exits normally"),
        String::from_utf8(stdout).expect("output is UTF-8"),
    )
}

/// Just enough of JSON Schema to check the published report schema:
/// `type`, `properties`, `required`, `additionalProperties: false`,
/// `items`, `enum`, `anyOf` and local `$ref`.
fn validate(schema: &Value, root: &Value, instance: &Value, path: &str) -> Result<(), String> {
    if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let name = reference
            .strip_prefix("#/definitions/")
            .ok_or_else(|| format!("{}: unsupported $ref {}", path, reference))?;
        let target = root
            .get("definitions")
            .and_then(|d| d.get(name))
            .ok_or_else(|| format!("{}: missing definition {}", path, name))?;
        return validate(target, root, instance, path);
    }
    if let Some(options) = schema.get("anyOf").and_then(Value::as_array) {
        for option in options {
            if validate(option, root, instance, path).is_ok() {
                return Ok(());
            }
        }
        return Err(format!("{}: matches no anyOf branch", path));
    }
    if let Some(allowed) = schema.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            return Err(format!("{}: {} is not in the enum", path, instance));
        }
    }
    if let Some(kind) = schema.get("type") {
        let names: Vec<&str> = match kind {
            Value::String(name) => vec![name.as_str()],
            Value::Array(names) => names.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{}: bad type keyword", path)),
        };
        let matches = names.iter().any(|name| match *name {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "integer" => instance.is_i64() || instance.is_u64(),
            "number" => instance.is_number(),
            "boolean" => instance.is_boolean(),
            "null" => instance.is_null(),
            _ => false,
        });
        if !matches {
            return Err(format!("{}: expected {}, got {}", path, names.join("|"), instance));
        }
    }
    if let Some(map) = instance.as_object() {
        let properties = schema.get("properties").and_then(Value::as_object);
        if let Some(required) = schema.get("required").and_then(Value::as_array) {
            for name in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(name) {
                    return Err(format!("{}: missing required field {}", path, name));
                }
            }
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            if let Some(properties) = properties {
                for key in map.keys() {
                    if !properties.contains_key(key) {
                        return Err(format!("{}: unexpected field {}", path, key));
                    }
                }
            }
        }
        if let Some(properties) = properties {
            for (key, value) in map {
                if let Some(subschema) = properties.get(key) {
                    validate(subschema, root, value, &format!("{}.{}", path, key))?;
                }
            }
        }
    }
    if let (Some(items), Some(list)) = (schema.get("items"), instance.as_array()) {
        for (index, value) in list.iter().enumerate() {
            validate(items, root, value, &format!("{}[{}]", path, index))?;
        }
    }
    Ok(())
}

fn assert_valid_report(text: &str) -> Value {
    let schema_text =
        std::fs::read_to_string(repo_root().join("schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&schema_text).unwrap();
    let report: Value = serde_json::from_str(text).expect("stdout is a JSON report");
    validate(&schema, &schema, &report, "$").unwrap();
    assert_eq!(report["schemaVersion"], Value::from(1));
    report
}

#[test]
fn classify_exit_codes_follow_the_result() {
    let (code, out) = run(&["classify", "--model", "hyperelliptic", "--f6",
        "(x1^3+x2^3+x3^3)^2"]);
    assert_eq!(code, 0);
    assert!(out.contains("II.3"), "{}", out);

    let (code, out) = run(&["classify", "--model", "unigonal", "--f2", "x1*x2",
        "--f6", "x3^6 + y^3", "--json"]);
    assert_eq!(code, 0);
    let report = assert_valid_report(&out);
    assert_eq!(report["classification"]["row"], Value::from("II.4"));

    // A spurious double component leaves the input outside the tables.
    let (code, out) = run(&["classify", "--model", "hyperelliptic", "--f6",
        "x1^3*x2^3", "--json"]);
    assert_eq!(code, 1);
    let report = assert_valid_report(&out);
    assert_eq!(report["classification"]["row"], Value::from("Unclassified"));

    let (code, _) = run(&["classify", "--model", "hyperelliptic", "--f6", "x1^4*x2^2"]);
    assert_eq!(code, 2);

    let (code, _) = run(&["classify", "--model", "hyperelliptic", "--f6", "x1 x2"]);
    assert_eq!(code, 2);

    let (code, _) = run(&["classify", "--model", "unigonal", "--f6", "y^3"]);
    assert_eq!(code, 2);
}

#[test]
fn germ_reports_and_validates() {
    let (code, out) = run(&["germ", "--f", "y^2 - x^3", "--at", "0,0", "--json"]);
    assert_eq!(code, 0);
    let report = assert_valid_report(&out);
    assert_eq!(report["germ"]["class"], Value::from("A2"));
    assert_eq!(report["germ"]["milnor"], Value::from(2));

    let (code, out) = run(&["germ", "--f", "y^2 - x^3", "--at", "2,1", "--json"]);
    assert_eq!(code, 2);
    let report = assert_valid_report(&out);
    assert!(report["errors"][0]
        .as_str()
        .unwrap()
        .contains("does not lie on the curve"));

    let (code, _) = run(&["germ", "--f", "y^2 - x^3", "--at", "0,0,0"]);
    assert_eq!(code, 2);
}

#[test]
fn kulikov_check_exit_codes_follow_the_verdict() {
    let (code, out) = run(&["kulikov", "check", "kulikov/tetrahedron.json", "--json"]);
    assert_eq!(code, 0);
    let report = assert_valid_report(&out);
    assert_eq!(report["kulikov"]["valid"], Value::Bool(true));
    assert_eq!(report["kulikov"]["starCurves"].as_array().unwrap().len(), 6);

    let (code, out) = run(&[
        "kulikov",
        "check",
        "kulikov/violations/v04-total-degree.json",
        "--json",
    ]);
    assert_eq!(code, 1);
    let report = assert_valid_report(&out);
    assert_eq!(report["kulikov"]["valid"], Value::Bool(false));
    assert_eq!(
        report["kulikov"]["violations"][0]["kind"],
        Value::from("totalDegree")
    );

    let bad = std::env::temp_dir().join("k3fibre-bad-config.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, out) = run(&["kulikov", "check", bad.to_str().unwrap(), "--json"]);
    assert_eq!(code, 2);
    assert_valid_report(&out);

    let (code, _) = run(&["kulikov", "check", "kulikov/no-such-file.json"]);
    assert_eq!(code, 2);
}

#[test]
fn corpus_run_covers_every_row() {
    let (code, out) = run(&["corpus", "run", "--json"]);
    assert_eq!(code, 0);
    let report = assert_valid_report(&out);
    assert_eq!(report["corpus"]["passed"], Value::Bool(true));
    assert_eq!(report["corpus"]["rowsCovered"].as_array().unwrap().len(), 14);

    let (code, out) = run(&["corpus", "run", "--filter", "III.4", "--json"]);
    assert_eq!(code, 0);
    let report = assert_valid_report(&out);
    let entries = report["corpus"]["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for entry in entries {
        assert_eq!(entry["expected"], Value::from("III.4"));
    }

    let empty = std::env::temp_dir().join("k3fibre-empty-corpus");
    std::fs::create_dir_all(&empty).unwrap();
    let (code, _) = run(&["corpus", "run", "--dir", empty.to_str().unwrap()]);
    assert_eq!(code, 2);
}

#[test]
fn equal_seeds_give_byte_identical_json() {
    for args in [
        vec!["classify", "--model", "hyperelliptic", "--f6",
            "x1^2*(x2^4 + x3^4)", "--json", "--seed", "7"],
        vec!["germ", "--f", "x*y*(x - y)", "--at", "0,0", "--json", "--seed", "7"],
        vec!["kulikov", "check", "kulikov/chain.json", "--json", "--seed", "7"],
        vec!["corpus", "run", "--filter", "II.2", "--json", "--seed", "7"],
    ] {
        let (first_code, first) = run(&args);
        let (second_code, second) = run(&args);
        assert_eq!(first_code, second_code);
        assert_eq!(first, second, "output differs for {:?}", args);
        let report: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(report["seed"], Value::from(7));
        assert_eq!(report["timingMs"], Value::Null);
    }
}
