//! Report rendering and the published JSON Schema.

use serde_json::{json, Value};

use crate::runner::{Report, SCHEMA_VERSION};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.json).expect("report is plain JSON");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Human-readable summary: one block per check, plus declaration errors.
pub fn to_text(report: &Report) -> String {
    let j = &report.json;
    let mut out = format!(
        "{} {} (seed {})\n",
        scalar(&j["tool"]["name"]),
        scalar(&j["tool"]["version"]),
        j["seed"]
    );
    for d in j["declarations"].as_array().into_iter().flatten() {
        if d["status"] == "error" {
            out.push_str(&format!(
                "line {}: {} {}: error: {}\n",
                d["line"],
                scalar(&d["kind"]),
                scalar(&d["name"]),
                scalar(&d["error"])
            ));
        }
    }
    for c in j["commands"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "line {}: {} [{}]\n",
            c["line"],
            scalar(&c["source"]),
            scalar(&c["status"])
        ));
        if let Some(v) = c.get("verdict").filter(|v| !v.is_null()) {
            out.push_str(&format!("  verdict: {}\n", scalar(v)));
        }
        if let Some(result) = c.get("result").and_then(Value::as_object) {
            for (k, v) in result {
                if !v.is_array() && !v.is_object() && !v.is_null() {
                    out.push_str(&format!("  {k}: {}\n", scalar(v)));
                }
            }
        }
        for e in c["expectations"].as_array().into_iter().flatten() {
            let met = if e["met"] == true { "met" } else { "NOT met" };
            out.push_str(&format!("  expect {}: {met}\n", scalar(&e["clause"])));
        }
        if let Some(e) = c.get("error") {
            out.push_str(&format!("  error: {}\n", scalar(e)));
        }
    }
    let s = &j["summary"];
    out.push_str(&format!(
        "summary: {} met, {} failed, {} errors, {} skipped (exit {})\n",
        s["met"], s["failed"], s["errors"], s["skipped"], report.exit_code
    ));
    out
}

/// JSON Schema (draft 2020-12) of the run report.
pub fn report_schema() -> Value {
    let count = json!({"type": "integer", "minimum": 0});
    let elapsed = json!({"type": "number", "minimum": 0});
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "$id": format!("https://stdlab.invalid/schema/report-v{SCHEMA_VERSION}.json"),
        "title": "stdlab run report",
        "type": "object",
        "additionalProperties": false,
        "required": [
            "schema_version", "tool", "seed", "settings", "instance",
            "declarations", "commands", "summary", "exit_code"
        ],
        "properties": {
            "schema_version": {"const": SCHEMA_VERSION},
            "tool": {
                "type": "object",
                "additionalProperties": false,
                "required": ["name", "version"],
                "properties": {
                    "name": {"type": "string"},
                    "version": {"type": "string"}
                }
            },
            "seed": count,
            "settings": {
                "type": "object",
                "additionalProperties": false,
                "required": ["field", "degree_bound", "reduction_bound", "fail_fast"],
                "properties": {
                    "field": {"type": "string", "pattern": "^(F[0-9]+|QQ)$"},
                    "degree_bound": count,
                    "reduction_bound": count,
                    "fail_fast": {"type": "boolean"}
                }
            },
            "instance": {"type": "string"},
            "declarations": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": false,
                    "required": ["line", "name", "kind", "status"],
                    "properties": {
                        "line": count,
                        "name": {"type": "string"},
                        "kind": {"enum": ["field", "ring", "ideal", "filtration", "semigroup", "algebra"]},
                        "field": {"type": "string"},
                        "status": {"enum": ["ok", "error"]},
                        "error": {"type": "string"},
                        "elapsed_ms": elapsed
                    }
                }
            },
            "commands": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": false,
                    "required": ["line", "command", "source", "status"],
                    "properties": {
                        "line": count,
                        "command": {"type": "string"},
                        "source": {"type": "string"},
                        "status": {"enum": ["met", "failed", "error", "skipped"]},
                        "verdict": {"type": ["string", "null"]},
                        "result": {"type": "object"},
                        "expectations": {
                            "type": "array",
                            "items": {
                                "type": "object",
                                "additionalProperties": false,
                                "required": ["clause", "met"],
                                "properties": {
                                    "clause": {"type": "string"},
                                    "met": {"type": "boolean"}
                                }
                            }
                        },
                        "error": {"type": "string"},
                        "elapsed_ms": elapsed
                    }
                }
            },
            "summary": {
                "type": "object",
                "additionalProperties": false,
                "required": ["commands", "met", "failed", "errors", "skipped"],
                "properties": {
                    "commands": count,
                    "met": count,
                    "failed": count,
                    "errors": count,
                    "skipped": count
                }
            },
            "exit_code": {"enum": [0, 1, 2]},
            "timing": {
                "type": "object",
                "additionalProperties": false,
                "required": ["total_ms"],
                "properties": {"total_ms": elapsed}
            }
        }
    })
}
