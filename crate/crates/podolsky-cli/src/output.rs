//! Deterministic rendering: every float the binary emits goes through one
//! 12-significant-digit scientific formatter, and JSON numbers are built
//! from those exact strings (serde_json's arbitrary-precision mode keeps
//! every digit; it re-encodes nonnegative exponents with an explicit sign,
//! so `e5` becomes `e+5`). Identical inputs therefore produce
//! byte-identical output, which the integration tests pin.

use serde_json::{json, Value};

pub fn fmt_sci(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn num(v: f64) -> Value {
    Value::Number(
        fmt_sci(v)
            .parse()
            .expect("12-digit scientific notation is valid JSON"),
    )
}

/// The single report envelope every `--json` invocation prints.
pub fn report(command: &str, config: Value, results: Value) -> Value {
    json!({
        "command": command,
        "config": config,
        "results": results,
        "provenance": {
            "constants_version": podolsky::constants::CONSTANTS_VERSION,
        },
    })
}

pub fn emit_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).unwrap());
}
