//! Report documents and their two renderings.
//!
//! The JSON rendering is deterministic: object keys are sorted, arrays keep
//! the order of the computation, and field elements are printed in the input
//! grammar.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use projrigid::cohomology::Cochain1;
use projrigid::{FieldElement, Matrix};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub input_sha256: Option<String>,
    pub result: Value,
    /// Human-readable rendering of `result`.
    pub text: String,
}

impl Report {
    pub fn document(&self) -> Value {
        json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "result": self.result,
            "tool_version": TOOL_VERSION,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.document()).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "projrigid {} {}", TOOL_VERSION, self.command).unwrap();
        if let Some(h) = &self.input_sha256 {
            writeln!(s, "input sha256 {h}").unwrap();
        }
        s.push_str(&self.text);
        if !s.ends_with('\n') {
            s.push('\n');
        }
        s
    }
}

pub fn element(e: &FieldElement) -> Value {
    Value::String(e.to_string())
}

pub fn vector(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(element).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

/// A cochain in the same shape as the cochain input files.
pub fn cochain(z: &Cochain1, generators: &[String]) -> Value {
    let values: BTreeMap<&str, Value> =
        generators.iter().map(String::as_str).zip(z.values().iter().map(matrix)).collect();
    json!({ "module": z.kind().name(), "values": values })
}

/// Matrix with right-aligned columns, one row per line, indented.
pub fn matrix_text(m: &Matrix, indent: usize) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect();
    let widths: Vec<usize> =
        (0..m.cols()).map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0)).collect();
    let mut s = String::new();
    for row in &cells {
        s.push_str(&" ".repeat(indent));
        s.push('[');
        let padded: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        s.push_str(&padded.join("  "));
        s.push_str("]\n");
    }
    s
}

pub fn vector_text(v: &[FieldElement]) -> String {
    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}
