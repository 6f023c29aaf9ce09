use std::path::Path;

use serde_json::Value;

use crate::config::RunConfig;

/// Write the machine-readable document when an output path is configured:
/// JSON normally, CSV of the counts table with --csv.
pub fn emit(cfg: &RunConfig, doc: &Value) -> Result<(), String> {
    let Some(path) = &cfg.out else { return Ok(()) };
    let body = if cfg.csv {
        to_csv(doc)
    } else {
        let mut s = serde_json::to_string_pretty(doc).map_err(|e| e.to_string())?;
        s.push('\n');
        s
    };
    write_file(path, &body)
}

fn write_file(path: &Path, body: &str) -> Result<(), String> {
    std::fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))
}

/// CSV export of the counts section (n, count per line); other sections are
/// JSON-only.
fn to_csv(doc: &Value) -> String {
    let mut out = String::from("n,count\n");
    if let Some(counts) = doc.get("counts").and_then(Value::as_array) {
        for (i, c) in counts.iter().enumerate() {
            let c = c.as_str().map(str::to_string).unwrap_or_else(|| c.to_string());
            out.push_str(&format!("{},{}\n", i + 1, c));
        }
    }
    out
}

pub fn counts_json(counts: &[u64]) -> Value {
    Value::Array(counts.iter().map(|&c| Value::from(c)).collect())
}

pub fn print_counts_table(counts: &[u64]) {
    println!("{:>4}  {:>12}", "n", "count");
    for (i, c) in counts.iter().enumerate() {
        println!("{:>4}  {:>12}", i + 1, c);
    }
}
