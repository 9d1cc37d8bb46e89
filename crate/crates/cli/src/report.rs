//! Reports: what a command computed, serialized as JSON.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

/// Gröbner engine counters. Advisory: they are excluded from gallery comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Engine {
    pub spairs_reduced: u64,
    pub max_basis_size: u64,
    pub advisory: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub timing: Timing,
    pub engine: Engine,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    /// The report without the timing block, for byte comparisons.
    pub fn without_timing(&self) -> Report {
        Report {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    /// Human-readable rendering of the results.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        render(&self.results, 1, &mut out);
        out.push_str(&format!(
            "({} us, {} S-pairs, largest basis {})\n",
            self.timing.elapsed_us, self.engine.spairs_reduced, self.engine.max_basis_size
        ));
        out
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_leaf(x) {
                    out.push_str(&format!("{pad}- {}\n", leaf(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", leaf(x))),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(leaf).collect::<Vec<_>>().join(", ")),
        x => x.to_string(),
    }
}
