//! Machine-readable check results.  A verdict names the property and the
//! dimension bound it was decided at, and carries witnesses as simplex-id
//! references so external tools can re-verify them against the original
//! document.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    /// What kind of evidence this is, e.g. a failing generator name or
    /// `missing-unit`.
    pub label: String,
    /// Named simplex references into the input document.
    pub cells: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>) -> Self {
        Witness {
            label: label.into(),
            cells: BTreeMap::new(),
            note: None,
        }
    }

    pub fn cell(mut self, key: impl Into<String>, id: impl Into<String>) -> Self {
        self.cells.insert(key.into(), id.into());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub property: String,
    pub dim: usize,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
    pub elapsed_ms: u64,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} (dim {}): {} [{} ms]",
            self.property,
            self.dim,
            if self.holds { "pass" } else { "fail" },
            self.elapsed_ms
        );
        for w in &self.witnesses {
            out.push_str(&format!("\n  {}", w.label));
            for (key, id) in &w.cells {
                out.push_str(&format!(" {key}={id}"));
            }
            if let Some(note) = &w.note {
                out.push_str(&format!(" ({note})"));
            }
        }
        out
    }
}

/// Time a closure and wrap its outcome as a verdict.
pub fn timed<F>(property: &str, dim: usize, body: F) -> Verdict
where
    F: FnOnce() -> (bool, Vec<Witness>),
{
    let start = std::time::Instant::now();
    let (holds, witnesses) = body();
    Verdict {
        property: property.to_string(),
        dim,
        holds,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}
