use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::ReducedBetti;

/// One comparison against an independent computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Outcome of one verification pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub command: String,
    pub subject: String,
    /// Reduced Betti numbers `b̃_0..b̃_top`.
    pub betti: Vec<usize>,
    /// The complex has no cells; its reduced homology is `Q` in degree -1.
    pub empty: bool,
    pub top_dimension: Option<usize>,
    pub top_concentrated: bool,
    pub oracles: Vec<OracleRow>,
    pub notes: Vec<String>,
    /// Input label to SHA-256 of its bytes.
    pub inputs: BTreeMap<String, String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn join(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

impl VerificationReport {
    pub fn new(command: &str, subject: impl Into<String>, betti: &ReducedBetti) -> Self {
        VerificationReport {
            command: command.to_string(),
            subject: subject.into(),
            betti: betti.betti.clone(),
            empty: betti.empty,
            top_dimension: betti.top_dimension(),
            top_concentrated: betti.top_concentrated(),
            oracles: Vec::new(),
            notes: Vec::new(),
            inputs: BTreeMap::new(),
            elapsed: Duration::ZERO,
        }
    }

    /// Adds a row that passes when both sides print the same.
    pub fn compare(&mut self, name: &str, expected: impl Display, got: impl Display) -> bool {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.check(name, expected, got, pass)
    }

    pub fn check(&mut self, name: &str, expected: impl Display, got: impl Display, pass: bool) -> bool {
        self.oracles.push(OracleRow {
            name: name.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass,
        });
        pass
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn input(&mut self, label: &str, bytes: &[u8]) {
        self.inputs.insert(label.to_string(), sha256_hex(bytes));
    }

    /// Top concentration holds and every oracle row passes.
    pub fn passed(&self) -> bool {
        self.top_concentrated && self.oracles.iter().all(|o| o.pass)
    }

    pub fn betti_string(&self) -> String {
        if self.empty {
            "empty complex (b̃_-1 = 1)".to_string()
        } else {
            join(&self.betti)
        }
    }

    fn report_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["verdict"] = json!(if self.passed() { "pass" } else { "fail" });
        v
    }

    /// SHA-256 of the canonical report section.
    pub fn digest(&self) -> String {
        sha256_hex(self.report_value().to_string().as_bytes())
    }

    /// Canonical JSON with sorted keys. Everything except `timing` is a
    /// function of the inputs alone.
    pub fn to_json(&self) -> String {
        let doc = json!({
            "report": self.report_value(),
            "report_sha256": self.digest(),
            "timing": { "elapsed_ms": self.elapsed.as_secs_f64() * 1e3 },
        });
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# troplink {}\n", self.command);
        let _ = writeln!(s, "{}\n", self.subject);
        let _ = writeln!(s, "- reduced Betti numbers: {}", self.betti_string());
        match self.top_dimension {
            Some(d) => {
                let _ = writeln!(s, "- top dimension: {d}");
            }
            None => {
                let _ = writeln!(s, "- top dimension: none");
            }
        }
        let _ = writeln!(
            s,
            "- top concentrated: {}",
            if self.top_concentrated { "yes" } else { "no" }
        );
        for (label, hash) in &self.inputs {
            let _ = writeln!(s, "- input `{label}`: sha256 {hash}");
        }
        let _ = writeln!(s, "- elapsed: {:.1} ms", self.elapsed.as_secs_f64() * 1e3);
        if !self.oracles.is_empty() {
            s.push_str("\n| check | expected | got | verdict |\n|---|---|---|---|\n");
            for o in &self.oracles {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    o.name,
                    o.expected,
                    o.got,
                    if o.pass { "PASS" } else { "FAIL" }
                );
            }
        }
        if !self.notes.is_empty() {
            s.push('\n');
            for n in &self.notes {
                let _ = writeln!(s, "> {n}");
            }
        }
        let _ = writeln!(s, "\n**verdict: {}**", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}
