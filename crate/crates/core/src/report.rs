//! Named pass/fail checks with exact witnesses.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Short statement of the claim being checked.
    pub anchor: String,
    pub passed: bool,
    /// Offending values when failed; informational notes otherwise.
    pub witnesses: Vec<String>,
}

impl CheckResult {
    pub fn new(name: &str, anchor: &str) -> Self {
        CheckResult {
            name: name.to_string(),
            anchor: anchor.to_string(),
            passed: true,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>) {
        self.passed = false;
        self.witnesses.push(witness.into());
    }

    /// Records a failure when `ok` is false.
    pub fn require(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.witnesses.push(note.into());
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    pub warnings: Vec<String>,
}

impl VerificationReport {
    pub fn new(checks: Vec<CheckResult>, warnings: Vec<String>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            passed,
            checks,
            warnings,
        }
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("# Verification report: {verdict}\n\n"));
        out.push_str("| check | result | anchor |\n|---|---|---|\n");
        for c in &self.checks {
            let r = if c.passed { "pass" } else { "**FAIL**" };
            out.push_str(&format!("| `{}` | {} | {} |\n", c.name, r, c.anchor));
        }
        let failed: Vec<_> = self.failed().collect();
        if !failed.is_empty() {
            out.push_str("\n## Failures\n");
            for c in failed {
                out.push_str(&format!("\n### `{}`\n\n", c.name));
                for w in c.witnesses.iter().take(20) {
                    out.push_str(&format!("- {w}\n"));
                }
                if c.witnesses.len() > 20 {
                    out.push_str(&format!("- ... {} more\n", c.witnesses.len() - 20));
                }
            }
        }
        let notes: Vec<_> = self
            .checks
            .iter()
            .filter(|c| c.passed && !c.witnesses.is_empty())
            .collect();
        if !notes.is_empty() {
            out.push_str("\n## Notes\n\n");
            for c in notes {
                for w in &c.witnesses {
                    out.push_str(&format!("- `{}`: {w}\n", c.name));
                }
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("\n## Warnings\n\n");
            for w in &self.warnings {
                out.push_str(&format!("- {w}\n"));
            }
        }
        out
    }
}
