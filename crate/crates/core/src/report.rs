use serde::Serialize;

/// Outcome of an identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    /// Length, degree or order bound the check ran to.
    pub bound: usize,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    /// First failing comparison. Always present when `passed` is false.
    pub counterexample: Option<String>,
    /// Per-condition notes for composite checks.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>, bound: usize) -> Self {
        CheckReport {
            identity: identity.into(),
            bound,
            passed: true,
            checked: 0,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    /// Records one comparison. The first failure becomes the counterexample.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, what: String) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(what);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report in as a named sub-check.
    pub fn absorb(&mut self, other: CheckReport) {
        self.checked += other.checked;
        let status = if other.passed { "pass" } else { "FAIL" };
        self.note(format!("{}: {status}", other.identity));
        if let Some(c) = other.counterexample {
            self.fail(format!("{}: {c}", other.identity));
        }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} (bound {}, {} comparisons)",
            self.identity, self.bound, self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}
