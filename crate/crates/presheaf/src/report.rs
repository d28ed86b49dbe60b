use std::fmt;

/// Failures beyond this many are counted but not kept.
const MAX_KEPT: usize = 20;

/// Outcome of a batch of law checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: &str) -> Report {
        Report {
            name: name.to_string(),
            ..Report::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.checked > 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(describe());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < MAX_KEPT {
            self.failures.push(msg);
        }
    }

    pub fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    /// Folds another report's counts into this one, prefixing its failures.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < MAX_KEPT {
                self.failures.push(format!("{}: {f}", other.name));
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}: {} checked, {} failed",
            self.name, self.checked, self.failed
        )?;
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for x in &self.failures {
            write!(f, "\n  failure: {x}")?;
        }
        Ok(())
    }
}
