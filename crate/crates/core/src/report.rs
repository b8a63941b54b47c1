use std::fmt;

/// Outcome of an exhaustive check: how many instances ran, which failed, and side notes
/// (domain gaps, skipped cases) that are not failures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checked: usize,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), ..Report::default() }
    }

    /// Record one instance; `detail` is only built on failure.
    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) -> bool {
        self.checked += 1;
        if !ok {
            self.violations.push(detail());
        }
        ok
    }

    pub fn violation(&mut self, detail: impl Into<String>) {
        self.checked += 1;
        self.violations.push(detail.into());
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// No violations. Notes do not count.
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} checked, {} violations", self.title, self.checked, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  violation: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
