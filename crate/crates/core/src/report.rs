use std::fmt;

/// A list of violated conditions. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub findings: Vec<String>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn push(&mut self, msg: impl Into<String>) {
        self.findings.push(msg.into());
    }

    /// Appends another report's findings under a prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.findings.extend(other.findings.into_iter().map(|f| format!("{prefix}: {f}")));
    }

    pub fn len(&self) -> usize {
        self.findings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for line in &self.findings {
            writeln!(f, "- {line}")?;
        }
        Ok(())
    }
}
