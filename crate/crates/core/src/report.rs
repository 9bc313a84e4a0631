use std::fmt;

/// One failed check, tagged with the family of laws it belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub family: String,
    pub message: String,
}

/// Outcome of an exhaustive audit. Empty means every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<Violation>,
    checked: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, family: impl Into<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            family: family.into(),
            message: message.into(),
        });
    }

    /// Records a violation only if none of the same family is present yet.
    pub fn push_first(&mut self, family: &str, message: impl Into<String>) {
        if !self.violations.iter().any(|v| v.family == family) {
            self.push(family, message);
        }
    }

    pub fn count_check(&mut self) {
        self.checked += 1;
    }

    pub fn checked(&self) -> usize {
        self.checked
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn has_family(&self, family: &str) -> bool {
        self.violations.iter().any(|v| v.family == family)
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok ({} checks)", self.checked);
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "violation [{}]: {}", v.family, v.message)?;
        }
        Ok(())
    }
}
