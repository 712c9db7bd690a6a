//! Pass/fail reports produced by the verification routines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, detail: impl Into<String>, passed: bool) {
        self.entries.push(CheckEntry { name: name.into(), detail: detail.into(), passed });
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> + '_ {
        self.entries.iter().filter(|e| !e.passed)
    }

    /// Appends the entries of `other`, prefixing names with its title.
    pub fn absorb(&mut self, other: CheckReport) {
        for e in other.entries {
            self.entries.push(CheckEntry { name: format!("{}: {}", other.title, e.name), ..e });
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for e in &self.entries {
            let tag = if e.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  [{tag}] {}: {}", e.name, e.detail)?;
        }
        Ok(())
    }
}
