//! Pass/fail reports shared by the verification suites.

use crate::homsearch::Verdict;
use crate::indicators::Status;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteItem {
    pub part: char,
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub items: Vec<SuiteItem>,
    /// Observations that are reported but not judged.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn push(
        &mut self,
        part: char,
        label: impl Into<String>,
        status: Status,
        detail: impl Into<String>,
    ) {
        self.items.push(SuiteItem {
            part,
            label: label.into(),
            status,
            detail: detail.into(),
        });
    }

    pub fn flag(&mut self, part: char, label: impl Into<String>, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(part, label, status, "");
    }

    pub fn verdict(&mut self, part: char, label: impl Into<String>, v: &Verdict) {
        let (status, detail) = match v {
            Verdict::Yes => (Status::Pass, String::new()),
            Verdict::No { witness, .. } => (Status::Fail, format!("witness {witness:?}")),
            Verdict::Unknown => (Status::Unknown, "budget exhausted".to_string()),
        };
        self.push(part, label, status, detail);
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.items.extend(other.items);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status == Status::Pass)
    }

    pub fn part(&self, part: char) -> impl Iterator<Item = &SuiteItem> {
        self.items.iter().filter(move |i| i.part == part)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteItem> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    pub fn unknowns(&self) -> impl Iterator<Item = &SuiteItem> {
        self.items.iter().filter(|i| i.status == Status::Unknown)
    }

    pub fn part_passed(&self, part: char) -> bool {
        self.part(part).all(|i| i.status == Status::Pass)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let tag = match i.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Unknown => "UNKNOWN",
            };
            write!(f, "({}) {tag} {}", i.part, i.label)?;
            if !i.detail.is_empty() {
                write!(f, " [{}]", i.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}
