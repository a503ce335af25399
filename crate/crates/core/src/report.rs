//! Named pass/fail/skip check lists shared by the validators.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    /// Not applicable to this input; the string says why.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
}

impl Check {
    pub fn is_failure(&self) -> bool {
        matches!(self.status, CheckStatus::Fail(_))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.push(name, CheckStatus::Pass);
    }

    pub fn fail(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.push(name, CheckStatus::Fail(why.into()));
    }

    pub fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.push(name, CheckStatus::Skipped(why.into()));
    }

    /// Records `Pass` when `ok`, otherwise `Fail(detail)`.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, detail);
        }
    }

    pub fn push(&mut self, name: impl Into<String>, status: CheckStatus) {
        self.checks.push(Check {
            name: name.into(),
            status,
        });
    }

    pub fn passed(&self) -> bool {
        !self.checks.iter().any(Check::is_failure)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_failure())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<&CheckStatus> {
        self.get(name).map(|c| &c.status)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.status {
                CheckStatus::Pass => writeln!(f, "  pass  {}", c.name)?,
                CheckStatus::Fail(why) => writeln!(f, "  FAIL  {}: {}", c.name, why)?,
                CheckStatus::Skipped(why) => writeln!(f, "  skip  {}: {}", c.name, why)?,
            }
        }
        Ok(())
    }
}
