use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed check: which rule, and the offending instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub rule: String,
    pub detail: String,
}

/// Outcome of an exhaustive validator. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, rule: impl Into<String>, detail: impl Into<String>) {
        self.failures.push(Failure { rule: rule.into(), detail: detail.into() });
    }

    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn mentions(&self, rule: &str) -> bool {
        self.failures.iter().any(|f| f.rule == rule)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for (i, x) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}", x.rule, x.detail)?;
        }
        Ok(())
    }
}
