//! Machine-readable records of verified claims.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// A claim, the witness offered for it, and the independent checks run on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub command: String,
    pub group: String,
    pub claim: String,
    pub witness: Option<String>,
    pub checks: Vec<Check>,
    /// All checks passed, and there was at least one.
    pub verified: bool,
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl Certificate {
    pub fn new(command: &str, group: impl Into<String>, claim: impl Into<String>) -> Self {
        Certificate {
            schema: CERTIFICATE_SCHEMA,
            command: command.into(),
            group: group.into(),
            claim: claim.into(),
            witness: None,
            checks: Vec::new(),
            verified: false,
            details: serde_json::Map::new(),
        }
    }

    pub fn witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn check(mut self, name: impl Into<String>, passed: bool) -> Self {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
        self.verified = self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn detail(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}", self.command, self.group)?;
        writeln!(f, "claim: {}", self.claim)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        for (k, v) in &self.details {
            match v {
                serde_json::Value::String(s) => writeln!(f, "{k}: {s}")?,
                other => writeln!(f, "{k}: {other}")?,
            }
        }
        for c in &self.checks {
            writeln!(f, "check {}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
        }
        write!(f, "verified: {}", if self.verified { "yes" } else { "no" })
    }
}
