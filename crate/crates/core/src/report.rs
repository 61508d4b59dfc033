//! Named pass/fail certificates and the reports that collect them.

use serde::{Deserialize, Serialize};

/// One verified (or refuted) identity.
///
/// `witness` is present exactly when `holds` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), holds: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, anchor: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), holds: false, witness: Some(witness.into()) }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, anchor: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name, anchor),
            Some(w) => Self::fail(name, anchor, w),
        }
    }

    pub fn from_bool(
        name: impl Into<String>,
        anchor: impl Into<String>,
        holds: bool,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if holds {
            Self::pass(name, anchor)
        } else {
            Self::fail(name, anchor, witness())
        }
    }

    /// Same verdict under a new name and anchor.
    pub fn renamed(self, name: impl Into<String>, anchor: impl Into<String>) -> Self {
        Self { name: name.into(), anchor: anchor.into(), ..self }
    }

    /// One `PASS`/`FAIL` line for text reports.
    pub fn line(&self) -> String {
        match &self.witness {
            None if self.holds => format!("PASS {} [{}]", self.name, self.anchor),
            None => format!("FAIL {} [{}]", self.name, self.anchor),
            Some(w) => format!("FAIL {} [{}] witness: {}", self.name, self.anchor, w),
        }
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}

/// Prefixes every check name, used when suites are nested.
pub fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix}.{}", c.name);
            c
        })
        .collect()
}

/// Output of a CLI command or a verification suite.
///
/// `checks` decide the verdict. `findings` record statements evaluated as
/// literally written whose outcome is informational (see the README).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Check>,
    #[serde(default)]
    pub artifacts: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Self { subject: subject.into(), ..Self::default() }
    }

    pub fn all_hold(&self) -> bool {
        all_hold(&self.checks)
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("subject {}\n", self.subject);
        for c in &self.checks {
            out.push_str(&c.line());
            out.push('\n');
        }
        for c in &self.findings {
            out.push_str("NOTE ");
            out.push_str(&c.line());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_iff_failure() {
        let ok = Check::from_witness("x", "a", None);
        assert!(ok.holds && ok.witness.is_none());
        let bad = Check::from_witness("x", "a", Some("(0,1)".into()));
        assert!(!bad.holds && bad.witness.is_some());
        assert_eq!(bad.line(), "FAIL x [a] witness: (0,1)");
    }

    #[test]
    fn serialization_omits_empty_witness() {
        let s = serde_json::to_string(&Check::pass("n", "a")).unwrap();
        assert_eq!(s, r#"{"name":"n","anchor":"a","holds":true}"#);
    }
}
