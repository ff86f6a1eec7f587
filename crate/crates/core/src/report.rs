//! Violation reports produced by the validators.
//!
//! A broken axiom is data, not a fault: every checker returns a [`Report`]
//! whose entries name the violated rule and a witness.

use std::fmt;

/// One violated rule together with a witness for the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Stable rule identifier, e.g. `"category.assoc"`.
    pub rule: String,
    /// Human-readable witness (the elements at which the equation fails).
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn ok() -> Self {
        Report::default()
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: impl Into<String>, witness: impl Into<String>) {
        self.violations.push(Violation {
            rule: rule.into(),
            witness: witness.into(),
        });
    }

    /// Absorb `other`, prefixing each witness with `context`.
    pub fn absorb(&mut self, context: &str, other: Report) {
        for v in other.violations {
            self.violations.push(Violation {
                rule: v.rule,
                witness: if context.is_empty() {
                    v.witness
                } else {
                    format!("{context}: {}", v.witness)
                },
            });
        }
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "OK")
        } else {
            for v in &self.violations {
                writeln!(f, "{}: {}", v.rule, v.witness)?;
            }
            Ok(())
        }
    }
}
