use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: String,
    /// Indices of the elements/cells/objects at which the axiom fails.
    pub at: Vec<usize>,
    pub detail: String,
}

/// Full list of axiom violations found by a checker. Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, at: Vec<usize>, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            at,
            detail: detail.into(),
        });
    }

    /// Record a violation if `holds` is false.
    pub fn expect(&mut self, holds: bool, axiom: &str, at: &[usize], detail: impl FnOnce() -> String) {
        if !holds {
            self.push(axiom, at.to_vec(), detail());
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Prefix every axiom name, used when a report is nested in a larger one.
    pub fn scoped(mut self, scope: &str) -> Self {
        for v in &mut self.violations {
            v.axiom = format!("{scope}.{}", v.axiom);
        }
        self
    }

    pub fn violations_of<'a>(&'a self, axiom: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.violations_of(axiom).count()
    }

    /// Axiom names in first-seen order, without duplicates.
    pub fn failed_axioms(&self) -> Vec<&str> {
        let mut seen: Vec<&str> = Vec::new();
        for v in &self.violations {
            if !seen.contains(&v.axiom.as_str()) {
                seen.push(&v.axiom);
            }
        }
        seen
    }

    pub fn into_result<T>(self, value: T) -> crate::Result<T> {
        if self.is_valid() {
            Ok(value)
        } else {
            Err(crate::Error::Axioms(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for axiom in self.failed_axioms() {
            let first = self.violations_of(axiom).next().unwrap();
            write!(
                f,
                "; {axiom} x{} (first at {:?}: {})",
                self.count(axiom),
                first.at,
                first.detail
            )?;
        }
        Ok(())
    }
}

/// A single criterion of an equivalence check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Criterion {
    pub criterion: String,
    pub dimension: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Verdict of an equivalence check over a finite universe of structures.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub subject: String,
    /// Size bound of the sampled universe, when it was generated from one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub criteria: Vec<Criterion>,
}

impl EquivalenceReport {
    pub fn new(subject: impl Into<String>, bound: Option<usize>) -> Self {
        Self {
            subject: subject.into(),
            bound,
            criteria: Vec::new(),
        }
    }

    pub fn record(&mut self, criterion: &str, dimension: usize, holds: bool, witness: Option<Value>) {
        self.criteria.push(Criterion {
            criterion: criterion.to_string(),
            dimension,
            holds,
            witness,
        });
    }

    pub fn is_equivalence(&self) -> bool {
        self.criteria.iter().all(|c| c.holds)
    }

    pub fn criterion(&self, name: &str) -> Option<&Criterion> {
        self.criteria.iter().find(|c| c.criterion == name)
    }

    pub fn holds(&self, name: &str) -> bool {
        self.criterion(name).map(|c| c.holds).unwrap_or(false)
    }

    /// First failing criterion, if any.
    pub fn first_failure(&self) -> Option<&Criterion> {
        self.criteria.iter().find(|c| !c.holds)
    }

    pub fn merge(&mut self, other: EquivalenceReport) {
        self.criteria.extend(other.criteria);
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_equivalence() { "pass" } else { "FAIL" };
        write!(f, "{}: {verdict}", self.subject)?;
        if let Some(b) = self.bound {
            write!(f, " (bound {b})")?;
        }
        for c in &self.criteria {
            write!(
                f,
                "\n  [{}] {} (dim {})",
                if c.holds { "ok" } else { "fail" },
                c.criterion,
                c.dimension
            )?;
        }
        Ok(())
    }
}
