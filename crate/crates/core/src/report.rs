use serde::Serialize;

/// Result of one exhaustive basis scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Basis indices of the first failing case, in scan order.
    pub first_witness: Option<Vec<usize>>,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_witness: None,
        }
    }

    pub fn record(&mut self, ok: bool, witness: &[usize]) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(witness.to_vec());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Pass/fail data for a validator: one entry per axiom or display checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<CheckOutcome>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn single(subject: impl Into<String>, check: CheckOutcome) -> Self {
        Self {
            subject: subject.into(),
            checks: vec![check],
        }
    }

    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    /// Appends the checks of another report, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// First failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: pass", self.subject),
            Some(c) => format!(
                "{}: FAIL ({} failure(s); first in `{}` at {:?})",
                self.subject,
                self.failure_count(),
                c.name,
                c.first_witness.as_deref().unwrap_or(&[])
            ),
        }
    }
}
