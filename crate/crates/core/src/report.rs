//! Machine-readable results of identity and numerical checks.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

/// Outcome of one named check run over a number of cases.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passed: true,
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Counts a case; the detail closure runs only when the case fails.
    pub fn record(&mut self, case: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.failures.push(Failure {
                case: case.into(),
                detail: detail(),
            });
        }
    }

    pub fn fail(&mut self, case: impl Into<String>, detail: impl Into<String>) {
        let detail = detail.into();
        self.record(case, false, || detail);
    }

    /// Folds another report of the same check into this one.
    pub fn absorb(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.passed &= other.passed;
        self.failures.extend(other.failures);
    }
}

/// A non-gating observation, such as an alternative formula that disagrees with
/// the one the checks use.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub detail: String,
    pub values: Vec<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_and_absorb() {
        let mut a = CheckReport::new("demo");
        a.record("one", true, || unreachable!());
        let mut b = CheckReport::new("demo");
        b.fail("two", "mismatch");
        a.absorb(b);
        assert_eq!(a.cases, 2);
        assert!(!a.passed);
        assert_eq!(a.failures[0].case, "two");
    }
}
