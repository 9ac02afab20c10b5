use std::collections::BTreeMap;

use serde::Serialize;

use crate::SCHEMA_VERSION;

/// A model value as canonical term text, plus a 12-digit decimal where the
/// model is ordered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Value {
    pub term: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub valuation: BTreeMap<String, Value>,
    pub lhs: Value,
    pub rhs: Value,
    /// The instantiated equation, when the terms were generated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeTag {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub equation: String,
    pub statement: String,
    pub model: String,
    pub mode: ModeTag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Valuations evaluated.
    pub trials: u64,
    /// Valuations meeting every premise (all of them for plain equations).
    pub satisfied: u64,
    pub skipped: u64,
    pub failure_count: u64,
    /// At most the failure cap, in valuation order.
    pub failures: Vec<Failure>,
    pub verdict: Verdict,
}

impl CheckReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        equation: &str,
        statement: String,
        model: String,
        mode: ModeTag,
        seed: Option<u64>,
        trials: u64,
        satisfied: u64,
        skipped: u64,
        failure_count: u64,
        failures: Vec<Failure>,
    ) -> CheckReport {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            equation: equation.into(),
            statement,
            model,
            mode,
            seed,
            trials,
            satisfied,
            skipped,
            failure_count,
            failures,
            verdict: if failure_count == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        write!(
            f,
            "{verdict:4} {:<24} {} valuations, {} satisfied, {} skipped, {} failures  [{}]",
            self.equation, self.trials, self.satisfied, self.skipped, self.failure_count, self.statement
        )?;
        for fail in &self.failures {
            let val: Vec<String> = fail
                .valuation
                .iter()
                .map(|(k, v)| format!("{k} = {}", v.term))
                .collect();
            write!(f, "\n       at {{{}}}: {} vs {}", val.join(", "), fail.lhs.term, fail.rhs.term)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub model: String,
    pub reports: Vec<CheckReport>,
    pub verdict: Verdict,
}

impl SuiteReport {
    pub(crate) fn new(suite: String, model: String, reports: Vec<CheckReport>) -> SuiteReport {
        let verdict = if reports.iter().all(CheckReport::passed) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite,
            model,
            reports,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl std::fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "suite {} on {}", self.suite, self.model)?;
        for r in &self.reports {
            writeln!(f, "  {r}")?;
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        write!(f, "verdict: {verdict}")
    }
}
