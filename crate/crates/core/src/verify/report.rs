use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Violated,
    Inapplicable,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Violated => "violated",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypStatus {
    CheckedTrue,
    CheckedFalse,
    Asserted,
    AssertedFalse,
    Indeterminate,
}

impl fmt::Display for HypStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HypStatus::CheckedTrue => "checked-true",
            HypStatus::CheckedFalse => "checked-false",
            HypStatus::Asserted => "asserted",
            HypStatus::AssertedFalse => "asserted-false",
            HypStatus::Indeterminate => "indeterminate",
        })
    }
}

impl HypStatus {
    pub fn checked(b: bool) -> Self {
        if b {
            HypStatus::CheckedTrue
        } else {
            HypStatus::CheckedFalse
        }
    }

    pub fn is_false(self) -> bool {
        matches!(self, HypStatus::CheckedFalse | HypStatus::AssertedFalse)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Hypothesis {
    pub fn new(name: &str, status: HypStatus) -> Self {
        Hypothesis { name: name.into(), status, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Status from a computation: errors that only mean "could not decide" become indeterminate.
    pub fn from_check(name: &str, r: Result<bool>) -> Result<Self> {
        match r {
            Ok(b) => Ok(Hypothesis::new(name, HypStatus::checked(b))),
            Err(e) if e.is_indeterminate() => {
                Ok(Hypothesis::new(name, HypStatus::Indeterminate).with_detail(e.to_string()))
            }
            Err(e) => Err(e),
        }
    }
}

/// A side of a comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Int(i64),
    Ideal(Vec<String>),
    Text(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Int(n) => write!(f, "{n}"),
            Quantity::Ideal(g) => write!(f, "({})", g.join(", ")),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

/// Outcome of evaluating a conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Holds
        } else {
            Outcome::Fails
        }
    }
}

/// One evaluated inequality or identity, with its own gating hypotheses.
#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: Quantity,
    pub relation: String,
    pub rhs: Quantity,
    /// `global` or `at-origin`.
    pub form: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Verdict from hypothesis statuses and the conclusion. Asserted hypotheses count as
/// established, so a failing conclusion under asserted hypotheses is reported violated.
pub fn decide(hyps: &[&Hypothesis], outcome: Outcome) -> Verdict {
    if hyps.iter().any(|h| h.status.is_false()) {
        return Verdict::Inapplicable;
    }
    let undecided = hyps.iter().any(|h| h.status == HypStatus::Indeterminate);
    match outcome {
        Outcome::Holds => Verdict::Verified,
        Outcome::Unknown => Verdict::Indeterminate,
        Outcome::Fails if undecided => Verdict::Indeterminate,
        Outcome::Fails => Verdict::Violated,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub subject: String,
    pub hypotheses: Vec<Hypothesis>,
    pub clauses: Vec<Clause>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(theorem: &str, subject: &str, hypotheses: Vec<Hypothesis>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            subject: subject.into(),
            hypotheses,
            clauses: Vec::new(),
            verdict: Verdict::Inapplicable,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn push(
        &mut self,
        name: &str,
        hypotheses: Vec<Hypothesis>,
        lhs: Quantity,
        relation: &str,
        rhs: Quantity,
        form: &str,
        outcome: Outcome,
        note: Option<String>,
    ) {
        let all: Vec<&Hypothesis> = self.hypotheses.iter().chain(hypotheses.iter()).collect();
        let verdict = decide(&all, outcome);
        self.clauses.push(Clause {
            name: name.into(),
            hypotheses,
            lhs,
            relation: relation.into(),
            rhs,
            form: form.into(),
            verdict,
            note,
        });
        self.verdict = self.aggregate();
    }

    /// Violated beats everything; verified needs every applicable clause verified.
    fn aggregate(&self) -> Verdict {
        let vs: Vec<Verdict> = self.clauses.iter().map(|c| c.verdict).collect();
        if vs.contains(&Verdict::Violated) {
            Verdict::Violated
        } else if vs.contains(&Verdict::Indeterminate) {
            Verdict::Indeterminate
        } else if vs.contains(&Verdict::Verified) {
            Verdict::Verified
        } else {
            Verdict::Inapplicable
        }
    }

    /// Whole report indeterminate, used when a computation ran out of budget.
    pub fn indeterminate(theorem: &str, subject: &str, reason: &Error) -> Self {
        let mut r = VerificationReport::new(theorem, subject, Vec::new());
        r.hypotheses.push(Hypothesis::new("computation", HypStatus::Indeterminate).with_detail(reason.to_string()));
        r.verdict = Verdict::Indeterminate;
        r
    }
}

/// Scenario-level hypothesis assertions: `(name, property) -> holds`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assertions(pub BTreeMap<(String, String), bool>);

impl Assertions {
    pub fn insert(&mut self, name: &str, prop: &str, holds: bool) {
        self.0.insert((name.into(), prop.into()), holds);
    }

    pub fn get(&self, name: &str, prop: &str) -> Option<bool> {
        self.0.get(&(name.to_string(), prop.to_string())).copied()
    }

    /// Asserted status, or `fallback` when nothing was asserted.
    pub fn status(&self, name: &str, prop: &str, fallback: HypStatus) -> HypStatus {
        match self.get(name, prop) {
            Some(true) => HypStatus::Asserted,
            Some(false) => HypStatus::AssertedFalse,
            None => fallback,
        }
    }
}
