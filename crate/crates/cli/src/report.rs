//! Run reports: a fixed set of fields rendered either as a two-column table
//! or as JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::invocation::{Invocation, Mode};
use crate::spec::AlgebraSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// A falsifying assignment together with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub carrier: AlgebraSpec,
    /// The quasi-equation (or equation) it falsifies, in term syntax.
    pub formula: String,
    pub assignment: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub elements_tested: u64,
    pub assignments_tested: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Invocation,
    pub mode: Mode,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub counts: Counts,
    pub details: Vec<Row>,
    pub wall_time_ms: f64,
}

impl RunReport {
    /// The report with wall time zeroed, for comparisons across runs.
    pub fn timeless(&self) -> RunReport {
        RunReport {
            wall_time_ms: 0.0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("outcome".into(), format!("{:?}", self.outcome).to_uppercase()),
            ("mode".into(), self.mode.describe()),
        ];
        rows.extend(self.details.iter().map(|r| (r.key.clone(), r.value.clone())));
        if let Some(w) = &self.witness {
            for (var, seqs) in &w.assignment {
                let seqs: Vec<String> = seqs
                    .iter()
                    .map(|s| format!("({})", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                rows.push((format!("witness {var}"), format!("{{{}}}", seqs.join(","))));
            }
        }
        rows.push(("elements tested".into(), self.counts.elements_tested.to_string()));
        rows.push(("assignments tested".into(), self.counts.assignments_tested.to_string()));
        rows.push(("wall time".into(), format!("{:.3} ms", self.wall_time_ms)));

        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            let pad = width - k.chars().count();
            let _ = writeln!(out, "{k}{}  {v}", " ".repeat(pad));
        }
        out
    }
}

/// Accumulates detail rows.
#[derive(Debug, Default)]
pub(crate) struct Details(pub Vec<Row>);

impl Details {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push(Row {
            key: key.into(),
            value: value.to_string(),
        });
    }
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) fn pass_fail(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}
