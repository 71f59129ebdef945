//! Report types and the summary table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Undetermined,
    Fails,
}

impl Verdict {
    /// Fails dominates undetermined, which dominates holds.
    pub fn combine(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Refused,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// A generator of the left ideal.
    pub element: String,
    /// Its normal form modulo the right ideal; never zero.
    pub normal_form: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub claim: String,
    pub verdict: Verdict,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub kind: String,
    pub spec: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub checks: Vec<Check>,
    pub facts: BTreeMap<String, Value>,
    pub assumptions: Vec<String>,
}

impl ExperimentReport {
    pub fn new(name: String, kind: &str, spec: Value) -> Self {
        ExperimentReport {
            name,
            kind: kind.to_string(),
            spec,
            status: Status::Ok,
            message: None,
            verdict: None,
            checks: Vec::new(),
            facts: BTreeMap::new(),
            assumptions: Vec::new(),
        }
    }

    pub fn assume(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.assumptions.contains(&text) {
            self.assumptions.push(text);
        }
    }

    pub fn fact(&mut self, key: &str, value: impl Serialize) {
        self.facts
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn push(&mut self, check: Check) {
        self.verdict = Some(match self.verdict {
            Some(v) => v.combine(check.verdict),
            None => check.verdict,
        });
        self.checks.push(check);
    }

    pub fn refuse(&mut self, reason: impl Into<String>) {
        self.status = Status::Refused;
        self.message = Some(reason.into());
        self.verdict = None;
    }

    pub fn error(&mut self, reason: impl Into<String>) {
        self.status = Status::Error;
        self.message = Some(reason.into());
        self.verdict = None;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub holds: usize,
    pub fails: usize,
    pub undetermined: usize,
    pub refused: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub experiments: Vec<ExperimentReport>,
    pub counts: Counts,
    /// Wall-clock seconds per experiment, in config order. The only
    /// nondeterministic field.
    pub timings: Vec<f64>,
}

impl SuiteReport {
    pub fn new(experiments: Vec<ExperimentReport>, timings: Vec<f64>) -> Self {
        let mut counts = Counts::default();
        for e in &experiments {
            match (e.status, e.verdict) {
                (Status::Refused, _) => counts.refused += 1,
                (Status::Error, _) => counts.errors += 1,
                (Status::Ok, Some(Verdict::Holds)) => counts.holds += 1,
                (Status::Ok, Some(Verdict::Fails)) => counts.fails += 1,
                (Status::Ok, _) => counts.undetermined += 1,
            }
        }
        SuiteReport {
            experiments,
            counts,
            timings,
        }
    }

    pub fn has_fails(&self) -> bool {
        self.counts.fails > 0
    }

    /// JSON without the timings, for byte-for-byte comparison of runs.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("timings");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn summary_table(&self) -> String {
        let rows: Vec<[String; 5]> = self
            .experiments
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let outcome = match e.status {
                    Status::Ok => e
                        .verdict
                        .map(|v| format!("{v:?}").to_lowercase())
                        .unwrap_or_else(|| "no checks".into()),
                    Status::Refused => "refused".into(),
                    Status::Error => "error".into(),
                };
                let time = self.timings.get(i).map(|t| format!("{t:.2}s")).unwrap_or_default();
                let detail = match e.status {
                    Status::Ok => {
                        let n = e.checks.len();
                        let held = e.checks.iter().filter(|c| c.verdict == Verdict::Holds).count();
                        format!("{held}/{n} checks hold, {} assumptions", e.assumptions.len())
                    }
                    _ => e.message.clone().unwrap_or_default(),
                };
                [e.name.clone(), e.kind.clone(), outcome, time, detail]
            })
            .collect();
        let header = ["experiment", "kind", "verdict", "time", "detail"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for r in &rows {
            for (w, cell) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String; 5]| {
            let mut s = String::new();
            for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    let _ = write!(s, "{cell:<w$}  ");
                }
            }
            let _ = writeln!(out, "{}", s.trim_end());
        };
        line(&mut out, &header);
        line(&mut out, &widths.map(|w| "-".repeat(w)));
        for r in &rows {
            line(&mut out, r);
        }
        let c = &self.counts;
        let _ = writeln!(
            out,
            "\n{} experiments: {} hold, {} fail, {} undetermined, {} refused, {} errors",
            self.experiments.len(),
            c.holds,
            c.fails,
            c.undetermined,
            c.refused,
            c.errors
        );
        out
    }
}
