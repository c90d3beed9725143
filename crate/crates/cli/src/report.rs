use serde::Serialize;
use serde_json::Value;
use wfr_core::{BudgetReport, SearchBudget, Verdict};

pub const SCHEMA: &str = "wfr.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
    Ok,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes | Outcome::Ok => 0,
            Outcome::No => 1,
            Outcome::Unknown => 2,
        }
    }

    pub fn of<W, C>(v: &Verdict<W, C>) -> Self {
        match v {
            Verdict::Yes(_) => Outcome::Yes,
            Verdict::No(_) => Outcome::No,
            Verdict::Unknown(_) => Outcome::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub verdict: Outcome,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<SearchBudget>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget_used: Option<BudgetReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub summary: Vec<String>,
    #[serde(skip)]
    pub trace: Vec<String>,
}

impl Report {
    pub fn new(verdict: Outcome, result: Value) -> Self {
        Report {
            schema: SCHEMA,
            command: Vec::new(),
            verdict,
            result,
            budget: None,
            budget_used: None,
            elapsed_ms: None,
            summary: Vec::new(),
            trace: Vec::new(),
        }
    }

    pub fn budget(mut self, b: &SearchBudget) -> Self {
        self.budget = Some(b.clone());
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }

    /// Record what a search spent when the verdict is Unknown.
    pub fn spent<W, C>(mut self, v: &Verdict<W, C>) -> Self {
        if let Verdict::Unknown(r) = v {
            self.budget_used = Some(r.clone());
        }
        self
    }

    pub fn human(&self, trace: bool) -> String {
        let mut out = format!("{}\n", serde_json::to_string(&self.verdict).unwrap().trim_matches('"'));
        for l in &self.summary {
            out.push_str(l);
            out.push('\n');
        }
        if let Some(r) = &self.budget_used {
            out.push_str(&format!("budget exhausted: {}\n", r.reason));
        }
        if trace {
            for l in &self.trace {
                out.push_str(l);
                out.push('\n');
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("{ms} ms\n"));
        }
        out
    }
}
