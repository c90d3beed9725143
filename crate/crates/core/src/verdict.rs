//! Three-valued search results and search budgets.

use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Bounds for the searches that quantify over objects of an infinite category.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest object grade quantified over.
    pub max_size: usize,
    /// Largest number of candidate objects tried when looking for a witness object.
    pub max_candidates: usize,
    /// Largest number of search nodes in a single coloring search.
    pub max_coloring_nodes: u64,
    /// Largest color count tried by Ramsey searches.
    pub max_colors: usize,
    /// Optional wall-clock cap in milliseconds.
    pub wall_clock_ms: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_size: 4,
            max_candidates: 64,
            max_coloring_nodes: 50_000_000,
            max_colors: 2,
            wall_clock_ms: None,
        }
    }
}

impl SearchBudget {
    pub fn with_size(max_size: usize) -> Self {
        SearchBudget { max_size, ..Default::default() }
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        if self.max_size == 0 && self.max_candidates == 0 {
            return Err(BudgetError::NonPositive("max_size/max_candidates"));
        }
        if self.max_candidates == 0 {
            return Err(BudgetError::NonPositive("max_candidates"));
        }
        if self.max_coloring_nodes == 0 {
            return Err(BudgetError::NonPositive("max_coloring_nodes"));
        }
        if self.max_colors == 0 {
            return Err(BudgetError::NonPositive("max_colors"));
        }
        if self.wall_clock_ms == Some(0) {
            return Err(BudgetError::NonPositive("wall_clock_ms"));
        }
        Ok(())
    }

    pub(crate) fn deadline(&self) -> Deadline {
        Deadline {
            end: self.wall_clock_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BudgetError {
    #[error("budget field {0} must be strictly positive")]
    NonPositive(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Deadline {
    end: Option<Instant>,
}

impl Deadline {
    pub(crate) fn passed(&self) -> bool {
        self.end.is_some_and(|e| Instant::now() >= e)
    }
}

/// What a search spent before it gave up.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub reason: String,
    pub objects_examined: usize,
    pub pairs_examined: usize,
    pub coloring_nodes: u64,
}

impl BudgetReport {
    pub fn new(reason: impl Into<String>) -> Self {
        BudgetReport { reason: reason.into(), ..Default::default() }
    }
}

/// Yes with a witness, No with a certificate, or Unknown with the budget spent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "payload", rename_all = "lowercase")]
pub enum Verdict<W, C> {
    Yes(W),
    No(C),
    Unknown(BudgetReport),
}

impl<W, C> Verdict<W, C> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }
    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }
    pub fn certificate(&self) -> Option<&C> {
        match self {
            Verdict::No(c) => Some(c),
            _ => None,
        }
    }
    /// Answer as an optional boolean (None for Unknown).
    pub fn decided(&self) -> Option<bool> {
        match self {
            Verdict::Yes(_) => Some(true),
            Verdict::No(_) => Some(false),
            Verdict::Unknown(_) => None,
        }
    }
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes(_) => "yes",
            Verdict::No(_) => "no",
            Verdict::Unknown(_) => "unknown",
        }
    }
    pub fn map<W2, C2>(self, fw: impl FnOnce(W) -> W2, fc: impl FnOnce(C) -> C2) -> Verdict<W2, C2> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(fw(w)),
            Verdict::No(c) => Verdict::No(fc(c)),
            Verdict::Unknown(r) => Verdict::Unknown(r),
        }
    }
}
