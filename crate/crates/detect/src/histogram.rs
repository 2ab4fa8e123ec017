//! Per-cell visit counts, for probing which cells keep being revisited.

use std::collections::BTreeMap;

use antlab_core::{AntConfiguration, Pos, RuleWord, RunLimits, SimError, StepEvent};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VisitHistogram {
    pub steps: u64,
    /// Number of steps that started on each cell.
    pub counts: FxHashMap<Pos, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramSummary {
    pub steps: u64,
    pub distinct_cells: usize,
    pub max_count: u64,
    pub total_visits: u64,
    /// `[visit count, number of cells with that count]`, ascending.
    pub distribution: Vec<[u64; 2]>,
}

impl VisitHistogram {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn max_count(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn get(&self, p: Pos) -> u64 {
        self.counts.get(&p).copied().unwrap_or(0)
    }

    /// Cells sorted by position.
    pub fn sorted(&self) -> Vec<(Pos, u64)> {
        let mut v: Vec<(Pos, u64)> = self.counts.iter().map(|(&p, &c)| (p, c)).collect();
        v.sort_unstable();
        v
    }

    pub fn summary(&self) -> HistogramSummary {
        let mut dist: BTreeMap<u64, u64> = BTreeMap::new();
        for &c in self.counts.values() {
            *dist.entry(c).or_default() += 1;
        }
        HistogramSummary {
            steps: self.steps,
            distinct_cells: self.counts.len(),
            max_count: self.max_count(),
            total_visits: self.total(),
            distribution: dist.into_iter().map(|(c, n)| [c, n]).collect(),
        }
    }
}

pub fn visit_histogram(
    conf: &AntConfiguration,
    rule: &RuleWord,
    steps: u64,
    limits: RunLimits,
) -> Result<VisitHistogram, SimError> {
    conf.validate(rule)?;
    let mut state = conf.clone();
    let mut counts: FxHashMap<Pos, u64> = FxHashMap::default();
    state.advance(rule, steps, limits, &mut |e: &StepEvent| {
        *counts.entry(e.cell).or_default() += 1;
    })?;
    Ok(VisitHistogram { steps, counts })
}
