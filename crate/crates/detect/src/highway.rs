//! Highway detection.
//!
//! Candidates come from the trace: every `check_every` steps the prefix
//! function of the reversed recent trace gives the minimal period of every
//! suffix at once. The longest suffix holding at least two periods proposes a
//! period, the stored poses confirm a constant non-zero drift, a second pass
//! from the start finds the earliest onset, and the certifier has the last word.

use std::collections::VecDeque;

use antlab_core::digest::config_digest;
use antlab_core::{AntConfiguration, Heading, Pos, RuleWord, RunLimits, SimError, StepEvent};
use serde::{Deserialize, Serialize};

use crate::certificate::{certify_at, HighwayCertificate};

/// Shortest periodic suffix worth proposing to the certifier.
const MIN_EVIDENCE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectBudget {
    /// Latest onset searched for.
    pub max_steps: u64,
    pub max_period: u64,
    #[serde(default)]
    pub limits: RunLimits,
}

impl Default for DetectBudget {
    fn default() -> Self {
        Self {
            max_steps: 1_000_000,
            max_period: 10_000,
            limits: RunLimits::NONE,
        }
    }
}

impl DetectBudget {
    pub fn new(max_steps: u64, max_period: u64) -> Self {
        Self { max_steps, max_period, limits: RunLimits::NONE }
    }

    /// Steps simulated after `max_steps` so a highway starting right at the
    /// budget edge still shows two periods inside the analysis window.
    pub fn tail(&self) -> u64 {
        3 * self.max_period
    }
}

/// An onset, minimal period and drift that passed certification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HighwayCandidate {
    pub onset: u64,
    pub period: u64,
    pub drift: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighwayDetection {
    pub candidate: HighwayCandidate,
    pub certificate: HighwayCertificate,
}

/// Minimal period of every prefix of `s`: `out[l - 1]` is the period of `s[..l]`.
pub fn prefix_periods(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut pi = vec![0usize; n];
    for i in 1..n {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi.iter().enumerate().map(|(i, &b)| i + 1 - b).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pose {
    pos: Pos,
    heading: Heading,
}

/// Recent trace and poses; `poses[k]` is the pose at time `base + k` and
/// `trace[k]` the symbol read from it.
struct History {
    base: u64,
    trace: Vec<u8>,
    poses: Vec<Pose>,
}

impl History {
    fn new(conf: &AntConfiguration) -> Self {
        Self {
            base: 0,
            trace: Vec::new(),
            poses: vec![Pose { pos: conf.position, heading: conf.heading }],
        }
    }

    fn now(&self) -> u64 {
        self.base + self.trace.len() as u64
    }

    fn trim(&mut self, keep: usize) {
        if self.trace.len() > 2 * keep {
            let cut = self.trace.len() - keep;
            self.trace.drain(..cut);
            self.poses.drain(..cut);
            self.base += cut as u64;
        }
    }
}

/// Searches for a highway whose onset is at most `budget.max_steps`.
///
/// Returns `Ok(None)` when no highway could be certified within the budget;
/// this says nothing about what happens later.
pub fn detect_highway(
    conf: &AntConfiguration,
    rule: &RuleWord,
    budget: &DetectBudget,
) -> Result<Option<HighwayDetection>, SimError> {
    conf.validate(rule)?;
    let max_period = budget.max_period.max(1) as usize;
    let check_every = max_period as u64;
    let window = 2 * max_period + check_every as usize;
    let total = budget.max_steps + budget.tail();

    let mut state = conf.clone();
    let mut hist = History::new(conf);
    while hist.now() < total {
        let chunk = check_every.min(total - hist.now());
        state.advance(rule, chunk, budget.limits, &mut |e: &StepEvent| {
            hist.trace.push(e.read);
            hist.poses.push(Pose { pos: e.to, heading: e.heading });
        })?;
        hist.trim(window);

        let Some((len, period, drift)) = periodic_suffix(&hist, window, max_period) else {
            continue;
        };
        // the periodic suffix starts at `now - len`; hunt for the earliest onset
        let suffix_start = hist.now() - len as u64;
        let onset = earliest_onset(conf, rule, &hist, suffix_start, period, drift, budget.limits)?;
        if onset > budget.max_steps {
            return Ok(None);
        }
        let mut at_onset = conf.clone();
        at_onset.advance(rule, onset, budget.limits, &mut ())?;
        match certify_at(&at_onset, config_digest(conf), rule, onset, period as u64, drift, budget.limits) {
            Ok(certificate) => {
                return Ok(Some(HighwayDetection {
                    candidate: HighwayCandidate { onset, period: period as u64, drift },
                    certificate,
                }))
            }
            Err(crate::Rejection::BudgetExceeded(_)) => return Ok(None),
            Err(_) => continue,
        }
    }
    Ok(None)
}

/// Longest recent suffix with at least two copies of a period `p <= max_period`
/// along which the pose advances by a constant non-zero drift per period.
fn periodic_suffix(hist: &History, window: usize, max_period: usize) -> Option<(usize, usize, Pos)> {
    let avail = hist.trace.len().min(window);
    let reversed: Vec<u8> = hist.trace[hist.trace.len() - avail..].iter().rev().copied().collect();
    let periods = prefix_periods(&reversed);
    let (len, p) = (1..=avail)
        .rev()
        .map(|l| (l, periods[l - 1]))
        .find(|&(l, p)| l >= 2 * p && p <= max_period)?;
    if len < MIN_EVIDENCE {
        return None;
    }
    let last = hist.poses.len() - 1;
    let first = last - len;
    let drift = hist.poses[first + p].pos - hist.poses[first].pos;
    if drift.is_zero() {
        return None;
    }
    let consistent = (first..=last - p).all(|i| {
        let (a, b) = (hist.poses[i], hist.poses[i + p]);
        b.heading == a.heading && b.pos == a.pos + drift
    });
    consistent.then_some((len, p, drift))
}

/// Earliest time from which trace and poses are `period`-periodic with `drift`,
/// given that they are from `known` on.
fn earliest_onset(
    conf: &AntConfiguration,
    rule: &RuleWord,
    hist: &History,
    known: u64,
    period: usize,
    drift: Pos,
    limits: RunLimits,
) -> Result<u64, SimError> {
    let holds = |sa: u8, a: Pose, sb: u8, b: Pose| sa == sb && b.heading == a.heading && b.pos == a.pos + drift;

    // inside the stored history
    let mut t = known;
    while t > hist.base {
        let k = (t - 1 - hist.base) as usize;
        if k + period >= hist.trace.len() {
            break;
        }
        if !holds(hist.trace[k], hist.poses[k], hist.trace[k + period], hist.poses[k + period]) {
            return Ok(t);
        }
        t -= 1;
    }
    if t > hist.base || hist.base == 0 {
        return Ok(t);
    }

    // before the stored history: replay from the start
    let upto = hist.base + period as u64;
    let mut ring: VecDeque<(u8, Pose)> = VecDeque::with_capacity(period + 1);
    let mut pose = Pose { pos: conf.position, heading: conf.heading };
    let mut time = 0u64;
    let mut last_bad: Option<u64> = None;
    let mut replay = conf.clone();
    replay.advance(rule, upto, limits, &mut |e: &StepEvent| {
        ring.push_back((e.read, pose));
        pose = Pose { pos: e.to, heading: e.heading };
        if ring.len() > period {
            let (sa, a) = ring.pop_front().unwrap();
            let (sb, b) = ring[period - 1];
            let j = time - period as u64;
            if !holds(sa, a, sb, b) {
                last_bad = Some(j);
            }
        }
        time += 1;
    })?;
    Ok(last_bad.map_or(0, |j| j + 1))
}
