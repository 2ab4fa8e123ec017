//! Highway certificates.
//!
//! A certificate for `(t0, n, d)` records the set `R` of cells read during
//! steps `[t0, t0 + n)` together with their states at time `t0`. The basic
//! condition is that the pose at `t0 + n` is the pose at `t0` shifted by `d`
//! (same heading) and the configuration at `t0 + n` restricted to `R + d`
//! equals the configuration at `t0` restricted to `R`, shifted by `d`. That
//! makes period 2 a shifted replay of period 1.
//!
//! One period is not enough on its own: a cell of `R + jd` (`j >= 2`) may
//! have been written by period 1 without lying in `R + d`, or may hold debris
//! from before `t0`. So the condition is checked at the end of periods
//! `j = 1, …, J`, where `J` exceeds both the span of `R` along `d` and the
//! reach of the `t0` support along `d` (in units of `d`). While all earlier
//! periods are shifted replays, the state of `x + jd` (`x ∈ R`) at `t0 + jn`
//! is its `t0` state plus the visits it received in periods `j − K … j − 1`,
//! `K` the span. Past `J` the `t0` state is 0 and the visit count does not
//! depend on `j`, so the condition at `J` carries over to every later period:
//! the trace is `n`-periodic and `y[i + n] = y[i] + d` for every `i >= t0`.

use antlab_core::digest::{config_digest, digest_parts};
use antlab_core::{AntConfiguration, Heading, Pos, RuleWord, RunLimits, SimError, StepEvent};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::equivalence::least_rotation;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    #[error("drift is zero")]
    ZeroDrift,
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("pose after one period is {found_pos} {found_heading}, expected {expected_pos} {expected_heading}")]
    PoseMismatch {
        expected_pos: Pos,
        expected_heading: Heading,
        found_pos: Pos,
        found_heading: Heading,
    },
    #[error("cell {cell} holds {found} after one period, expected {expected}")]
    PatternMismatch { cell: Pos, expected: u8, found: u8 },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

impl From<SimError> for Rejection {
    fn from(e: SimError) -> Self {
        Rejection::BudgetExceeded(e.to_string())
    }
}

/// Machine-checkable evidence that a run is in a highway from `onset` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighwayCertificate {
    pub word: RuleWord,
    /// Digest of the configuration the run started from.
    pub start_digest: u64,
    pub onset: u64,
    pub period: u64,
    pub drift: Pos,
    /// Cells read during one period, with their states at `onset`. Sorted.
    pub read_set: Vec<(Pos, u8)>,
    /// States of `read_set + drift` at `onset + period`, in the same order.
    pub witness: Vec<u8>,
    pub pose_start: (Pos, Heading),
    pub pose_end: (Pos, Heading),
    /// Symbols read during `[onset, onset + period)`.
    pub trace_period: Vec<u8>,
    /// Consecutive periods `J` after the onset that were checked.
    pub periods_checked: u64,
}

impl HighwayCertificate {
    /// Least rotation of the periodic trace word, used for equivalence.
    pub fn canonical_trace(&self) -> Vec<u8> {
        least_rotation(&self.trace_period)
    }

    pub fn canonical_trace_string(&self) -> String {
        self.canonical_trace().iter().map(|&s| char::from(b'0' + s)).collect()
    }

    /// Digest of the witness data: read set, pose at onset.
    pub fn witness_digest(&self) -> u64 {
        digest_parts(&self.read_set, self.pose_start.0, self.pose_start.1)
    }

    pub fn is_diagonal(&self) -> bool {
        self.drift.x.abs() == self.drift.y.abs()
    }

    /// Re-checks the first-period conditions from the recorded data alone.
    pub fn check(&self) -> Result<(), Rejection> {
        if self.drift.is_zero() {
            return Err(Rejection::ZeroDrift);
        }
        for (&(cell, expected), &found) in self.read_set.iter().zip(&self.witness) {
            if expected != found {
                return Err(Rejection::PatternMismatch { cell: cell + self.drift, expected, found });
            }
        }
        let (p0, h0) = self.pose_start;
        let (p1, h1) = self.pose_end;
        if p1 != p0 + self.drift || h1 != h0 {
            return Err(Rejection::PoseMismatch {
                expected_pos: p0 + self.drift,
                expected_heading: h0,
                found_pos: p1,
                found_heading: h1,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            word: self.word.to_string(),
            onset: self.onset,
            period: self.period,
            drift: [self.drift.x, self.drift.y],
            read_set_size: self.read_set.len(),
            trace_period_canonical: self.canonical_trace_string(),
            digest: antlab_core::digest::hex(self.start_digest),
        }
    }
}

/// Serialised form of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub word: String,
    pub onset: u64,
    pub period: u64,
    pub drift: [i64; 2],
    pub read_set_size: usize,
    pub trace_period_canonical: String,
    pub digest: String,
}

/// Certifies a highway with period `n` and drift `drift` starting at `t0`.
///
/// Simulates `t0 + n` steps from `conf`. `limits` caps grid support.
pub fn certify_highway(
    conf: &AntConfiguration,
    rule: &RuleWord,
    t0: u64,
    n: u64,
    drift: Pos,
    limits: RunLimits,
) -> Result<HighwayCertificate, Rejection> {
    if drift.is_zero() {
        return Err(Rejection::ZeroDrift);
    }
    if n == 0 {
        return Err(Rejection::ZeroPeriod);
    }
    conf.validate(rule)?;
    let mut state = conf.clone();
    state.advance(rule, t0, limits, &mut ())?;
    certify_at(&state, config_digest(conf), rule, t0, n, drift, limits)
}

/// First-period conditions only, from the configuration reached at step
/// `t0`: necessary for a highway but not sufficient (`periods_checked` is 1).
pub fn period_witness(
    at_onset: &AntConfiguration,
    start_digest: u64,
    rule: &RuleWord,
    t0: u64,
    n: u64,
    drift: Pos,
    limits: RunLimits,
) -> Result<HighwayCertificate, Rejection> {
    if drift.is_zero() {
        return Err(Rejection::ZeroDrift);
    }
    if n == 0 {
        return Err(Rejection::ZeroPeriod);
    }
    let mut state = at_onset.clone();
    let pose_start = (state.position, state.heading);
    let mut first_read: FxHashMap<Pos, u8> = FxHashMap::default();
    let mut trace_period = Vec::with_capacity(n as usize);
    state.advance(rule, n, limits, &mut |e: &StepEvent| {
        first_read.entry(e.cell).or_insert(e.read);
        trace_period.push(e.read);
    })?;
    let pose_end = (state.position, state.heading);

    let mut read_set: Vec<(Pos, u8)> = first_read.into_iter().collect();
    read_set.sort_unstable_by_key(|&(p, _)| p);
    let witness = read_set.iter().map(|&(p, _)| state.grid.get(p + drift)).collect();

    let cert = HighwayCertificate {
        word: rule.clone(),
        start_digest,
        onset: t0,
        period: n,
        drift,
        read_set,
        witness,
        pose_start,
        pose_end,
        trace_period,
        periods_checked: 1,
    };
    cert.check()?;
    Ok(cert)
}

/// Certifies starting from the configuration reached at step `t0`.
pub(crate) fn certify_at(
    at_onset: &AntConfiguration,
    start_digest: u64,
    rule: &RuleWord,
    t0: u64,
    n: u64,
    drift: Pos,
    limits: RunLimits,
) -> Result<HighwayCertificate, Rejection> {
    let mut cert = period_witness(at_onset, start_digest, rule, t0, n, drift, limits)?;
    let mut state = at_onset.clone();
    state.advance(rule, n, limits, &mut ())?;
    let pose_start = cert.pose_start;
    cert.periods_checked = induction_depth(&cert, at_onset);
    for j in 2..=cert.periods_checked {
        state.advance(rule, n, limits, &mut ())?;
        let shift = drift * j as i64;
        let (p0, h0) = pose_start;
        if state.position != p0 + shift || state.heading != h0 {
            return Err(Rejection::PoseMismatch {
                expected_pos: p0 + shift,
                expected_heading: h0,
                found_pos: state.position,
                found_heading: state.heading,
            });
        }
        for &(x, expected) in &cert.read_set {
            let found = state.grid.get(x + shift);
            if found != expected {
                return Err(Rejection::PatternMismatch { cell: x + shift, expected, found });
            }
        }
    }
    Ok(cert)
}

/// Periods that must repeat before the induction closes (see module docs):
/// one more than the larger of the read set's own span along the drift and
/// the reach of the onset support past the read set, both in drift units.
fn induction_depth(cert: &HighwayCertificate, at_onset: &AntConfiguration) -> u64 {
    let d = cert.drift;
    let dd = d.x * d.x + d.y * d.y;
    let proj = |p: Pos| p.x * d.x + p.y * d.y;
    let r_min = cert.read_set.iter().map(|&(p, _)| proj(p)).min().unwrap_or(0);
    let r_max = cert.read_set.iter().map(|&(p, _)| proj(p)).max().unwrap_or(0);
    let s_max = at_onset
        .support_box()
        .map(|b| [b.min, b.max, Pos::new(b.min.x, b.max.y), Pos::new(b.max.x, b.min.y)].into_iter().map(proj).max().unwrap())
        .unwrap_or(r_min);
    let span = (r_max - r_min) / dd;
    let reach = (s_max - r_min).max(0) / dd;
    span.max(reach) as u64 + 1
}

/// Outcome of replaying a certified highway for several further periods.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SoundnessReport {
    pub periods_checked: u64,
    /// Steps `i` where `trace[i + n] != trace[i]`.
    pub trace_violations: u64,
    /// Steps `i` where `y[i + n] != y[i] + d`.
    pub drift_violations: u64,
    /// Reads outside `R + j·d` during period `j`.
    pub out_of_set_reads: u64,
}

impl SoundnessReport {
    pub fn is_clean(&self) -> bool {
        self.trace_violations == 0 && self.drift_violations == 0 && self.out_of_set_reads == 0
    }
}

/// Independently replays `periods + 1` periods after the onset and counts any
/// deviation from periodicity, plus any read outside the shifted read set.
pub fn verify_extended(
    conf: &AntConfiguration,
    rule: &RuleWord,
    cert: &HighwayCertificate,
    periods: u64,
) -> Result<SoundnessReport, SimError> {
    let n = cert.period as usize;
    let mut state = conf.clone();
    state.advance(rule, cert.onset, RunLimits::NONE, &mut ())?;
    let read_set: rustc_hash::FxHashSet<Pos> = cert.read_set.iter().map(|&(p, _)| p).collect();
    let total = (periods + 1) * cert.period;
    let mut trace = Vec::with_capacity(total as usize);
    let mut traj = Vec::with_capacity(total as usize);
    let mut out_of_set = 0u64;
    let mut step = 0u64;
    state.advance(rule, total, RunLimits::NONE, &mut |e: &StepEvent| {
        let j = (step / cert.period) as i64;
        let shift = Pos::new(cert.drift.x * j, cert.drift.y * j);
        if !read_set.contains(&(e.cell - shift)) {
            out_of_set += 1;
        }
        trace.push(e.read);
        traj.push(e.to);
        step += 1;
    })?;
    let mut report = SoundnessReport {
        periods_checked: periods,
        out_of_set_reads: out_of_set,
        ..Default::default()
    };
    for i in 0..(periods as usize * n) {
        if trace[i + n] != trace[i] {
            report.trace_violations += 1;
        }
        if traj[i + n] != traj[i] + cert.drift {
            report.drift_violations += 1;
        }
    }
    Ok(report)
}
