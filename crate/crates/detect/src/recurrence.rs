//! Affine recurrences: growing behaviours whose `k`-th repetition lasts
//! `n0 + k·Δn` steps and shifts the ant by a constant vector.
//!
//! Detection samples the run at content-defined points (a hash of the pose and
//! the 3x3 neighbourhood), keys each sample by the heading and the full local
//! window, and looks for occurrence chains of one key with a constant pose
//! shift and arithmetically growing gaps. The chain is then re-anchored: first
//! at time 0 if the seed itself starts a repetition, otherwise at the earliest
//! step the phase can be pushed back to.

use antlab_core::digest::Fnv1a64;
use antlab_core::{AntConfiguration, Heading, Pos, RuleWord, RunLimits, SimError};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

/// One in `SAMPLE_MODULUS` steps (on average) gets its window hashed.
const SAMPLE_MODULUS: u64 = 4;
/// Successors tried when opening a chain.
const FANOUT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceParams {
    pub max_steps: u64,
    /// Half-width of the square window compared at repetition boundaries.
    pub window_radius: i64,
    /// Repetitions that must be observed.
    pub min_repetitions: usize,
    #[serde(default)]
    pub limits: RunLimits,
}

impl Default for RecurrenceParams {
    fn default() -> Self {
        Self {
            max_steps: 200_000,
            window_radius: 8,
            min_repetitions: 3,
            limits: RunLimits::NONE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRecurrence {
    pub onset: u64,
    /// Length of repetition 0.
    pub n0: u64,
    pub delta_n: u64,
    /// Pose shift per repetition.
    pub displacement: Pos,
    /// Heading at every repetition boundary.
    pub heading: Heading,
    /// Number of complete repetitions observed.
    pub repetitions: usize,
    pub window_radius: i64,
    /// False when the window at the onset differs from the one at the end of
    /// repetition 0 (the seed is not yet in its recurring shape); later
    /// boundaries always match.
    pub seed_window_matches: bool,
}

impl AffineRecurrence {
    pub fn duration(&self, k: u64) -> u64 {
        self.n0 + k * self.delta_n
    }

    /// Steps taken by the first `m` repetitions.
    pub fn cumulative(&self, m: u64) -> u64 {
        m * self.n0 + self.delta_n * m * m.saturating_sub(1) / 2
    }

    /// Time of the `k`-th boundary (`k = 0` is the onset).
    pub fn boundary(&self, k: u64) -> u64 {
        self.onset + self.cumulative(k)
    }

    pub fn boundaries(&self) -> Vec<u64> {
        (0..=self.repetitions as u64).map(|k| self.boundary(k)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pose {
    pos: Pos,
    heading: Heading,
}

fn window_key(grid: &antlab_core::Grid, pose: Pose, radius: i64, buf: &mut Vec<u8>) -> u64 {
    buf.clear();
    grid.read_window(pose.pos, radius, buf);
    let mut h = Fnv1a64::new();
    h.write_u8(pose.heading.index());
    h.write(buf);
    h.finish()
}

struct Recording {
    poses: Vec<Pose>,
    events: FxHashMap<u64, Vec<u64>>,
}

fn record(conf: &AntConfiguration, rule: &RuleWord, params: &RecurrenceParams) -> Result<Recording, SimError> {
    let mut state = conf.clone();
    let mut poses = Vec::with_capacity(params.max_steps as usize + 1);
    let mut events: FxHashMap<u64, Vec<u64>> = FxHashMap::default();
    let mut small = Vec::with_capacity(9);
    let mut big = Vec::new();
    for t in 0..=params.max_steps {
        let pose = Pose { pos: state.position, heading: state.heading };
        poses.push(pose);
        if window_key(&state.grid, pose, 1, &mut small).is_multiple_of(SAMPLE_MODULUS) {
            let key = window_key(&state.grid, pose, params.window_radius, &mut big);
            events.entry(key).or_default().push(t);
        }
        if t < params.max_steps {
            state.advance(rule, 1, params.limits, &mut ())?;
        }
    }
    Ok(Recording { poses, events })
}

#[derive(Clone, Debug)]
struct Chain {
    times: Vec<u64>,
    delta_n: u64,
    displacement: Pos,
}

fn chains_for(times: &[u64], poses: &[Pose], min_reps: usize) -> Option<Chain> {
    let present: FxHashSet<u64> = times.iter().copied().collect();
    let mut best: Option<Chain> = None;
    for a in 0..times.len() {
        for b in a + 1..times.len().min(a + 1 + FANOUT) {
            let (ta, tb) = (times[a], times[b]);
            let d = poses[tb as usize].pos - poses[ta as usize].pos;
            let g0 = tb - ta;
            let Some(&tc) = times[b + 1..]
                .iter()
                .find(|&&tc| tc - tb > g0 && poses[tc as usize].pos == poses[tb as usize].pos + d)
            else {
                continue;
            };
            let delta = (tc - tb) - g0;
            let mut chain = vec![ta, tb, tc];
            let mut gap = tc - tb;
            loop {
                let last = *chain.last().unwrap();
                let next = last + gap + delta;
                if !present.contains(&next) || poses[next as usize].pos != poses[last as usize].pos + d {
                    break;
                }
                chain.push(next);
                gap += delta;
            }
            if chain.len() > min_reps {
                let better = match &best {
                    None => true,
                    Some(b) => chain.len() > b.times.len() || (chain.len() == b.times.len() && chain[0] < b.times[0]),
                };
                if better {
                    best = Some(Chain { times: chain, delta_n: delta, displacement: d });
                }
            }
        }
    }
    best
}

/// Boundaries `B_k = onset + k·n0 + Δn·k(k-1)/2` satisfying the pose shift,
/// stopping at the first failure or the end of the recording.
fn pose_chain(poses: &[Pose], onset: u64, n0: u64, delta_n: u64, d: Pos) -> usize {
    let start = poses[onset as usize];
    let mut k = 0u64;
    loop {
        let next = onset + (k + 1) * n0 + delta_n * (k + 1) * k / 2;
        if next as usize >= poses.len() {
            return k as usize;
        }
        let p = poses[next as usize];
        let expected = Pos::new(start.pos.x + d.x * (k as i64 + 1), start.pos.y + d.y * (k as i64 + 1));
        if p.heading != start.heading || p.pos != expected {
            return k as usize;
        }
        k += 1;
    }
}

/// Searches for an affine recurrence with at least `min_repetitions` repetitions.
pub fn detect_affine_recurrence(
    conf: &AntConfiguration,
    rule: &RuleWord,
    params: &RecurrenceParams,
) -> Result<Option<AffineRecurrence>, SimError> {
    conf.validate(rule)?;
    let rec = record(conf, rule, params)?;
    let min_reps = params.min_repetitions.max(1);

    let mut keys: Vec<&u64> = rec.events.keys().collect();
    keys.sort_unstable();
    let mut best: Option<Chain> = None;
    for key in keys {
        let times = &rec.events[key];
        if times.len() <= min_reps {
            continue;
        }
        if let Some(c) = chains_for(times, &rec.poses, min_reps) {
            let better = match &best {
                None => true,
                Some(b) => c.times.len() > b.times.len() || (c.times.len() == b.times.len() && c.times[0] < b.times[0]),
            };
            if better {
                best = Some(c);
            }
        }
    }
    let Some(chain) = best else { return Ok(None) };
    if chain.delta_n == 0 {
        // constant-length repetitions are highways, not growth
        return Ok(None);
    }
    let (d, delta) = (chain.displacement, chain.delta_n);
    let g0 = chain.times[1] - chain.times[0];

    // anchor at the seed when a consistent n0 exists
    let mut anchored = None;
    for n0 in 1..=g0 {
        let reps = pose_chain(&rec.poses, 0, n0, delta, d);
        if reps >= min_reps && reps + 1 >= chain.times.len() {
            anchored = Some((0u64, n0, reps));
            break;
        }
    }
    // otherwise push the detected phase back as far as it goes
    let (onset, n0, _) = anchored.unwrap_or_else(|| {
        let (mut onset, mut n0) = (chain.times[0], g0);
        while n0 > delta && onset >= n0 - delta {
            let prev = onset - (n0 - delta);
            let (a, b) = (rec.poses[prev as usize], rec.poses[onset as usize]);
            if a.heading != b.heading || b.pos != a.pos + d {
                break;
            }
            onset = prev;
            n0 -= delta;
        }
        (onset, n0, 0)
    });
    let reps = pose_chain(&rec.poses, onset, n0, delta, d);
    if reps < min_reps {
        return Ok(None);
    }

    let mut candidate = AffineRecurrence {
        onset,
        n0,
        delta_n: delta,
        displacement: d,
        heading: rec.poses[onset as usize].heading,
        repetitions: reps,
        window_radius: params.window_radius,
        seed_window_matches: true,
    };
    let windows = boundary_windows(conf, rule, &candidate, params.limits)?;
    // boundaries from the end of repetition `skip` on must show the same
    // window; a transient before that moves the onset forward
    // (longest run of equal neighbours, earliest first)
    let (mut first, mut matched, mut run_start, mut run) = (1, 0, 1, 0);
    for k in 1..windows.len().saturating_sub(1) {
        if windows[k] == windows[k + 1] {
            run += 1;
            if run > matched {
                (first, matched) = (run_start, run);
            }
        } else {
            (run_start, run) = (k + 1, 0);
        }
    }
    if matched < min_reps.saturating_sub(1).max(1) && windows.len() > 2 {
        return Ok(None);
    }
    let skip = first as u64 - 1;
    if skip > 0 {
        candidate.onset = candidate.boundary(skip);
        candidate.n0 = candidate.duration(skip);
        candidate.repetitions -= skip as usize;
    }
    candidate.repetitions = candidate.repetitions.min(matched + 1);
    let s = skip as usize;
    candidate.seed_window_matches = windows.len() > s + 1 && windows[s] == windows[s + 1];
    Ok(Some(candidate))
}

/// Local windows at every boundary of `rec`, in the ant's position frame.
pub fn boundary_windows(
    conf: &AntConfiguration,
    rule: &RuleWord,
    rec: &AffineRecurrence,
    limits: RunLimits,
) -> Result<Vec<Vec<u8>>, SimError> {
    let mut state = conf.clone();
    let mut now = 0u64;
    let mut out = Vec::new();
    for b in rec.boundaries() {
        state.advance(rule, b - now, limits, &mut ())?;
        now = b;
        let mut w = Vec::new();
        state.grid.read_window(state.position, rec.window_radius, &mut w);
        out.push(w);
    }
    Ok(out)
}

/// Re-simulates and checks every recorded invariant of `rec`.
pub fn verify_recurrence(conf: &AntConfiguration, rule: &RuleWord, rec: &AffineRecurrence) -> Result<(), String> {
    let mut state = conf.clone();
    let mut now = 0u64;
    let mut prev: Option<(Pos, Heading, Vec<u8>)> = None;
    for (k, b) in rec.boundaries().into_iter().enumerate() {
        state.advance(rule, b - now, RunLimits::NONE, &mut ()).map_err(|e| e.to_string())?;
        now = b;
        let mut w = Vec::new();
        state.grid.read_window(state.position, rec.window_radius, &mut w);
        if let Some((p, h, pw)) = &prev {
            if state.position != *p + rec.displacement || state.heading != *h {
                return Err(format!("pose mismatch at boundary {k}"));
            }
            if (k > 1 || rec.seed_window_matches) && w != *pw {
                return Err(format!("window mismatch at boundary {k}"));
            }
        }
        prev = Some((state.position, state.heading, w));
    }
    Ok(())
}
