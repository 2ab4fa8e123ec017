//! Ant configurations and the transition function.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Heading, Pos, Rect};
use crate::grid::{tile_key, tile_offset, Grid};
use crate::rule::RuleWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("grid support of {support} cells exceeds the cap of {limit} (after {steps} steps)")]
    ResourceLimit { support: usize, limit: usize, steps: u64 },
    #[error("cell {pos} holds state {state}, but rule word {word} only has {states} states")]
    StateOutOfRange { pos: Pos, state: u8, word: String, states: u8 },
}

/// Caps applied while running.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLimits {
    /// Maximum number of non-zero cells.
    pub max_cells: Option<usize>,
}

impl RunLimits {
    pub const NONE: RunLimits = RunLimits { max_cells: None };

    pub fn max_cells(n: usize) -> Self {
        Self { max_cells: Some(n) }
    }
}

/// What happened during one application of the transition function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepEvent {
    /// Cell the ant stood on at the start of the step.
    pub cell: Pos,
    /// State read from `cell` before it was incremented.
    pub read: u8,
    /// Position after the move.
    pub to: Pos,
    /// Heading after the turn.
    pub heading: Heading,
}

/// Hook invoked once per step by [`AntConfiguration::advance`].
pub trait StepObserver {
    fn on_step(&mut self, event: &StepEvent);
}

impl StepObserver for () {
    #[inline(always)]
    fn on_step(&mut self, _: &StepEvent) {}
}

impl<F: FnMut(&StepEvent)> StepObserver for F {
    #[inline(always)]
    fn on_step(&mut self, event: &StepEvent) {
        self(event)
    }
}

/// Sequence of states read, one per step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace(pub Vec<u8>);

/// Positions of the ant after each step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory(pub Vec<Pos>);

/// Observer that appends to a trace and a trajectory.
#[derive(Clone, Debug, Default)]
pub struct Recorder {
    pub trace: Trace,
    pub trajectory: Trajectory,
}

impl Recorder {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            trace: Trace(Vec::with_capacity(n)),
            trajectory: Trajectory(Vec::with_capacity(n)),
        }
    }
}

impl StepObserver for Recorder {
    #[inline]
    fn on_step(&mut self, e: &StepEvent) {
        self.trace.0.push(e.read);
        self.trajectory.0.push(e.to);
    }
}

/// Grid, ant position and heading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AntConfiguration {
    pub grid: Grid,
    pub position: Pos,
    pub heading: Heading,
}

impl AntConfiguration {
    /// The all-zero grid with the ant at the origin facing up.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(grid: Grid, position: Pos, heading: Heading) -> Self {
        Self { grid, position, heading }
    }

    /// Checks that every stored state is below the number of states of `rule`.
    pub fn validate(&self, rule: &RuleWord) -> Result<(), SimError> {
        if self.grid.max_state() < rule.states() {
            return Ok(());
        }
        let (pos, state) = self
            .grid
            .cells()
            .into_iter()
            .find(|&(_, s)| s >= rule.states())
            .expect("max_state reported an out-of-range cell");
        Err(SimError::StateOutOfRange {
            pos,
            state,
            word: rule.to_string(),
            states: rule.states(),
        })
    }

    /// Applies the transition function once and returns the state read.
    pub fn step(&mut self, rule: &RuleWord) -> u8 {
        let k = self.grid.get(self.position);
        self.heading = Heading::from_index(self.heading.index() + rule.turn(k).heading_delta());
        self.grid.set(self.position, rule.next_state(k));
        self.position = self.position + self.heading.vector();
        k
    }

    /// The configuration one step later, leaving `self` untouched.
    pub fn stepped(&self, rule: &RuleWord) -> Self {
        let mut next = self.clone();
        next.step(rule);
        next
    }

    /// Runs `steps` steps, reporting each one to `observer`.
    ///
    /// Returns the number of steps actually taken, which is `steps` unless the
    /// support cap is exceeded. The configuration must be well-formed for `rule`.
    pub fn advance<O: StepObserver>(
        &mut self,
        rule: &RuleWord,
        steps: u64,
        limits: RunLimits,
        observer: &mut O,
    ) -> Result<u64, SimError> {
        let tables = rule.tables();
        let limit = limits.max_cells.unwrap_or(usize::MAX);
        let mut pos = self.position;
        let mut heading = self.heading.index();
        let mut key = tile_key(pos);
        let mut tile = self.grid.tile_index(key);
        let mut nonzero = self.grid.nonzero;
        let mut done = 0u64;
        let mut result = Ok(());
        while done < steps {
            let k_new = tile_key(pos);
            if k_new != key {
                key = k_new;
                tile = self.grid.tile_index(key);
            }
            let cell = &mut self.grid.tiles[tile].cells[tile_offset(pos)];
            let k = *cell;
            let next = tables.next[k as usize];
            *cell = next;
            if k == 0 {
                nonzero += 1;
            } else if next == 0 {
                nonzero -= 1;
            }
            heading = (heading + tables.turn[k as usize]) & 3;
            let h = Heading::from_index(heading);
            let from = pos;
            pos = pos + h.vector();
            done += 1;
            observer.on_step(&StepEvent {
                cell: from,
                read: k,
                to: pos,
                heading: h,
            });
            if nonzero > limit {
                result = Err(SimError::ResourceLimit {
                    support: nonzero,
                    limit,
                    steps: done,
                });
                break;
            }
        }
        self.position = pos;
        self.heading = Heading::from_index(heading);
        self.grid.nonzero = nonzero;
        result.map(|_| done)
    }

    pub fn support_box(&self) -> Option<Rect> {
        self.grid.support_box()
    }

    /// Reflection across the vertical axis. Running the mirrored configuration
    /// under the mirrored rule word mirrors the whole evolution.
    pub fn mirrored(&self) -> Self {
        Self {
            grid: self.grid.mirrored(),
            position: self.position.mirrored(),
            heading: self.heading.mirrored(),
        }
    }
}

/// Which sequences [`run`] should record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RecordFlags {
    pub trace: bool,
    pub trajectory: bool,
}

impl RecordFlags {
    pub const NONE: RecordFlags = RecordFlags { trace: false, trajectory: false };
    pub const ALL: RecordFlags = RecordFlags { trace: true, trajectory: true };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub config: AntConfiguration,
    pub trace: Option<Trace>,
    pub trajectory: Option<Trajectory>,
}

/// Computes the configuration after `steps` steps from `conf`.
pub fn run(
    conf: &AntConfiguration,
    rule: &RuleWord,
    steps: u64,
    record: RecordFlags,
    limits: RunLimits,
) -> Result<RunOutput, SimError> {
    conf.validate(rule)?;
    let mut config = conf.clone();
    if record == RecordFlags::NONE {
        config.advance(rule, steps, limits, &mut ())?;
        return Ok(RunOutput { config, trace: None, trajectory: None });
    }
    let mut rec = Recorder::with_capacity(steps.min(1 << 24) as usize);
    config.advance(rule, steps, limits, &mut rec)?;
    Ok(RunOutput {
        config,
        trace: record.trace.then_some(rec.trace),
        trajectory: record.trajectory.then_some(rec.trajectory),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lr() -> RuleWord {
        RuleWord::parse("LR").unwrap()
    }

    #[test]
    fn first_step_of_langton() {
        let mut c = AntConfiguration::zero();
        let k = c.step(&lr());
        assert_eq!(k, 0);
        assert_eq!(c.heading, Heading::Left);
        assert_eq!(c.position, Pos::new(-1, 0));
        assert_eq!(c.grid.get(Pos::new(0, 0)), 1);
    }

    #[test]
    fn first_step_of_mirror() {
        let mut c = AntConfiguration::zero();
        c.step(&RuleWord::parse("RL").unwrap());
        assert_eq!(c.heading, Heading::Right);
        assert_eq!(c.position, Pos::new(1, 0));
        assert_eq!(c.grid.get(Pos::new(0, 0)), 1);
    }

    #[test]
    fn second_step_of_langton() {
        let mut c = AntConfiguration::zero();
        c.step(&lr());
        c.step(&lr());
        assert_eq!(c.heading, Heading::Down);
        assert_eq!(c.position, Pos::new(-1, -1));
        assert_eq!(c.grid.get(Pos::new(-1, 0)), 1);
    }

    #[test]
    fn advance_matches_single_steps() {
        let rule = RuleWord::parse("LLRRRL").unwrap();
        let mut a = AntConfiguration::zero();
        let mut b = AntConfiguration::zero();
        for _ in 0..5000 {
            a.step(&rule);
        }
        b.advance(&rule, 5000, RunLimits::NONE, &mut ()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.grid.support_len(), a.grid.cells().len());
    }

    #[test]
    fn zero_steps_is_identity() {
        let c = AntConfiguration::zero();
        let out = run(&c, &lr(), 0, RecordFlags::ALL, RunLimits::NONE).unwrap();
        assert_eq!(out.config, c);
        assert_eq!(out.trace.unwrap().0.len(), 0);
    }

    #[test]
    fn short_run_records_unit_moves() {
        let out = run(&AntConfiguration::zero(), &lr(), 4, RecordFlags::ALL, RunLimits::NONE).unwrap();
        let traj = out.trajectory.unwrap().0;
        assert_eq!(traj.len(), 4);
        let mut prev = Pos::ORIGIN;
        for p in traj {
            assert_eq!((p - prev).manhattan(), 1);
            prev = p;
        }
    }

    #[test]
    fn resource_cap_stops_run() {
        let err = run(
            &AntConfiguration::zero(),
            &lr(),
            1000,
            RecordFlags::NONE,
            RunLimits::max_cells(10),
        )
        .unwrap_err();
        assert!(matches!(err, SimError::ResourceLimit { support: 11, limit: 10, .. }));
    }

    #[test]
    fn out_of_range_state_rejected() {
        let mut c = AntConfiguration::zero();
        c.grid.set(Pos::new(3, 4), 2);
        let err = run(&c, &lr(), 1, RecordFlags::NONE, RunLimits::NONE).unwrap_err();
        assert!(matches!(err, SimError::StateOutOfRange { state: 2, states: 2, .. }));
    }

    #[test]
    fn support_box_bounded_by_steps() {
        let out = run(&AntConfiguration::zero(), &lr(), 10_000, RecordFlags::NONE, RunLimits::NONE).unwrap();
        let b = out.config.support_box().unwrap();
        assert!(b.width() <= 10_000 && b.height() <= 10_000);
    }
}
