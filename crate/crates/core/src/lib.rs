//! Generalised ants (turmites) on the square lattice.
//!
//! An ant with rule word `w` over `{L, R}` stands on a cell in state `k`,
//! turns counterclockwise if `w[k] = L` and clockwise if `w[k] = R`,
//! increments the cell modulo `|w|` and moves one cell forward.

pub mod ant;
pub mod digest;
pub mod geom;
pub mod grid;
pub mod pattern;
pub mod reference;
pub mod rule;

pub use ant::{
    run, AntConfiguration, RecordFlags, Recorder, RunLimits, RunOutput, SimError, StepEvent,
    StepObserver, Trace, Trajectory,
};
pub use digest::{config_digest, Fnv1a64};
pub use geom::{Heading, Pos, Rect};
pub use grid::Grid;
pub use pattern::{apply_pattern, Pattern, PatternError, Provenance};
pub use rule::{ParseRuleError, RuleWord, Turn};
