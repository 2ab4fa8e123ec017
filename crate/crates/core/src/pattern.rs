//! Seed patterns and their text file format.
//!
//! ```text
//! # name: p_example
//! # provenance: searched
//! ant LLRRRL 0 0 U
//! origin -1 1
//! 1.2
//! .5.
//! ```
//!
//! The `ant` line names the rule word the pattern is meant for and the ant's
//! position and heading (`U`, `R`, `D`, `L`). The `origin` line gives the
//! coordinates of the first character of the first body row. Body rows run
//! from the top (largest `y`) downwards; `.` is state 0 and a digit is a state.
//! Lines starting with `#` before the header are comments; `# name:` and
//! `# provenance:` are retained.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ant::AntConfiguration;
use crate::geom::{Heading, Pos, Rect};
use crate::grid::Grid;
use crate::rule::RuleWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("cell {pos} has state {state}; rule word {word} has {states} states")]
    StateOutOfRange { pos: Pos, state: u8, word: String, states: u8 },
}

fn parse_err(line: usize, reason: impl Into<String>) -> PatternError {
    PatternError::Parse { line, reason: reason.into() }
}

/// Where a pattern came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Transcribed,
    Searched,
    Constructed,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Transcribed => "transcribed",
            Provenance::Searched => "searched",
            Provenance::Constructed => "constructed",
        })
    }
}

impl FromStr for Provenance {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "transcribed" => Ok(Provenance::Transcribed),
            "searched" => Ok(Provenance::Searched),
            "constructed" => Ok(Provenance::Constructed),
            _ => Err(format!("unknown provenance {s:?}")),
        }
    }
}

/// A finite perturbation of the zero configuration plus an initial ant pose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: Option<String>,
    pub word: RuleWord,
    /// Non-zero cells only.
    pub cells: BTreeMap<Pos, u8>,
    pub ant: Pos,
    pub heading: Heading,
    pub provenance: Option<Provenance>,
}

impl Pattern {
    pub fn empty(word: RuleWord) -> Self {
        Self {
            name: None,
            word,
            cells: BTreeMap::new(),
            ant: Pos::ORIGIN,
            heading: Heading::Up,
            provenance: None,
        }
    }

    /// Captures the full configuration as a pattern.
    pub fn from_configuration(conf: &AntConfiguration, word: RuleWord) -> Self {
        Self {
            name: None,
            word,
            cells: conf.grid.cells().into_iter().collect(),
            ant: conf.position,
            heading: conf.heading,
            provenance: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn set(&mut self, p: Pos, state: u8) {
        if state == 0 {
            self.cells.remove(&p);
        } else {
            self.cells.insert(p, state);
        }
    }

    pub fn get(&self, p: Pos) -> u8 {
        self.cells.get(&p).copied().unwrap_or(0)
    }

    pub fn check_states(&self, rule: &RuleWord) -> Result<(), PatternError> {
        match self.cells.iter().find(|(_, &s)| s >= rule.states()) {
            None => Ok(()),
            Some((&pos, &state)) => Err(PatternError::StateOutOfRange {
                pos,
                state,
                word: rule.to_string(),
                states: rule.states(),
            }),
        }
    }

    pub fn bounding_box(&self) -> Option<Rect> {
        let mut it = self.cells.keys();
        let first = *it.next()?;
        let mut r = Rect::point(first);
        for &p in it {
            r.include(p);
        }
        Some(r)
    }

    /// Writes the pattern's cells and pose into `base`.
    pub fn apply_to(&self, base: &mut AntConfiguration) {
        for (&p, &s) in &self.cells {
            base.grid.set(p, s);
        }
        base.position = self.ant;
        base.heading = self.heading;
    }

    /// The zero configuration perturbed by this pattern.
    pub fn to_configuration(&self) -> AntConfiguration {
        AntConfiguration::new(
            Grid::from_cells(self.cells.iter().map(|(&p, &s)| (p, s))),
            self.ant,
            self.heading,
        )
    }

    pub fn translated(&self, by: Pos) -> Self {
        Self {
            cells: self.cells.iter().map(|(&p, &s)| (p + by, s)).collect(),
            ant: self.ant + by,
            ..self.clone()
        }
    }

    /// Quarter turn counterclockwise about the origin. The rule word is
    /// unchanged since the dynamics commute with rotations.
    pub fn rotated_ccw(&self) -> Self {
        Self {
            cells: self.cells.iter().map(|(&p, &s)| (p.rotated_ccw(), s)).collect(),
            ant: self.ant.rotated_ccw(),
            heading: self.heading.counterclockwise(),
            ..self.clone()
        }
    }

    /// Reflection across the vertical axis with the rule word's turns swapped.
    pub fn mirrored(&self) -> Self {
        Self {
            word: self.word.mirrored(),
            cells: self.cells.iter().map(|(&p, &s)| (p.mirrored(), s)).collect(),
            ant: self.ant.mirrored(),
            heading: self.heading.mirrored(),
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            let _ = writeln!(out, "# name: {name}");
        }
        if let Some(p) = self.provenance {
            let _ = writeln!(out, "# provenance: {p}");
        }
        let _ = writeln!(out, "ant {} {} {} {}", self.word, self.ant.x, self.ant.y, self.heading.letter());
        match self.bounding_box() {
            None => {
                let _ = writeln!(out, "origin {} {}", self.ant.x, self.ant.y);
            }
            Some(b) => {
                let _ = writeln!(out, "origin {} {}", b.min.x, b.max.y);
                for y in (b.min.y..=b.max.y).rev() {
                    for x in b.min.x..=b.max.x {
                        out.push(match self.get(Pos::new(x, y)) {
                            0 => '.',
                            s => char::from(b'0' + s),
                        });
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        let mut name = None;
        let mut provenance = None;
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

        let (header_no, header) = loop {
            match lines.next() {
                None => return Err(parse_err(1, "missing `ant` header")),
                Some((_, l)) if l.trim().is_empty() => continue,
                Some((no, l)) if l.starts_with('#') => {
                    let body = l[1..].trim();
                    if let Some(v) = body.strip_prefix("name:") {
                        name = Some(v.trim().to_string());
                    } else if let Some(v) = body.strip_prefix("provenance:") {
                        provenance = Some(v.trim().parse().map_err(|e: String| parse_err(no, e))?);
                    }
                }
                Some(found) => break found,
            }
        };
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "ant" {
            return Err(parse_err(header_no, "expected `ant <word> <i> <j> <heading>`"));
        }
        let word = RuleWord::parse(fields[1]).map_err(|e| parse_err(header_no, e.to_string()))?;
        let int = |s: &str, line: usize| {
            s.parse::<i64>().map_err(|_| parse_err(line, format!("bad integer {s:?}")))
        };
        let ant = Pos::new(int(fields[2], header_no)?, int(fields[3], header_no)?);
        let heading: Heading = fields[4].parse().map_err(|e: String| parse_err(header_no, e))?;

        let (origin_no, origin_line) = lines
            .next()
            .ok_or_else(|| parse_err(header_no + 1, "missing `origin` line"))?;
        let fields: Vec<&str> = origin_line.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "origin" {
            return Err(parse_err(origin_no, "expected `origin <i0> <j0>`"));
        }
        let origin = Pos::new(int(fields[1], origin_no)?, int(fields[2], origin_no)?);

        let mut cells = BTreeMap::new();
        for (row, (line_no, line)) in lines.enumerate() {
            let y = origin.y - row as i64;
            for (col, ch) in line.chars().enumerate() {
                let x = origin.x + col as i64;
                match ch {
                    '.' => {}
                    '0'..='9' => {
                        let s = ch as u8 - b'0';
                        if s != 0 {
                            cells.insert(Pos::new(x, y), s);
                        }
                    }
                    c if c.is_whitespace() => {}
                    c => return Err(parse_err(line_no, format!("unexpected character {c:?}"))),
                }
            }
        }
        Ok(Self { name, word, cells, ant, heading, provenance })
    }
}

impl FromStr for Pattern {
    type Err = PatternError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::parse(s)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Overwrites `base` with the non-zero cells and pose of `pattern`.
pub fn apply_pattern(pattern: &Pattern, base: &AntConfiguration) -> AntConfiguration {
    let mut out = base.clone();
    pattern.apply_to(&mut out);
    out
}
