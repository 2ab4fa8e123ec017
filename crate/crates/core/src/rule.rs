//! Rule words: the turn program of a generalised ant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of states a pattern file can express (digits `0`-`9`).
pub const MAX_STATES: usize = 10;

/// Turn taken on a cell: `L` is counterclockwise, `R` clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Turn {
    L,
    R,
}

impl Turn {
    pub fn mirrored(self) -> Self {
        match self {
            Turn::L => Turn::R,
            Turn::R => Turn::L,
        }
    }

    /// Amount added to a heading index (mod 4) when taking this turn.
    #[inline]
    pub(crate) fn heading_delta(self) -> u8 {
        match self {
            Turn::L => 3,
            Turn::R => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRuleError {
    #[error("rule word is empty")]
    EmptyWord,
    #[error("illegal character {ch:?} at position {position}")]
    IllegalCharacter { position: usize, ch: char },
    #[error("rule word has {len} letters; at most {max} states are supported", max = MAX_STATES)]
    TooLong { len: usize },
}

/// A non-empty word over `{L, R}`. Its length is the number of cell states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleWord {
    letters: Vec<Turn>,
}

impl RuleWord {
    pub fn new(letters: Vec<Turn>) -> Result<Self, ParseRuleError> {
        if letters.is_empty() {
            return Err(ParseRuleError::EmptyWord);
        }
        if letters.len() > MAX_STATES {
            return Err(ParseRuleError::TooLong { len: letters.len() });
        }
        Ok(Self { letters })
    }

    /// Parses a word such as `LLRRRL`. Lowercase letters are accepted.
    pub fn parse(text: &str) -> Result<Self, ParseRuleError> {
        let mut letters = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            match ch.to_ascii_uppercase() {
                'L' => letters.push(Turn::L),
                'R' => letters.push(Turn::R),
                _ => return Err(ParseRuleError::IllegalCharacter { position, ch }),
            }
        }
        Self::new(letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of cell states, identical to `len`.
    pub fn states(&self) -> u8 {
        self.letters.len() as u8
    }

    pub fn letters(&self) -> &[Turn] {
        &self.letters
    }

    #[inline]
    pub fn turn(&self, state: u8) -> Turn {
        self.letters[state as usize]
    }

    #[inline]
    pub fn next_state(&self, state: u8) -> u8 {
        let next = state + 1;
        if next as usize == self.letters.len() {
            0
        } else {
            next
        }
    }

    /// Single-letter words never mix both turns and produce trivial dynamics.
    pub fn is_single_letter(&self) -> bool {
        self.letters.len() == 1
    }

    /// The word with every `L` and `R` swapped.
    pub fn mirrored(&self) -> Self {
        Self {
            letters: self.letters.iter().map(|t| t.mirrored()).collect(),
        }
    }

    /// Per-state lookup tables used by the stepping loop.
    pub(crate) fn tables(&self) -> StepTables {
        let mut turn = [0u8; MAX_STATES];
        let mut next = [0u8; MAX_STATES];
        for s in 0..self.letters.len() {
            turn[s] = self.letters[s].heading_delta();
            next[s] = self.next_state(s as u8);
        }
        StepTables { turn, next }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct StepTables {
    pub turn: [u8; MAX_STATES],
    pub next: [u8; MAX_STATES],
}

impl fmt::Display for RuleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.letters {
            f.write_str(match t {
                Turn::L => "L",
                Turn::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for RuleWord {
    type Err = ParseRuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for RuleWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RuleWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}
