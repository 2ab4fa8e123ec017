//! Lattice coordinates and headings.
//!
//! `x` grows to the right and `y` grows upwards; `Up` is `(0, 1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub x: i64,
    pub y: i64,
}

impl Pos {
    pub const ORIGIN: Pos = Pos { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn is_zero(self) -> bool {
        self.x == 0 && self.y == 0
    }

    /// Reflection across the vertical axis.
    pub fn mirrored(self) -> Self {
        Self { x: -self.x, y: self.y }
    }

    /// Quarter turn counterclockwise about the origin.
    pub fn rotated_ccw(self) -> Self {
        Self { x: -self.y, y: self.x }
    }

    pub fn manhattan(self) -> i64 {
        self.x.abs() + self.y.abs()
    }
}

impl Add for Pos {
    type Output = Pos;
    fn add(self, o: Pos) -> Pos {
        Pos::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Pos {
    type Output = Pos;
    fn sub(self, o: Pos) -> Pos {
        Pos::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<i64> for Pos {
    type Output = Pos;
    fn mul(self, k: i64) -> Pos {
        Pos::new(self.x * k, self.y * k)
    }
}

impl Neg for Pos {
    type Output = Pos;
    fn neg(self) -> Pos {
        Pos::new(-self.x, -self.y)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Pos {
    fn from((x, y): (i64, i64)) -> Self {
        Pos::new(x, y)
    }
}

/// The four internal states of the ant. Discriminants run clockwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Heading {
    #[default]
    Up = 0,
    Right = 1,
    Down = 2,
    Left = 3,
}

const VECTORS: [Pos; 4] = [Pos::new(0, 1), Pos::new(1, 0), Pos::new(0, -1), Pos::new(-1, 0)];
const ALL: [Heading; 4] = [Heading::Up, Heading::Right, Heading::Down, Heading::Left];

impl Heading {
    pub const ALL: [Heading; 4] = ALL;

    #[inline]
    pub fn from_index(i: u8) -> Self {
        ALL[(i & 3) as usize]
    }

    #[inline]
    pub fn index(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn vector(self) -> Pos {
        VECTORS[self as usize]
    }

    pub fn clockwise(self) -> Self {
        Self::from_index(self.index() + 1)
    }

    pub fn counterclockwise(self) -> Self {
        Self::from_index(self.index() + 3)
    }

    /// Heading whose unit vector is `v`, if `v` is a unit lattice vector.
    pub fn from_vector(v: Pos) -> Option<Self> {
        VECTORS.iter().position(|&u| u == v).map(|i| ALL[i])
    }

    /// Reflection across the vertical axis: `Left` and `Right` swap.
    pub fn mirrored(self) -> Self {
        match self {
            Heading::Left => Heading::Right,
            Heading::Right => Heading::Left,
            h => h,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Heading::Up => 'U',
            Heading::Right => 'R',
            Heading::Down => 'D',
            Heading::Left => 'L',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'U' => Some(Heading::Up),
            'R' => Some(Heading::Right),
            'D' => Some(Heading::Down),
            'L' => Some(Heading::Left),
            _ => None,
        }
    }
}

impl fmt::Display for Heading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Heading {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Heading::from_letter(c).ok_or_else(|| format!("bad heading {s:?}")),
            _ => match s.to_ascii_lowercase().as_str() {
                "up" => Ok(Heading::Up),
                "right" => Ok(Heading::Right),
                "down" => Ok(Heading::Down),
                "left" => Ok(Heading::Left),
                _ => Err(format!("bad heading {s:?}")),
            },
        }
    }
}

/// Inclusive axis-aligned integer rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rect {
    pub min: Pos,
    pub max: Pos,
}

impl Rect {
    pub fn point(p: Pos) -> Self {
        Self { min: p, max: p }
    }

    pub fn include(&mut self, p: Pos) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(self, other: Rect) -> Rect {
        let mut r = self;
        r.include(other.min);
        r.include(other.max);
        r
    }

    pub fn width(&self) -> i64 {
        self.max.x - self.min.x + 1
    }

    pub fn height(&self) -> i64 {
        self.max.y - self.min.y + 1
    }

    pub fn contains(&self, p: Pos) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn expand(self, margin: i64) -> Rect {
        Rect {
            min: Pos::new(self.min.x - margin, self.min.y - margin),
            max: Pos::new(self.max.x + margin, self.max.y + margin),
        }
    }

    /// Centre in half-cell units, as floats.
    pub fn center(&self) -> (f64, f64) {
        (
            (self.min.x + self.max.x) as f64 / 2.0,
            (self.min.y + self.max.y) as f64 / 2.0,
        )
    }

    /// Half the length of the diagonal, in cells.
    pub fn half_diagonal(&self) -> f64 {
        let w = self.width() as f64;
        let h = self.height() as f64;
        (w * w + h * h).sqrt() / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterclockwise_cycle() {
        let h = Heading::Up;
        assert_eq!(h.counterclockwise(), Heading::Left);
        assert_eq!(h.counterclockwise().counterclockwise(), Heading::Down);
        assert_eq!(h.counterclockwise().counterclockwise().counterclockwise(), Heading::Right);
        for h in Heading::ALL {
            assert_eq!(h.clockwise().counterclockwise(), h);
        }
    }

    #[test]
    fn vectors() {
        assert_eq!(Heading::Up.vector(), Pos::new(0, 1));
        assert_eq!(Heading::Right.vector(), Pos::new(1, 0));
        assert_eq!(Heading::Down.vector(), Pos::new(0, -1));
        assert_eq!(Heading::Left.vector(), Pos::new(-1, 0));
        for h in Heading::ALL {
            assert_eq!(Heading::from_vector(h.vector()), Some(h));
            // rotating the vector matches turning the heading
            assert_eq!(h.vector().rotated_ccw(), h.counterclockwise().vector());
        }
    }

    #[test]
    fn mirror_matches_vector_reflection() {
        for h in Heading::ALL {
            assert_eq!(h.mirrored().vector(), h.vector().mirrored());
        }
    }

    #[test]
    fn rect_ops() {
        let mut r = Rect::point(Pos::new(2, -3));
        assert_eq!((r.width(), r.height()), (1, 1));
        r.include(Pos::new(-1, 0));
        assert_eq!(r.min, Pos::new(-1, -3));
        assert_eq!(r.max, Pos::new(2, 0));
        assert!(r.contains(Pos::new(0, -1)));
        assert!(!r.contains(Pos::new(3, -1)));
    }
}
