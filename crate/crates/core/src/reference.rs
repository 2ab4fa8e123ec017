//! Naive dense-array simulator used to cross-check the sparse engine.
//!
//! Shares no stepping code with [`crate::ant`]: the grid is a single
//! row-major `Vec<u8>` that is re-allocated with a larger margin whenever the
//! ant walks off its edge, and turns are computed from the letters directly.

use crate::geom::{Heading, Pos};
use crate::rule::{RuleWord, Turn};

pub struct DenseAnt {
    /// Coordinates of `cells[0]`.
    origin: (i64, i64),
    width: usize,
    height: usize,
    cells: Vec<u8>,
    pub x: i64,
    pub y: i64,
    /// 0 = up, 1 = right, 2 = down, 3 = left.
    pub dir: u8,
}

impl DenseAnt {
    /// Builds a dense copy of the given cells and pose.
    pub fn new(cells: &[(Pos, u8)], position: Pos, heading: Heading) -> Self {
        let mut xs: Vec<i64> = cells.iter().map(|(p, _)| p.x).collect();
        let mut ys: Vec<i64> = cells.iter().map(|(p, _)| p.y).collect();
        xs.push(position.x);
        ys.push(position.y);
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let margin = 8;
        let width = (x1 - x0 + 1 + 2 * margin) as usize;
        let height = (y1 - y0 + 1 + 2 * margin) as usize;
        let mut ant = DenseAnt {
            origin: (x0 - margin, y0 - margin),
            width,
            height,
            cells: vec![0; width * height],
            x: position.x,
            y: position.y,
            dir: match heading {
                Heading::Up => 0,
                Heading::Right => 1,
                Heading::Down => 2,
                Heading::Left => 3,
            },
        };
        for &(p, s) in cells {
            let i = ant.index(p.x, p.y).unwrap();
            ant.cells[i] = s;
        }
        ant
    }

    fn index(&self, x: i64, y: i64) -> Option<usize> {
        let cx = x - self.origin.0;
        let cy = y - self.origin.1;
        if cx < 0 || cy < 0 || cx >= self.width as i64 || cy >= self.height as i64 {
            None
        } else {
            Some(cy as usize * self.width + cx as usize)
        }
    }

    fn grow(&mut self) {
        let margin = self.width.max(self.height) as i64;
        let width = self.width + 2 * margin as usize;
        let height = self.height + 2 * margin as usize;
        let mut cells = vec![0; width * height];
        for row in 0..self.height {
            let dst = (row + margin as usize) * width + margin as usize;
            cells[dst..dst + self.width].copy_from_slice(&self.cells[row * self.width..(row + 1) * self.width]);
        }
        self.origin = (self.origin.0 - margin, self.origin.1 - margin);
        self.width = width;
        self.height = height;
        self.cells = cells;
    }

    /// One step; returns the state read.
    pub fn step(&mut self, word: &RuleWord) -> u8 {
        let i = loop {
            match self.index(self.x, self.y) {
                Some(i) => break i,
                None => self.grow(),
            }
        };
        let k = self.cells[i];
        self.dir = match word.letters()[k as usize] {
            Turn::R => (self.dir + 1) % 4,
            Turn::L => (self.dir + 3) % 4,
        };
        self.cells[i] = ((k as usize + 1) % word.len()) as u8;
        match self.dir {
            0 => self.y += 1,
            1 => self.x += 1,
            2 => self.y -= 1,
            _ => self.x -= 1,
        }
        k
    }

    pub fn heading(&self) -> Heading {
        [Heading::Up, Heading::Right, Heading::Down, Heading::Left][self.dir as usize]
    }

    /// Non-zero cells sorted by `(x, y)`.
    pub fn cells(&self) -> Vec<(Pos, u8)> {
        let mut out = Vec::new();
        for x in 0..self.width {
            for y in 0..self.height {
                let s = self.cells[y * self.width + x];
                if s != 0 {
                    out.push((Pos::new(self.origin.0 + x as i64, self.origin.1 + y as i64), s));
                }
            }
        }
        out
    }
}
