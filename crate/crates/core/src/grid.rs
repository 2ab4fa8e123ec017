//! Sparse, unbounded grid of cell states.
//!
//! Cells are stored in 64x64 tiles allocated on first touch. Untouched cells
//! read as state 0, so the grid behaves like an infinite zero-initialised array.

use std::fmt;

use rustc_hash::FxHashMap;

use crate::geom::{Pos, Rect};

pub(crate) const TILE_SHIFT: u32 = 6;
pub(crate) const TILE_SIZE: i64 = 1 << TILE_SHIFT;
pub(crate) const TILE_MASK: i64 = TILE_SIZE - 1;
pub(crate) const TILE_AREA: usize = (TILE_SIZE * TILE_SIZE) as usize;

pub(crate) type TileKey = (i64, i64);

#[inline]
pub(crate) fn tile_key(p: Pos) -> TileKey {
    (p.x >> TILE_SHIFT, p.y >> TILE_SHIFT)
}

#[inline]
pub(crate) fn tile_offset(p: Pos) -> usize {
    (((p.y & TILE_MASK) << TILE_SHIFT) | (p.x & TILE_MASK)) as usize
}

#[derive(Clone)]
pub(crate) struct Tile {
    pub key: TileKey,
    pub cells: Box<[u8; TILE_AREA]>,
}

/// Finite-support grid configuration.
#[derive(Clone, Default)]
pub struct Grid {
    pub(crate) tiles: Vec<Tile>,
    index: FxHashMap<TileKey, usize>,
    pub(crate) nonzero: usize,
}

impl Grid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells<I: IntoIterator<Item = (Pos, u8)>>(cells: I) -> Self {
        let mut g = Grid::new();
        for (p, s) in cells {
            g.set(p, s);
        }
        g
    }

    #[inline]
    pub fn get(&self, p: Pos) -> u8 {
        match self.index.get(&tile_key(p)) {
            Some(&i) => self.tiles[i].cells[tile_offset(p)],
            None => 0,
        }
    }

    pub fn set(&mut self, p: Pos, state: u8) {
        if state == 0 && !self.index.contains_key(&tile_key(p)) {
            return;
        }
        let i = self.tile_index(tile_key(p));
        let cell = &mut self.tiles[i].cells[tile_offset(p)];
        match (*cell == 0, state == 0) {
            (true, false) => self.nonzero += 1,
            (false, true) => self.nonzero -= 1,
            _ => {}
        }
        *cell = state;
    }

    /// Index of the tile with `key`, allocating a zero tile if needed.
    #[inline]
    pub(crate) fn tile_index(&mut self, key: TileKey) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.tiles.len();
        self.tiles.push(Tile {
            key,
            cells: Box::new([0; TILE_AREA]),
        });
        self.index.insert(key, i);
        i
    }

    /// Number of cells in a non-zero state.
    pub fn support_len(&self) -> usize {
        self.nonzero
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero == 0
    }

    pub fn max_state(&self) -> u8 {
        self.tiles
            .iter()
            .flat_map(|t| t.cells.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// All non-zero cells, sorted by `(x, y)`.
    pub fn cells(&self) -> Vec<(Pos, u8)> {
        let mut out = Vec::with_capacity(self.nonzero);
        for t in &self.tiles {
            let base = Pos::new(t.key.0 << TILE_SHIFT, t.key.1 << TILE_SHIFT);
            for (off, &s) in t.cells.iter().enumerate() {
                if s != 0 {
                    let off = off as i64;
                    out.push((Pos::new(base.x + (off & TILE_MASK), base.y + (off >> TILE_SHIFT)), s));
                }
            }
        }
        out.sort_unstable_by_key(|&(p, _)| p);
        out
    }

    /// Smallest rectangle containing every non-zero cell, or `None` for the zero grid.
    pub fn support_box(&self) -> Option<Rect> {
        let mut bbox: Option<Rect> = None;
        for t in &self.tiles {
            let base = Pos::new(t.key.0 << TILE_SHIFT, t.key.1 << TILE_SHIFT);
            // skip tiles that cannot change the current box
            if let Some(b) = bbox {
                let tile_rect = Rect {
                    min: base,
                    max: Pos::new(base.x + TILE_MASK, base.y + TILE_MASK),
                };
                if b.contains(tile_rect.min) && b.contains(tile_rect.max) {
                    continue;
                }
            }
            for (off, &s) in t.cells.iter().enumerate() {
                if s != 0 {
                    let off = off as i64;
                    let p = Pos::new(base.x + (off & TILE_MASK), base.y + (off >> TILE_SHIFT));
                    match bbox.as_mut() {
                        Some(b) => b.include(p),
                        None => bbox = Some(Rect::point(p)),
                    }
                }
            }
        }
        bbox
    }

    /// Appends the states of the `(2r+1) x (2r+1)` square centred on `center`
    /// to `out`, row by row from the bottom, each row from left to right.
    pub fn read_window(&self, center: Pos, radius: i64, out: &mut Vec<u8>) {
        let x0 = center.x - radius;
        let x1 = center.x + radius;
        for y in center.y - radius..=center.y + radius {
            let mut x = x0;
            while x <= x1 {
                let p = Pos::new(x, y);
                let run_end = ((x | TILE_MASK) + 1).min(x1 + 1);
                let len = (run_end - x) as usize;
                match self.index.get(&tile_key(p)) {
                    Some(&i) => {
                        let off = tile_offset(p);
                        out.extend_from_slice(&self.tiles[i].cells[off..off + len]);
                    }
                    None => out.extend(std::iter::repeat_n(0, len)),
                }
                x = run_end;
            }
        }
    }

    /// The grid reflected across the vertical axis.
    pub fn mirrored(&self) -> Grid {
        Grid::from_cells(self.cells().into_iter().map(|(p, s)| (p.mirrored(), s)))
    }

    pub fn translated(&self, by: Pos) -> Grid {
        Grid::from_cells(self.cells().into_iter().map(|(p, s)| (p + by, s)))
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.nonzero == other.nonzero && self.cells() == other.cells()
    }
}

impl Eq for Grid {}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("support", &self.nonzero)
            .field("tiles", &self.tiles.len())
            .finish()
    }
}
