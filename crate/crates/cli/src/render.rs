//! PGM and SVG snapshots of a configuration.
//!
//! Palette (both formats): state `k` of an `n`-state rule is drawn with gray
//! level `255 − ⌊255·k / (n − 1)⌋`, so state 0 is white and state `n − 1`
//! black. In PGM the ant's cell, when marked, is written as gray 128 if its
//! own level is above 128 and as 255 otherwise; in SVG the ant is a red
//! square outline. Rows are emitted from the largest `y` down, so `+y` is up.

use std::fmt::Write as _;

use antlab_core::{AntConfiguration, Pos, Rect, RuleWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pgm,
    Svg,
}

impl Format {
    /// From a file extension; `None` for anything but `pgm`/`svg`.
    pub fn from_path(path: &std::path::Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "pgm" => Some(Format::Pgm),
            "svg" => Some(Format::Svg),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Crop {
    /// Support plus ant, grown by a margin (at least 1).
    Auto { margin: i64 },
    Explicit(Rect),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub format: Format,
    /// Pixel size of a cell in SVG; PGM always uses one byte per cell.
    pub cell_size: u32,
    pub crop: Crop,
    pub ant_marker: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self { format: Format::Pgm, cell_size: 4, crop: Crop::Auto { margin: 2 }, ant_marker: true }
    }
}

pub fn gray(state: u8, states: u8) -> u8 {
    if states <= 1 {
        return 255;
    }
    255 - (255 * state as u32 / (states as u32 - 1)) as u8
}

pub fn region(conf: &AntConfiguration, crop: Crop) -> Rect {
    match crop {
        Crop::Explicit(r) => r,
        Crop::Auto { margin } => {
            let mut r = conf.support_box().unwrap_or(Rect::point(conf.position));
            r.include(conf.position);
            r.expand(margin.max(1))
        }
    }
}

pub fn render(conf: &AntConfiguration, rule: &RuleWord, spec: &RenderSpec) -> Vec<u8> {
    let r = region(conf, spec.crop);
    match spec.format {
        Format::Pgm => pgm(conf, rule, r, spec.ant_marker),
        Format::Svg => svg(conf, rule, r, spec).into_bytes(),
    }
}

fn pgm(conf: &AntConfiguration, rule: &RuleWord, r: Rect, ant: bool) -> Vec<u8> {
    let (w, h) = (r.width(), r.height());
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    out.reserve((w * h) as usize);
    for y in (r.min.y..=r.max.y).rev() {
        for x in r.min.x..=r.max.x {
            let p = Pos::new(x, y);
            let mut g = gray(conf.grid.get(p), rule.states());
            if ant && p == conf.position {
                g = if g > 128 { 128 } else { 255 };
            }
            out.push(g);
        }
    }
    out
}

fn svg(conf: &AntConfiguration, rule: &RuleWord, r: Rect, spec: &RenderSpec) -> String {
    let c = spec.cell_size.max(1) as i64;
    let (w, h) = (r.width() * c, r.height() * c);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="rgb(255,255,255)"/>"#);
    // cells in row-major order, top row first
    for y in (r.min.y..=r.max.y).rev() {
        for x in r.min.x..=r.max.x {
            let k = conf.grid.get(Pos::new(x, y));
            if k == 0 {
                continue;
            }
            let g = gray(k, rule.states());
            let (px, py) = ((x - r.min.x) * c, (r.max.y - y) * c);
            let _ = writeln!(s, r#"<rect x="{px}" y="{py}" width="{c}" height="{c}" fill="rgb({g},{g},{g})"/>"#);
        }
    }
    if spec.ant_marker && r.contains(conf.position) {
        let (px, py) = ((conf.position.x - r.min.x) * c, (r.max.y - conf.position.y) * c);
        let _ = writeln!(
            s,
            r#"<rect x="{px}" y="{py}" width="{c}" height="{c}" fill="none" stroke="rgb(255,0,0)" stroke-width="1"/>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use antlab_core::Grid;

    #[test]
    fn palette_ends() {
        assert_eq!(gray(0, 6), 255);
        assert_eq!(gray(5, 6), 0);
        assert_eq!(gray(1, 2), 0);
        assert_eq!(gray(0, 1), 255);
    }

    #[test]
    fn pgm_layout() {
        let rule = RuleWord::parse("LR").unwrap();
        let mut grid = Grid::new();
        grid.set(Pos::new(1, 0), 1);
        let conf = AntConfiguration::new(grid, Pos::ORIGIN, antlab_core::Heading::Up);
        let spec = RenderSpec { crop: Crop::Auto { margin: 1 }, ..Default::default() };
        let img = render(&conf, &rule, &spec);
        let header = b"P5\n4 3\n255\n";
        assert_eq!(&img[..header.len()], header);
        let body = &img[header.len()..];
        assert_eq!(body.len(), 12);
        // middle row: margin, ant, the black cell, margin
        assert_eq!(&body[4..8], &[255, 128, 0, 255]);
    }

    #[test]
    fn svg_is_stable() {
        let rule = RuleWord::parse("LLR").unwrap();
        let conf = AntConfiguration::zero();
        let spec = RenderSpec { format: Format::Svg, ..Default::default() };
        let a = render(&conf, &rule, &spec);
        assert_eq!(a, render(&conf, &rule, &spec));
        assert!(String::from_utf8(a).unwrap().ends_with("</svg>\n"));
    }
}
