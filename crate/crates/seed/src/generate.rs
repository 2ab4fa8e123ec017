//! Seed streams.
//!
//! The random streams use SplitMix64 seeded directly with the 64-bit spec
//! seed (state = seed; each output adds `0x9E3779B97F4A7C15` to the state and
//! mixes it). Per random seed, in this order: for each cell of the box, rows
//! `y = 0..height` and within a row `x = 0..width`, one draw `u` decides
//! occupancy (`(u >> 11) · 2⁻⁵³ < density`) and an occupied cell takes one more
//! draw for its state, `1 + draw mod (|w| − 1)`; then one draw picks the
//! heading `draw mod 4`. The ant starts at `(0, 0)`.

use antlab_core::{Heading, Pattern, Pos, Provenance, RuleWord};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest exhaustive enumeration accepted (assignments × headings).
pub const MAX_EXHAUSTIVE: u128 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// Every assignment of the `width × height` box with at most
    /// `max_nonzero` non-zero cells, each with all four headings.
    Exhaustive { width: usize, height: usize, max_nonzero: usize },
    Random { density: f64, width: usize, height: usize, count: usize, seed: u64 },
    /// `count` copies of `pattern` (pattern-file text), each with `edits`
    /// random cell changes inside its bounding box grown by one.
    MutationsOf { pattern: String, edits: usize, count: usize, seed: u64 },
    /// An explicit list of pattern-file texts.
    List { patterns: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("exhaustive box has {0} seeds, above the limit {MAX_EXHAUSTIVE}")]
    TooLarge(u128),
    #[error("density {0} outside [0, 1]")]
    Density(f64),
    #[error(transparent)]
    Pattern(#[from] antlab_core::PatternError),
}

fn unit(rng: &mut SplitMix64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// The generator's seeds, in generation order.
pub fn generate(word: &RuleWord, generator: &Generator) -> Result<Box<dyn Iterator<Item = Pattern> + Send>, GeneratorError> {
    let n = word.states();
    let word = word.clone();
    match generator.clone() {
        Generator::Exhaustive { width, height, max_nonzero } => {
            let cells = width * height;
            let total = (n as u128).checked_pow(cells as u32).map(|t| t * 4).unwrap_or(u128::MAX);
            if total > MAX_EXHAUSTIVE {
                return Err(GeneratorError::TooLarge(total));
            }
            let assignments = total / 4;
            Ok(Box::new((0..assignments as u64).filter_map(move |mut code| {
                let mut states = Vec::with_capacity(cells);
                for _ in 0..cells {
                    states.push((code % n as u64) as u8);
                    code /= n as u64;
                }
                (states.iter().filter(|&&s| s != 0).count() <= max_nonzero).then_some(states)
            })
            .flat_map(move |states| {
                let word = word.clone();
                Heading::ALL.into_iter().map(move |h| {
                    let mut p = Pattern::empty(word.clone()).with_provenance(Provenance::Searched);
                    for (i, &s) in states.iter().enumerate() {
                        p.set(Pos::new((i % width) as i64, (i / width) as i64), s);
                    }
                    p.heading = h;
                    p
                })
            })))
        }
        Generator::Random { density, width, height, count, seed } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(GeneratorError::Density(density));
            }
            let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
            Ok(Box::new((0..count).map(move |_| {
                let mut p = Pattern::empty(word.clone()).with_provenance(Provenance::Searched);
                for y in 0..height as i64 {
                    for x in 0..width as i64 {
                        if unit(&mut rng) < density && n > 1 {
                            p.set(Pos::new(x, y), 1 + (rng.next_u64() % (n as u64 - 1)) as u8);
                        }
                    }
                }
                p.heading = Heading::from_index((rng.next_u64() % 4) as u8);
                p
            })))
        }
        Generator::MutationsOf { pattern, edits, count, seed } => {
            let base = crate::io::parse_checked(&pattern)?;
            let region = base
                .bounding_box()
                .map(|b| {
                    let mut b = b;
                    b.include(base.ant);
                    b
                })
                .unwrap_or(antlab_core::Rect::point(base.ant))
                .expand(1);
            let mut rng = SplitMix64::from_seed(seed.to_le_bytes());
            let (w, h) = (region.width() as u64, region.height() as u64);
            Ok(Box::new((0..count).map(move |_| {
                let mut p = base.clone().with_provenance(Provenance::Searched);
                p.word = word.clone();
                for _ in 0..edits {
                    let i = rng.next_u64() % (w * h);
                    let q = Pos::new(region.min.x + (i % w) as i64, region.min.y + (i / w) as i64);
                    if n > 1 {
                        let cur = p.get(q);
                        p.set(q, ((cur as u64 + 1 + rng.next_u64() % (n as u64 - 1)) % n as u64) as u8);
                    }
                }
                p
            })))
        }
        Generator::List { patterns } => {
            let parsed = patterns.iter().map(|t| crate::io::parse_checked(t)).collect::<Result<Vec<_>, _>>()?;
            Ok(Box::new(parsed.into_iter()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_output() {
        // published first outputs of SplitMix64 from state 0
        let mut rng = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(rng.next_u64(), 0x6e789e6aa1b965f4);
    }

    #[test]
    fn exhaustive_one_cell_langton() {
        let word = RuleWord::parse("LR").unwrap();
        let seeds: Vec<Pattern> =
            generate(&word, &Generator::Exhaustive { width: 1, height: 1, max_nonzero: 1 }).unwrap().collect();
        assert_eq!(seeds.len(), 8);
        assert_eq!(seeds.iter().filter(|p| p.cells.is_empty()).count(), 4);
    }

    #[test]
    fn exhaustive_respects_max_nonzero() {
        let word = RuleWord::parse("LLR").unwrap();
        let seeds: Vec<Pattern> =
            generate(&word, &Generator::Exhaustive { width: 2, height: 2, max_nonzero: 1 }).unwrap().collect();
        // 1 empty + 4 cells × 2 states, times 4 headings
        assert_eq!(seeds.len(), 9 * 4);
    }

    #[test]
    fn random_stream_is_reproducible() {
        let word = RuleWord::parse("LLRRRL").unwrap();
        let g = Generator::Random { density: 0.5, width: 4, height: 4, count: 5, seed: 42 };
        let a: Vec<Pattern> = generate(&word, &g).unwrap().collect();
        let b: Vec<Pattern> = generate(&word, &g).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.check_states(&word).is_ok()));
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn mutations_stay_in_range() {
        let word = RuleWord::parse("LLR").unwrap();
        let g = Generator::MutationsOf { pattern: "ant LLR 0 0 U\norigin 0 0\n12\n".into(), edits: 2, count: 20, seed: 7 };
        let seeds: Vec<Pattern> = generate(&word, &g).unwrap().collect();
        assert_eq!(seeds.len(), 20);
        for p in &seeds {
            assert!(p.check_states(&word).is_ok());
            let b = p.bounding_box().unwrap_or(antlab_core::Rect::point(Pos::ORIGIN));
            assert!(b.min.x >= -1 && b.max.x <= 2 && b.min.y >= -1 && b.max.y <= 1);
        }
    }

    #[test]
    fn huge_box_rejected() {
        let word = RuleWord::parse("LLRRRL").unwrap();
        let g = Generator::Exhaustive { width: 8, height: 8, max_nonzero: 2 };
        assert!(matches!(generate(&word, &g), Err(GeneratorError::TooLarge(_))));
    }
}
