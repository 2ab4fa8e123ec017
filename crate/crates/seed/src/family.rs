//! Pattern families `P(k)`: a fixed main part, `k` copies of a link placed
//! at a constant step, and an end part (the bouncer) pushed out by `k` steps.

use std::collections::BTreeMap;

use antlab_core::{Pattern, Pos, Provenance, RuleWord};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cell {cell} is covered by both the {first} and the {second}")]
    Overlap { cell: Pos, first: String, second: String },
    #[error("widget for rule {found} does not match base rule {expected}")]
    WordMismatch { expected: RuleWord, found: RuleWord },
}

/// Where the repeated parts go.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Placement {
    /// Translation between consecutive links; the bouncer moves by the same
    /// amount per link.
    pub step: Pos,
    pub bouncer: Option<Pattern>,
}

/// Builds `base ∪ link_0 ∪ … ∪ link_{k-1} ∪ bouncer`, with link `i`
/// translated by `i·step` and the bouncer by `k·step`. The ant pose comes
/// from `base`. Component supports may not share a cell.
pub fn construct_family(base: &Pattern, link: &Pattern, placement: &Placement, k: usize) -> Result<Pattern, FamilyError> {
    let mut owner: BTreeMap<Pos, (String, u8)> = BTreeMap::new();
    let mut put = |part: &Pattern, by: Pos, label: String| -> Result<(), FamilyError> {
        if part.word != base.word {
            return Err(FamilyError::WordMismatch { expected: base.word.clone(), found: part.word.clone() });
        }
        for (&p, &s) in &part.cells {
            if let Some((first, _)) = owner.get(&(p + by)) {
                return Err(FamilyError::Overlap { cell: p + by, first: first.clone(), second: label });
            }
            owner.insert(p + by, (label.clone(), s));
        }
        Ok(())
    };
    put(base, Pos::ORIGIN, "base".into())?;
    for i in 0..k {
        put(link, placement.step * i as i64, format!("link {i}"))?;
    }
    if let Some(b) = &placement.bouncer {
        put(b, placement.step * k as i64, "bouncer".into())?;
    }
    let mut out = Pattern::empty(base.word.clone()).with_provenance(Provenance::Constructed);
    out.ant = base.ant;
    out.heading = base.heading;
    out.name = base.name.as_ref().map(|n| format!("{n}({k})"));
    for (p, (_, s)) in owner {
        out.set(p, s);
    }
    Ok(out)
}

/// A main/link/bouncer triple with its step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidgetSet {
    pub name: String,
    pub main: Pattern,
    pub link: Pattern,
    pub bouncer: Pattern,
    pub step: Pos,
}

impl WidgetSet {
    pub fn word(&self) -> &RuleWord {
        &self.main.word
    }

    pub fn placement(&self) -> Placement {
        Placement { step: self.step, bouncer: Some(self.bouncer.clone()) }
    }

    pub fn construct(&self, k: usize) -> Result<Pattern, FamilyError> {
        let base = self.main.clone().with_name(self.name.clone());
        construct_family(&base, &self.link, &self.placement(), k)
    }

    /// Flat serialised form, one pattern text per part.
    pub fn to_json(&self) -> WidgetSetJson {
        WidgetSetJson {
            name: self.name.clone(),
            step: [self.step.x, self.step.y],
            main: self.main.to_text(),
            link: self.link.to_text(),
            bouncer: self.bouncer.to_text(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidgetSetJson {
    pub name: String,
    pub step: [i64; 2],
    pub main: String,
    pub link: String,
    pub bouncer: String,
}

impl WidgetSetJson {
    pub fn into_widgets(self) -> Result<WidgetSet, antlab_core::PatternError> {
        let parse = crate::io::parse_checked;
        Ok(WidgetSet {
            name: self.name,
            step: Pos::new(self.step[0], self.step[1]),
            main: parse(&self.main)?,
            link: parse(&self.link)?,
            bouncer: parse(&self.bouncer)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(cells: &[(i64, i64, u8)]) -> Pattern {
        let mut p = Pattern::empty(RuleWord::parse("LLR").unwrap());
        for &(x, y, s) in cells {
            p.set(Pos::new(x, y), s);
        }
        p
    }

    #[test]
    fn k_zero_is_base_and_bouncer() {
        let base = pat(&[(0, 0, 1)]);
        let placement = Placement { step: Pos::new(1, 0), bouncer: Some(pat(&[(2, 0, 2)])) };
        let p = construct_family(&base, &pat(&[(1, 0, 1)]), &placement, 0).unwrap();
        assert_eq!(p.cells.len(), 2);
        assert_eq!(p.get(Pos::new(2, 0)), 2);
    }

    #[test]
    fn links_push_the_bouncer() {
        let base = pat(&[(0, 0, 1)]);
        let placement = Placement { step: Pos::new(1, 0), bouncer: Some(pat(&[(1, 0, 2)])) };
        let p = construct_family(&base, &pat(&[(1, 0, 1)]), &placement, 3).unwrap();
        let xs: Vec<(i64, u8)> = p.cells.iter().map(|(q, &s)| (q.x, s)).collect();
        assert_eq!(xs, vec![(0, 1), (1, 1), (2, 1), (3, 1), (4, 2)]);
        assert_eq!(p.provenance, Some(Provenance::Constructed));
    }

    #[test]
    fn overlap_reported() {
        let base = pat(&[(0, 0, 1), (1, 0, 1)]);
        let placement = Placement { step: Pos::new(1, 0), bouncer: None };
        let err = construct_family(&base, &pat(&[(1, 0, 2)]), &placement, 1).unwrap_err();
        assert!(matches!(err, FamilyError::Overlap { cell, .. } if cell == Pos::new(1, 0)));
    }

    #[test]
    fn word_mismatch_reported() {
        let base = pat(&[(0, 0, 1)]);
        let link = Pattern::empty(RuleWord::parse("LR").unwrap());
        let placement = Placement { step: Pos::new(1, 0), bouncer: None };
        assert!(matches!(construct_family(&base, &link, &placement, 1), Err(FamilyError::WordMismatch { .. })));
    }
}
