//! Recovering main/link/bouncer widgets from two aligned family members.
//!
//! Given `P(0)` and `P(1)` snapshotted at the same phase with the ant at the
//! same cell, look for a step `s` and a quadrant such that moving the part of
//! `P(0)` inside the quadrant by `s` leaves a consistent subset of `P(1)`. The
//! unexplained cells of `P(1)` are the link. Candidates are tried in a fixed
//! order and handed to a caller-supplied check (normally: certify `P(k)` for
//! a few `k` and demand an arithmetic progression of periods).

use std::collections::BTreeMap;

use antlab_core::{AntConfiguration, Pattern, Pos, Provenance, RuleWord, RunLimits, SimError};
use antlab_detect::{certify_highway, detect_highway, DetectBudget, HighwayCandidate, HighwayCertificate};

use crate::family::WidgetSet;
use crate::snapshot::{aligned_snapshot, restricted_pattern, PhaseKey};

/// Half-plane bound on one axis: `sign · coord >= threshold`.
type Bound = Option<(i64, i64)>;

fn inside(p: Pos, bx: Bound, by: Bound) -> bool {
    bx.is_none_or(|(s, t)| s * p.x >= t) && by.is_none_or(|(s, t)| s * p.y >= t)
}

fn bounds(lo: i64, hi: i64) -> Vec<Bound> {
    let mut out = vec![None];
    for t in lo..=hi {
        out.push(Some((1, t)));
        out.push(Some((-1, -t)));
    }
    out
}

fn sub_pattern(of: &Pattern, cells: impl IntoIterator<Item = (Pos, u8)>) -> Pattern {
    let mut p = Pattern::empty(of.word.clone()).with_provenance(Provenance::Searched);
    p.ant = of.ant;
    p.heading = of.heading;
    for (q, s) in cells {
        p.set(q, s);
    }
    p
}

/// Every structurally consistent split of `q0`/`q1`, in search order.
pub fn split_candidates(q0: &Pattern, q1: &Pattern, max_step: i64) -> Vec<WidgetSet> {
    let mut out = Vec::new();
    if q0.ant != q1.ant || q0.heading != q1.heading || q0.word != q1.word {
        return out;
    }
    let Some(bbox) = q0.bounding_box() else { return out };
    let mut steps: Vec<Pos> = (-max_step..=max_step)
        .flat_map(|x| (-max_step..=max_step).map(move |y| Pos::new(x, y)))
        .filter(|s| !s.is_zero())
        .collect();
    steps.sort_by_key(|s| (s.manhattan(), *s));
    let xs = bounds(bbox.min.x, bbox.max.x + 1);
    let ys = bounds(bbox.min.y, bbox.max.y + 1);
    for &s in &steps {
        // every cell must be explainable as fixed or as moved by `s`
        if q0.cells.iter().any(|(&p, &v)| q1.get(p) != v && q1.get(p + s) != v) {
            continue;
        }
        for &bx in &xs {
            for &by in &ys {
                if bx.is_none() && by.is_none() {
                    continue;
                }
                let (bouncer, main): (Vec<(Pos, u8)>, Vec<(Pos, u8)>) =
                    q0.cells.iter().map(|(&p, &v)| (p, v)).partition(|&(p, _)| inside(p, bx, by));
                if bouncer.is_empty() || main.is_empty() || inside(q0.ant, bx, by) {
                    continue;
                }
                let mut covered: BTreeMap<Pos, u8> = main.iter().copied().collect();
                let consistent = bouncer.iter().all(|&(p, v)| covered.insert(p + s, v).is_none())
                    && covered.iter().all(|(&p, &v)| q1.get(p) == v);
                if !consistent {
                    continue;
                }
                let link: Vec<(Pos, u8)> =
                    q1.cells.iter().filter(|(p, _)| !covered.contains_key(p)).map(|(&p, &v)| (p, v)).collect();
                if link.is_empty() {
                    continue;
                }
                out.push(WidgetSet {
                    name: q0.name.clone().unwrap_or_else(|| "family".into()),
                    main: sub_pattern(q0, main),
                    link: sub_pattern(q0, link),
                    bouncer: sub_pattern(q0, bouncer),
                    step: s,
                });
            }
        }
    }
    out.dedup();
    out
}

/// Certified candidate of each `P(k)`, `k < count`.
pub fn family_highways(ws: &WidgetSet, count: usize, budget: &DetectBudget) -> Vec<Option<HighwayCandidate>> {
    (0..count)
        .map(|k| {
            let p = ws.construct(k).ok()?;
            detect_highway(&p.to_configuration(), ws.word(), budget).ok().flatten().map(|d| d.candidate)
        })
        .collect()
}

/// True when `P(0..count)` certify highways whose periods grow by a constant
/// positive amount and share one drift.
pub fn is_arithmetic_family(ws: &WidgetSet, count: usize, budget: &DetectBudget) -> bool {
    let found = family_highways(ws, count, budget);
    let Some(c) = found.iter().map(|c| c.as_ref()).collect::<Option<Vec<_>>>() else { return false };
    if c.len() < 2 || c[1].period <= c[0].period {
        return false;
    }
    let delta = c[1].period - c[0].period;
    c.windows(2).all(|w| w[1].period == w[0].period + delta && w[1].drift == w[0].drift)
}

/// First split of `q0`/`q1` accepted by `accept`.
pub fn infer_widgets(
    q0: &Pattern,
    q1: &Pattern,
    max_step: i64,
    mut accept: impl FnMut(&WidgetSet) -> bool,
) -> Option<WidgetSet> {
    split_candidates(q0, q1, max_step).into_iter().find(|ws| accept(ws))
}

/// Two certified highways of one family, each given by the configuration at
/// its onset and its certificate.
pub struct Member<'a> {
    pub at_onset: &'a AntConfiguration,
    pub certificate: &'a HighwayCertificate,
}

/// Tries every phase of `small`'s period as the snapshot point: the phase
/// key (cells within `radius` of the ant) picks the matching phase of
/// `large`, and the two snapshots are split as in [`split_candidates`].
/// Returns the phase and the first accepted widget set.
pub fn infer_from_highways(
    rule: &RuleWord,
    small: Member<'_>,
    large: Member<'_>,
    radius: i64,
    max_step: i64,
    mut accept: impl FnMut(&WidgetSet) -> bool,
) -> Result<Option<(u64, WidgetSet)>, SimError> {
    let mut s = small.at_onset.clone();
    let (n, d) = (small.certificate.period, small.certificate.drift);
    for phase in 0..n {
        if let Ok(cert) = certify_highway(&s, rule, 0, n, d, RunLimits::NONE) {
            let key = PhaseKey::from_certificate(&cert, radius);
            if let Some(q1) = aligned_snapshot(large.at_onset, rule, large.certificate, &key)? {
                let q0 = restricted_pattern(rule, &cert);
                if let Some(ws) = split_candidates(&q0, &q1, max_step).into_iter().find(|ws| accept(ws)) {
                    return Ok(Some((phase, ws)));
                }
            }
        }
        s.advance(rule, 1, RunLimits::NONE, &mut ())?;
    }
    Ok(None)
}
