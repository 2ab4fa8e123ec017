//! Behaviour classification: highway, increasing rectangle, cone or unknown.
//!
//! Highways are tried first and only count with a certificate. Otherwise an
//! affine recurrence supplies the repetition segments, on which the growth
//! fit decides between a non-drifting rectangle and a cone. The cone test
//! `g = Θ(f)` is a finite-run surrogate: the ratio of the fitted slopes must
//! lie in `[1/ρ, ρ]`.

use antlab_core::{AntConfiguration, Pos, Rect, RuleWord, SimError, StepEvent};
use serde::{Deserialize, Serialize};

use crate::certificate::{CertificateJson, HighwayCertificate};
use crate::growth::{fit_growth, rectangle_growth, GrowthFit, LinearModel};
use crate::highway::{detect_highway, DetectBudget};
use crate::interlaced::{check_interlaced, mine_decomposition, InterlacedDecomposition};
use crate::recurrence::{detect_affine_recurrence, AffineRecurrence, RecurrenceParams};

/// Highway periods simulated for the growth fit of a certified highway.
const HIGHWAY_FIT_PERIODS: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BehaviorClass {
    Highway,
    IncreasingRectangle,
    Cone,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyBudget {
    pub highway: DetectBudget,
    pub recurrence: RecurrenceParams,
    /// Accepted spread `ρ` of `g/f` for cones.
    pub cone_ratio: f64,
}

impl Default for ClassifyBudget {
    fn default() -> Self {
        Self {
            highway: DetectBudget::default(),
            recurrence: RecurrenceParams::default(),
            cone_ratio: 10.0,
        }
    }
}

impl ClassifyBudget {
    pub fn with_limits(mut self, limits: antlab_core::RunLimits) -> Self {
        self.highway.limits = limits;
        self.recurrence.limits = limits;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacingCheck {
    /// Repetition whose segment is `t_0`.
    pub from_repetition: usize,
    pub decomposition: InterlacedDecomposition,
    /// Complete blocks matched from `from_repetition` on, the two mined ones included.
    pub blocks_matched: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Evidence {
    Highway(Box<HighwayCertificate>),
    Recurrence {
        recurrence: AffineRecurrence,
        /// Support-box width and height slopes, when both grow.
        rectangle_slopes: Option<(f64, f64)>,
    },
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BehaviorReport {
    pub word: RuleWord,
    pub class: BehaviorClass,
    pub evidence: Evidence,
    pub growth: Option<GrowthFit>,
    pub interlacing: Option<InterlacingCheck>,
    /// Steps simulated by the analysis that produced the evidence.
    pub steps: u64,
    /// The grid-support cap was hit; the class is then `Unknown`.
    pub resource_limited: bool,
}

impl BehaviorReport {
    pub fn certificate(&self) -> Option<&HighwayCertificate> {
        match &self.evidence {
            Evidence::Highway(c) => Some(c),
            _ => None,
        }
    }

    pub fn recurrence(&self) -> Option<&AffineRecurrence> {
        match &self.evidence {
            Evidence::Recurrence { recurrence, .. } => Some(recurrence),
            _ => None,
        }
    }

    pub fn to_json(&self) -> ReportJson {
        let cert = self.certificate().map(HighwayCertificate::to_json);
        let rec = self.recurrence();
        ReportJson {
            class: self.class,
            word: self.word.to_string(),
            steps: self.steps,
            resource_limited: self.resource_limited,
            onset: cert.as_ref().map(|c| c.onset).or(rec.map(|r| r.onset)),
            period: cert.as_ref().map(|c| c.period),
            drift: cert.as_ref().map(|c| c.drift),
            read_set_size: cert.as_ref().map(|c| c.read_set_size),
            trace_period_canonical: cert.as_ref().map(|c| c.trace_period_canonical.clone()),
            digest: cert.as_ref().map(|c| c.digest.clone()),
            n0: rec.map(|r| r.n0),
            delta_n: rec.map(|r| r.delta_n),
            displacement: rec.map(|r| [r.displacement.x, r.displacement.y]),
            repetitions: rec.map(|r| r.repetitions),
            f_model: self.growth.as_ref().map(|g| g.f),
            g_model: self.growth.as_ref().map(|g| g.g),
            interlaced_blocks: self.interlacing.as_ref().map(|i| i.blocks_matched),
        }
    }

    /// The certificate in its own serialised form.
    pub fn certificate_json(&self) -> Option<CertificateJson> {
        self.certificate().map(HighwayCertificate::to_json)
    }
}

/// Flat JSON form of a report. Fields that do not apply are omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub class: BehaviorClass,
    pub word: String,
    pub steps: u64,
    pub resource_limited: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub onset: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub read_set_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_period_canonical: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub displacement: Option<[i64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repetitions: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_model: Option<LinearModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_model: Option<LinearModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interlaced_blocks: Option<usize>,
}

/// Trace and positions over `[0, end]`, with support boxes at `marks`.
struct Replay {
    trace: Vec<u8>,
    /// `positions[t]` is the ant position at time `t`.
    positions: Vec<Pos>,
    boxes: Vec<Option<Rect>>,
}

fn replay(conf: &AntConfiguration, rule: &RuleWord, marks: &[u64], budget: &ClassifyBudget) -> Result<Replay, SimError> {
    let end = marks.last().copied().unwrap_or(0);
    let mut state = conf.clone();
    let mut trace = Vec::with_capacity(end as usize);
    let mut positions = Vec::with_capacity(end as usize + 1);
    positions.push(state.position);
    let mut boxes = Vec::with_capacity(marks.len());
    let mut now = 0u64;
    for &m in marks {
        state.advance(rule, m - now, budget.recurrence.limits, &mut |e: &StepEvent| {
            trace.push(e.read);
            positions.push(e.to);
        })?;
        now = m;
        boxes.push(state.grid.support_box());
    }
    Ok(Replay { trace, positions, boxes })
}

/// Mines `(u_i, v_i)` from two consecutive repetition segments and checks
/// how far the decomposition carries forward. Tries the seed segment first,
/// then the first full one.
fn check_segments(trace: &[u8], boundaries: &[u64]) -> Option<InterlacingCheck> {
    let seg = |k: usize| &trace[boundaries[k] as usize..boundaries[k + 1] as usize];
    let mut best: Option<InterlacingCheck> = None;
    for j in 0..2 {
        if j + 2 >= boundaries.len() {
            break;
        }
        let Some(dec) = mine_decomposition(seg(j), seg(j + 1)) else { continue };
        let blocks = check_interlaced(&trace[boundaries[j] as usize..], &dec);
        if best.as_ref().is_none_or(|b| blocks > b.blocks_matched) {
            best = Some(InterlacingCheck { from_repetition: j, decomposition: dec, blocks_matched: blocks });
        }
        if boundaries.len() - 1 - j == blocks {
            break;
        }
    }
    best
}

/// Classifies the run of `rule` from `conf`.
///
/// Invalid input (a state outside the rule) is an error; hitting the support
/// cap is reported as `Unknown` with `resource_limited` set.
pub fn classify_behavior(
    conf: &AntConfiguration,
    rule: &RuleWord,
    budget: &ClassifyBudget,
) -> Result<BehaviorReport, SimError> {
    conf.validate(rule)?;
    match classify_inner(conf, rule, budget) {
        Err(SimError::ResourceLimit { steps, .. }) => Ok(BehaviorReport {
            word: rule.clone(),
            class: BehaviorClass::Unknown,
            evidence: Evidence::None,
            growth: None,
            interlacing: None,
            steps,
            resource_limited: true,
        }),
        other => other,
    }
}

fn classify_inner(conf: &AntConfiguration, rule: &RuleWord, budget: &ClassifyBudget) -> Result<BehaviorReport, SimError> {
    if let Some(det) = detect_highway(conf, rule, &budget.highway)? {
        let c = det.candidate;
        let marks: Vec<u64> = (0..=HIGHWAY_FIT_PERIODS).map(|k| c.onset + k * c.period).collect();
        let rep = replay(conf, rule, &marks, budget)?;
        let ends: Vec<usize> = marks[1..].iter().map(|&m| (m - c.onset) as usize).collect();
        let growth = fit_growth(&rep.positions[c.onset as usize..], &ends).ok();
        return Ok(BehaviorReport {
            word: rule.clone(),
            class: BehaviorClass::Highway,
            evidence: Evidence::Highway(Box::new(det.certificate)),
            growth,
            interlacing: None,
            steps: budget.highway.max_steps + budget.highway.tail(),
            resource_limited: false,
        });
    }
    let simulated = budget.highway.max_steps + budget.highway.tail();

    let Some(rec) = detect_affine_recurrence(conf, rule, &budget.recurrence)? else {
        return Ok(BehaviorReport {
            word: rule.clone(),
            class: BehaviorClass::Unknown,
            evidence: Evidence::None,
            growth: None,
            interlacing: None,
            steps: simulated.max(budget.recurrence.max_steps),
            resource_limited: false,
        });
    };
    let marks = rec.boundaries();
    let rep = replay(conf, rule, &marks, budget)?;
    let onset = rec.onset as usize;
    let ends: Vec<usize> = marks[1..].iter().map(|&m| m as usize - onset).collect();
    let growth = fit_growth(&rep.positions[onset..], &ends).ok();
    // the seed box is not yet part of the growing shape
    let boxes: Vec<Rect> = rep.boxes.iter().skip(1).flatten().copied().collect();
    let rectangle_slopes = rectangle_growth(&boxes);
    let interlacing = check_segments(&rep.trace, &marks);

    let class = match &growth {
        Some(g) if g.increasing && !g.drifting && rectangle_slopes.is_some() => BehaviorClass::IncreasingRectangle,
        Some(g) if g.increasing && g.drifting => match g.slope_ratio() {
            Some(r) if r >= 1.0 / budget.cone_ratio && r <= budget.cone_ratio => BehaviorClass::Cone,
            _ => BehaviorClass::Unknown,
        },
        _ => BehaviorClass::Unknown,
    };
    Ok(BehaviorReport {
        word: rule.clone(),
        class,
        evidence: Evidence::Recurrence { recurrence: rec, rectangle_slopes },
        growth,
        interlacing,
        steps: simulated.max(budget.recurrence.max_steps),
        resource_limited: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use antlab_core::RunLimits;

    #[test]
    fn langton_is_a_highway() {
        let rule = RuleWord::parse("LR").unwrap();
        let budget = ClassifyBudget { highway: DetectBudget::new(13_000, 1000), ..Default::default() };
        let r = classify_behavior(&AntConfiguration::zero(), &rule, &budget).unwrap();
        assert_eq!(r.class, BehaviorClass::Highway);
        let j = r.to_json();
        assert_eq!(j.period, Some(104));
        let [a, b] = j.drift.unwrap();
        assert_eq!((a.abs(), b.abs()), (2, 2));
        let g = r.growth.unwrap();
        assert!(!g.increasing && g.drifting);
    }

    #[test]
    fn support_cap_is_unknown_with_flag() {
        let rule = RuleWord::parse("LR").unwrap();
        let budget = ClassifyBudget::default().with_limits(RunLimits::max_cells(50));
        let r = classify_behavior(&AntConfiguration::zero(), &rule, &budget).unwrap();
        assert_eq!(r.class, BehaviorClass::Unknown);
        assert!(r.resource_limited);
    }

    #[test]
    fn report_json_omits_missing_fields() {
        let rule = RuleWord::parse("LR").unwrap();
        let budget = ClassifyBudget::default().with_limits(RunLimits::max_cells(50));
        let r = classify_behavior(&AntConfiguration::zero(), &rule, &budget).unwrap();
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert!(s.contains("\"class\":\"Unknown\""));
        assert!(!s.contains("period"));
    }
}
