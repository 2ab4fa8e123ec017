//! Fitting the expansion and drift functions of a previsible trajectory.
//!
//! The trajectory is cut into segments (repetitions, or highway periods).
//! For segment `j`, `f_j` is the half-diagonal of the box spanned by the
//! ant during the segment and `g_j` is the distance from the centre of the
//! first segment's box to segment `j`'s box (zero while the box still covers
//! it). An expanding box that keeps covering its starting point is
//! non-drifting no matter how its centre moves, since the compact being
//! scaled only has to contain the scaling centre.

use antlab_core::{Pos, Rect};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Least-squares slopes below this many cells per segment count as flat.
pub const SLOPE_EPS: f64 = 0.25;
/// Minimum fitted rise over the whole range for a function to be unbounded.
pub const MIN_RISE: f64 = 2.0;
pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("need at least {MIN_SAMPLES} trajectory samples, got {0}")]
    TooShort(usize),
    #[error("need at least 3 segments, got {0}")]
    TooFewSegments(usize),
    #[error("trajectory stays in one fixed box; no drift direction")]
    Degenerate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelClass {
    Constant,
    Linear,
}

/// `value(j) = intercept + slope · j`, slope clamped at zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub class: ModelClass,
    pub intercept: f64,
    pub slope: f64,
}

impl LinearModel {
    pub fn eval(&self, j: f64) -> f64 {
        self.intercept + self.slope * j
    }

    fn fit(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mx = (n - 1.0) / 2.0;
        let my = values.iter().sum::<f64>() / n;
        let (mut sxy, mut sxx) = (0.0, 0.0);
        for (j, &v) in values.iter().enumerate() {
            let dx = j as f64 - mx;
            sxy += dx * (v - my);
            sxx += dx * dx;
        }
        let slope = if sxx > 0.0 { (sxy / sxx).max(0.0) } else { 0.0 };
        let rise = slope * (n - 1.0);
        let class = if slope >= SLOPE_EPS && rise >= MIN_RISE {
            ModelClass::Linear
        } else {
            ModelClass::Constant
        };
        match class {
            ModelClass::Linear => LinearModel { class, intercept: my - slope * mx, slope },
            ModelClass::Constant => LinearModel { class, intercept: my, slope: 0.0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Expansion `f` against segment index.
    pub f: LinearModel,
    /// Drift magnitude `g` against segment index.
    pub g: LinearModel,
    /// Unit drift direction (centre of the first box towards the last one).
    pub direction: (f64, f64),
    /// Largest distance from a trajectory point to the boundary of its
    /// segment box, in cells.
    pub boundary_tolerance: i64,
    pub segments: usize,
    pub increasing: bool,
    pub drifting: bool,
    /// Raw per-segment values the models were fitted on.
    pub f_samples: Vec<f64>,
    pub g_samples: Vec<f64>,
}

impl GrowthFit {
    /// Ratio of drift growth to expansion growth, when both grow.
    pub fn slope_ratio(&self) -> Option<f64> {
        (self.f.slope > 0.0 && self.g.slope > 0.0).then(|| self.g.slope / self.f.slope)
    }
}

fn distance_to_box(p: (f64, f64), b: &Rect) -> f64 {
    let dx = (b.min.x as f64 - p.0).max(0.0).max(p.0 - b.max.x as f64);
    let dy = (b.min.y as f64 - p.1).max(0.0).max(p.1 - b.max.y as f64);
    (dx * dx + dy * dy).sqrt()
}

/// Fits `f` and `g` on the segments `trajectory[ends[j-1]..ends[j]]`
/// (with `ends[-1] = 0`).
pub fn fit_growth(trajectory: &[Pos], ends: &[usize]) -> Result<GrowthFit, GrowthError> {
    if trajectory.len() < MIN_SAMPLES {
        return Err(GrowthError::TooShort(trajectory.len()));
    }
    let mut boxes = Vec::with_capacity(ends.len());
    let mut tolerance = 0i64;
    let mut start = 0usize;
    for &end in ends {
        let end = end.min(trajectory.len());
        if end <= start {
            continue;
        }
        let seg = &trajectory[start..end];
        let mut b = Rect::point(seg[0]);
        for &p in seg {
            b.include(p);
        }
        for &p in seg {
            let inner = (p.x - b.min.x).min(b.max.x - p.x).min(p.y - b.min.y).min(b.max.y - p.y);
            tolerance = tolerance.max(inner);
        }
        boxes.push(b);
        start = end;
    }
    if boxes.len() < 3 {
        return Err(GrowthError::TooFewSegments(boxes.len()));
    }
    if boxes.iter().all(|b| *b == boxes[0]) {
        return Err(GrowthError::Degenerate);
    }

    let origin = boxes[0].center();
    let last = boxes.last().unwrap().center();
    let (dx, dy) = (last.0 - origin.0, last.1 - origin.1);
    let norm = (dx * dx + dy * dy).sqrt();
    let direction = if norm > 0.0 { (dx / norm, dy / norm) } else { (0.0, 0.0) };

    let f_samples: Vec<f64> = boxes.iter().map(|b| b.half_diagonal()).collect();
    let g_samples: Vec<f64> = boxes.iter().map(|b| distance_to_box(origin, b)).collect();
    let f = LinearModel::fit(&f_samples);
    let g = LinearModel::fit(&g_samples);
    Ok(GrowthFit {
        increasing: f.class == ModelClass::Linear,
        drifting: g.class == ModelClass::Linear,
        f,
        g,
        direction,
        boundary_tolerance: tolerance,
        segments: boxes.len(),
        f_samples,
        g_samples,
    })
}

/// Linear fit of support-box widths and heights against the repetition index;
/// returns the two slopes when both grow.
pub fn rectangle_growth(support_boxes: &[Rect]) -> Option<(f64, f64)> {
    if support_boxes.len() < 3 {
        return None;
    }
    let w: Vec<f64> = support_boxes.iter().map(|b| b.width() as f64).collect();
    let h: Vec<f64> = support_boxes.iter().map(|b| b.height() as f64).collect();
    let (fw, fh) = (LinearModel::fit(&w), LinearModel::fit(&h));
    (fw.class == ModelClass::Linear && fh.class == ModelClass::Linear).then_some((fw.slope, fh.slope))
}
