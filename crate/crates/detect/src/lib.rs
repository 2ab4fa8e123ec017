//! Detection, certification and classification of emergent ant behaviours.

pub mod certificate;
pub mod classify;
pub mod equivalence;
pub mod growth;
pub mod highway;
pub mod histogram;
pub mod interlaced;
pub mod recurrence;

pub use certificate::{certify_highway, period_witness, verify_extended, CertificateJson, HighwayCertificate, Rejection, SoundnessReport};
pub use equivalence::{dedupe_highways, least_rotation, HighwayClass, HighwayClassKey};
pub use highway::{detect_highway, DetectBudget, HighwayCandidate, HighwayDetection};
pub use recurrence::{detect_affine_recurrence, verify_recurrence, AffineRecurrence, RecurrenceParams};
pub use growth::{fit_growth, GrowthError, GrowthFit, LinearModel, ModelClass};
pub use histogram::{visit_histogram, HistogramSummary, VisitHistogram};
pub use interlaced::{check_interlaced, mine_decomposition, InterlacedDecomposition};
pub use classify::{classify_behavior, BehaviorClass, BehaviorReport, ClassifyBudget, Evidence, InterlacingCheck, ReportJson};
