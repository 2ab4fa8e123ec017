//! Highway snapshots: the configuration restricted to what one period reads,
//! taken at a chosen phase, with the ant moved to the origin.

use antlab_core::{AntConfiguration, Heading, Pattern, Pos, Provenance, RuleWord, RunLimits, SimError};
use antlab_detect::{certify_highway, HighwayCertificate};

/// Read-set restriction of the configuration at the certificate's onset
/// (`at_onset` must be that configuration), translated so the ant is at
/// the origin. Read cells in state 0 are dropped.
pub fn restricted_pattern(rule: &RuleWord, cert: &HighwayCertificate) -> Pattern {
    let (o, h) = cert.pose_start;
    let mut p = Pattern::empty(rule.clone()).with_provenance(Provenance::Searched);
    for &(q, s) in &cert.read_set {
        p.set(q - o, s);
    }
    p.heading = h;
    p
}

/// Local cells the ant must see, relative to its position, plus its heading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseKey {
    pub heading: Heading,
    pub cells: Vec<(Pos, u8)>,
}

impl PhaseKey {
    /// Read-set cells within `radius` (Chebyshev) of the ant at the onset.
    pub fn from_certificate(cert: &HighwayCertificate, radius: i64) -> Self {
        let (o, h) = cert.pose_start;
        let cells = cert
            .read_set
            .iter()
            .filter(|(q, _)| (q.x - o.x).abs() <= radius && (q.y - o.y).abs() <= radius)
            .map(|&(q, s)| (q - o, s))
            .collect();
        Self { heading: h, cells }
    }

    pub fn matches(&self, conf: &AntConfiguration) -> bool {
        conf.heading == self.heading && self.cells.iter().all(|&(d, s)| conf.grid.get(conf.position + d) == s)
    }
}

/// Advances `at_onset` (the configuration at the certificate's onset) through
/// one period until `key` matches, and returns the restricted snapshot there.
pub fn aligned_snapshot(
    at_onset: &AntConfiguration,
    rule: &RuleWord,
    cert: &HighwayCertificate,
    key: &PhaseKey,
) -> Result<Option<Pattern>, SimError> {
    let mut s = at_onset.clone();
    for _ in 0..cert.period {
        if key.matches(&s) {
            let c = certify_highway(&s, rule, 0, cert.period, cert.drift, RunLimits::NONE).ok();
            return Ok(c.map(|c| restricted_pattern(rule, &c)));
        }
        s.advance(rule, 1, RunLimits::NONE, &mut ())?;
    }
    Ok(None)
}
