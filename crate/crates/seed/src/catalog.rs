//! Behaviour catalogs: one JSON file per rule word, merged by appending.

use std::fs;
use std::path::Path;

use antlab_detect::{BehaviorClass, CertificateJson, ReportJson};
use serde::{Deserialize, Serialize};

use crate::io::SeedError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// Hex digest of the seed configuration.
    pub seed_digest: String,
    /// The seed in pattern-file form.
    pub seed: String,
    pub report: ReportJson,
}

/// One highway equivalence class: periodic trace up to rotation, plus drift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogClass {
    pub canonical_trace: String,
    pub drift: [i64; 2],
    pub period: u64,
    pub representative: CertificateJson,
    pub representative_seed: String,
    pub members: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BehaviorCatalog {
    pub word: String,
    pub entries: Vec<CatalogEntry>,
    pub highway_classes: Vec<CatalogClass>,
}

impl BehaviorCatalog {
    pub fn new(word: impl Into<String>) -> Self {
        Self { word: word.into(), entries: Vec::new(), highway_classes: Vec::new() }
    }

    pub fn contains_seed(&self, digest: &str) -> bool {
        self.entries.iter().any(|e| e.seed_digest == digest)
    }

    /// Appends an entry and files its certificate, if any, under its class.
    pub fn push(&mut self, entry: CatalogEntry, certificate: Option<CertificateJson>) {
        if let Some(cert) = certificate {
            match self
                .highway_classes
                .iter_mut()
                .find(|c| c.canonical_trace == cert.trace_period_canonical && c.drift == cert.drift)
            {
                Some(c) => c.members += 1,
                None => self.highway_classes.push(CatalogClass {
                    canonical_trace: cert.trace_period_canonical.clone(),
                    drift: cert.drift,
                    period: cert.period,
                    representative: cert,
                    representative_seed: entry.seed_digest.clone(),
                    members: 1,
                }),
            }
        }
        self.entries.push(entry);
    }

    /// Adds the entries of `other` whose seeds are not yet catalogued.
    pub fn merge(&mut self, other: &BehaviorCatalog) {
        for e in &other.entries {
            if self.contains_seed(&e.seed_digest) {
                continue;
            }
            let cert = certificate_of(&e.report);
            self.push(e.clone(), cert);
        }
    }

    /// Highway classes counted up to quarter-turn rotations of the lattice:
    /// rotating a seed rotates the drift and leaves the trace unchanged.
    pub fn rotation_classes(&self) -> usize {
        let orbit = |[x, y]: [i64; 2]| [[x, y], [-y, x], [-x, -y], [y, -x]].into_iter().min().unwrap();
        let keys: std::collections::BTreeSet<(&str, [i64; 2])> =
            self.highway_classes.iter().map(|c| (c.canonical_trace.as_str(), orbit(c.drift))).collect();
        keys.len()
    }

    pub fn count(&self, class: BehaviorClass) -> usize {
        self.entries.iter().filter(|e| e.report.class == class).count()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serialises") + "\n"
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SeedError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| SeedError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| SeedError::Json { path: path.into(), source })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), SeedError> {
        let path = path.as_ref();
        fs::write(path, self.to_json_string()).map_err(|source| SeedError::Io { path: path.into(), source })
    }

    /// Merges into the catalog stored at `path` (created if missing) and
    /// writes the result back.
    pub fn append_to(&self, path: impl AsRef<Path>) -> Result<BehaviorCatalog, SeedError> {
        let path = path.as_ref();
        let mut stored = if path.exists() { Self::load(path)? } else { Self::new(self.word.clone()) };
        stored.merge(self);
        stored.save(path)?;
        Ok(stored)
    }
}

/// Rebuilds the certificate summary carried inside a highway report.
pub fn certificate_of(r: &ReportJson) -> Option<CertificateJson> {
    if r.class != BehaviorClass::Highway {
        return None;
    }
    Some(CertificateJson {
        word: r.word.clone(),
        onset: r.onset?,
        period: r.period?,
        drift: r.drift?,
        read_set_size: r.read_set_size?,
        trace_period_canonical: r.trace_period_canonical.clone()?,
        digest: r.digest.clone()?,
    })
}
