//! Seed search: classify every seed of a stream and collect a catalog.
//!
//! Seeds are classified in parallel in fixed-size chunks; results are merged
//! in generation order, so the catalog does not depend on scheduling.

use antlab_core::digest::{config_digest, hex};
use antlab_core::{Pattern, RuleWord};
use antlab_detect::{classify_behavior, BehaviorClass, BehaviorReport, ClassifyBudget, ReportJson};
use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::catalog::{BehaviorCatalog, CatalogEntry};
use crate::generate::{generate, Generator, GeneratorError};

const CHUNK: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedSearchSpec {
    pub word: RuleWord,
    pub generator: Generator,
    pub budget: ClassifyBudget,
    /// Skip seeds whose configuration digest was already seen.
    pub dedupe: bool,
}

fn classify_seed(p: &Pattern, word: &RuleWord, budget: &ClassifyBudget) -> (CatalogEntry, Option<antlab_detect::CertificateJson>) {
    let conf = p.to_configuration();
    let digest = hex(config_digest(&conf));
    let report = match classify_behavior(&conf, word, budget) {
        Ok(r) => r,
        // states beyond the rule cannot come out of the generators; record
        // the seed as unclassifiable rather than abort the search
        Err(_) => BehaviorReport {
            word: word.clone(),
            class: BehaviorClass::Unknown,
            evidence: antlab_detect::Evidence::None,
            growth: None,
            interlacing: None,
            steps: 0,
            resource_limited: false,
        },
    };
    let cert = report.certificate_json();
    let json: ReportJson = report.to_json();
    (CatalogEntry { seed_digest: digest, seed: p.to_text(), report: json }, cert)
}

pub fn search(spec: &SeedSearchSpec) -> Result<BehaviorCatalog, GeneratorError> {
    let mut catalog = BehaviorCatalog::new(spec.word.to_string());
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut stream = generate(&spec.word, &spec.generator)?;
    loop {
        let mut chunk: Vec<Pattern> = Vec::with_capacity(CHUNK);
        for p in stream.by_ref() {
            if spec.dedupe && !seen.insert(config_digest(&p.to_configuration())) {
                continue;
            }
            chunk.push(p);
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        let results: Vec<_> = chunk.par_iter().map(|p| classify_seed(p, &spec.word, &spec.budget)).collect();
        for (entry, cert) in results {
            catalog.push(entry, cert);
        }
    }
    Ok(catalog)
}
