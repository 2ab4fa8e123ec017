//! Highway equivalence: two highways are the same when their eventual traces
//! and trajectories agree after dropping a finite prefix from each.
//!
//! For certified highways this reduces to equal drifts and periodic trace
//! words that are rotations of each other.

use antlab_core::Pos;
use serde::{Deserialize, Serialize};

use crate::certificate::HighwayCertificate;

/// Lexicographically least rotation of `word` (Booth's algorithm).
pub fn least_rotation(word: &[u8]) -> Vec<u8> {
    let n = word.len();
    if n == 0 {
        return Vec::new();
    }
    let s: Vec<u8> = word.iter().chain(word.iter()).copied().collect();
    let mut fail = vec![-1i64; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[k + i as usize + 1] {
            if sj < s[k + i as usize + 1] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != s[k] {
            if sj < s[k] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    s[k..k + n].to_vec()
}

/// Equivalence class key: canonical periodic trace plus drift.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HighwayClassKey {
    pub canonical_trace: Vec<u8>,
    pub drift: Pos,
}

impl HighwayClassKey {
    pub fn of(cert: &HighwayCertificate) -> Self {
        Self {
            canonical_trace: cert.canonical_trace(),
            drift: cert.drift,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighwayClass {
    pub key: HighwayClassKey,
    /// First certificate seen for the class, in input order.
    pub representative: HighwayCertificate,
    /// Indices into the input list.
    pub members: Vec<usize>,
}

impl HighwayClass {
    pub fn period(&self) -> u64 {
        self.key.canonical_trace.len() as u64
    }
}

/// Groups certificates into equivalence classes, ordered by first appearance.
pub fn dedupe_highways(certs: &[HighwayCertificate]) -> Vec<HighwayClass> {
    let mut classes: Vec<HighwayClass> = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        let key = HighwayClassKey::of(c);
        match classes.iter_mut().find(|cl| cl.key == key) {
            Some(cl) => cl.members.push(i),
            None => classes.push(HighwayClass {
                key,
                representative: c.clone(),
                members: vec![i],
            }),
        }
    }
    classes
}
