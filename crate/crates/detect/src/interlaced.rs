//! Interlaced words `t_0 t_1 t_2 ...` with `t_n = u_0 v_0^n u_1 v_1^n ... u_{k-1} v_{k-1}^n`.

use serde::{Deserialize, Serialize};

/// Search horizon when re-synchronising two segments after an insertion.
const RESYNC: usize = 32;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterlacedDecomposition {
    /// `(u_i, v_i)` pairs.
    pub parts: Vec<(Vec<u8>, Vec<u8>)>,
}

impl InterlacedDecomposition {
    pub fn new(parts: Vec<(Vec<u8>, Vec<u8>)>) -> Self {
        Self { parts }
    }

    pub fn single(u: &[u8], v: &[u8]) -> Self {
        Self::new(vec![(u.to_vec(), v.to_vec())])
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn block_len(&self, n: usize) -> usize {
        self.parts.iter().map(|(u, v)| u.len() + n * v.len()).sum()
    }

    /// The block `t_n`.
    pub fn block(&self, n: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.block_len(n));
        for (u, v) in &self.parts {
            out.extend_from_slice(u);
            for _ in 0..n {
                out.extend_from_slice(v);
            }
        }
        out
    }

    /// Total growth `Σ|v_i|` from one block to the next.
    pub fn growth(&self) -> usize {
        self.parts.iter().map(|(_, v)| v.len()).sum()
    }
}

/// Number of complete blocks `t_0, t_1, ...` that `trace` starts with.
pub fn check_interlaced(trace: &[u8], dec: &InterlacedDecomposition) -> usize {
    if dec.block_len(0) == 0 && dec.growth() == 0 {
        return 0;
    }
    let mut at = 0usize;
    let mut n = 0usize;
    loop {
        let len = dec.block_len(n);
        if len == 0 {
            n += 1;
            continue;
        }
        if at + len > trace.len() || trace[at..at + len] != dec.block(n)[..] {
            return n;
        }
        at += len;
        n += 1;
    }
}

/// Recovers `(u_i, v_i)` from two consecutive segments `first = t_0` and
/// `second = t_1`, reading `second` as `first` with insertions.
pub fn mine_decomposition(first: &[u8], second: &[u8]) -> Option<InterlacedDecomposition> {
    if second.len() < first.len() {
        return None;
    }
    let mut parts = Vec::new();
    let (mut i, mut j) = (0usize, 0usize);
    let mut u_start = 0usize;
    let mut budget = second.len() - first.len();
    while i < first.len() {
        if first[i] == second[j] {
            i += 1;
            j += 1;
            continue;
        }
        let horizon = RESYNC.min(first.len() - i);
        let l = (1..=budget).find(|&l| second[j + l..].len() >= horizon && second[j + l..j + l + horizon] == first[i..i + horizon])?;
        parts.push((first[u_start..i].to_vec(), second[j..j + l].to_vec()));
        u_start = i;
        j += l;
        budget -= l;
    }
    // trailing insertion, or a pure prefix when nothing grew
    parts.push((first[u_start..].to_vec(), second[j..].to_vec()));
    let dec = InterlacedDecomposition::new(parts);
    (dec.block(0) == first && dec.block(1) == second).then_some(dec)
}
