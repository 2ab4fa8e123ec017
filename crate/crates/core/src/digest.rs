//! 64-bit FNV-1a digests of configurations.
//!
//! The byte stream hashed for a configuration is, in order:
//! for every non-zero cell sorted by `(x, y)`: `x` as i64 little-endian,
//! `y` as i64 little-endian, the state as one byte; then the ant's `x` and `y`
//! (i64 little-endian each) and the heading index as one byte
//! (`U`=0, `R`=1, `D`=2, `L`=3).

use crate::ant::AntConfiguration;
use crate::geom::{Heading, Pos};

const OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
const PRIME: u64 = 0x0000_0100_0000_01b3;

#[derive(Clone, Copy, Debug)]
pub struct Fnv1a64(u64);

impl Default for Fnv1a64 {
    fn default() -> Self {
        Self(OFFSET_BASIS)
    }
}

impl Fnv1a64 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(PRIME);
        }
    }

    pub fn write_i64(&mut self, v: i64) {
        self.write(&v.to_le_bytes());
    }

    pub fn write_u8(&mut self, v: u8) {
        self.write(&[v]);
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

/// Digest of a sorted cell list plus pose, as documented in the module header.
pub fn digest_parts(cells: &[(Pos, u8)], position: Pos, heading: Heading) -> u64 {
    let mut h = Fnv1a64::new();
    for &(p, s) in cells {
        h.write_i64(p.x);
        h.write_i64(p.y);
        h.write_u8(s);
    }
    h.write_i64(position.x);
    h.write_i64(position.y);
    h.write_u8(heading.index());
    h.finish()
}

pub fn config_digest(conf: &AntConfiguration) -> u64 {
    digest_parts(&conf.grid.cells(), conf.position, conf.heading)
}

/// Fixed-width lowercase hex rendering used in reports.
pub fn hex(d: u64) -> String {
    format!("{d:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_vectors() {
        // published FNV-1a 64 test vectors
        assert_eq!(Fnv1a64::new().finish(), 0xcbf29ce484222325);
        let mut h = Fnv1a64::new();
        h.write(b"a");
        assert_eq!(h.finish(), 0xaf63dc4c8601ec8c);
        let mut h = Fnv1a64::new();
        h.write(b"foobar");
        assert_eq!(h.finish(), 0x85944171f73967e8);
    }

    #[test]
    fn zero_configuration_digest() {
        // 17 zero bytes: x, y, heading
        let mut h = Fnv1a64::new();
        h.write(&[0u8; 17]);
        assert_eq!(config_digest(&AntConfiguration::zero()), h.finish());
    }

    #[test]
    fn digest_depends_on_pose() {
        let a = AntConfiguration::zero();
        let mut b = a.clone();
        b.heading = Heading::Left;
        assert_ne!(config_digest(&a), config_digest(&b));
    }
}
