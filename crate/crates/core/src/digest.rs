//! Snapshot digests used to tag collapse steps.

use core::fmt;
use core::hash::Hasher;

use fnv::FnvHasher;

/// A 64-bit FNV-1a fingerprint of a structure's canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest(pub u64);

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

pub(crate) struct DigestWriter(FnvHasher);

impl DigestWriter {
    pub(crate) fn new(tag: &str) -> Self {
        let mut w = DigestWriter(FnvHasher::default());
        w.str(tag);
        w
    }

    pub(crate) fn str(&mut self, s: &str) {
        self.0.write(s.as_bytes());
        // 0xff never occurs in UTF-8, so it separates fields unambiguously.
        self.0.write_u8(0xff);
    }

    pub(crate) fn num(&mut self, n: usize) {
        self.0.write_u64(n as u64);
    }

    pub(crate) fn finish(self) -> Digest {
        Digest(self.0.finish())
    }
}
