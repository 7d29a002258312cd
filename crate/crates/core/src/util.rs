//! Small shared helpers: content hashing and full-precision float text.

/// FNV-1a 64-bit hash, used for content-derived version ids.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Decimal text with 17 significant digits: enough to round-trip any f64.
pub(crate) fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}
