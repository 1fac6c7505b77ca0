//! Enumeration of integer grids `{0, ..., base-1}^n` by mixed-radix index.

/// Number of points `base^n`, `None` on overflow.
pub(crate) fn grid_len(base: u64, n: usize) -> Option<u64> {
    (0..n).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

/// Writes the point with index `idx` into `out`, least significant coordinate first.
pub(crate) fn grid_point(mut idx: u64, base: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = idx % base;
        idx /= base;
    }
}
