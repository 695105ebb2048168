//! Nearest-rank percentiles.

/// 1-based nearest rank `ceil(pct / 100 * n)`, clamped to `1..=n`.
///
/// Integer arithmetic keeps e.g. `0.66 * 100` from rounding up to 67.
pub fn nearest_rank(pct: u32, n: usize) -> usize {
    assert!(pct <= 100, "percentile {pct} above 100");
    let n64 = n as u64;
    let rank = (u64::from(pct) * n64).div_ceil(100);
    rank.clamp(1, n64.max(1)) as usize
}

/// Nearest-rank percentile of an already sorted slice.
pub fn percentile_sorted<T: Copy>(sorted: &[T], pct: u32) -> Option<T> {
    if sorted.is_empty() {
        return None;
    }
    Some(sorted[nearest_rank(pct, sorted.len()) - 1])
}

/// Nearest-rank percentile of an unsorted sample of integers.
pub fn percentile_u64(values: &[u64], pct: u32) -> Option<u64> {
    let mut v = values.to_vec();
    v.sort_unstable();
    percentile_sorted(&v, pct)
}

/// Nearest-rank percentile of floats, ordered by `total_cmp`.
pub fn percentile_f64(values: &[f64], pct: u32) -> Option<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    percentile_sorted(&v, pct)
}
