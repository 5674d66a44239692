//! Order statistics shared across the crate. One median convention is used
//! everywhere: for an even count, the mean of the two central order
//! statistics.

use crate::scalar::{cast, Real};

/// Median, destructive on the scratch slice. Values must be finite.
pub(crate) fn median_in_place<F: Real>(xs: &mut [F]) -> F {
    debug_assert!(!xs.is_empty());
    let n = xs.len();
    let mid = n / 2;
    if n % 2 == 1 {
        *xs.select_nth_unstable_by(mid, |a, b| a.partial_cmp(b).unwrap())
            .1
    } else {
        let (lo, pivot, _) = xs.select_nth_unstable_by(mid - 1, |a, b| a.partial_cmp(b).unwrap());
        let v1 = *pivot;
        let _ = lo;
        // smallest element of the upper partition is the mid-th order statistic
        let v2 = xs[mid..]
            .iter()
            .copied()
            .fold(F::infinity(), |m, v| m.min(v));
        (v1 + v2) * cast::<F>(0.5)
    }
}

/// Median of a borrowed slice.
pub(crate) fn median<F: Real>(xs: &[F]) -> F {
    let mut scratch = xs.to_vec();
    median_in_place(&mut scratch)
}

/// Percentile `p` (in percent, 0..=100) by linear interpolation between
/// closest ranks of the sorted data.
pub(crate) fn percentile_sorted<F: Real>(sorted: &[F], p: f64) -> F {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=100.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let rank = p / 100.0 * (n - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = cast::<F>(rank - lo as f64);
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}
