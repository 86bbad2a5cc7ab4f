//! Out-of-range index handling shared by padding, demosaicing and filters.

/// Reflect about the edge sample without repeating it
/// (`... 2 1 | 0 1 2 ... n-1 | n-2 n-3 ...`). Preserves index parity for
/// single-step excursions, which keeps padded sites on the right channel.
///
/// `len` must be at least 2 whenever `idx` can leave `[0, len)`.
#[inline]
pub fn reflect101(idx: isize, len: usize) -> usize {
    let len = len as isize;
    if len == 1 {
        return 0;
    }
    let period = 2 * (len - 1);
    let mut i = idx.rem_euclid(period);
    if i >= len {
        i = period - i;
    }
    i as usize
}

/// Clamp to the nearest edge sample.
#[inline]
pub fn clamp(idx: isize, len: usize) -> usize {
    idx.clamp(0, len as isize - 1) as usize
}
