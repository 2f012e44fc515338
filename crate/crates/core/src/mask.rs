//! Vertex sets as `u64` bitmasks (vertices `0..64`).

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask of `0..n`.
#[inline]
pub(crate) fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Mask of `0..k`; same as [`full`].
#[inline]
pub(crate) fn below(k: usize) -> u64 {
    full(k)
}

#[inline]
pub(crate) fn count(m: u64) -> usize {
    m.count_ones() as usize
}

/// Set bits in ascending order.
pub(crate) fn iter(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

pub(crate) fn from_iter(vs: impl IntoIterator<Item = usize>) -> u64 {
    vs.into_iter().fold(0, |m, v| m | bit(v))
}
