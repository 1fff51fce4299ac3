//! Word-level helpers for the dense bit-vector kernels.

pub(crate) const WORD_BITS: u64 = 64;

/// Number of `u64` words needed to hold `bit_count` bits.
pub(crate) fn words_for(bit_count: u64) -> usize {
    bit_count.div_ceil(WORD_BITS) as usize
}

pub(crate) fn get_bit(words: &[u64], i: u64) -> bool {
    let w = (i / WORD_BITS) as usize;
    match words.get(w) {
        Some(word) => (word >> (i % WORD_BITS)) & 1 != 0,
        None => false,
    }
}

pub(crate) fn set_bit(words: &mut [u64], i: u64) {
    words[(i / WORD_BITS) as usize] |= 1u64 << (i % WORD_BITS);
}

/// Zeroes any bits at positions > `bound`, making the buffer canonical.
pub(crate) fn mask_tail(words: &mut [u64], bound: u64) {
    let keep = words_for(bound + 1);
    for w in words.iter_mut().skip(keep) {
        *w = 0;
    }
    if keep > 0 {
        let top = bound % WORD_BITS;
        words[keep - 1] &= !0u64 >> (63 - top);
    }
}

/// Bit-reversal within `[0, bound]`: output bit `j` is input bit `bound - j`.
pub(crate) fn reversed(words: &[u64], bound: u64) -> Vec<u64> {
    let mut out = vec![0u64; words_for(bound + 1)];
    let mut i = 0u64;
    for &w in words {
        let mut rest = w;
        while rest != 0 {
            let b = rest.trailing_zeros() as u64;
            let pos = i + b;
            if pos > bound {
                break;
            }
            set_bit(&mut out, bound - pos);
            rest &= rest - 1;
        }
        i += WORD_BITS;
        if i > bound {
            break;
        }
    }
    out
}

/// `sum over i in [lo, hi] of a[i] * b[i + shift]`, with out-of-range bits
/// reading as zero on both sides.
pub(crate) fn dot_shifted(a: &[u64], b: &[u64], shift: i64, lo: u64, hi: u64) -> u64 {
    if lo > hi {
        return 0;
    }
    if shift < 0 {
        // a[i]*b[i-s] = b[j]*a[j+s] with j = i - s.
        let s = shift.unsigned_abs();
        if hi < s {
            return 0;
        }
        return dot_shifted(b, a, s as i64, lo.max(s) - s, hi - s);
    }

    let s = shift as u64;
    let a_cap = a.len() as u64 * WORD_BITS;
    let b_cap = b.len() as u64 * WORD_BITS;
    if a_cap == 0 || b_cap <= s {
        return 0;
    }
    let hi = hi.min(a_cap - 1).min(b_cap - 1 - s);
    if lo > hi {
        return 0;
    }

    let q = (s / WORD_BITS) as usize;
    let r = (s % WORD_BITS) as u32;
    let w_lo = (lo / WORD_BITS) as usize;
    let w_hi = (hi / WORD_BITS) as usize;
    let mut acc = 0u64;
    #[allow(clippy::needless_range_loop)] // w also addresses b at an offset
    for w in w_lo..=w_hi {
        let mut aw = a[w];
        if w == w_lo {
            aw &= !0u64 << (lo % WORD_BITS);
        }
        if w == w_hi {
            aw &= !0u64 >> (63 - hi % WORD_BITS);
        }
        if aw == 0 {
            continue;
        }
        let idx = w + q;
        let low = b.get(idx).copied().unwrap_or(0);
        let bw = if r == 0 {
            low
        } else {
            (low >> r) | (b.get(idx + 1).copied().unwrap_or(0) << (64 - r))
        };
        acc += (aw & bw).count_ones() as u64;
    }
    acc
}

/// Source bits shifted left by `t` into a buffer of `new_len` words.
pub(crate) fn shifted_left(words: &[u64], t: u64, new_len: usize) -> Vec<u64> {
    let q = (t / WORD_BITS) as usize;
    let r = (t % WORD_BITS) as u32;
    let mut out = vec![0u64; new_len];
    for (i, &w) in words.iter().enumerate() {
        if w == 0 {
            continue;
        }
        if i + q < new_len {
            out[i + q] |= w << r;
        }
        if r > 0 && i + q + 1 < new_len {
            out[i + q + 1] |= w >> (64 - r);
        }
    }
    out
}
