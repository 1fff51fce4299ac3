//! Representation counts and profiles.
//!
//! `rep_count(S, n)` is the number of pairs `s < s'` in `S` with
//! `s + s' = n`; `cross_rep_profile` counts ordered pairs across two
//! sets. Profiles are computed word-parallel: the count at `n` is a
//! popcount of the set's bit vector AND-ed against its own reversal
//! aligned at `n`, which keeps a full sweep at `O(N^2 / 64)`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::bits;
use crate::set::IntSet;

/// The vector `(R(0), ..., R(horizon))` for one set or one pair of sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepProfile {
    horizon: u64,
    values: Vec<u64>,
}

impl RepProfile {
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, n: u64) -> u64 {
        self.values[n as usize]
    }

    /// Index of the first entry where two profiles differ.
    pub fn first_difference(&self, other: &RepProfile) -> Option<u64> {
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|i| i as u64)
    }
}

impl<'de> Deserialize<'de> for RepProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            horizon: u64,
            values: Vec<u64>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.horizon >= crate::set::MAX_UNIVERSE_BOUND {
            return Err(D::Error::custom(format!(
                "profile horizon {} too large",
                r.horizon
            )));
        }
        if r.values.len() as u64 != r.horizon + 1 {
            return Err(D::Error::custom(format!(
                "profile of horizon {} must carry {} values, got {}",
                r.horizon,
                r.horizon + 1,
                r.values.len()
            )));
        }
        Ok(RepProfile {
            horizon: r.horizon,
            values: r.values,
        })
    }
}

/// Full convolution count at `n`: the number of ordered pairs
/// `(i, j)` with `i + j = n`, `i` in `a`, `j` in `b`.
fn conv_at(a: &IntSet, rev_b: &[u64], b_bound: u64, n: u64) -> u64 {
    // b[n - i] = rev_b[i + (b_bound - n)] after reversal within [0, b_bound].
    let shift = b_bound as i64 - n as i64;
    let lo = n.saturating_sub(b_bound);
    let hi = n.min(a.bound());
    if lo > hi {
        return 0;
    }
    bits::dot_shifted(a.words(), rev_b, shift, lo, hi)
}

/// Number of pairs `s < s'` in `s_set` with `s + s' = n`.
pub fn rep_count(s_set: &IntSet, n: u64) -> u64 {
    let rev = bits::reversed(s_set.words(), s_set.bound());
    rep_count_with_rev(s_set, &rev, n)
}

fn rep_count_with_rev(s_set: &IntSet, rev: &[u64], n: u64) -> u64 {
    let conv = conv_at(s_set, rev, s_set.bound(), n);
    let diag = if n.is_multiple_of(2) { s_set.chi(n / 2) } else { 0 };
    (conv - diag) / 2
}

/// The profile `(R_S(0), ..., R_S(horizon))`.
pub fn rep_profile(s_set: &IntSet, horizon: u64) -> RepProfile {
    let rev = bits::reversed(s_set.words(), s_set.bound());
    let values = (0..=horizon)
        .map(|n| rep_count_with_rev(s_set, &rev, n))
        .collect();
    RepProfile { horizon, values }
}

/// The profile of ordered cross counts `R_{C,D}(0..=horizon)`.
pub fn cross_rep_profile(c: &IntSet, d: &IntSet, horizon: u64) -> RepProfile {
    let rev = bits::reversed(d.words(), d.bound());
    let values = (0..=horizon)
        .map(|n| conv_at(c, &rev, d.bound(), n))
        .collect();
    RepProfile { horizon, values }
}
