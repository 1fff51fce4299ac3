//! The evil/odious partition of `[0, 2^l - 1]` and the digit-chain
//! classifier.
//!
//! `A` is the set of nonnegative integers with an even number of ones in
//! binary, `B` its complement. The prefixes `A_l = A ∩ [0, 2^l - 1]` and
//! `B_l = B ∩ [0, 2^l - 1]` are the seed partitions everything else is
//! assembled from.

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::Error;
use crate::set::IntSet;
use crate::Result;

/// Levels above this would materialize sets past the desk scale the rest
/// of the crate operates at.
pub const MAX_PREFIX_LEVEL: u32 = 24;

/// True iff the binary expansion of `n` has an even number of ones.
pub fn is_evil(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

/// The partition of `[0, 2^level - 1]` into evil and odious numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmPrefix {
    pub level: u32,
    /// `A_level`: even popcount, contains 0.
    pub evil: IntSet,
    /// `B_level`: odd popcount, contains 1.
    pub odious: IntSet,
}

/// Materializes `A_l` and `B_l` for `1 <= l <= 24`.
pub fn tm_prefix(level: u32) -> Result<TmPrefix> {
    if level == 0 || level > MAX_PREFIX_LEVEL {
        return Err(Error::InvalidLevel(level));
    }
    let bound = (1u64 << level) - 1;

    // Bit j of `pattern` is the evil indicator of j for j < 64, grown by
    // appending the complement of the block built so far. Whole words are
    // then this pattern or its complement depending on the parity of the
    // word's base value.
    let mut pattern: u64 = 1;
    let mut width = 1u32;
    while width < 64 {
        pattern |= (!pattern & ((1u64 << width) - 1)) << width;
        width *= 2;
    }
    let mut words = vec![0u64; bits::words_for(bound + 1)];
    for (i, w) in words.iter_mut().enumerate() {
        *w = if is_evil(i as u64) { pattern } else { !pattern };
    }
    let evil = IntSet::from_words(words, bound);
    let odious = evil.complement();
    Ok(TmPrefix {
        level,
        evil,
        odious,
    })
}

/// Where the chain `{M - 2^j : 0 <= j < ceil(log2 M)}` sits relative to
/// the evil/odious split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ChainClass {
    AllInA,
    AllInB,
    Mixed,
}

impl std::fmt::Display for ChainClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ChainClass::AllInA => "ALL_IN_A",
            ChainClass::AllInB => "ALL_IN_B",
            ChainClass::Mixed => "MIXED",
        })
    }
}

/// Classification of the subtracted-powers chain of `M`, together with
/// the exponent `ceil(log2 M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainClassification {
    pub class: ChainClass,
    pub exponent: u32,
}

/// Exact `ceil(log2 m)` for `m >= 1`, by bit length.
pub fn ceil_log2(m: u64) -> u32 {
    debug_assert!(m >= 1);
    64 - (m - 1).leading_zeros()
}

/// Classifies whether `M - 1, M - 2, M - 4, ..., M - 2^(e-1)` (with
/// `e = ceil(log2 M)`) are all evil, all odious, or neither.
pub fn digit_chain_classify(m: u64) -> Result<ChainClassification> {
    if m < 2 {
        return Err(Error::InvalidInput(m));
    }
    let exponent = ceil_log2(m);
    let mut all_evil = true;
    let mut all_odious = true;
    for j in 0..exponent {
        if is_evil(m - (1u64 << j)) {
            all_odious = false;
        } else {
            all_evil = false;
        }
    }
    let class = if all_evil {
        ChainClass::AllInA
    } else if all_odious {
        ChainClass::AllInB
    } else {
        ChainClass::Mixed
    };
    Ok(ChainClassification { class, exponent })
}
