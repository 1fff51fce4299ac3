//! Forced-extension reconstruction.
//!
//! Given a prescribed intersection `I` and a horizon `H`, there is at
//! most one pair `(C, D)` with `C ∪ D = [0, H]`, `C ∩ D = I ∩ [0, H]`,
//! `0 ∈ C` and equal representation profiles: walking `k = 1, 2, ...`,
//! membership of `k` is forced by the single constraint
//! `R_C(k) = R_D(k)`, whose value is final as soon as `k` is placed
//! (pairs summing to `k` only involve elements `<= k`). The sweep either
//! completes, or reports the smallest `k` where no placement satisfies
//! the constraint.
//!
//! Pair counts are maintained word-parallel: the count of decided pairs
//! summing to `k` is a popcount of the decided bit set AND-ed with its
//! own reversal aligned at `k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::Error;
use crate::set::{IntSet, MAX_UNIVERSE_BOUND};
use crate::Result;

/// A prescription for the intersection `C ∩ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProgressionSpec {
    /// An explicit finite set.
    Finite(IntSet),
    /// A single progression `r + m * k`.
    Single { r: u64, modulus: u64 },
    /// A union of two progressions `(r1 + m * k) ∪ (r2 + m * k)`.
    Pair { r1: u64, r2: u64, modulus: u64 },
}

impl ProgressionSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ProgressionSpec::Finite(_) => Ok(()),
            ProgressionSpec::Single { r, modulus } => {
                if modulus == 0 || r >= modulus {
                    Err(Error::InvalidSpec(format!(
                        "single progression needs 0 <= r < m, got r={r} m={modulus}"
                    )))
                } else {
                    Ok(())
                }
            }
            ProgressionSpec::Pair { r1, r2, modulus } => {
                if !(0 < r1 && r1 < r2 && r2 < modulus) {
                    Err(Error::InvalidSpec(format!(
                        "progression pair needs 0 < r1 < r2 < m, got r1={r1} r2={r2} m={modulus}"
                    )))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The prescribed intersection clipped to `[0, horizon]`.
    pub fn members_up_to(&self, horizon: u64) -> IntSet {
        match self {
            ProgressionSpec::Finite(s) => s.prefix(horizon),
            ProgressionSpec::Single { r, modulus } => {
                progression_members(&[*r], *modulus, horizon)
            }
            ProgressionSpec::Pair { r1, r2, modulus } => {
                progression_members(&[*r1, *r2], *modulus, horizon)
            }
        }
    }
}

fn progression_members(residues: &[u64], modulus: u64, horizon: u64) -> IntSet {
    assert!(modulus >= 1, "progression modulus must be positive");
    let mut words = vec![0u64; bits::words_for(horizon + 1)];
    for &r in residues {
        let mut v = r;
        while v <= horizon {
            bits::set_bit(&mut words, v);
            match v.checked_add(modulus) {
                Some(next) => v = next,
                None => break,
            }
        }
    }
    IntSet::from_words(words, horizon)
}

impl fmt::Display for ProgressionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProgressionSpec::Finite(s) => write!(f, "finite:{s}"),
            ProgressionSpec::Single { r, modulus } => write!(f, "single:{r},{modulus}"),
            ProgressionSpec::Pair { r1, r2, modulus } => {
                write!(f, "pair:{r1},{r2},{modulus}")
            }
        }
    }
}

impl FromStr for ProgressionSpec {
    type Err = Error;

    /// Parses `finite:{a,b,...}`, `single:r,m` or `pair:r1,r2,m`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (kind, rest) = t
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("missing kind prefix in {t:?}")))?;
        let parse_nums = |rest: &str, want: usize| -> Result<Vec<u64>> {
            let nums: Vec<u64> = rest
                .split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(Error::InvalidSpec(format!("bad number {tok:?}")));
                    }
                    tok.parse::<u64>()
                        .map_err(|_| Error::InvalidSpec(format!("number {tok:?} overflows")))
                })
                .collect::<Result<_>>()?;
            if nums.len() != want {
                return Err(Error::InvalidSpec(format!(
                    "{kind} takes {want} numbers, got {}",
                    nums.len()
                )));
            }
            if nums.iter().any(|&n| n > MAX_UNIVERSE_BOUND) {
                return Err(Error::InvalidSpec("parameter beyond supported range".into()));
            }
            Ok(nums)
        };
        let spec = match kind {
            "finite" => ProgressionSpec::Finite(
                rest.parse::<IntSet>()
                    .map_err(|e| Error::InvalidSpec(e.to_string()))?,
            ),
            "single" => {
                let v = parse_nums(rest, 2)?;
                ProgressionSpec::Single {
                    r: v[0],
                    modulus: v[1],
                }
            }
            "pair" => {
                let v = parse_nums(rest, 3)?;
                ProgressionSpec::Pair {
                    r1: v[0],
                    r2: v[1],
                    modulus: v[2],
                }
            }
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown kind {other:?} (expected finite, single or pair)"
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Placement choices for one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assignment {
    C,
    D,
    Both,
}

/// The feasible subset of placements for one integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AssignmentOptions {
    pub c_only: bool,
    pub d_only: bool,
    pub both: bool,
}

impl AssignmentOptions {
    pub fn count(&self) -> usize {
        self.c_only as usize + self.d_only as usize + self.both as usize
    }

    pub fn sole(&self) -> Option<Assignment> {
        match (self.c_only, self.d_only, self.both) {
            (true, false, false) => Some(Assignment::C),
            (false, true, false) => Some(Assignment::D),
            (false, false, true) => Some(Assignment::Both),
            _ => None,
        }
    }
}

/// Feasibility of each placement of `k`, given the counts `r_c`, `r_d`
/// of already-decided pairs summing to `k` in each set.
///
/// With `0 ∈ C` always and `0 ∈ D` iff `zero_in_d`, placing `k` in a set
/// adds exactly the pair `(0, k)` to that set's count when it holds 0.
/// Membership in the prescribed intersection admits only the `Both`
/// placement; otherwise exactly one side must take `k`. The resulting
/// conditions are pairwise mutually exclusive, so at most one placement
/// is ever feasible.
pub fn decision_rule(
    r_c: u64,
    r_d: u64,
    k_in_intersection: bool,
    zero_in_d: bool,
) -> AssignmentOptions {
    let zd = zero_in_d as u64;
    if k_in_intersection {
        AssignmentOptions {
            both: r_c + 1 == r_d + zd,
            ..Default::default()
        }
    } else {
        AssignmentOptions {
            c_only: r_c + 1 == r_d,
            d_only: r_c == r_d + zd,
            ..Default::default()
        }
    }
}

/// Result of a forced-extension run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum SolveOutcome {
    /// The sweep completed; the pair is the unique solution on the
    /// horizon.
    #[serde(rename = "UNIQUE")]
    Unique { c: IntSet, d: IntSet },
    /// No placement satisfied the constraint at `fail_index` (the
    /// smallest such index; it does not move when the horizon grows).
    #[serde(rename = "UNSAT")]
    Unsat { fail_index: u64 },
    /// More than one placement was feasible. Unreachable under the
    /// decision rule above; reported rather than silently resolved.
    #[serde(rename = "BRANCH")]
    Branch { branch_index: u64 },
}

impl SolveOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SolveOutcome::Unique { .. } => "UNIQUE",
            SolveOutcome::Unsat { .. } => "UNSAT",
            SolveOutcome::Branch { .. } => "BRANCH",
        }
    }

    pub fn fail_index(&self) -> Option<u64> {
        match self {
            SolveOutcome::Unsat { fail_index } => Some(*fail_index),
            _ => None,
        }
    }
}

/// Reconstructs the unique pair for `spec` on `[0, horizon]`, or reports
/// the smallest index at which the constraints are contradictory.
pub fn solve(spec: &ProgressionSpec, horizon: u64) -> Result<SolveOutcome> {
    spec.validate()?;
    if horizon == 0 {
        return Err(Error::InvalidSpec("horizon must be at least 1".into()));
    }
    if horizon > MAX_UNIVERSE_BOUND {
        return Err(Error::BoundTooLarge {
            bound: horizon,
            max: MAX_UNIVERSE_BOUND,
        });
    }
    let inter = spec.members_up_to(horizon);
    let zero_in_d = inter.contains(0);
    if zero_in_d && !matches!(spec, ProgressionSpec::Single { r: 0, .. }) {
        return Err(Error::InvalidSpec(
            "0 in the prescribed intersection is only supported for single progressions with r=0"
                .into(),
        ));
    }

    let len = bits::words_for(horizon + 1);
    let mut c = vec![0u64; len];
    let mut d = vec![0u64; len];
    // Reversed frames over [0, horizon]: bit (horizon - j) mirrors bit j.
    let mut rev_c = vec![0u64; len];
    let mut rev_d = vec![0u64; len];

    let place = |words: &mut Vec<u64>, rev: &mut Vec<u64>, k: u64| {
        bits::set_bit(words, k);
        bits::set_bit(rev, horizon - k);
    };
    place(&mut c, &mut rev_c, 0);
    if zero_in_d {
        place(&mut d, &mut rev_d, 0);
    }

    for k in 1..=horizon {
        // Decided pairs (a, k - a) with a < k - a; bit k itself is still
        // unset, so the a = 0 slot contributes nothing spurious.
        let top = (k - 1) / 2;
        let shift = (horizon - k) as i64;
        let r_c = bits::dot_shifted(&c, &rev_c, shift, 0, top);
        let r_d = bits::dot_shifted(&d, &rev_d, shift, 0, top);
        let options = decision_rule(r_c, r_d, inter.contains(k), zero_in_d);
        match options.sole() {
            Some(Assignment::C) => place(&mut c, &mut rev_c, k),
            Some(Assignment::D) => place(&mut d, &mut rev_d, k),
            Some(Assignment::Both) => {
                place(&mut c, &mut rev_c, k);
                place(&mut d, &mut rev_d, k);
            }
            None if options.count() == 0 => {
                return Ok(SolveOutcome::Unsat { fail_index: k })
            }
            None => return Ok(SolveOutcome::Branch { branch_index: k }),
        }
    }

    Ok(SolveOutcome::Unique {
        c: IntSet::from_words(c, horizon),
        d: IntSet::from_words(d, horizon),
    })
}
