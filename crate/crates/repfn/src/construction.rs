//! The doubling construction and its closed forms.
//!
//! Starting from `C = {0}`, `D = {1}`, one doubling step with offset `t`
//! replaces the pair by `(C ∪ (t + D), D ∪ (t + C))`. When `t` avoids the
//! cross differences `(C - D) ∪ (D - C)` the step preserves equality of
//! the representation profiles, and the three-regime schedule of offsets
//! below drives the pair toward a partition of `[0, N]` whose
//! intersection is the union of two arithmetic progressions.

use crate::error::Error;
use crate::set::IntSet;
use crate::Result;

/// Result of one doubling step.
///
/// The flags report whether the offset also avoided each set's own
/// difference set; when both hold the unions are disjoint and the
/// intersection grows by exactly the shifted copy.
#[derive(Debug, Clone)]
pub struct DoublingStep {
    pub c: IntSet,
    pub d: IntSet,
    pub avoids_c_differences: bool,
    pub avoids_d_differences: bool,
}

/// One pair state along the doubling iteration.
#[derive(Debug, Clone)]
pub struct DoublingState {
    pub step_index: u32,
    pub c_set: IntSet,
    pub d_set: IntSet,
    /// Offset that produces the next state.
    pub step_length: u64,
}

/// Applies one doubling step with offset `t`, failing when `t` lies in a
/// cross difference of the pair (the profile-equality guarantee is void
/// there).
pub fn doubling_step(c0: &IntSet, d0: &IntSet, t: u64) -> Result<DoublingStep> {
    if t == 0 {
        return Err(Error::InvalidInput(0));
    }
    if let Some((minuend, subtrahend)) = difference_witness(c0, d0, t) {
        return Err(Error::OffsetCollision {
            offset: t,
            minuend,
            subtrahend,
        });
    }
    if let Some((minuend, subtrahend)) = difference_witness(d0, c0, t) {
        return Err(Error::OffsetCollision {
            offset: t,
            minuend,
            subtrahend,
        });
    }
    Ok(DoublingStep {
        c: c0.union(&d0.shift(t)),
        d: d0.union(&c0.shift(t)),
        avoids_c_differences: !c0.difference_set_contains(c0, t as i64),
        avoids_d_differences: !d0.difference_set_contains(d0, t as i64),
    })
}

fn difference_witness(a: &IntSet, b: &IntSet, t: u64) -> Option<(u64, u64)> {
    b.iter().find_map(|u| {
        let s = u.checked_add(t)?;
        a.contains(s).then_some((s, u))
    })
}

fn step_length(l: u32, i: u32) -> u64 {
    let two_l = 2 * l;
    if i < two_l {
        1u64 << (i + 1)
    } else if i == two_l {
        (1u64 << (two_l + 1)) - 2
    } else {
        (1u64 << (i + 1)) - (1u64 << (i - two_l))
    }
}

/// The offset schedule `m_0, ..., m_(count-1)` for level `l`: powers of
/// two up to `i = 2l - 1`, the dip `2^(2l+1) - 2` at `i = 2l`, and
/// `2^(i+1) - 2^(i-2l)` afterwards.
pub fn step_lengths(l: u32, count: usize) -> Vec<u64> {
    assert!(l >= 1, "level must be positive");
    assert!(count as u64 + 1 < 63, "schedule would overflow u64");
    (0..count as u32).map(|i| step_length(l, i)).collect()
}

/// Closed-form parameters of the even-r1 family at level `l`:
/// `r1 = 2^(2l+1) - 2`, `r2 = r1 + 1`, modulus `m = 2^(2l+2) - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub r1: u64,
    pub r2: u64,
    pub modulus: u64,
}

pub fn even_family_params(l: u32) -> FamilyParams {
    assert!((1..=30).contains(&l));
    let r1 = (1u64 << (2 * l + 1)) - 2;
    FamilyParams {
        r1,
        r2: r1 + 1,
        modulus: (1u64 << (2 * l + 2)) - 2,
    }
}

/// The odd-r1 counterpart: `r1 = 2^(2l) - 1`, `r2 = 2^(2l+1) + 2^(2l) - 2`,
/// same modulus. (No closed-form set construction is provided for it;
/// the solver reconstructs its pairs.)
pub fn odd_family_params(l: u32) -> FamilyParams {
    assert!((1..=30).contains(&l));
    FamilyParams {
        r1: (1u64 << (2 * l)) - 1,
        r2: (1u64 << (2 * l + 1)) + (1u64 << (2 * l)) - 2,
        modulus: (1u64 << (2 * l + 2)) - 2,
    }
}

/// Runs the doubling iteration for level `l`, keeping every intermediate
/// state, until one more step could no longer change `[0, horizon]`.
pub fn doubling_states(l: u32, horizon: u64) -> Result<Vec<DoublingState>> {
    assert!(l >= 1, "level must be positive");
    let mut states = vec![DoublingState {
        step_index: 0,
        c_set: IntSet::from_members(&[0], 1)?,
        d_set: IntSet::from_members(&[1], 1)?,
        step_length: step_length(l, 0),
    }];
    loop {
        let last = states.last().unwrap();
        // Elements added by a step with offset t are all >= t, so once
        // t exceeds the horizon the prefix below it is final.
        if last.step_length > horizon {
            return Ok(states);
        }
        let step = doubling_step(&last.c_set, &last.d_set, last.step_length)?;
        let index = last.step_index + 1;
        states.push(DoublingState {
            step_index: index,
            c_set: step.c,
            d_set: step.d,
            step_length: step_length(l, index),
        });
    }
}

/// The level-`l` pair restricted to `[0, horizon]`.
///
/// The result covers the interval, and its intersection is
/// `(r1 + m*k) ∪ (r2 + m*k)` clipped to the horizon, with the
/// [`even_family_params`] values.
pub fn construct_partition(l: u32, horizon: u64) -> Result<(IntSet, IntSet)> {
    let states = doubling_states(l, horizon)?;
    let last = states.last().unwrap();
    Ok((last.c_set.prefix(horizon), last.d_set.prefix(horizon)))
}

/// The explicit pair `(E, F)` partitioning `[0, 3 * 2^(2l+1) - 4]` with
/// intersection `{2^(2l+1) - 2, 2^(2l+1) - 1}`.
#[derive(Debug, Clone)]
pub struct IntervalPair {
    pub level: u32,
    pub e_set: IntSet,
    pub f_set: IntSet,
    pub bound: u64,
}

/// Builds the interval pair from the evil/odious prefixes of order
/// `2l + 1`: each set is the base prefix, a copy of the opposite prefix
/// shifted by `2^(2l+1) - 2`, and a clipped opposite copy shifted by
/// `2^(2l+2) - 2`; `E` additionally picks up the right endpoint.
pub fn interval_pair(l: u32) -> Result<IntervalPair> {
    if l == 0 {
        return Err(Error::InvalidLevel(0));
    }
    let p = crate::thue_morse::tm_prefix(2 * l + 1)?;
    let h = 1u64 << (2 * l + 1);
    let bound = 3 * h - 4;
    let clip = h - 3;
    let e_set = p
        .evil
        .union(&p.odious.shift(h - 2))
        .union(&p.odious.prefix(clip).shift(2 * h - 2))
        .union(&IntSet::from_members(&[bound], bound)?)
        .prefix(bound);
    let f_set = p
        .odious
        .union(&p.evil.shift(h - 2))
        .union(&p.evil.prefix(clip).shift(2 * h - 2))
        .prefix(bound);
    Ok(IntervalPair {
        level: l,
        e_set,
        f_set,
        bound,
    })
}
