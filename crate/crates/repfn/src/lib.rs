//! Partitions of `[0, N]` into two sets with coinciding representation
//! functions.
//!
//! For a set `S` of nonnegative integers, `R_S(n)` counts the pairs
//! `s < s'` in `S` with `s + s' = n`. This crate builds, reconstructs and
//! verifies pairs `(C, D)` that cover an interval `[0, N]`, have a
//! prescribed intersection (a finite set or a union of arithmetic
//! progressions), and satisfy `R_C(n) = R_D(n)` everywhere on the
//! interval.
//!
//! The pieces:
//!
//! * [`IntSet`] — dense bit-vector sets over a declared universe `[0, N]`.
//! * [`profile`] — word-parallel representation profiles `R_S` and
//!   `R_{C,D}`, plus the truncated polynomial identity checker for
//!   interval partitions with a two-point intersection.
//! * [`thue_morse`] — the evil/odious partition of `[0, 2^l - 1]` and the
//!   digit-chain classifier.
//! * [`construction`] — the doubling step and the closed-form families it
//!   generates.
//! * [`solver`] — forced-extension reconstruction of the unique pair
//!   satisfying a [`ProgressionSpec`], reporting the first contradiction
//!   when there is none.
//! * [`verifier`] — exhaustive desk-scale searches over parameter tuples,
//!   emitting deterministic [`Certificate`]s.

mod bits;
mod error;

pub mod construction;
pub mod identity;
pub mod profile;
pub mod set;
pub mod solver;
pub mod thue_morse;
pub mod verifier;

pub use error::Error;
pub use identity::{check_partition_identity, companion_set, CoeffVec, IdentityOutcome};
pub use profile::{cross_rep_profile, rep_count, rep_profile, RepProfile};
pub use set::{IntSet, MAX_UNIVERSE_BOUND};
pub use solver::{decision_rule, solve, Assignment, ProgressionSpec, SolveOutcome};
pub use thue_morse::{digit_chain_classify, is_evil, tm_prefix, ChainClass, TmPrefix};
pub use verifier::{Certificate, Parity};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
