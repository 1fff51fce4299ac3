//! Dense sets of nonnegative integers over a declared universe `[0, N]`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits;
use crate::error::Error;
use crate::Result;

/// Largest accepted universe bound (the dense representation allocates
/// `bound / 8` bytes, so hostile inputs must not pick it).
pub const MAX_UNIVERSE_BOUND: u64 = 1 << 28;

/// A finite set of nonnegative integers within `[0, universe_bound]`,
/// stored as a bit vector keyed by value.
///
/// The universe bound is part of the value: two sets are equal only if
/// both the bound and the membership function agree. Values are immutable
/// after construction; every operation returns a new set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    bound: u64,
    words: Vec<u64>,
}

impl IntSet {
    /// The empty set over `[0, bound]`.
    pub fn empty(bound: u64) -> Self {
        assert!(
            bound <= MAX_UNIVERSE_BOUND,
            "universe bound {bound} exceeds the supported maximum"
        );
        IntSet {
            bound,
            words: vec![0; bits::words_for(bound + 1)],
        }
    }

    /// The full interval `[0, bound]`.
    pub fn interval(bound: u64) -> Self {
        let mut s = Self::empty(bound);
        for w in s.words.iter_mut() {
            *w = !0;
        }
        bits::mask_tail(&mut s.words, bound);
        s
    }

    /// Builds a set from listed elements; duplicates are fine, elements
    /// beyond `bound` are not.
    pub fn from_members(members: &[u64], bound: u64) -> Result<Self> {
        if bound > MAX_UNIVERSE_BOUND {
            return Err(Error::BoundTooLarge {
                bound,
                max: MAX_UNIVERSE_BOUND,
            });
        }
        let mut s = Self::empty(bound);
        for &m in members {
            if m > bound {
                return Err(Error::OutOfRange { element: m, bound });
            }
            bits::set_bit(&mut s.words, m);
        }
        Ok(s)
    }

    pub(crate) fn from_words(mut words: Vec<u64>, bound: u64) -> Self {
        words.resize(bits::words_for(bound + 1), 0);
        bits::mask_tail(&mut words, bound);
        IntSet { bound, words }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Inclusive upper limit of representable elements.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, k: u64) -> bool {
        k <= self.bound && bits::get_bit(&self.words, k)
    }

    /// Characteristic function: 1 if `k` is a member, else 0.
    pub fn chi(&self, k: u64) -> u64 {
        self.contains(k) as u64
    }

    /// Number of members.
    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<u64> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i as u64 * 64 + 63 - w.leading_zeros() as u64);
            }
        }
        None
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            std::iter::successors(
                if w == 0 { None } else { Some(w) },
                |rest| match rest & (rest - 1) {
                    0 => None,
                    r => Some(r),
                },
            )
            .map(move |rest| i as u64 * 64 + rest.trailing_zeros() as u64)
        })
    }

    pub fn members(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// `{ s + t : s in self }` with the universe bound raised by `t`.
    pub fn shift(&self, t: u64) -> IntSet {
        let bound = self
            .bound
            .checked_add(t)
            .expect("universe bound overflow in shift");
        assert!(
            bound <= MAX_UNIVERSE_BOUND,
            "universe bound {bound} exceeds the supported maximum"
        );
        let words = bits::shifted_left(&self.words, t, bits::words_for(bound + 1));
        IntSet { bound, words }
    }

    /// Set union; a mismatched universe takes the larger bound.
    pub fn union(&self, other: &IntSet) -> IntSet {
        let bound = self.bound.max(other.bound);
        let mut words = vec![0u64; bits::words_for(bound + 1)];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0)
                | other.words.get(i).copied().unwrap_or(0);
        }
        IntSet { bound, words }
    }

    /// Set intersection; a mismatched universe takes the larger bound.
    pub fn intersect(&self, other: &IntSet) -> IntSet {
        let bound = self.bound.max(other.bound);
        let mut words = vec![0u64; bits::words_for(bound + 1)];
        for (i, w) in words.iter_mut().enumerate() {
            *w = self.words.get(i).copied().unwrap_or(0)
                & other.words.get(i).copied().unwrap_or(0);
        }
        IntSet { bound, words }
    }

    /// Members `<= x`, re-bounded to `[0, x]` (raising the bound when `x`
    /// exceeds it).
    pub fn prefix(&self, x: u64) -> IntSet {
        let mut words = self.words.clone();
        words.resize(bits::words_for(x + 1), 0);
        bits::mask_tail(&mut words, x);
        IntSet { bound: x, words }
    }

    /// Complement within the own universe `[0, bound]`.
    pub fn complement(&self) -> IntSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        bits::mask_tail(&mut words, self.bound);
        IntSet {
            bound: self.bound,
            words,
        }
    }

    /// Whether some `s in self` and `u in other` satisfy `s - u = t`.
    ///
    /// Difference sets are never materialized; this is a shifted
    /// intersection test.
    pub fn difference_set_contains(&self, other: &IntSet, t: i64) -> bool {
        // s = u + t for some u in other, s in self.
        bits::dot_shifted(other.words(), self.words(), t, 0, other.bound) > 0
    }

    /// Canonical JSON form `{"bound": N, "members": [...]}`.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("set serialization cannot fail")
    }
}

impl fmt::Display for IntSet {
    /// Canonical text form: ascending members in braces, `{0,3,5,6}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet(bound={}, {})", self.bound, self)
    }
}

impl FromStr for IntSet {
    type Err = Error;

    /// Parses the brace form. The universe bound becomes the largest
    /// member (0 for the empty set); callers wanting a wider universe
    /// re-bound with [`IntSet::prefix`].
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| Error::SetParse("expected braces around the member list".into()))?;
        let mut members = Vec::new();
        let inner = inner.trim();
        if !inner.is_empty() {
            for tok in inner.split(',') {
                let tok = tok.trim();
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::SetParse(format!("bad member {tok:?}")));
                }
                let v: u64 = tok
                    .parse()
                    .map_err(|_| Error::SetParse(format!("member {tok:?} overflows")))?;
                if v > MAX_UNIVERSE_BOUND {
                    return Err(Error::BoundTooLarge {
                        bound: v,
                        max: MAX_UNIVERSE_BOUND,
                    });
                }
                members.push(v);
            }
        }
        let bound = members.iter().copied().max().unwrap_or(0);
        IntSet::from_members(&members, bound)
    }
}

#[derive(Serialize, Deserialize)]
struct IntSetRepr {
    bound: u64,
    members: Vec<u64>,
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        IntSetRepr {
            bound: self.bound,
            members: self.members(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = IntSetRepr::deserialize(deserializer)?;
        IntSet::from_members(&repr.members, repr.bound).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(members: &[u64], bound: u64) -> IntSet {
        IntSet::from_members(members, bound).unwrap()
    }

    #[test]
    fn from_members_accepts_duplicates_and_checks_bound() {
        let a3 = set(&[0, 3, 5, 6, 3], 7);
        assert_eq!(a3.members(), vec![0, 3, 5, 6]);
        assert_eq!(a3.bound(), 7);
        assert_eq!(
            IntSet::from_members(&[11], 10),
            Err(Error::OutOfRange {
                element: 11,
                bound: 10
            })
        );
        assert!(IntSet::from_members(&[], 10).unwrap().is_empty());
    }

    #[test]
    fn shift_moves_members_and_bound() {
        let s = set(&[1, 2, 4, 7], 7);
        let t = s.shift(6);
        assert_eq!(t.members(), vec![7, 8, 10, 13]);
        assert_eq!(t.bound(), 13);
        assert_eq!(s.shift(0), s);
        assert_eq!(set(&[0], 0).shift(14).members(), vec![14]);
    }

    #[test]
    fn union_intersect_prefix() {
        let a3 = set(&[0, 3, 5, 6], 7);
        let b3 = set(&[1, 2, 4, 7], 7);
        let a4 = a3.union(&b3.shift(8));
        assert_eq!(a4.members(), vec![0, 3, 5, 6, 9, 10, 12, 15]);
        assert_eq!(a4.bound(), 15);
        assert_eq!(a4.prefix(7), a3);
        assert_eq!(a3.intersect(&a3), a3);
        assert!(a3.intersect(&b3).is_empty());
    }

    #[test]
    fn prefix_can_widen_the_universe() {
        let s = set(&[0, 3], 3);
        let w = s.prefix(9);
        assert_eq!(w.bound(), 9);
        assert_eq!(w.members(), vec![0, 3]);
    }

    #[test]
    fn difference_queries() {
        let c0 = set(&[0], 0);
        let d0 = set(&[1], 1);
        assert!(!c0.difference_set_contains(&d0, 2));
        assert!(!d0.difference_set_contains(&c0, 2));
        assert!(d0.difference_set_contains(&c0, 1));
        assert!(c0.difference_set_contains(&d0, -1));
        let a3 = set(&[0, 3, 5, 6], 7);
        let b3 = set(&[1, 2, 4, 7], 7);
        assert!(!a3.difference_set_contains(&b3, 8));
        assert!(!b3.difference_set_contains(&a3, 8));
        assert!(a3.difference_set_contains(&a3, 0));
    }

    #[test]
    fn canonical_text_round_trip() {
        for text in ["{}", "{0}", "{0,3,5,6}", "{14}"] {
            let parsed: IntSet = text.parse().unwrap();
            assert_eq!(parsed.to_string(), text);
        }
        assert!("0,3".parse::<IntSet>().is_err());
        assert!("{0,,3}".parse::<IntSet>().is_err());
        assert!("{-1}".parse::<IntSet>().is_err());
        assert!("{0,3} ".parse::<IntSet>().is_ok());
        assert!("{3,0,3}".parse::<IntSet>().is_ok());
    }

    #[test]
    fn canonical_json_round_trip() {
        let a3 = set(&[0, 3, 5, 6], 7);
        let json = a3.to_canonical_json();
        assert_eq!(json, r#"{"bound":7,"members":[0,3,5,6]}"#);
        let back: IntSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a3);
        assert!(serde_json::from_str::<IntSet>(r#"{"bound":3,"members":[4]}"#).is_err());
        assert!(
            serde_json::from_str::<IntSet>(r#"{"bound":99999999999999,"members":[]}"#).is_err()
        );
    }

    #[test]
    fn equality_includes_the_bound() {
        assert_ne!(set(&[0, 3], 3), set(&[0, 3], 7));
        assert_eq!(set(&[0, 3], 7), set(&[3, 0], 7));
    }
}
