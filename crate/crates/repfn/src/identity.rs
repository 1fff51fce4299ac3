//! Truncated polynomial identity for interval partitions with a
//! two-point intersection.
//!
//! Let `C` be a subset of `[0, m]` with `0, r1, r2` in `C`, and let its
//! companion be `D = ([0, m] \ C) ∪ {r1, r2}`, so that `C ∪ D = [0, m]`
//! and `C ∩ D = {r1, r2}`. Writing `p_C` for the characteristic
//! polynomial of `C` and expanding every rational function as an explicit
//! truncated geometric series, the pair has equal representation profiles
//! on `[0, m]` exactly when
//!
//! ```text
//! (2 p_C(x^2))_m  =  ( (1 - x^(2m+2))/(1 - x^2)
//!                    + 2 p_C(x) x^r1 + 2 p_C(x) x^r2
//!                    + 2 p_C(x) (1 - x^(m+1))/(1 - x)
//!                    - ((1 - x^(m+1))/(1 - x))^2
//!                    - 2 x^r1 (1 - x^(m+1))/(1 - x)
//!                    - 2 x^r2 (1 - x^(m+1))/(1 - x)
//!                    - 2 x^(r1 + r2) )_m
//! ```
//!
//! where `(f)_m` keeps coefficients up to degree `m`. The checker
//! materializes both sides and reports the first disagreeing degree.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::Error;
use crate::set::IntSet;
use crate::Result;

/// Integer coefficients of a polynomial truncated at `degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffVec {
    #[serde(rename = "degree")]
    degree_bound: u64,
    coeffs: Vec<i64>,
}

impl CoeffVec {
    pub fn new(coeffs: Vec<i64>) -> CoeffVec {
        assert!(!coeffs.is_empty());
        CoeffVec {
            degree_bound: coeffs.len() as u64 - 1,
            coeffs,
        }
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }
}

impl<'de> Deserialize<'de> for CoeffVec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            degree: u64,
            coeffs: Vec<i64>,
        }
        let r = Repr::deserialize(deserializer)?;
        if r.degree >= crate::set::MAX_UNIVERSE_BOUND {
            return Err(D::Error::custom(format!("degree {} too large", r.degree)));
        }
        if r.coeffs.len() as u64 != r.degree + 1 {
            return Err(D::Error::custom(format!(
                "degree {} needs {} coefficients, got {}",
                r.degree,
                r.degree + 1,
                r.coeffs.len()
            )));
        }
        Ok(CoeffVec {
            degree_bound: r.degree,
            coeffs: r.coeffs,
        })
    }
}

/// Result of comparing the two truncated sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityOutcome {
    Holds,
    MismatchAt(u64),
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityOutcome::Holds)
    }
}

fn validate_instance(c: &IntSet, r1: u64, r2: u64, m: u64) -> Result<()> {
    if m > crate::set::MAX_UNIVERSE_BOUND {
        return Err(Error::BoundTooLarge {
            bound: m,
            max: crate::set::MAX_UNIVERSE_BOUND,
        });
    }
    if !(0 < r1 && r1 < r2 && r2 <= m) {
        return Err(Error::InvalidInstance(format!(
            "need 0 < r1 < r2 <= m, got r1={r1} r2={r2} m={m}"
        )));
    }
    if !c.contains(0) {
        return Err(Error::InvalidInstance("0 must belong to C".into()));
    }
    if let Some(max) = c.max() {
        if max > m {
            return Err(Error::InvalidInstance(format!(
                "C contains {max} beyond the interval bound {m}"
            )));
        }
    }
    if !c.contains(r1) || !c.contains(r2) {
        return Err(Error::InvalidInstance(
            "r1 and r2 must belong to C so the companion intersection is {r1, r2}".into(),
        ));
    }
    Ok(())
}

/// The companion `D = ([0, m] \ C) ∪ {r1, r2}` on the universe `[0, m]`.
pub fn companion_set(c: &IntSet, r1: u64, r2: u64, m: u64) -> Result<IntSet> {
    validate_instance(c, r1, r2, m)?;
    let inside = c.prefix(m);
    Ok(inside
        .complement()
        .union(&IntSet::from_members(&[r1, r2], m)?))
}

/// Both truncated sides of the identity, left then right.
pub fn identity_sides(c: &IntSet, r1: u64, r2: u64, m: u64) -> Result<(CoeffVec, CoeffVec)> {
    validate_instance(c, r1, r2, m)?;
    let len = (m + 1) as usize;

    let mut left = vec![0i64; len];
    for n in (0..=m).step_by(2) {
        left[n as usize] = 2 * c.chi(n / 2) as i64;
    }

    let mut right = vec![0i64; len];
    let mut running = 0i64; // sum of chi_C over [0, n]
    for n in 0..=m {
        running += c.chi(n) as i64;
        let mut v = 0i64;
        if n % 2 == 0 {
            v += 1; // (1 - x^(2m+2)) / (1 - x^2)
        }
        if n >= r1 {
            v += 2 * c.chi(n - r1) as i64; // 2 p_C(x) x^r1
            v -= 2; // 2 x^r1 (1 - x^(m+1)) / (1 - x)
        }
        if n >= r2 {
            v += 2 * c.chi(n - r2) as i64;
            v -= 2;
        }
        v += 2 * running; // 2 p_C(x) (1 - x^(m+1)) / (1 - x)
        v -= (n + 1) as i64; // ((1 - x^(m+1)) / (1 - x))^2
        if n == r1 + r2 {
            v -= 2;
        }
        right[n as usize] = v;
    }

    Ok((CoeffVec::new(left), CoeffVec::new(right)))
}

/// Compares both sides of the identity at all degrees up to `m`.
pub fn check_partition_identity(
    c: &IntSet,
    r1: u64,
    r2: u64,
    m: u64,
) -> Result<IdentityOutcome> {
    let (left, right) = identity_sides(c, r1, r2, m)?;
    match left
        .coeffs()
        .iter()
        .zip(right.coeffs())
        .position(|(a, b)| a != b)
    {
        None => Ok(IdentityOutcome::Holds),
        Some(n) => Ok(IdentityOutcome::MismatchAt(n as u64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::rep_profile;

    fn set(members: &[u64], bound: u64) -> IntSet {
        IntSet::from_members(members, bound).unwrap()
    }

    // The explicit l=1 interval pair with intersection {6, 7} on [0, 20].
    const E1: [u64; 12] = [0, 3, 5, 6, 7, 8, 10, 13, 15, 16, 18, 20];

    #[test]
    fn holds_on_the_interval_pair_instance() {
        let e = set(&E1, 20);
        assert_eq!(
            check_partition_identity(&e, 6, 7, 20).unwrap(),
            IdentityOutcome::Holds
        );
        let d = companion_set(&e, 6, 7, 20).unwrap();
        assert_eq!(
            d.members(),
            vec![1, 2, 4, 6, 7, 9, 11, 12, 14, 17, 19]
        );
        assert_eq!(rep_profile(&e, 20), rep_profile(&d, 20));
    }

    #[test]
    fn detects_a_single_member_perturbation() {
        let mut members: Vec<u64> = E1.to_vec();
        *members.last_mut().unwrap() = 19;
        let c = set(&members, 20);
        let out = check_partition_identity(&c, 6, 7, 20).unwrap();
        match out {
            IdentityOutcome::MismatchAt(k) => assert!(k <= 20),
            IdentityOutcome::Holds => panic!("perturbed instance must mismatch"),
        }
        let d = companion_set(&c, 6, 7, 20).unwrap();
        assert_ne!(rep_profile(&c, 20), rep_profile(&d, 20));
    }

    #[test]
    fn rejects_invalid_instances() {
        let no_zero = set(&[3, 5, 6, 7], 20);
        assert!(matches!(
            check_partition_identity(&no_zero, 6, 7, 20),
            Err(Error::InvalidInstance(_))
        ));
        let e = set(&E1, 20);
        assert!(check_partition_identity(&e, 7, 6, 20).is_err());
        assert!(check_partition_identity(&e, 0, 7, 20).is_err());
        assert!(check_partition_identity(&e, 6, 21, 21).is_err());
        // r1 not a member of C
        let c = set(&[0, 3, 5, 7, 8], 20);
        assert!(check_partition_identity(&c, 6, 7, 20).is_err());
    }

    #[test]
    fn coeffvec_json_shape() {
        let v = CoeffVec::new(vec![2, 0, -1]);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"degree":2,"coeffs":[2,0,-1]}"#);
        let back: CoeffVec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<CoeffVec>(r#"{"degree":3,"coeffs":[1]}"#).is_err());
    }
}
