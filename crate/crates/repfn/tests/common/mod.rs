//! Shared brute-force oracles, written against the definitions only and
//! independent of the library's word-parallel kernels.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use repfn::IntSet;

/// Number of pairs s < s' in `s` with s + s' = n, by double loop.
pub fn brute_rep_count(s: &IntSet, n: u64) -> u64 {
    let members = s.members();
    let mut count = 0;
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a + b == n {
                count += 1;
            }
        }
    }
    count
}

pub fn brute_rep_profile(s: &IntSet, horizon: u64) -> Vec<u64> {
    let members = s.members();
    let mut values = vec![0u64; horizon as usize + 1];
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if a + b <= horizon {
                values[(a + b) as usize] += 1;
            }
        }
    }
    values
}

/// Ordered cross counts, by double loop.
pub fn brute_cross_profile(c: &IntSet, d: &IntSet, horizon: u64) -> Vec<u64> {
    let mut values = vec![0u64; horizon as usize + 1];
    for a in c.iter() {
        for b in d.iter() {
            if a + b <= horizon {
                values[(a + b) as usize] += 1;
            }
        }
    }
    values
}

/// Self-convolution coefficient sum_{i=0..n} chi(i) * chi(n-i).
pub fn brute_self_convolution(s: &IntSet, n: u64) -> u64 {
    (0..=n).map(|i| s.chi(i) * s.chi(n - i)).sum()
}

pub fn random_set(rng: &mut StdRng, bound: u64, density: f64) -> IntSet {
    let members: Vec<u64> = (0..=bound).filter(|_| rng.gen_bool(density)).collect();
    IntSet::from_members(&members, bound).unwrap()
}
