//! Cross-module agreement: the doubling construction, the explicit
//! interval pair and the forced-extension solver must produce the same
//! sets wherever their domains overlap.

mod common;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use repfn::construction::{
    construct_partition, doubling_step, even_family_params, interval_pair,
};
use repfn::{rep_profile, solve, IntSet, ProgressionSpec, SolveOutcome};

fn family_spec(l: u32) -> ProgressionSpec {
    let fam = even_family_params(l);
    ProgressionSpec::Pair {
        r1: fam.r1,
        r2: fam.r2,
        modulus: fam.modulus,
    }
}

#[test]
fn solver_reproduces_the_construction() {
    for l in 1..=2u32 {
        let fam = even_family_params(l);
        let horizon = 8 * fam.modulus;
        let (c, d) = construct_partition(l, horizon).unwrap();
        match solve(&family_spec(l), horizon).unwrap() {
            SolveOutcome::Unique { c: sc, d: sd } => {
                assert_eq!(sc, c, "l={l}");
                assert_eq!(sd, d, "l={l}");
            }
            other => panic!("family spec must be solvable, got {other:?}"),
        }
    }
}

#[test]
fn solver_reproduces_the_interval_pair() {
    for l in 1..=2u32 {
        let pair = interval_pair(l).unwrap();
        let h = 1u64 << (2 * l + 1);
        let members = IntSet::from_members(&[h - 2, h - 1], h - 1).unwrap();
        match solve(&ProgressionSpec::Finite(members), pair.bound).unwrap() {
            SolveOutcome::Unique { c, d } => {
                assert_eq!(c, pair.e_set, "l={l}");
                assert_eq!(d, pair.f_set, "l={l}");
            }
            other => panic!("interval spec must be solvable, got {other:?}"),
        }
    }
}

/// An admissible doubling step keeps the profiles of a profile-equal
/// pair equal. Seeds come from pairs that are profile-equal by
/// construction: singletons (identically zero profiles), evil/odious
/// prefixes, and construction states.
#[test]
fn admissible_steps_preserve_profile_equality() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);

    // singleton seeds with random offsets
    for _ in 0..40 {
        let a = rng.gen_range(0..40u64);
        let b = rng.gen_range(0..40u64);
        let c0 = IntSet::from_members(&[a], a.max(1)).unwrap();
        let d0 = IntSet::from_members(&[b], b.max(1)).unwrap();
        let t = rng.gen_range(1..80u64);
        let Ok(step) = doubling_step(&c0, &d0, t) else {
            // offset hit a cross difference; nothing to check
            continue;
        };
        let horizon = 2 * (a.max(b) + t);
        assert_eq!(
            rep_profile(&step.c, horizon),
            rep_profile(&step.d, horizon),
            "a={a} b={b} t={t}"
        );
    }

    // evil/odious prefix seeds
    for l in 1..=6u32 {
        let p = repfn::tm_prefix(l).unwrap();
        let size = 1u64 << l;
        for t in [size, size + 1, 2 * size, 3 * size + 5] {
            let Ok(step) = doubling_step(&p.evil, &p.odious, t) else {
                continue;
            };
            let horizon = 2 * (size + t);
            assert_eq!(
                rep_profile(&step.c, horizon),
                rep_profile(&step.d, horizon),
                "l={l} t={t}"
            );
        }
    }

    // every state along the level-1 and level-2 constructions
    for l in 1..=2u32 {
        let states = repfn::construction::doubling_states(l, 200).unwrap();
        for state in &states {
            let step =
                doubling_step(&state.c_set, &state.d_set, state.step_length).unwrap();
            let horizon = 2 * (state.c_set.bound() + state.step_length);
            assert_eq!(
                rep_profile(&step.c, horizon),
                rep_profile(&step.d, horizon),
                "l={l} i={}",
                state.step_index
            );
        }
    }
}

/// A rejection index never moves when the horizon grows.
#[test]
fn failure_index_is_horizon_independent() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let mut checked = 0u32;
    for _ in 0..200 {
        let m = rng.gen_range(3..24u64);
        let r1 = rng.gen_range(1..m - 1);
        let r2 = rng.gen_range(r1 + 1..m);
        let spec = ProgressionSpec::Pair {
            r1,
            r2,
            modulus: m,
        };
        let short = solve(&spec, 4 * m).unwrap();
        if let SolveOutcome::Unsat { fail_index } = short {
            for horizon in [fail_index, 6 * m, 8 * m] {
                if horizon == 0 {
                    continue;
                }
                assert_eq!(
                    solve(&spec, horizon).unwrap().fail_index(),
                    Some(fail_index),
                    "r1={r1} r2={r2} m={m} horizon={horizon}"
                );
            }
            checked += 1;
        }
    }
    assert!(checked > 50, "random tuples should mostly be contradictory");
}

/// Every completed reconstruction satisfies the full contract when
/// re-checked from scratch.
#[test]
fn unique_outcomes_are_sound() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let mut uniques = 0u32;
    for _ in 0..400 {
        let m = rng.gen_range(2..20u64);
        let r = rng.gen_range(1..m);
        let spec = ProgressionSpec::Single { r, modulus: m };
        let horizon = rng.gen_range(1..10 * m);
        if let SolveOutcome::Unique { c, d } = solve(&spec, horizon).unwrap() {
            uniques += 1;
            assert_eq!(c.union(&d), IntSet::interval(horizon));
            assert_eq!(c.intersect(&d), spec.members_up_to(horizon));
            assert!(c.contains(0));
            assert_eq!(rep_profile(&c, horizon), rep_profile(&d, horizon));
        }
    }
    assert!(uniques > 0, "some short-horizon instances complete");
}
