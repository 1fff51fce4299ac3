//! Progression-spec parser: accepted specs are valid, round-trip through
//! their text form, and clip consistently to a horizon.

#![no_main]

use libfuzzer_sys::fuzz_target;
use repfn::ProgressionSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = text.parse::<ProgressionSpec>() else {
        return;
    };
    assert!(spec.validate().is_ok(), "parser only accepts valid specs");
    let reparsed: ProgressionSpec = spec.to_string().parse().expect("display reparses");
    assert_eq!(reparsed, spec);

    let horizon = 96;
    let members = spec.members_up_to(horizon);
    assert!(members.max().map_or(0, |m| m) <= horizon);
    match spec {
        ProgressionSpec::Single { r, modulus } => {
            for k in members.iter() {
                assert_eq!(k % modulus, r % modulus);
            }
        }
        ProgressionSpec::Pair { r1, r2, modulus } => {
            for k in members.iter() {
                assert!(k % modulus == r1 % modulus || k % modulus == r2 % modulus);
            }
        }
        ProgressionSpec::Finite(_) => {}
    }
});
