//! Brace-form set parser: accepted inputs must re-emit canonically and
//! reparse to the same value.

#![no_main]

use libfuzzer_sys::fuzz_target;
use repfn::IntSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(set) = text.parse::<IntSet>() else {
        return;
    };
    if let Some(max) = set.max() {
        assert!(max <= set.bound());
    }
    let canonical = set.to_string();
    let reparsed: IntSet = canonical.parse().expect("canonical form reparses");
    assert_eq!(reparsed, set);
    assert_eq!(reparsed.to_string(), canonical);
});
