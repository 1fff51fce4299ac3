//! JSON set decoder: accepted values satisfy the set invariants and
//! survive a canonical round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use repfn::IntSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(set) = serde_json::from_str::<IntSet>(text) else {
        return;
    };
    assert!(set.bound() <= repfn::MAX_UNIVERSE_BOUND);
    if let Some(max) = set.max() {
        assert!(max <= set.bound());
    }
    let back: IntSet = serde_json::from_str(&set.to_canonical_json()).expect("canonical json");
    assert_eq!(back, set);
});
