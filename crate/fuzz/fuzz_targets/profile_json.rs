//! Profile and coefficient-vector decoders: length invariants hold on
//! every accepted value, and serialization round-trips.

#![no_main]

use libfuzzer_sys::fuzz_target;
use repfn::{CoeffVec, RepProfile};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(profile) = serde_json::from_str::<RepProfile>(text) {
        assert_eq!(profile.values().len() as u64, profile.horizon() + 1);
        let json = serde_json::to_string(&profile).unwrap();
        let back: RepProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, profile);
    }
    if let Ok(coeffs) = serde_json::from_str::<CoeffVec>(text) {
        assert_eq!(coeffs.coeffs().len() as u64, coeffs.degree_bound() + 1);
        let json = serde_json::to_string(&coeffs).unwrap();
        let back: CoeffVec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, coeffs);
    }
});
