//! Certificate and solve-outcome decoders: any accepted document
//! round-trips through serialization.

#![no_main]

use libfuzzer_sys::fuzz_target;
use repfn::verifier::Certificate;
use repfn::SolveOutcome;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = serde_json::from_str::<Certificate>(text) {
        let json = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
    if let Ok(outcome) = serde_json::from_str::<SolveOutcome>(text) {
        let json = serde_json::to_string(&outcome).unwrap();
        let back: SolveOutcome = serde_json::from_str(&json).unwrap();
        assert_eq!(back, outcome);
    }
});
