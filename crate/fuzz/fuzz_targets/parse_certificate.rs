#![no_main]

use adicclean::format::{certificate_to_json, parse_certificate};
use adicclean::verify_certificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // precision is capped by ring validation (p^N < 2^62), so verification stays cheap
    let Ok(cert) = parse_certificate(text) else { return };
    let verdict = verify_certificate(&cert);
    let again = parse_certificate(&certificate_to_json(&cert).to_string()).expect("round trip");
    assert_eq!(verify_certificate(&again), verdict);
});
