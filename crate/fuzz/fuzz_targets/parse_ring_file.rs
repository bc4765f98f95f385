#![no_main]

use adicclean::format::{parse_ring_file, ring_file_to_json, RingFile};
use adicclean::{AdicRing, FiniteRing};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_ring_file(text) else { return };
    // accepted specs must build a ring and survive a round trip
    match &file {
        RingFile::Complete(spec) => {
            AdicRing::new(spec.clone()).expect("validated complete spec");
        }
        RingFile::Finite(spec) => {
            FiniteRing::new(spec.clone()).expect("validated finite spec");
        }
    }
    let again = parse_ring_file(&ring_file_to_json(&file).to_string()).expect("round trip");
    assert_eq!(again, file);
});
