#![no_main]

use adicclean::format::{adic_from_json, adic_to_json, finite_from_json, finite_to_json, parse_element_file};
use adicclean::{AdicRing, CompleteRingSpec, EndoTag, FiniteRing, FiniteRingSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(payload) = parse_element_file(text) else { return };
    let finite = [
        FiniteRingSpec::zmod(12),
        FiniteRingSpec::dual(3),
        FiniteRingSpec::triangular2(FiniteRingSpec::zmod(4)),
        FiniteRingSpec::matrix(FiniteRingSpec::dual(2), 2),
    ];
    for spec in finite {
        let ring = FiniteRing::new(spec).unwrap();
        if let Ok(x) = finite_from_json(&ring, &payload) {
            assert_eq!(finite_from_json(&ring, &finite_to_json(&x)).unwrap(), x);
        }
    }
    let complete = [
        CompleteRingSpec::padic_matrix(2, 2, 4),
        CompleteRingSpec::skew_series(FiniteRingSpec::dual(2), EndoTag::DualProjection, 4),
        CompleteRingSpec::skew_series(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2), EndoTag::Identity, 3),
    ];
    for spec in complete {
        let ring = AdicRing::new(spec).unwrap();
        if let Ok(x) = adic_from_json(&ring, &payload) {
            assert_eq!(adic_from_json(&ring, &adic_to_json(&x)).unwrap(), x);
            // every element of these rings decomposes
            adicclean::decompose(&x).expect("decompose");
        }
    }
});
