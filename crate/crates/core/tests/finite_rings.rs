use std::thread;

use adicclean::finite::{invert_finite, sigma_apply};
use adicclean::format::{finite_from_json, finite_to_json};
use adicclean::{EndoTag, Error, FiniteElem, FiniteRing, FiniteRingSpec};
use proptest::prelude::*;

fn ring(spec: FiniteRingSpec) -> FiniteRing {
    FiniteRing::new(spec).unwrap()
}

/// Every ring of at most 256 elements used anywhere in the tests.
fn small_rings() -> Vec<FiniteRing> {
    vec![
        ring(FiniteRingSpec::zmod(12)),
        ring(FiniteRingSpec::zmod(256)),
        ring(FiniteRingSpec::dual(2)),
        ring(FiniteRingSpec::dual(13)),
        ring(FiniteRingSpec::triangular2(FiniteRingSpec::zmod(4))),
        ring(FiniteRingSpec::triangular2(FiniteRingSpec::dual(2))),
        ring(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2)),
        ring(FiniteRingSpec::matrix(FiniteRingSpec::zmod(3), 2)),
        ring(FiniteRingSpec::matrix(FiniteRingSpec::zmod(4), 2)),
        ring(FiniteRingSpec::matrix(FiniteRingSpec::dual(2), 2)),
    ]
}

/// Associativity and both distributive laws over all triples, split across
/// threads by the first factor.
fn check_axioms(r: &FiniteRing) {
    let elems: Vec<FiniteElem> = r.elements().collect();
    let (zero, one) = (r.zero(), r.one());
    for a in &elems {
        assert_eq!(&(a + &zero), a);
        assert_eq!(&(a + &(-a)), &zero);
        assert_eq!(&(a * &one), a);
        assert_eq!(&(&one * a), a);
    }
    let workers = thread::available_parallelism().map_or(4, |n| n.get());
    let chunk = elems.len().div_ceil(workers);
    thread::scope(|s| {
        for part in elems.chunks(chunk) {
            let elems = &elems;
            s.spawn(move || {
                for a in part {
                    for b in elems {
                        let ab = a * b;
                        assert_eq!(&(a + b), &(b + a));
                        for c in elems {
                            assert_eq!(&ab * c, a * &(b * c), "associativity at {a}, {b}, {c}");
                            let bc = b + c;
                            assert_eq!(a * &bc, &ab + &(a * c), "left distributivity at {a}, {b}, {c}");
                            assert_eq!(&bc * a, &(b * a) + &(c * a), "right distributivity at {a}, {b}, {c}");
                        }
                    }
                }
            });
        }
    });
}

#[test]
fn ring_axioms_hold_exhaustively() {
    for r in small_rings() {
        assert!(r.cardinality().unwrap() <= 256);
        check_axioms(&r);
    }
}

#[test]
fn inverses_are_two_sided_and_only_for_units() {
    for r in small_rings() {
        let elems: Vec<FiniteElem> = r.elements().collect();
        for a in &elems {
            let is_unit = elems.iter().any(|b| (a * b).is_one() && (b * a).is_one());
            match invert_finite(a) {
                Ok(b) => {
                    assert!(is_unit, "{a} inverted but has no inverse");
                    assert!((a * &b).is_one() && (&b * a).is_one());
                }
                Err(e) => {
                    assert!(!is_unit, "{a} is a unit");
                    assert_eq!(e, Error::NotUnit);
                }
            }
        }
    }
}

#[test]
fn every_element_has_an_idempotent_power() {
    for r in small_rings() {
        for a in r.elements() {
            let card = r.cardinality().unwrap() as u64;
            assert!((1..=card).any(|m| a.pow(m) == a.pow(2 * m)), "{a}");
        }
    }
}

#[test]
fn dual_projection_is_a_ring_endomorphism() {
    for p in [2, 3, 5] {
        let r = ring(FiniteRingSpec::dual(p));
        let s = |a: &FiniteElem| sigma_apply(EndoTag::DualProjection, a).unwrap();
        assert_eq!(s(&r.one()), r.one());
        for a in r.elements() {
            assert_eq!(s(&s(&a)), s(&a));
            for b in r.elements() {
                assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
                assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
            }
        }
    }
    let z4 = ring(FiniteRingSpec::zmod(4));
    assert_eq!(
        sigma_apply(EndoTag::DualProjection, &z4.one()),
        Err(Error::EndoSpecMismatch)
    );
}

#[test]
fn mixed_ring_arithmetic_is_rejected() {
    let a = ring(FiniteRingSpec::zmod(4)).one();
    let b = ring(FiniteRingSpec::zmod(8)).one();
    assert_eq!(a.try_add(&b), Err(Error::SpecMismatch));
    assert_eq!(a.try_mul(&b), Err(Error::SpecMismatch));
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(FiniteRing::new(FiniteRingSpec::zmod(0)).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::zmod(1)).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::dual(4)).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 0)).is_err());
}

#[test]
fn oversized_specs_are_rejected() {
    assert!(FiniteRing::new(FiniteRingSpec::zmod(1 << 40)).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::dual(4_294_967_311)).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 65)).is_err());
    let nested = FiniteRingSpec::matrix(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 8), 9);
    assert!(FiniteRing::new(nested).is_err());
    assert!(FiniteRing::new(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 64)).is_ok());
    let series = |n| {
        adicclean::AdicRing::new(adicclean::CompleteRingSpec::skew_series(
            FiniteRingSpec::zmod(2),
            EndoTag::Identity,
            n,
        ))
    };
    assert!(series(4096).is_ok());
    assert!(series(4097).is_err());
    let matrix_series = adicclean::CompleteRingSpec::skew_series(
        FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 8),
        EndoTag::Identity,
        65,
    );
    assert!(adicclean::AdicRing::new(matrix_series).is_err());
    assert!(adicclean::AdicRing::new(adicclean::CompleteRingSpec::padic_matrix(2, 65, 1)).is_err());
}

fn mid_ring() -> FiniteRing {
    ring(FiniteRingSpec::matrix(
        FiniteRingSpec::triangular2(FiniteRingSpec::zmod(6)),
        2,
    ))
}

proptest! {
    #[test]
    fn axioms_on_random_triples(i in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let r = mid_ring();
        let card = r.cardinality().unwrap();
        let (a, b, c) = (
            r.element_at(i as u128 % card),
            r.element_at(j as u128 % card),
            r.element_at(k as u128 % card),
        );
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn json_round_trip(i in any::<u64>()) {
        let r = mid_ring();
        let a = r.element_at(i as u128 % r.cardinality().unwrap());
        prop_assert_eq!(finite_from_json(&r, &finite_to_json(&a)).unwrap(), a);
    }
}
