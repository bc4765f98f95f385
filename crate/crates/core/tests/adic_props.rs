use adicclean::adic::{invert_in_corner, invert_unit, peirce_blocks};
use adicclean::engine::{decompose, refine_idempotent, solve_sylvester, CleanCertificate};
use adicclean::lifting::{hensel_lift_idempotent, random_approximate_idempotent};
use adicclean::regularity::{nilpotency_index, spectral_data};
use adicclean::{AdicElem, AdicRing, CompleteRingSpec, EndoTag, Error, FiniteRingSpec};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn rings() -> Vec<AdicRing> {
    [
        CompleteRingSpec::padic_matrix(2, 2, 6),
        CompleteRingSpec::padic_matrix(3, 2, 4),
        CompleteRingSpec::padic_matrix(5, 3, 3),
        CompleteRingSpec::skew_series(FiniteRingSpec::matrix(FiniteRingSpec::zmod(2), 2), EndoTag::Identity, 6),
        CompleteRingSpec::skew_series(FiniteRingSpec::dual(2), EndoTag::DualProjection, 6),
        CompleteRingSpec::skew_series(FiniteRingSpec::dual(3), EndoTag::DualProjection, 5),
        CompleteRingSpec::skew_series(
            FiniteRingSpec::triangular2(FiniteRingSpec::zmod(3)),
            EndoTag::Identity,
            4,
        ),
    ]
    .into_iter()
    .map(|s| AdicRing::new(s).unwrap())
    .collect()
}

fn sample(seed: u64) -> (AdicRing, AdicElem, AdicElem, AdicElem) {
    let all = rings();
    let ring = all[(seed % all.len() as u64) as usize].clone();
    let mut rng = StdRng::seed_from_u64(seed);
    let (x, y, z) = (ring.random(&mut rng), ring.random(&mut rng), ring.random(&mut rng));
    (ring, x, y, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let (ring, x, y, z) = sample(seed);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&y + &z) * &x, &(&y * &x) + &(&z * &x));
        prop_assert_eq!(&x * &ring.one(), x.clone());
        prop_assert_eq!(&ring.one() * &x, x);
    }

    #[test]
    fn truncation_is_a_homomorphism(seed in any::<u64>(), m in 1usize..=6) {
        let (ring, x, y, _) = sample(seed);
        let m = m.min(ring.precision());
        let t = |a: &AdicElem| a.truncate(m).unwrap();
        prop_assert_eq!(t(&(&x + &y)), &t(&x) + &t(&y));
        prop_assert_eq!(t(&(&x * &y)), &t(&x) * &t(&y));
        prop_assert_eq!(t(&ring.one()), t(&x).ring().one());
        prop_assert_eq!(t(&x).truncate(1).unwrap().residue(), x.residue());
    }

    #[test]
    fn valuation_inequalities(seed in any::<u64>()) {
        let (ring, x, y, _) = sample(seed);
        let cap = ring.precision();
        let (vx, vy) = (x.ideal_valuation(), y.ideal_valuation());
        prop_assert!((&x + &y).ideal_valuation() >= vx.min(vy));
        prop_assert!((&x * &y).ideal_valuation() >= (vx + vy).min(cap));
        prop_assert_eq!(x.is_zero(), vx == cap);
        for level in 0..=cap {
            prop_assert_eq!(x.in_ideal_power(level), vx >= level);
        }
    }

    #[test]
    fn peirce_blocks_reassemble(seed in any::<u64>()) {
        let (ring, x, _, _) = sample(seed);
        let mut rng = StdRng::seed_from_u64(seed ^ 0xe);
        let e = hensel_lift_idempotent(&random_approximate_idempotent(&ring, &mut rng).unwrap()).unwrap();
        let blocks = peirce_blocks(&x, &e).unwrap();
        prop_assert_eq!(blocks.reassemble(), x);
        prop_assert_eq!(&blocks.e * &blocks.a, blocks.a.clone());
        prop_assert_eq!(&blocks.a * &blocks.e, blocks.a.clone());
        prop_assert_eq!(&blocks.f * &blocks.d, blocks.d.clone());
        prop_assert!((&blocks.e * &blocks.d).is_zero());
        prop_assert!((&blocks.b * &blocks.b).is_zero());
    }

    #[test]
    fn inverse_matches_unit_status(seed in any::<u64>()) {
        let (ring, x, _, _) = sample(seed);
        let residue_is_unit = x.residue().invert().is_ok();
        match invert_unit(&x) {
            Ok(y) => {
                prop_assert!(residue_is_unit);
                prop_assert!((&x * &y).is_one() && (&y * &x).is_one());
                prop_assert_eq!(y.truncate(1).unwrap().residue(), x.residue().invert().unwrap());
            }
            Err(e) => {
                prop_assert!(!residue_is_unit);
                prop_assert_eq!(e, Error::NotUnit);
            }
        }
        // 1 + I is inside the unit group
        let shifted = &ring.one() + &(&ring.ideal_generator() * &x);
        prop_assert!(invert_unit(&shifted).is_ok());
    }

    #[test]
    fn hensel_lift_is_compatible_with_truncation(seed in any::<u64>(), m in 1usize..=6) {
        let (ring, _, _, _) = sample(seed);
        let mut rng = StdRng::seed_from_u64(seed);
        let a = random_approximate_idempotent(&ring, &mut rng).unwrap();
        let e = hensel_lift_idempotent(&a).unwrap();
        prop_assert!(e.is_idempotent());
        prop_assert!((&e - &a).in_ideal_power(1));
        let m = m.min(ring.precision());
        // the lift is a polynomial in a, so it commutes with truncation
        prop_assert_eq!(hensel_lift_idempotent(&a.truncate(m).unwrap()).unwrap(), e.truncate(m).unwrap());
    }

    #[test]
    fn certificates_hold_and_truncate(seed in any::<u64>()) {
        let (ring, x, _, _) = sample(seed);
        let cert = decompose(&x).unwrap();
        let u = &x - &cert.e;
        prop_assert!(cert.e.is_idempotent());
        prop_assert_eq!(&cert.e * &x, &x * &cert.e);
        prop_assert!((&u * &cert.u_inv).is_one() && (&cert.u_inv * &u).is_one());
        let exe = &(&cert.e * &x) * &cert.e;
        prop_assert!(exe.pow(cert.n as u64).in_ideal_power(1));
        prop_assert!(cert.n == 1 || !exe.pow(cert.n as u64 - 1).in_ideal_power(1));
        for m in 1..=ring.precision() {
            let low: CleanCertificate = decompose(&x.truncate(m).unwrap()).unwrap();
            prop_assert_eq!(cert.truncate(m).unwrap(), low);
        }
    }
}

#[test]
fn skew_product_is_associative_on_dual_numbers() {
    let ring = AdicRing::new(CompleteRingSpec::skew_series(
        FiniteRingSpec::dual(2),
        EndoTag::DualProjection,
        6,
    ))
    .unwrap();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..2000 {
        let (a, b, c) = (ring.random(&mut rng), ring.random(&mut rng), ring.random(&mut rng));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }
    // t u = σ(u) t = 0 while u t ≠ 0
    let base = ring.residue_ring();
    let u = ring
        .series(vec![base.elem(adicclean::Value::Dual(0, 1)).unwrap()])
        .unwrap();
    let t = ring.t().unwrap();
    assert!((&t * &u).is_zero());
    assert!(!(&u * &t).is_zero());
}

#[test]
fn corner_inverse() {
    let ring = AdicRing::new(CompleteRingSpec::padic_matrix(2, 2, 5)).unwrap();
    let f = ring.matrix(&[&[0, 0], &[0, 1]]).unwrap();
    let d = ring.matrix(&[&[0, 0], &[0, 3]]).unwrap();
    let inv = invert_in_corner(&d, &f).unwrap();
    assert_eq!(&d * &inv, f);
    assert_eq!(&inv * &d, f);
    let not_unit = ring.matrix(&[&[0, 0], &[0, 2]]).unwrap();
    assert_eq!(invert_in_corner(&not_unit, &f), Err(Error::NotUnitInCorner));
}

#[test]
fn sylvester_post_check_on_random_steps() {
    let ring = AdicRing::new(CompleteRingSpec::padic_matrix(3, 3, 5)).unwrap();
    let mut rng = StdRng::seed_from_u64(12);
    let mut solved = 0;
    for _ in 0..200 {
        let x = ring.random(&mut rng);
        let sd = spectral_data(&x.residue()).unwrap();
        let mut e = hensel_lift_idempotent(&ring.canonical_lift(&sd.z).unwrap()).unwrap();
        for level in 1..ring.precision() {
            let blocks = peirce_blocks(&x, &e).unwrap();
            let k = nilpotency_index(&blocks.a, level + 1, sd.n * (level + 1)).unwrap();
            let sol = solve_sylvester(&blocks, k, level).unwrap();
            let lhs_r = &(&blocks.a * &sol.r) - &(&sol.r * &blocks.d);
            let lhs_s = &(&blocks.d * &sol.s) - &(&sol.s * &blocks.a);
            assert!((&lhs_r - &blocks.b).in_ideal_power(level + 1));
            assert!((&lhs_s + &blocks.c).in_ideal_power(level + 1));
            assert!(sol.r.in_ideal_power(level) && sol.s.in_ideal_power(level));
            solved += 1;
            e = refine_idempotent(&x, &e, level, sd.n).unwrap();
            assert!((&(&e * &x) - &(&x * &e)).in_ideal_power(level + 1));
        }
    }
    assert!(solved > 0);
}
