//! Lifting idempotents along the `I`-adic filtration.
//!
//! The map `a -> 3a² - 2a³` fixes idempotents and squares the idempotency
//! defect: `a'² - a' = (a² - a)² (4a² - 4a - 3)`. Only powers of `a` appear,
//! so it is valid in noncommutative rings.

use rand::Rng;

use crate::adic::{iteration_budget, AdicElem, AdicRing};
use crate::error::{Error, Result};
use crate::regularity::spectral_idempotent;

fn defect_valuation(a: &AdicElem) -> usize {
    (&(a * a) - a).ideal_valuation()
}

/// Lifts an idempotent modulo `I` to an exact idempotent at the precision cap.
pub fn hensel_lift_idempotent(a: &AdicElem) -> Result<AdicElem> {
    hensel_lift_traced(a).map(|(e, _)| e)
}

/// As [`hensel_lift_idempotent`], also returning the defect valuation of the
/// starting point followed by the defect after each iteration.
pub fn hensel_lift_traced(a: &AdicElem) -> Result<(AdicElem, Vec<usize>)> {
    let cap = a.precision();
    let start = defect_valuation(a);
    if start < 1 {
        return Err(Error::NotApproximateIdempotent);
    }
    let ring = a.ring();
    let two = ring.from_int(2);
    let three = ring.from_int(3);
    let mut trace = vec![start];
    let mut y = a.clone();
    for _ in 0..iteration_budget(cap) {
        if y.is_idempotent() {
            return Ok((y, trace));
        }
        let sq = &y * &y;
        let cube = &sq * &y;
        y = &(&three * &sq) - &(&two * &cube);
        let v = defect_valuation(&y);
        let prev = *trace.last().unwrap();
        debug_assert!(v >= (2 * prev).min(cap), "Hensel defect failed to double");
        trace.push(v);
    }
    if y.is_idempotent() {
        Ok((y, trace))
    } else {
        Err(Error::NoConvergence)
    }
}

/// A random element that is idempotent modulo `I` but usually not exactly:
/// the lift of the Fitting idempotent of a random residue, perturbed by a
/// random multiple of the generator of `I`.
pub fn random_approximate_idempotent<R: Rng + ?Sized>(ring: &AdicRing, rng: &mut R) -> Result<AdicElem> {
    let z = spectral_idempotent(&ring.random(rng).residue())?.z;
    let noise = &ring.ideal_generator() * &ring.random(rng);
    Ok(&ring.canonical_lift(&z)? + &noise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adic::{AdicRing, CompleteRingSpec};

    #[test]
    fn three_lifts_to_one_in_zmod8() {
        let r = AdicRing::new(CompleteRingSpec::padic_matrix(2, 1, 3)).unwrap();
        let (e, trace) = hensel_lift_traced(&r.from_int(3)).unwrap();
        assert_eq!(e, r.one());
        assert_eq!(trace, vec![1, 2, 3]);
    }

    #[test]
    fn idempotents_are_fixed() {
        let r = AdicRing::new(CompleteRingSpec::padic_matrix(2, 2, 4)).unwrap();
        let e = r.matrix(&[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(hensel_lift_traced(&e).unwrap(), (e.clone(), vec![4]));
    }

    #[test]
    fn lift_of_residue_projector() {
        let r = AdicRing::new(CompleteRingSpec::padic_matrix(2, 2, 4)).unwrap();
        let res = r.residue_ring().matrix_from_rows(&[&[1, 1], &[0, 0]]).unwrap();
        // perturb by 2·x so the start is only approximately idempotent
        let start = &r.canonical_lift(&res).unwrap() + &r.matrix(&[&[2, 0], &[2, 6]]).unwrap();
        let e = hensel_lift_idempotent(&start).unwrap();
        assert!(e.is_idempotent());
        assert_eq!(e.residue(), res);
    }

    #[test]
    fn rejects_non_idempotent_residue() {
        let r = AdicRing::new(CompleteRingSpec::padic_matrix(3, 1, 3)).unwrap();
        assert_eq!(
            hensel_lift_idempotent(&r.from_int(2)),
            Err(Error::NotApproximateIdempotent)
        );
    }
}
