//! Exhaustive ground truth on small rings.
//!
//! Everything here is decided by scanning the whole ring. Only the ring
//! arithmetic is shared with the engine: units are recognised from their
//! power orbit and nilpotency by iterating powers, never through the
//! spectral or lifting code.

use std::collections::HashSet;
use std::hash::Hash;

use crate::adic::{AdicElem, AdicRing};
use crate::error::{Error, Result};
use crate::finite::{FiniteElem, FiniteRing, FiniteRingSpec};

/// Default limit on the number of ring elements an oracle may scan.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// A finite ring whose elements can be listed in canonical order.
pub trait EnumerableRing {
    type Elem: Clone + Eq + Hash;

    fn cardinality(&self) -> Option<u128>;
    fn element_at(&self, index: u128) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

impl EnumerableRing for FiniteRing {
    type Elem = FiniteElem;

    fn cardinality(&self) -> Option<u128> {
        FiniteRing::cardinality(self)
    }
    fn element_at(&self, index: u128) -> FiniteElem {
        FiniteRing::element_at(self, index)
    }
    fn one(&self) -> FiniteElem {
        FiniteRing::one(self)
    }
    fn mul(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        a * b
    }
    fn sub(&self, a: &FiniteElem, b: &FiniteElem) -> FiniteElem {
        a - b
    }
}

impl EnumerableRing for AdicRing {
    type Elem = AdicElem;

    fn cardinality(&self) -> Option<u128> {
        AdicRing::cardinality(self)
    }
    fn element_at(&self, index: u128) -> AdicElem {
        AdicRing::element_at(self, index)
    }
    fn one(&self) -> AdicElem {
        AdicRing::one(self)
    }
    fn mul(&self, a: &AdicElem, b: &AdicElem) -> AdicElem {
        a * b
    }
    fn sub(&self, a: &AdicElem, b: &AdicElem) -> AdicElem {
        a - b
    }
}

fn checked_size<R: EnumerableRing>(ring: &R, budget: u128) -> Result<u128> {
    match ring.cardinality() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded(budget)),
    }
}

fn idempotents_of<R: EnumerableRing>(ring: &R, budget: u128) -> Result<Vec<R::Elem>> {
    let size = checked_size(ring, budget)?;
    Ok((0..size)
        .map(|i| ring.element_at(i))
        .filter(|e| ring.mul(e, e) == *e)
        .collect())
}

/// Whether `a` is a unit, decided from its power orbit: in a finite ring the
/// orbit of a unit returns to 1, the orbit of a non-unit cycles without it.
fn is_unit_by_orbit<R: EnumerableRing>(ring: &R, a: &R::Elem) -> bool {
    let one = ring.one();
    let mut seen = HashSet::new();
    let mut cur = a.clone();
    loop {
        if cur == one {
            return true;
        }
        if !seen.insert(cur.clone()) {
            return false;
        }
        cur = ring.mul(&cur, a);
    }
}

/// All idempotents of a finite ring, in canonical order.
pub fn enumerate_idempotents(spec: &FiniteRingSpec, budget: u128) -> Result<Vec<FiniteElem>> {
    let ring = FiniteRing::new(spec.clone())?;
    idempotents_of(&ring, budget)
}

/// All idempotents `e` commuting with `x` such that `x - e` is a unit.
pub fn brute_force_strongly_clean(x: &FiniteElem, budget: u128) -> Result<Vec<FiniteElem>> {
    let ring = x.ring();
    let idempotents = idempotents_of(&ring, budget)?;
    Ok(idempotents
        .into_iter()
        .filter(|e| (e * x) == (x * e) && is_unit_by_orbit(&ring, &(x - e)))
        .collect())
}

/// Enumerates the idempotents of a small quotient `R/I^N` once and
/// classifies elements against them.
#[derive(Debug, Clone)]
pub struct PiCleanOracle {
    ring: AdicRing,
    idempotents: Vec<AdicElem>,
}

impl PiCleanOracle {
    pub fn new(ring: &AdicRing, budget: u128) -> Result<Self> {
        Ok(PiCleanOracle {
            ring: ring.clone(),
            idempotents: idempotents_of(ring, budget)?,
        })
    }

    pub fn idempotents(&self) -> &[AdicElem] {
        &self.idempotents
    }

    /// Every `(e, n)` such that `x` is `e`-strongly π-clean with least degree
    /// `n`, in canonical order of `e`.
    pub fn classify(&self, x: &AdicElem) -> Result<Vec<(AdicElem, usize)>> {
        if x.ring() != &self.ring {
            return Err(Error::SpecMismatch);
        }
        Ok(self
            .idempotents
            .iter()
            .filter(|e| (*e * x) == (x * *e))
            .filter(|e| is_unit_by_orbit(&self.ring, &(x - *e)))
            .filter_map(|e| {
                let exe = &(e * x) * e;
                least_power_in_ideal(&exe).map(|n| (e.clone(), n))
            })
            .collect())
    }
}

/// Least `n >= 1` with `a^n ∈ I`, or `None` if the residue is not nilpotent.
fn least_power_in_ideal(a: &AdicElem) -> Option<usize> {
    let mut seen = HashSet::new();
    let mut acc = a.clone();
    let mut n = 1;
    loop {
        let residue = acc.residue();
        if residue.is_zero() {
            return Some(n);
        }
        if !seen.insert(residue) {
            return None;
        }
        acc = &acc * a;
        n += 1;
    }
}

/// All `(e, n)` witnessing that `x` is strongly π-clean with respect to `I`
/// in the represented quotient.
pub fn brute_force_pi_clean(x: &AdicElem, budget: u128) -> Result<Vec<(AdicElem, usize)>> {
    PiCleanOracle::new(x.ring(), budget)?.classify(x)
}

/// Least `n >= 1` with `x^n ∈ x^(n+1) R ∩ R x^(n+1)`, found by scanning `R`
/// for left and right cofactors.
pub fn minimal_pi_regular_degree(x: &FiniteElem, budget: u128) -> Result<usize> {
    let ring = x.ring();
    let size = checked_size(&ring, budget)?;
    let elements: Vec<FiniteElem> = (0..size).map(|i| ring.element_at(i)).collect();
    let mut power = x.clone();
    for n in 1..=size.max(1) as usize {
        let next = &power * x;
        let right = elements.iter().any(|r| (&next * r) == power);
        let left = right && elements.iter().any(|r| (r * &next) == power);
        if left {
            return Ok(n);
        }
        power = next;
    }
    Err(Error::BudgetExceeded(budget))
}
