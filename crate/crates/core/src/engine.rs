//! Strongly π-clean decompositions by iterated Peirce refinement.
//!
//! Starting from the Fitting idempotent `z` of the residue `x̄ ∈ R/I`, the
//! engine builds idempotents `e_1, e_2, …, e_N` with
//!
//! * `e_m` idempotent, `e_m x - x e_m ∈ I^m`, `x - e_m` a unit modulo `I^m`
//!   and `(e_m x e_m)^n ∈ I`;
//! * `e_{m+1} - e_m ∈ I^m`.
//!
//! At level `m` write `x = [[a, b], [c, d]]` in the Peirce decomposition with
//! respect to `e_m`. Then `b, c ∈ I^m`, `a` is nilpotent modulo `I^{m+1}` and
//! `d` is a unit of the corner `fRf`. The idempotent `e_m + r + s` with
//!
//! ```text
//! r = -Σ_{i=1..k} a^(i-1) b d^(-i),   s = -Σ_{i=1..k} d^(-i) c a^(i-1)
//! ```
//!
//! solves `ar - rd = b`, `ds - sa = -c` and therefore commutes with `x`
//! modulo `I^{m+1}`. It is lifted back to an exact idempotent at the cap.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adic::{invert_in_corner, invert_unit, peirce_blocks, AdicElem, CompleteRingSpec, PeirceBlocks};
use crate::error::{Error, Result};
use crate::lifting::hensel_lift_idempotent;
use crate::regularity::{nilpotency_index, spectral_data};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterSolution {
    /// Lies in `eRf ∩ I^m`.
    pub r: AdicElem,
    /// Lies in `fRe ∩ I^m`.
    pub s: AdicElem,
    pub k: usize,
}

/// Solves `ar - rd ≡ b` and `ds - sa ≡ -c` modulo `I^{m+1}` with the finite
/// series in `a` and the corner inverse of `d`. Requires `a^k ∈ I^{m+1}`.
pub fn solve_sylvester(blocks: &PeirceBlocks, k: usize, level: usize) -> Result<SylvesterSolution> {
    let PeirceBlocks { f, a, b, c, d, .. } = blocks;
    let d_inv = invert_in_corner(d, f).map_err(|e| match e {
        Error::NotUnitInCorner => Error::CornerNotUnit,
        other => other,
    })?;
    let ring = a.ring();
    let mut a_pow = ring.one();
    let mut d_pow = d_inv.clone();
    let mut r_sum = ring.zero();
    let mut s_sum = ring.zero();
    for _ in 0..k {
        r_sum = &r_sum + &(&(&a_pow * b) * &d_pow);
        s_sum = &s_sum + &(&(&d_pow * c) * &a_pow);
        a_pow = &a_pow * a;
        d_pow = &d_pow * &d_inv;
    }
    // ds - sa = c - d^(-k) c a^k for the positive sum, hence both carry a minus sign
    let r = -&r_sum;
    let s = -&s_sum;
    let target = (level + 1).min(a.precision());
    let left = &(&(a * &r) - &(&r * d)) - b;
    let right = &(&(d * &s) - &(&s * a)) + c;
    if !left.in_ideal_power(target) || !right.in_ideal_power(target) {
        return Err(Error::ResidualNonzero(level));
    }
    Ok(SylvesterSolution { r, s, k })
}

/// Counters gathered while running [`decompose_traced`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    /// Levels refined.
    pub refinements: usize,
    /// Correction equations solved and checked.
    pub sylvester_checks: usize,
    /// Individual loop-invariant checks evaluated.
    pub invariant_checks: usize,
    /// Description of each failed invariant check.
    pub invariant_failures: Vec<String>,
}

impl Trace {
    pub fn merge(&mut self, other: &Trace) {
        self.refinements += other.refinements;
        self.sylvester_checks += other.sylvester_checks;
        self.invariant_checks += other.invariant_checks;
        self.invariant_failures.extend(other.invariant_failures.iter().cloned());
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.invariant_checks += 1;
        if !ok {
            self.invariant_failures.push(what());
        }
    }
}

fn refine_step(x: &AdicElem, e: &AdicElem, level: usize, degree: usize) -> Result<(AdicElem, SylvesterSolution)> {
    let cap = x.precision();
    if level == 0 || level >= cap {
        return Err(Error::BadLevel { level, cap });
    }
    let blocks = peirce_blocks(x, e)?;
    let k = nilpotency_index(&blocks.a, level + 1, degree * (level + 1))?;
    let sol = solve_sylvester(&blocks, k, level)?;
    let candidate = &(e + &sol.r) + &sol.s;
    let next = hensel_lift_idempotent(&candidate)?;
    if !(&(&next * x) - &(x * &next)).in_ideal_power(level + 1) {
        return Err(Error::CommutationNotAchieved(level + 1));
    }
    Ok((next, sol))
}

/// One refinement step: from `e_m` commuting with `x` modulo `I^m` to an exact
/// idempotent `e_{m+1} ≡ e_m (mod I^m)` commuting with `x` modulo `I^{m+1}`.
/// `degree` is the residue nilpotency degree, used to bound the search for
/// the nilpotency index of `e_m x e_m`. Requires `1 <= level < N`.
pub fn refine_idempotent(x: &AdicElem, e: &AdicElem, level: usize, degree: usize) -> Result<AdicElem> {
    refine_step(x, e, level, degree).map(|(next, _)| next)
}

fn record_invariants(trace: &mut Trace, x: &AdicElem, e: &AdicElem, prev: Option<&AdicElem>, level: usize, n: usize) {
    trace.check(e.is_idempotent(), || format!("e_{level} is not idempotent"));
    trace.check((&(e * x) - &(x * e)).in_ideal_power(level), || {
        format!("e_{level} does not commute with x modulo I^{level}")
    });
    let unit = (x - e).truncate(level).and_then(|u| invert_unit(&u)).is_ok();
    trace.check(unit, || format!("x - e_{level} is not a unit modulo I^{level}"));
    trace.check((&(e * x) * e).pow(n as u64).in_ideal_power(1), || {
        format!("(e_{level} x e_{level})^{n} is not in I")
    });
    if let Some(prev) = prev {
        trace.check((e - prev).in_ideal_power(level - 1), || {
            format!("e_{level} - e_{} is not in I^{}", level - 1, level - 1)
        });
    }
}

fn run(x: &AdicElem, collect: bool) -> Result<(CleanCertificate, Trace)> {
    let mut trace = Trace::default();
    let check = collect || cfg!(debug_assertions);
    let ring = x.ring();
    let cap = ring.precision();
    let spectral = spectral_data(&x.residue())?;
    let n = spectral.n;
    let mut e = hensel_lift_idempotent(&ring.canonical_lift(&spectral.z)?)?;
    if check {
        record_invariants(&mut trace, x, &e, None, 1, n);
    }
    for level in 1..cap {
        let (next, _) = refine_step(x, &e, level, n)?;
        trace.refinements += 1;
        trace.sylvester_checks += 1;
        if check {
            record_invariants(&mut trace, x, &next, Some(&e), level + 1, n);
        }
        e = next;
    }
    let u_inv = invert_unit(&(x - &e))?;
    let cert = CleanCertificate {
        ring: ring.spec().clone(),
        x: x.clone(),
        e,
        u_inv,
        n,
        precision: cap,
    };
    let verdict = verify_certificate(&cert);
    if !verdict.passed() {
        return Err(Error::CertificateInvalid(verdict.violations));
    }
    if n >= 2 {
        let exe = &(&cert.e * x) * &cert.e;
        if exe.pow(n as u64 - 1).in_ideal_power(1) {
            return Err(Error::PostconditionViolated("certificate degree is not minimal"));
        }
    }
    debug_assert!(
        collect || trace.invariant_failures.is_empty(),
        "loop invariants violated: {:?}",
        trace.invariant_failures
    );
    Ok((cert, trace))
}

/// Computes `e` idempotent commuting with `x` such that `x - e` is a unit
/// and `(exe)^n ∈ I`, at the ring's precision cap, with minimal `n`.
pub fn decompose(x: &AdicElem) -> Result<CleanCertificate> {
    run(x, false).map(|(cert, _)| cert)
}

/// As [`decompose`], additionally checking the per-level invariants and
/// counting every correction-equation check.
pub fn decompose_traced(x: &AdicElem) -> Result<(CleanCertificate, Trace)> {
    run(x, true)
}

/// Witness that `x` is `e`-strongly π-clean of degree `n` at precision `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanCertificate {
    pub ring: CompleteRingSpec,
    pub x: AdicElem,
    pub e: AdicElem,
    /// Inverse of `x - e`.
    pub u_inv: AdicElem,
    pub n: usize,
    pub precision: usize,
}

impl CleanCertificate {
    /// The certificate reduced to precision `m`.
    pub fn truncate(&self, m: usize) -> Result<CleanCertificate> {
        Ok(CleanCertificate {
            ring: self.ring.with_precision(m),
            x: self.x.truncate(m)?,
            e: self.e.truncate(m)?,
            u_inv: self.u_inv.truncate(m)?,
            n: self.n,
            precision: m,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    NotIdempotent,
    NotCommuting,
    NotUnit,
    DegreeWrong,
    SpecMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Rechecks a certificate by multiplication only.
pub fn verify_certificate(cert: &CleanCertificate) -> Verdict {
    let consistent = cert.precision == cert.ring.precision()
        && [&cert.x, &cert.e, &cert.u_inv].iter().all(|el| *el.spec() == cert.ring);
    if !consistent {
        return Verdict {
            violations: vec![Violation::SpecMismatch],
        };
    }
    let CleanCertificate { x, e, u_inv, n, .. } = cert;
    let mut violations = Vec::new();
    if !e.is_idempotent() {
        violations.push(Violation::NotIdempotent);
    }
    if e * x != x * e {
        violations.push(Violation::NotCommuting);
    }
    let u = x - e;
    if !(&u * u_inv).is_one() || !(u_inv * &u).is_one() {
        violations.push(Violation::NotUnit);
    }
    if *n == 0 || !(&(e * x) * e).pow(*n as u64).in_ideal_power(1) {
        violations.push(Violation::DegreeWrong);
    }
    Verdict { violations }
}
