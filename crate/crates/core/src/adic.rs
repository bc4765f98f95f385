//! Complete rings represented through a finite quotient `R/I^N`.
//!
//! Two families are supported: matrices over the `p`-adic integers,
//! `M_k(Z_p)` with `I = (p)`, held as `M_k(Z/p^N)`; and skew power series
//! `S[[t; σ]]` over a finite ring `S` with `I = (t)`, held as coefficient
//! arrays of length `N`. Skew multiplication uses the left convention
//! `t·a = σ(a)·t`, so `(Σ a_i t^i)(Σ b_j t^j) = Σ_m (Σ_{i+j=m} a_i σ^i(b_j)) t^m`.
//!
//! In both families `I` is nilpotent in the quotient, hence contained in its
//! Jacobson radical.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::{
    add_mod, invert_finite, is_prime, neg_mod, EndoTag, FiniteElem, FiniteRing, FiniteRingSpec, Value, MAX_MATRIX_SIZE,
    MAX_SCALARS,
};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CompleteRingSpec {
    PadicMatrix {
        p: u64,
        size: usize,
        precision: usize,
    },
    SkewSeries {
        base: FiniteRingSpec,
        sigma: EndoTag,
        precision: usize,
    },
}

impl CompleteRingSpec {
    pub fn padic_matrix(p: u64, size: usize, precision: usize) -> Self {
        CompleteRingSpec::PadicMatrix { p, size, precision }
    }

    pub fn skew_series(base: FiniteRingSpec, sigma: EndoTag, precision: usize) -> Self {
        CompleteRingSpec::SkewSeries { base, sigma, precision }
    }

    pub fn precision(&self) -> usize {
        match self {
            CompleteRingSpec::PadicMatrix { precision, .. } | CompleteRingSpec::SkewSeries { precision, .. } => {
                *precision
            }
        }
    }

    pub fn with_precision(&self, cap: usize) -> Self {
        let mut out = self.clone();
        match &mut out {
            CompleteRingSpec::PadicMatrix { precision, .. } | CompleteRingSpec::SkewSeries { precision, .. } => {
                *precision = cap
            }
        }
        out
    }

    /// The residue ring `R/I`.
    pub fn residue(&self) -> FiniteRingSpec {
        match self {
            CompleteRingSpec::PadicMatrix { p, size, .. } => FiniteRingSpec::matrix(FiniteRingSpec::zmod(*p), *size),
            CompleteRingSpec::SkewSeries { base, .. } => base.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision() == 0 {
            return Err(Error::InvalidSpec("precision must be at least 1".into()));
        }
        match self {
            CompleteRingSpec::PadicMatrix { p, size, precision } => {
                if !is_prime(*p) {
                    return Err(Error::InvalidSpec(format!("p = {p} is not prime")));
                }
                if *size == 0 || *size > MAX_MATRIX_SIZE {
                    return Err(Error::InvalidSpec(format!(
                        "matrix size {size} is outside 1..={MAX_MATRIX_SIZE}"
                    )));
                }
                let fits = u32::try_from(*precision)
                    .ok()
                    .and_then(|n| p.checked_pow(n))
                    .is_some_and(|q| q < (1u64 << 62));
                if !fits {
                    return Err(Error::InvalidSpec(format!("{p}^{precision} is too large")));
                }
                Ok(())
            }
            CompleteRingSpec::SkewSeries { base, sigma, precision } => {
                base.validate()?;
                let scalars = base.scalar_count().and_then(|c| c.checked_mul(*precision));
                if !scalars.is_some_and(|n| n <= MAX_SCALARS) {
                    return Err(Error::InvalidSpec(format!(
                        "series elements would hold more than {MAX_SCALARS} scalars"
                    )));
                }
                if base.cardinality().is_none() {
                    return Err(Error::InvalidSpec("coefficient ring is too large to enumerate".into()));
                }
                sigma
                    .validate_for(base)
                    .map_err(|_| Error::InvalidSpec(format!("endomorphism {sigma:?} does not apply to the base ring")))
            }
        }
    }

    /// Size of the represented quotient `R/I^N`, if it fits in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            CompleteRingSpec::PadicMatrix { p, size, precision } => {
                let q = (*p as u128).checked_pow(u32::try_from(*precision).ok()?)?;
                q.checked_pow(u32::try_from(size * size).ok()?)
            }
            CompleteRingSpec::SkewSeries { base, precision, .. } => {
                base.cardinality()?.checked_pow(u32::try_from(*precision).ok()?)
            }
        }
    }
}

#[derive(Debug)]
struct RingInner {
    spec: CompleteRingSpec,
    residue: FiniteRing,
    /// `p^N` for p-adic matrices.
    modulus: u64,
}

/// Handle on a validated complete ring at a fixed precision cap.
#[derive(Debug, Clone)]
pub struct AdicRing(Arc<RingInner>);

impl PartialEq for AdicRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for AdicRing {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Payload {
    Padic(Vec<u64>),
    Series(Vec<Value>),
}

#[derive(Debug, Clone)]
pub struct AdicElem {
    ring: AdicRing,
    payload: Payload,
}

impl PartialEq for AdicElem {
    fn eq(&self, other: &Self) -> bool {
        self.payload == other.payload && self.ring == other.ring
    }
}

impl Eq for AdicElem {}

impl Hash for AdicElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.payload.hash(state);
    }
}

fn ceil_log2(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

/// Number of Newton or Hensel steps after which the defect reaches `I^N`,
/// plus one step to observe the fixed point.
pub(crate) fn iteration_budget(cap: usize) -> usize {
    ceil_log2(cap) + 1
}

impl AdicRing {
    /// Validates the ring spec and builds the ring.
    pub fn new(spec: CompleteRingSpec) -> Result<Self> {
        spec.validate()?;
        let residue = FiniteRing::new(spec.residue())?;
        let modulus = match &spec {
            CompleteRingSpec::PadicMatrix { p, precision, .. } => p.pow(*precision as u32),
            CompleteRingSpec::SkewSeries { .. } => 0,
        };
        Ok(AdicRing(Arc::new(RingInner { spec, residue, modulus })))
    }

    pub fn spec(&self) -> &CompleteRingSpec {
        &self.0.spec
    }

    pub fn precision(&self) -> usize {
        self.0.spec.precision()
    }

    pub fn residue_ring(&self) -> &FiniteRing {
        &self.0.residue
    }

    /// The same ring at another precision cap.
    pub fn at_precision(&self, cap: usize) -> Result<AdicRing> {
        if cap == self.precision() {
            return Ok(self.clone());
        }
        AdicRing::new(self.0.spec.with_precision(cap))
    }

    fn wrap(&self, payload: Payload) -> AdicElem {
        AdicElem {
            ring: self.clone(),
            payload,
        }
    }

    fn matrix_size(&self) -> usize {
        match &self.0.spec {
            CompleteRingSpec::PadicMatrix { size, .. } => *size,
            CompleteRingSpec::SkewSeries { .. } => 0,
        }
    }

    fn base(&self) -> &FiniteRingSpec {
        self.0.residue.spec()
    }

    pub fn from_int(&self, n: i128) -> AdicElem {
        match &self.0.spec {
            CompleteRingSpec::PadicMatrix { size, .. } => {
                let q = self.0.modulus;
                let v = n.rem_euclid(q as i128) as u64;
                let mut entries = vec![0u64; size * size];
                for i in 0..*size {
                    entries[i * size + i] = v;
                }
                self.wrap(Payload::Padic(entries))
            }
            CompleteRingSpec::SkewSeries { base, precision, .. } => {
                let mut coeffs = vec![base.zero_value(); *precision];
                coeffs[0] = base.int_value(n);
                self.wrap(Payload::Series(coeffs))
            }
        }
    }

    pub fn zero(&self) -> AdicElem {
        self.from_int(0)
    }

    pub fn one(&self) -> AdicElem {
        self.from_int(1)
    }

    /// A p-adic matrix from integer rows, reduced modulo `p^N`.
    pub fn matrix(&self, rows: &[&[i64]]) -> Result<AdicElem> {
        let k = self.matrix_size();
        if k == 0 {
            return Err(Error::InvalidElement("not a p-adic matrix ring".into()));
        }
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidElement(format!("expected a {k}x{k} matrix")));
        }
        let q = self.0.modulus as i128;
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&v| (v as i128).rem_euclid(q) as u64)
            .collect();
        Ok(self.wrap(Payload::Padic(entries)))
    }

    /// A p-adic matrix from canonical entries in `[0, p^N)`, row-major.
    pub fn matrix_from_entries(&self, entries: Vec<u64>) -> Result<AdicElem> {
        let k = self.matrix_size();
        if k == 0 {
            return Err(Error::InvalidElement("not a p-adic matrix ring".into()));
        }
        if entries.len() != k * k {
            return Err(Error::InvalidElement(format!("expected {} entries", k * k)));
        }
        if let Some(bad) = entries.iter().find(|&&v| v >= self.0.modulus) {
            return Err(Error::InvalidElement(format!(
                "entry {bad} is not below the modulus {}",
                self.0.modulus
            )));
        }
        Ok(self.wrap(Payload::Padic(entries)))
    }

    /// A skew series `Σ c_i t^i`; missing high coefficients are zero.
    pub fn series(&self, coeffs: Vec<FiniteElem>) -> Result<AdicElem> {
        let CompleteRingSpec::SkewSeries { base, precision, .. } = &self.0.spec else {
            return Err(Error::InvalidElement("not a skew series ring".into()));
        };
        if coeffs.len() > *precision {
            return Err(Error::InvalidElement(format!(
                "{} coefficients exceed precision {precision}",
                coeffs.len()
            )));
        }
        let mut values = Vec::with_capacity(*precision);
        for c in coeffs {
            if c.spec() != base {
                return Err(Error::SpecMismatch);
            }
            values.push(c.value().clone());
        }
        values.resize(*precision, base.zero_value());
        Ok(self.wrap(Payload::Series(values)))
    }

    /// The generator `t` of `I` in a skew series ring.
    pub fn t(&self) -> Result<AdicElem> {
        let CompleteRingSpec::SkewSeries { base, precision, .. } = &self.0.spec else {
            return Err(Error::InvalidElement("not a skew series ring".into()));
        };
        let mut coeffs = vec![base.zero_value(); *precision];
        if *precision > 1 {
            coeffs[1] = base.one_value();
        }
        Ok(self.wrap(Payload::Series(coeffs)))
    }

    /// Generator of `I`: `p·1` or `t`.
    pub fn ideal_generator(&self) -> AdicElem {
        match &self.0.spec {
            CompleteRingSpec::PadicMatrix { p, .. } => self.from_int(*p as i128),
            CompleteRingSpec::SkewSeries { .. } => self.t().expect("series ring has t"),
        }
    }

    /// Entrywise (p-adic) or coefficientwise (series) set-theoretic lift of a
    /// residue element.
    pub fn canonical_lift(&self, residue: &FiniteElem) -> Result<AdicElem> {
        if residue.spec() != self.base() {
            return Err(Error::SpecMismatch);
        }
        match (&self.0.spec, residue.value()) {
            (CompleteRingSpec::PadicMatrix { .. }, Value::Mat(entries)) => {
                let ints = entries
                    .iter()
                    .map(|v| match v {
                        Value::Int(x) => *x,
                        _ => unreachable!("checked by spec comparison"),
                    })
                    .collect();
                Ok(self.wrap(Payload::Padic(ints)))
            }
            (CompleteRingSpec::SkewSeries { .. }, _) => self.series(vec![residue.clone()]),
            _ => Err(Error::SpecMismatch),
        }
    }

    pub fn cardinality(&self) -> Option<u128> {
        self.0.spec.cardinality()
    }

    /// Element at a position in canonical enumeration order (first entry or
    /// lowest coefficient most significant).
    pub fn element_at(&self, mut index: u128) -> AdicElem {
        match &self.0.spec {
            CompleteRingSpec::PadicMatrix { size, .. } => {
                let q = self.0.modulus as u128;
                let mut entries = vec![0u64; size * size];
                for slot in entries.iter_mut().rev() {
                    *slot = (index % q) as u64;
                    index /= q;
                }
                self.wrap(Payload::Padic(entries))
            }
            CompleteRingSpec::SkewSeries { base, precision, .. } => {
                let cb = base.cardinality().expect("base cardinality overflow");
                let mut coeffs = vec![base.zero_value(); *precision];
                for slot in coeffs.iter_mut().rev() {
                    *slot = base.value_at(index % cb);
                    index /= cb;
                }
                self.wrap(Payload::Series(coeffs))
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AdicElem {
        match &self.0.spec {
            CompleteRingSpec::PadicMatrix { size, .. } => {
                let q = self.0.modulus;
                self.wrap(Payload::Padic((0..size * size).map(|_| rng.gen_range(0..q)).collect()))
            }
            CompleteRingSpec::SkewSeries { base, precision, .. } => {
                let cb = base.cardinality().expect("base cardinality overflow");
                self.wrap(Payload::Series(
                    (0..*precision).map(|_| base.value_at(rng.gen_range(0..cb))).collect(),
                ))
            }
        }
    }
}

impl AdicElem {
    pub fn ring(&self) -> &AdicRing {
        &self.ring
    }

    pub fn spec(&self) -> &CompleteRingSpec {
        self.ring.spec()
    }

    pub fn precision(&self) -> usize {
        self.ring.precision()
    }

    /// Row-major entries of a p-adic matrix.
    pub fn entries(&self) -> Option<&[u64]> {
        match &self.payload {
            Payload::Padic(e) => Some(e),
            Payload::Series(_) => None,
        }
    }

    /// Coefficients `c_0..c_{N-1}` of a skew series.
    pub fn coefficients(&self) -> Option<Vec<FiniteElem>> {
        match &self.payload {
            Payload::Series(cs) => {
                let base = self.ring.residue_ring();
                Some(cs.iter().map(|c| base.wrap(c.clone())).collect())
            }
            Payload::Padic(_) => None,
        }
    }

    fn check(&self, other: &AdicElem) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn try_add(&self, other: &AdicElem) -> Result<AdicElem> {
        self.check(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Padic(a), Payload::Padic(b)) => {
                let q = self.ring.0.modulus;
                Payload::Padic(a.iter().zip(b).map(|(x, y)| add_mod(*x, *y, q)).collect())
            }
            (Payload::Series(a), Payload::Series(b)) => {
                let base = self.ring.base();
                Payload::Series(a.iter().zip(b).map(|(x, y)| base.add_v(x, y)).collect())
            }
            _ => unreachable!("ring equality fixes the payload kind"),
        };
        Ok(self.ring.wrap(payload))
    }

    pub fn try_sub(&self, other: &AdicElem) -> Result<AdicElem> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &AdicElem) -> Result<AdicElem> {
        self.check(other)?;
        let payload = match (&self.payload, &other.payload) {
            (Payload::Padic(a), Payload::Padic(b)) => {
                Payload::Padic(linalg::mat_mul(a, b, self.ring.matrix_size(), self.ring.0.modulus))
            }
            (Payload::Series(a), Payload::Series(b)) => {
                let CompleteRingSpec::SkewSeries { base, sigma, precision } = self.spec() else {
                    unreachable!()
                };
                let n = *precision;
                let mut out = vec![base.zero_value(); n];
                for (i, ai) in a.iter().enumerate() {
                    if base.is_zero_v(ai) {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate().take(n - i) {
                        let twisted = sigma.apply_pow_v(base, bj, i);
                        let term = base.mul_v(ai, &twisted);
                        out[i + j] = base.add_v(&out[i + j], &term);
                    }
                }
                Payload::Series(out)
            }
            _ => unreachable!("ring equality fixes the payload kind"),
        };
        Ok(self.ring.wrap(payload))
    }

    pub fn pow(&self, mut k: u64) -> AdicElem {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Padic(e) => e.iter().all(|&v| v == 0),
            Payload::Series(cs) => cs.iter().all(|c| self.ring.base().is_zero_v(c)),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    /// Largest `v <= N` with `self ∈ I^v`; zero has valuation `N`.
    pub fn ideal_valuation(&self) -> usize {
        let cap = self.precision();
        match (&self.payload, self.spec()) {
            (Payload::Padic(entries), CompleteRingSpec::PadicMatrix { p, .. }) => entries
                .iter()
                .map(|&v| {
                    let mut v = v;
                    let mut k = 0;
                    while v != 0 && v % p == 0 && k < cap {
                        v /= p;
                        k += 1;
                    }
                    if v == 0 {
                        cap
                    } else {
                        k
                    }
                })
                .min()
                .unwrap_or(cap),
            (Payload::Series(cs), _) => cs.iter().position(|c| !self.ring.base().is_zero_v(c)).unwrap_or(cap),
            _ => unreachable!(),
        }
    }

    /// `x ∈ I^level`, meaningful for `level <= N`.
    pub fn in_ideal_power(&self, level: usize) -> bool {
        self.ideal_valuation() >= level
    }

    /// Image in `R/I^m`, as an element of the ring at cap `m`.
    pub fn truncate(&self, m: usize) -> Result<AdicElem> {
        let cap = self.precision();
        if m == 0 || m > cap {
            return Err(Error::BadLevel { level: m, cap });
        }
        let ring = self.ring.at_precision(m)?;
        let payload = match &self.payload {
            Payload::Padic(entries) => {
                let q = ring.0.modulus;
                Payload::Padic(entries.iter().map(|v| v % q).collect())
            }
            Payload::Series(cs) => Payload::Series(cs[..m].to_vec()),
        };
        Ok(ring.wrap(payload))
    }

    /// Image in the residue ring `R/I`.
    pub fn residue(&self) -> FiniteElem {
        let residue = self.ring.residue_ring();
        match (&self.payload, self.spec()) {
            (Payload::Padic(entries), CompleteRingSpec::PadicMatrix { p, .. }) => {
                residue.wrap(Value::Mat(entries.iter().map(|v| Value::Int(v % p)).collect()))
            }
            (Payload::Series(cs), _) => residue.wrap(cs[0].clone()),
            _ => unreachable!(),
        }
    }

    /// Two-sided inverse at the precision cap.
    pub fn invert(&self) -> Result<AdicElem> {
        invert_unit(self)
    }
}

/// The four Peirce corners of `x` relative to an idempotent `e`, with `f = 1 - e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeirceBlocks {
    pub e: AdicElem,
    pub f: AdicElem,
    /// `exe`
    pub a: AdicElem,
    /// `exf`
    pub b: AdicElem,
    /// `fxe`
    pub c: AdicElem,
    /// `fxf`
    pub d: AdicElem,
}

impl PeirceBlocks {
    pub fn reassemble(&self) -> AdicElem {
        &(&(&self.a + &self.b) + &self.c) + &self.d
    }
}

pub fn peirce_blocks(x: &AdicElem, e: &AdicElem) -> Result<PeirceBlocks> {
    x.check(e)?;
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    let f = &x.ring.one() - e;
    let ex = e * x;
    let fx = &f * x;
    Ok(PeirceBlocks {
        a: &ex * e,
        b: &ex * &f,
        c: &fx * e,
        d: &fx * &f,
        e: e.clone(),
        f,
    })
}

fn residue_inverse(r: &FiniteElem) -> Result<FiniteElem> {
    if let Some((p, k)) = r.spec().as_zmod_matrix() {
        if is_prime(p) {
            let entries: Vec<u64> = match r.value() {
                Value::Mat(es) => es
                    .iter()
                    .map(|v| match v {
                        Value::Int(x) => *x,
                        _ => unreachable!(),
                    })
                    .collect(),
                _ => unreachable!(),
            };
            let inv = linalg::inverse(&entries, k, p).ok_or(Error::NotUnit)?;
            return r.ring().elem(Value::Mat(inv.into_iter().map(Value::Int).collect()));
        }
    }
    invert_finite(r)
}

/// Inverse of a unit at cap `N`: residue inverse, canonical lift, then Newton
/// steps `y <- y(2 - xy)` until a fixed point.
pub fn invert_unit(x: &AdicElem) -> Result<AdicElem> {
    let ring = x.ring();
    let seed = residue_inverse(&x.residue())?;
    let mut y = ring.canonical_lift(&seed)?;
    let one = ring.one();
    let two = ring.from_int(2);
    let cap = ring.precision();
    let budget = iteration_budget(cap);
    let mut defect = (&one - &(x * &y)).ideal_valuation();
    debug_assert!(defect >= 1);
    let mut converged = false;
    for _ in 0..=budget {
        let next = &y * &(&two - &(x * &y));
        if next == y {
            converged = true;
            break;
        }
        y = next;
        let new_defect = (&one - &(x * &y)).ideal_valuation();
        debug_assert!(new_defect >= (2 * defect).min(cap), "Newton defect failed to double");
        defect = new_defect;
    }
    if !converged {
        return Err(Error::NoConvergence);
    }
    if !(x * &y).is_one() || !(&y * x).is_one() {
        return Err(Error::PostconditionViolated("Newton inverse is not two-sided"));
    }
    Ok(y)
}

/// Inverse of `d = fdf` inside the corner ring `fRf`, via the ambient unit
/// `d + (1 - f)`.
pub fn invert_in_corner(d: &AdicElem, f: &AdicElem) -> Result<AdicElem> {
    d.check(f)?;
    let one = d.ring.one();
    let g = &one - f;
    let ambient = d + &g;
    let y_amb = invert_unit(&ambient).map_err(|e| match e {
        Error::NotUnit => Error::NotUnitInCorner,
        other => other,
    })?;
    Ok(&(f * &y_amb) * f)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&AdicElem> for &AdicElem {
            type Output = AdicElem;
            /// Panics if the operands live in different rings; use the `try_` form otherwise.
            fn $method(self, rhs: &AdicElem) -> AdicElem {
                self.$checked(rhs).expect("operands must share a ring")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AdicElem {
    type Output = AdicElem;
    fn neg(self) -> AdicElem {
        let payload = match &self.payload {
            Payload::Padic(a) => {
                let q = self.ring.0.modulus;
                Payload::Padic(a.iter().map(|&v| neg_mod(v, q)).collect())
            }
            Payload::Series(cs) => {
                let base = self.ring.base();
                Payload::Series(cs.iter().map(|c| base.neg_v(c)).collect())
            }
        };
        self.ring.wrap(payload)
    }
}

impl fmt::Display for AdicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::adic_to_json(self))
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<AdicElem>();
    check::<FiniteElem>();
}
