//! Exact arithmetic in small composable finite rings.
//!
//! A [`FiniteRingSpec`] describes the ring (`Z/m`, `M_k(R)`, upper triangular
//! `T_2(R)`, dual numbers `F_p[u]/(u^2)`), a [`Value`] is the raw canonical
//! payload and a [`FiniteElem`] couples the two. These rings play the role of
//! residue rings `R/I` and of coefficient rings for skew series.

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiniteRingSpec {
    Zmod { m: u64 },
    Matrix { base: Box<FiniteRingSpec>, size: usize },
    Triangular2 { base: Box<FiniteRingSpec> },
    Dual { p: u64 },
}

/// Canonical payload of a finite ring element.
///
/// The derived ordering is the canonical enumeration order: integers
/// numerically, dual numbers as `(a, b)` pairs and matrices row-major with the
/// first entry most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(u64),
    Dual(u64, u64),
    Mat(Vec<Value>),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

impl FiniteRingSpec {
    pub fn zmod(m: u64) -> Self {
        FiniteRingSpec::Zmod { m }
    }

    pub fn matrix(base: FiniteRingSpec, size: usize) -> Self {
        FiniteRingSpec::Matrix {
            base: Box::new(base),
            size,
        }
    }

    pub fn triangular2(base: FiniteRingSpec) -> Self {
        FiniteRingSpec::Triangular2 { base: Box::new(base) }
    }

    pub fn dual(p: u64) -> Self {
        FiniteRingSpec::Dual { p }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FiniteRingSpec::Zmod { m } if *m < 2 => {
                Err(Error::InvalidSpec(format!("zmod modulus {m} must be at least 2")))
            }
            FiniteRingSpec::Zmod { m } | FiniteRingSpec::Dual { p: m } if *m > MAX_MODULUS => {
                Err(Error::InvalidSpec(format!("modulus {m} exceeds {MAX_MODULUS}")))
            }
            FiniteRingSpec::Zmod { .. } => Ok(()),
            FiniteRingSpec::Matrix { size: 0, .. } => Err(Error::InvalidSpec("matrix size must be at least 1".into())),
            FiniteRingSpec::Matrix { size, .. } if *size > MAX_MATRIX_SIZE => Err(Error::InvalidSpec(format!(
                "matrix size {size} exceeds {MAX_MATRIX_SIZE}"
            ))),
            FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base } => {
                base.validate()?;
                match self.scalar_count() {
                    Some(n) if n <= MAX_SCALARS => Ok(()),
                    _ => Err(Error::InvalidSpec(format!(
                        "elements would hold more than {MAX_SCALARS} scalars"
                    ))),
                }
            }
            FiniteRingSpec::Dual { p } if !is_prime(*p) => {
                Err(Error::InvalidSpec(format!("dual numbers need a prime, got {p}")))
            }
            FiniteRingSpec::Dual { .. } => Ok(()),
        }
    }

    /// Integers stored per element.
    pub(crate) fn scalar_count(&self) -> Option<usize> {
        match self {
            FiniteRingSpec::Zmod { .. } => Some(1),
            FiniteRingSpec::Dual { .. } => Some(2),
            FiniteRingSpec::Matrix { base, size } => size.checked_mul(*size)?.checked_mul(base.scalar_count()?),
            FiniteRingSpec::Triangular2 { base } => base.scalar_count()?.checked_mul(4),
        }
    }

    /// Number of elements, or `None` if it does not fit in a `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            FiniteRingSpec::Zmod { m } => Some(*m as u128),
            FiniteRingSpec::Matrix { base, size } => {
                let exp = u32::try_from(size.checked_mul(*size)?).ok()?;
                base.cardinality()?.checked_pow(exp)
            }
            FiniteRingSpec::Triangular2 { base } => base.cardinality()?.checked_pow(3),
            FiniteRingSpec::Dual { p } => (*p as u128).checked_mul(*p as u128),
        }
    }

    /// If this is `M_k(Z/p)`, returns `(p, k)` (without checking primality).
    pub fn as_zmod_matrix(&self) -> Option<(u64, usize)> {
        match self {
            FiniteRingSpec::Matrix { base, size } => match base.as_ref() {
                FiniteRingSpec::Zmod { m } => Some((*m, *size)),
                _ => None,
            },
            _ => None,
        }
    }

    fn entry_count(&self) -> usize {
        match self {
            FiniteRingSpec::Matrix { size, .. } => size * size,
            FiniteRingSpec::Triangular2 { .. } => 4,
            _ => 0,
        }
    }

    pub(crate) fn zero_value(&self) -> Value {
        match self {
            FiniteRingSpec::Zmod { .. } => Value::Int(0),
            FiniteRingSpec::Dual { .. } => Value::Dual(0, 0),
            FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base } => {
                Value::Mat(vec![base.zero_value(); self.entry_count()])
            }
        }
    }

    /// The image of the integer `n` under the unital map `Z -> R`.
    pub(crate) fn int_value(&self, n: i128) -> Value {
        match self {
            FiniteRingSpec::Zmod { m } => Value::Int(n.rem_euclid(*m as i128) as u64),
            FiniteRingSpec::Dual { p } => Value::Dual(n.rem_euclid(*p as i128) as u64, 0),
            FiniteRingSpec::Matrix { base, size } => {
                let mut entries = vec![base.zero_value(); size * size];
                let diag = base.int_value(n);
                for i in 0..*size {
                    entries[i * size + i] = diag.clone();
                }
                Value::Mat(entries)
            }
            FiniteRingSpec::Triangular2 { base } => {
                let d = base.int_value(n);
                Value::Mat(vec![d.clone(), base.zero_value(), base.zero_value(), d])
            }
        }
    }

    pub(crate) fn one_value(&self) -> Value {
        self.int_value(1)
    }

    pub(crate) fn add_v(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FiniteRingSpec::Zmod { m }, Value::Int(x), Value::Int(y)) => Value::Int(add_mod(*x, *y, *m)),
            (FiniteRingSpec::Dual { p }, Value::Dual(a0, a1), Value::Dual(b0, b1)) => {
                Value::Dual(add_mod(*a0, *b0, *p), add_mod(*a1, *b1, *p))
            }
            (
                FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base },
                Value::Mat(x),
                Value::Mat(y),
            ) => Value::Mat(x.iter().zip(y).map(|(s, t)| base.add_v(s, t)).collect()),
            _ => panic!("value shape does not match ring spec"),
        }
    }

    pub(crate) fn neg_v(&self, a: &Value) -> Value {
        match (self, a) {
            (FiniteRingSpec::Zmod { m }, Value::Int(x)) => Value::Int(neg_mod(*x, *m)),
            (FiniteRingSpec::Dual { p }, Value::Dual(a0, a1)) => Value::Dual(neg_mod(*a0, *p), neg_mod(*a1, *p)),
            (FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base }, Value::Mat(x)) => {
                Value::Mat(x.iter().map(|s| base.neg_v(s)).collect())
            }
            _ => panic!("value shape does not match ring spec"),
        }
    }

    pub(crate) fn sub_v(&self, a: &Value, b: &Value) -> Value {
        self.add_v(a, &self.neg_v(b))
    }

    pub(crate) fn mul_v(&self, a: &Value, b: &Value) -> Value {
        match (self, a, b) {
            (FiniteRingSpec::Zmod { m }, Value::Int(x), Value::Int(y)) => Value::Int(mul_mod(*x, *y, *m)),
            (FiniteRingSpec::Dual { p }, Value::Dual(a0, a1), Value::Dual(b0, b1)) => Value::Dual(
                mul_mod(*a0, *b0, *p),
                add_mod(mul_mod(*a0, *b1, *p), mul_mod(*a1, *b0, *p), *p),
            ),
            (FiniteRingSpec::Matrix { base, size }, Value::Mat(x), Value::Mat(y)) => {
                Value::Mat(mat_mul(base, *size, x, y))
            }
            (FiniteRingSpec::Triangular2 { base }, Value::Mat(x), Value::Mat(y)) => Value::Mat(mat_mul(base, 2, x, y)),
            _ => panic!("value shape does not match ring spec"),
        }
    }

    pub(crate) fn is_zero_v(&self, a: &Value) -> bool {
        match a {
            Value::Int(x) => *x == 0,
            Value::Dual(a0, a1) => *a0 == 0 && *a1 == 0,
            Value::Mat(entries) => match self {
                FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base } => {
                    entries.iter().all(|e| base.is_zero_v(e))
                }
                _ => false,
            },
        }
    }

    /// Checks that `v` is a canonical payload for this ring.
    pub fn check_value(&self, v: &Value) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidElement(msg));
        match (self, v) {
            (FiniteRingSpec::Zmod { m }, Value::Int(x)) => {
                if x < m {
                    Ok(())
                } else {
                    bad(format!("{x} is not reduced modulo {m}"))
                }
            }
            (FiniteRingSpec::Dual { p }, Value::Dual(a0, a1)) => {
                if a0 < p && a1 < p {
                    Ok(())
                } else {
                    bad(format!("dual coefficients ({a0}, {a1}) not reduced modulo {p}"))
                }
            }
            (FiniteRingSpec::Matrix { base, .. } | FiniteRingSpec::Triangular2 { base }, Value::Mat(entries)) => {
                if entries.len() != self.entry_count() {
                    return bad(format!(
                        "expected {} matrix entries, got {}",
                        self.entry_count(),
                        entries.len()
                    ));
                }
                for e in entries {
                    base.check_value(e)?;
                }
                if matches!(self, FiniteRingSpec::Triangular2 { .. }) && !base.is_zero_v(&entries[2]) {
                    return bad("triangular element has nonzero lower-left entry".into());
                }
                Ok(())
            }
            _ => bad("payload shape does not match ring kind".into()),
        }
    }

    /// The element with the given position in canonical enumeration order.
    pub(crate) fn value_at(&self, mut index: u128) -> Value {
        match self {
            FiniteRingSpec::Zmod { .. } => Value::Int(index as u64),
            FiniteRingSpec::Dual { p } => {
                let p = *p as u128;
                Value::Dual((index / p) as u64, (index % p) as u64)
            }
            FiniteRingSpec::Matrix { base, size } => {
                let cb = base.cardinality().expect("base cardinality overflow");
                let mut entries = vec![base.zero_value(); size * size];
                for slot in entries.iter_mut().rev() {
                    *slot = base.value_at(index % cb);
                    index /= cb;
                }
                Value::Mat(entries)
            }
            FiniteRingSpec::Triangular2 { base } => {
                let cb = base.cardinality().expect("base cardinality overflow");
                let mut entries = vec![base.zero_value(); 4];
                for pos in [3usize, 1, 0] {
                    entries[pos] = base.value_at(index % cb);
                    index /= cb;
                }
                Value::Mat(entries)
            }
        }
    }
}

fn mat_mul(base: &FiniteRingSpec, k: usize, x: &[Value], y: &[Value]) -> Vec<Value> {
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = base.zero_value();
            for l in 0..k {
                let term = base.mul_v(&x[i * k + l], &y[l * k + j]);
                acc = base.add_v(&acc, &term);
            }
            out.push(acc);
        }
    }
    out
}

/// Largest accepted `m` in `Z/m` and `p` in `F_p[u]/(u²)`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;
/// Largest accepted matrix size.
pub const MAX_MATRIX_SIZE: usize = 64;
/// Largest accepted number of integers per element, bounding nested matrices.
pub const MAX_SCALARS: usize = 4096;

/// A ring endomorphism usable as the twist of a skew series ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoTag {
    Identity,
    /// `a + b u -> a` on dual numbers.
    DualProjection,
}

impl EndoTag {
    /// Checks that the endomorphism applies to `spec`. For dual projection on
    /// small rings the additive and multiplicative laws are checked exhaustively.
    pub fn validate_for(self, spec: &FiniteRingSpec) -> Result<()> {
        match (self, spec) {
            (EndoTag::Identity, _) => Ok(()),
            (EndoTag::DualProjection, FiniteRingSpec::Dual { p }) => {
                if *p > 16 {
                    return Ok(());
                }
                let card = spec.cardinality().unwrap_or(0);
                if self.apply_v(spec, &spec.one_value()) != spec.one_value() {
                    return Err(Error::EndoSpecMismatch);
                }
                for i in 0..card {
                    let a = spec.value_at(i);
                    let sa = self.apply_v(spec, &a);
                    for j in 0..card {
                        let b = spec.value_at(j);
                        let sb = self.apply_v(spec, &b);
                        if self.apply_v(spec, &spec.mul_v(&a, &b)) != spec.mul_v(&sa, &sb)
                            || self.apply_v(spec, &spec.add_v(&a, &b)) != spec.add_v(&sa, &sb)
                        {
                            return Err(Error::EndoSpecMismatch);
                        }
                    }
                }
                Ok(())
            }
            (EndoTag::DualProjection, _) => Err(Error::EndoSpecMismatch),
        }
    }

    pub(crate) fn apply_v(self, spec: &FiniteRingSpec, v: &Value) -> Value {
        match (self, v) {
            (EndoTag::Identity, _) => v.clone(),
            (EndoTag::DualProjection, Value::Dual(a, _)) => Value::Dual(*a, 0),
            (EndoTag::DualProjection, _) => {
                panic!("dual projection applied outside dual numbers: {spec:?}")
            }
        }
    }

    /// `σ^k`, applied by iteration.
    pub(crate) fn apply_pow_v(self, spec: &FiniteRingSpec, v: &Value, k: usize) -> Value {
        match self {
            EndoTag::Identity => v.clone(),
            // idempotent map
            EndoTag::DualProjection if k >= 1 => self.apply_v(spec, v),
            EndoTag::DualProjection => v.clone(),
        }
    }
}

/// `σ(a)`.
pub fn sigma_apply(sigma: EndoTag, a: &FiniteElem) -> Result<FiniteElem> {
    match (sigma, a.spec.as_ref()) {
        (EndoTag::DualProjection, FiniteRingSpec::Dual { .. }) | (EndoTag::Identity, _) => Ok(FiniteElem {
            spec: a.spec.clone(),
            value: sigma.apply_v(&a.spec, &a.value),
        }),
        _ => Err(Error::EndoSpecMismatch),
    }
}

/// Handle on a validated finite ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRing {
    spec: Arc<FiniteRingSpec>,
}

impl FiniteRing {
    pub fn new(spec: FiniteRingSpec) -> Result<Self> {
        spec.validate()?;
        Ok(FiniteRing { spec: Arc::new(spec) })
    }

    pub fn spec(&self) -> &FiniteRingSpec {
        &self.spec
    }

    pub fn cardinality(&self) -> Option<u128> {
        self.spec.cardinality()
    }

    pub fn zero(&self) -> FiniteElem {
        self.wrap(self.spec.zero_value())
    }

    pub fn one(&self) -> FiniteElem {
        self.wrap(self.spec.one_value())
    }

    pub fn from_int(&self, n: i128) -> FiniteElem {
        self.wrap(self.spec.int_value(n))
    }

    pub fn elem(&self, value: Value) -> Result<FiniteElem> {
        self.spec.check_value(&value)?;
        Ok(self.wrap(value))
    }

    /// Convenience constructor for matrices over `Z/m` from integer rows.
    pub fn matrix_from_rows(&self, rows: &[&[i64]]) -> Result<FiniteElem> {
        let (m, k) = self
            .spec
            .as_zmod_matrix()
            .ok_or_else(|| Error::InvalidElement("not a matrix ring over Z/m".into()))?;
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidElement(format!("expected a {k}x{k} matrix")));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&v| Value::Int((v as i128).rem_euclid(m as i128) as u64))
            .collect();
        self.elem(Value::Mat(entries))
    }

    pub fn element_at(&self, index: u128) -> FiniteElem {
        self.wrap(self.spec.value_at(index))
    }

    /// All elements in canonical order. Panics if the cardinality overflows.
    pub fn elements(&self) -> impl Iterator<Item = FiniteElem> + '_ {
        let card = self.cardinality().expect("cardinality overflow");
        (0..card).map(move |i| self.element_at(i))
    }

    pub(crate) fn wrap(&self, value: Value) -> FiniteElem {
        FiniteElem {
            spec: self.spec.clone(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteElem {
    spec: Arc<FiniteRingSpec>,
    value: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Dispatches one ring operation; `b` is ignored for negation and required otherwise.
pub fn arith(op: ArithOp, a: &FiniteElem, b: Option<&FiniteElem>) -> Result<FiniteElem> {
    match (op, b) {
        (ArithOp::Neg, _) => Ok(-a),
        (ArithOp::Add, Some(b)) => a.try_add(b),
        (ArithOp::Sub, Some(b)) => a.try_sub(b),
        (ArithOp::Mul, Some(b)) => a.try_mul(b),
        (_, None) => Err(Error::InvalidElement("binary operation needs two operands".into())),
    }
}

impl FiniteElem {
    pub fn spec(&self) -> &FiniteRingSpec {
        &self.spec
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn ring(&self) -> FiniteRing {
        FiniteRing {
            spec: self.spec.clone(),
        }
    }

    pub(crate) fn same_ring(&self, other: &FiniteElem) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec
    }

    fn binop(&self, other: &FiniteElem, f: fn(&FiniteRingSpec, &Value, &Value) -> Value) -> Result<Self> {
        if !self.same_ring(other) {
            return Err(Error::SpecMismatch);
        }
        Ok(FiniteElem {
            spec: self.spec.clone(),
            value: f(&self.spec, &self.value, &other.value),
        })
    }

    pub fn try_add(&self, other: &FiniteElem) -> Result<Self> {
        self.binop(other, FiniteRingSpec::add_v)
    }

    pub fn try_sub(&self, other: &FiniteElem) -> Result<Self> {
        self.binop(other, FiniteRingSpec::sub_v)
    }

    pub fn try_mul(&self, other: &FiniteElem) -> Result<Self> {
        self.binop(other, FiniteRingSpec::mul_v)
    }

    pub fn is_zero(&self) -> bool {
        self.spec.is_zero_v(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.value == self.spec.one_value()
    }

    /// `self^k` by square-and-multiply, with `a^0 = 1`.
    pub fn pow(&self, mut k: u64) -> FiniteElem {
        let mut acc = self.spec.one_value();
        let mut base = self.value.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.spec.mul_v(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.spec.mul_v(&base, &base);
            }
        }
        FiniteElem {
            spec: self.spec.clone(),
            value: acc,
        }
    }

    /// Two-sided inverse, found as `a^(m-1)` for the least `m` with `a^m = 1`.
    pub fn invert(&self) -> Result<FiniteElem> {
        invert_finite(self)
    }
}

/// Inverse in a finite ring by walking the power orbit of `a`.
///
/// The orbit of a unit is purely periodic and returns to 1; for a non-unit it
/// enters a cycle that avoids 1, which is detected by the first repeated power.
pub fn invert_finite(a: &FiniteElem) -> Result<FiniteElem> {
    let spec = a.spec.as_ref();
    let one = spec.one_value();
    let budget = spec.cardinality().unwrap_or(u128::MAX);
    let mut seen: HashSet<Value> = HashSet::new();
    let mut prev = one.clone();
    let mut cur = a.value.clone();
    let mut steps: u128 = 0;
    loop {
        if cur == one {
            return Ok(FiniteElem {
                spec: a.spec.clone(),
                value: prev,
            });
        }
        if !seen.insert(cur.clone()) {
            return Err(Error::NotUnit);
        }
        steps += 1;
        if steps > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let next = spec.mul_v(&cur, &a.value);
        prev = std::mem::replace(&mut cur, next);
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FiniteElem> for &FiniteElem {
            type Output = FiniteElem;
            /// Panics if the operands live in different rings; use the `try_` form otherwise.
            fn $method(self, rhs: &FiniteElem) -> FiniteElem {
                self.$checked(rhs)
                    .expect("finite ring operands must share a ring")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FiniteElem {
    type Output = FiniteElem;
    fn neg(self) -> FiniteElem {
        FiniteElem {
            spec: self.spec.clone(),
            value: self.spec.neg_v(&self.value),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::value_to_json(self))
    }
}

impl fmt::Display for FiniteElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::finite_to_json(self))
    }
}
