//! Strong π-regularity in finite residue rings.
//!
//! Every element `x` of a finite ring has an idempotent power `g = x^m`; then
//! `z = 1 - g` commutes with `x`, `zxz` is nilpotent and `x - z` is a unit.
//! This is the Fitting decomposition that seeds the lifting procedure: `z`
//! projects onto the nilpotent part, `1 - z` onto the invertible part.

use crate::adic::AdicElem;
use crate::error::{Error, Result};
use crate::finite::{invert_finite, is_prime, FiniteElem, Value};
use crate::linalg;

/// Fitting data of a residue element `x̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralData {
    /// Idempotent with `z x̄ = x̄ z`, `(z x̄ z)^n = 0` and `x̄ - z` a unit.
    pub z: FiniteElem,
    /// Least `n >= 1` with `(z x̄ z)^n = 0`.
    pub n: usize,
    /// Least `m >= 1` with `x̄^m = x̄^(2m)`, when the power search was used.
    pub m: Option<u64>,
}

fn check_postconditions(x: &FiniteElem, z: &FiniteElem, n: usize) -> Result<()> {
    if &(z * z) != z {
        return Err(Error::PostconditionViolated("spectral projector is not idempotent"));
    }
    if (z * x) != (x * z) {
        return Err(Error::PostconditionViolated("spectral projector does not commute"));
    }
    let zxz = &(z * x) * z;
    if !zxz.pow(n as u64).is_zero() || (n >= 2 && zxz.pow(n as u64 - 1).is_zero()) {
        return Err(Error::PostconditionViolated("nilpotent degree is not minimal"));
    }
    Ok(())
}

/// Fitting idempotent by searching for the idempotent power of `x̄`.
pub fn spectral_idempotent(x: &FiniteElem) -> Result<SpectralData> {
    let budget = x.spec().cardinality().unwrap_or(u128::MAX);
    let mut power = x.clone();
    let mut m: u64 = 1;
    while (&power * &power) != power {
        if m as u128 >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        power = &power * x;
        m += 1;
    }
    let one = x.ring().one();
    let z = &one - &power;
    let zxz = &(&z * x) * &z;
    let mut acc = zxz.clone();
    let mut n = 1usize;
    while !acc.is_zero() {
        if n as u64 >= m {
            return Err(Error::PostconditionViolated("corner is not nilpotent"));
        }
        acc = &acc * &zxz;
        n += 1;
    }
    check_postconditions(x, &z, n)?;
    invert_finite(&(x - &z)).map_err(|_| Error::PostconditionViolated("x - z is not a unit"))?;
    Ok(SpectralData { z, n, m: Some(m) })
}

fn int_entries(x: &FiniteElem) -> Vec<u64> {
    match x.value() {
        Value::Mat(es) => es
            .iter()
            .map(|v| match v {
                Value::Int(i) => *i,
                _ => unreachable!("checked to be a matrix over Z/p"),
            })
            .collect(),
        _ => unreachable!("checked to be a matrix over Z/p"),
    }
}

/// Fitting idempotent of a matrix over `F_p` from kernel/image stabilization:
/// the projector onto `ker x̄^n` along `im x̄^n`, where `n` is the first index
/// at which the ranks of powers stop dropping.
pub fn spectral_idempotent_matrix(x: &FiniteElem) -> Result<SpectralData> {
    let (p, k) = x.spec().as_zmod_matrix().ok_or(Error::NotPrimeField)?;
    if !is_prime(p) {
        return Err(Error::NotPrimeField);
    }
    let entries = int_entries(x);
    let mut power = linalg::identity(k);
    let mut rank = k;
    let mut stable_at = 0usize;
    loop {
        let next = linalg::mat_mul(&power, &entries, k, p);
        let next_rank = linalg::rank(&next, k, p);
        if next_rank == rank {
            break;
        }
        power = next;
        rank = next_rank;
        stable_at += 1;
    }
    let n = stable_at.max(1);
    let stable = (0..n).fold(linalg::identity(k), |acc, _| linalg::mat_mul(&acc, &entries, k, p));
    let kernel = linalg::kernel_basis(&stable, k, p);
    let image = linalg::column_basis(&stable, k, p);
    let dim_kernel = kernel.len();
    let basis: Vec<Vec<u64>> = kernel.into_iter().chain(image).collect();
    if basis.len() != k {
        return Err(Error::PostconditionViolated("kernel and image do not span"));
    }
    let change = linalg::from_columns(&basis, k);
    let change_inv =
        linalg::inverse(&change, k, p).ok_or(Error::PostconditionViolated("kernel and image are not complementary"))?;
    let mut diag = vec![0u64; k * k];
    for i in 0..dim_kernel {
        diag[i * k + i] = 1;
    }
    let z_entries = linalg::mat_mul(&linalg::mat_mul(&change, &diag, k, p), &change_inv, k, p);
    let z = x
        .ring()
        .elem(Value::Mat(z_entries.into_iter().map(Value::Int).collect()))?;
    check_postconditions(x, &z, n)?;
    let diff = int_entries(&(x - &z));
    if linalg::inverse(&diff, k, p).is_none() {
        return Err(Error::PostconditionViolated("x - z is not a unit"));
    }
    Ok(SpectralData { z, n, m: None })
}

/// Uses the elimination path when the ring is a matrix ring over a prime
/// field and the power search otherwise.
pub fn spectral_data(x: &FiniteElem) -> Result<SpectralData> {
    match x.spec().as_zmod_matrix() {
        Some((p, _)) if is_prime(p) => spectral_idempotent_matrix(x),
        _ => spectral_idempotent(x),
    }
}

/// Least `k >= 1` with `a^k ∈ I^level`, searching at most `bound` powers.
pub fn nilpotency_index(a: &AdicElem, level: usize, bound: usize) -> Result<usize> {
    let cap = a.precision();
    if level == 0 || level > cap {
        return Err(Error::BadLevel { level, cap });
    }
    let mut acc = a.clone();
    for k in 1..=bound {
        if acc.in_ideal_power(level) {
            return Ok(k);
        }
        acc = &acc * a;
    }
    Err(Error::NotNilpotentAtLevel { level, bound })
}
