//! Dense square matrices over `Z/q` stored row-major, with Gaussian
//! elimination helpers that require `q` prime.

use crate::finite::{add_mod, mul_mod, neg_mod};

pub(crate) fn mat_mul(a: &[u64], b: &[u64], k: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; k * k];
    for i in 0..k {
        for l in 0..k {
            let ail = a[i * k + l];
            if ail == 0 {
                continue;
            }
            for j in 0..k {
                out[i * k + j] = add_mod(out[i * k + j], mul_mod(ail, b[l * k + j], q), q);
            }
        }
    }
    out
}

pub(crate) fn identity(k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k * k];
    for i in 0..k {
        out[i * k + i] = 1;
    }
    out
}

pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    // a^(p-2)
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form of a `rows x cols` matrix over `F_p`, returned
/// with its pivot columns.
pub(crate) fn rref(mat: &[u64], rows: usize, cols: usize, p: u64) -> (Vec<u64>, Vec<usize>) {
    let mut m: Vec<u64> = mat.iter().map(|v| v % p).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(sel) = (row..rows).find(|&r| m[r * cols + col] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(sel * cols + j, row * cols + j);
        }
        let inv = inv_mod_prime(m[row * cols + col], p);
        for j in 0..cols {
            m[row * cols + j] = mul_mod(m[row * cols + j], inv, p);
        }
        for r in 0..rows {
            let factor = m[r * cols + col];
            if r == row || factor == 0 {
                continue;
            }
            for j in 0..cols {
                let t = mul_mod(factor, m[row * cols + j], p);
                m[r * cols + j] = add_mod(m[r * cols + j], neg_mod(t, p), p);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub(crate) fn rank(mat: &[u64], k: usize, p: u64) -> usize {
    rref(mat, k, k, p).1.len()
}

/// Basis of the null space `{v : M v = 0}`, one vector per free column.
pub(crate) fn kernel_basis(mat: &[u64], k: usize, p: u64) -> Vec<Vec<u64>> {
    let (r, pivots) = rref(mat, k, k, p);
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; k];
            v[fc] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(r[row * k + fc], p);
            }
            v
        })
        .collect()
}

/// Basis of the column space: the pivot columns of the original matrix.
pub(crate) fn column_basis(mat: &[u64], k: usize, p: u64) -> Vec<Vec<u64>> {
    let (_, pivots) = rref(mat, k, k, p);
    pivots
        .iter()
        .map(|&c| (0..k).map(|r| mat[r * k + c] % p).collect())
        .collect()
}

pub(crate) fn inverse(mat: &[u64], k: usize, p: u64) -> Option<Vec<u64>> {
    let mut aug = vec![0u64; k * 2 * k];
    for i in 0..k {
        for j in 0..k {
            aug[i * 2 * k + j] = mat[i * k + j] % p;
        }
        aug[i * 2 * k + k + i] = 1;
    }
    let (r, pivots) = rref(&aug, k, 2 * k, p);
    if pivots.len() < k || pivots[k - 1] != k - 1 {
        return None;
    }
    let mut out = vec![0u64; k * k];
    for i in 0..k {
        for j in 0..k {
            out[i * k + j] = r[i * 2 * k + k + j];
        }
    }
    Some(out)
}

/// Matrix whose columns are the given vectors.
pub(crate) fn from_columns(cols: &[Vec<u64>], k: usize) -> Vec<u64> {
    let mut out = vec![0u64; k * k];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..k {
            out[i * k + j] = col[i];
        }
    }
    out
}
