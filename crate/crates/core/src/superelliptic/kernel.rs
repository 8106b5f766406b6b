//! Exact check of the kernel of `A = (<ij/n>)_{1 <= i, j <= n-1}`.
//!
//! The kernel has dimension `(n-3)/2` and is spanned by the vectors
//! `x^(k) = e_k + e_{n-k} - e_{(n-1)/2} - e_{(n+1)/2}`, so every kernel
//! vector is symmetric under `k <-> n - k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cover::check_n;
use crate::error::{guard, Result};

/// Largest `n` accepted by [`verify_kernel_lemma`].
pub const MAX_KERNEL_N: u32 = 101;

type Matrix = Vec<Vec<BigRational>>;

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub n: u32,
    pub rank: usize,
    pub expected_rank: usize,
    pub kernel_dimension: usize,
    /// `A x^(k) = 0` for every listed basis vector.
    pub basis_in_kernel: bool,
    /// Every vector of the computed kernel basis is symmetric.
    pub kernel_symmetric: bool,
    pub passed: bool,
}

/// `A_{ij} = (ij mod n)/n`, indices from 1.
pub fn fractional_matrix(n: u32) -> Matrix {
    let nn = BigInt::from(n);
    (1..n)
        .map(|i| {
            (1..n)
                .map(|j| BigRational::new(BigInt::from((i as u64 * j as u64) % n as u64), nn.clone()))
                .collect()
        })
        .collect()
}

/// The symmetric kernel vectors `x^(k)`, `k = 1..(n-3)/2`.
pub fn kernel_basis_vectors(n: u32) -> Vec<Vec<i64>> {
    let len = n as usize - 1;
    let lo = (n as usize - 1) / 2;
    let hi = (n as usize).div_ceil(2);
    (1..=(n as usize - 3) / 2)
        .map(|k| {
            let mut v = vec![0i64; len];
            v[k - 1] += 1;
            v[n as usize - k - 1] += 1;
            v[lo - 1] -= 1;
            v[hi - 1] -= 1;
            v
        })
        .collect()
}

fn apply(a: &Matrix, x: &[i64]) -> Vec<BigRational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(BigRational::zero(), |acc, (c, &v)| acc + c * BigRational::from_integer(v.into()))
        })
        .collect()
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(mut a: Matrix) -> (Matrix, Vec<usize>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let factor = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (a, pivots)
}

/// Exact rank of `A`.
pub fn rank(a: &Matrix) -> usize {
    rref(a.clone()).1.len()
}

/// Integer basis of the kernel, one vector per free column.
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<BigInt>> {
    let cols = a.first().map_or(0, Vec::len);
    let (r, pivots) = rref(a.clone());
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); cols];
            v[fc] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][fc].clone();
            }
            let lcm = v
                .iter()
                .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
            v.iter()
                .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect()
}

pub fn verify_kernel_lemma(n: u32) -> Result<KernelReport> {
    check_n(n)?;
    guard("kernel lemma size n", n as u128, MAX_KERNEL_N as u128)?;
    let a = fractional_matrix(n);
    let basis_in_kernel = kernel_basis_vectors(n)
        .iter()
        .all(|x| apply(&a, x).iter().all(Zero::is_zero));
    let rank = rank(&a);
    let kernel = kernel_basis(&a);
    let len = n as usize - 1;
    let kernel_symmetric = kernel.iter().all(|v| {
        !v.iter().all(|x| x.abs().is_zero()) && (0..len).all(|k| v[k] == v[len - 1 - k])
    });
    let expected_rank = (n as usize).div_ceil(2);
    Ok(KernelReport {
        n,
        rank,
        expected_rank,
        kernel_dimension: kernel.len(),
        basis_in_kernel,
        kernel_symmetric,
        passed: basis_in_kernel && kernel_symmetric && rank == expected_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n5_basis_vector() {
        assert_eq!(kernel_basis_vectors(5), vec![vec![1, -1, -1, 1]]);
        let a = fractional_matrix(5);
        assert!(apply(&a, &[1, -1, -1, 1]).iter().all(Zero::is_zero));
        assert!(!apply(&a, &[1, 0, 0, 0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn n3_is_trivial() {
        let r = verify_kernel_lemma(3).unwrap();
        assert!(r.passed);
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel_dimension, 0);
    }

    #[test]
    fn n7_rank_four() {
        let r = verify_kernel_lemma(7).unwrap();
        assert!(r.passed);
        assert_eq!((r.rank, r.kernel_dimension), (4, 2));
    }

    #[test]
    fn small_primes_pass() {
        for n in [3u32, 5, 7, 11, 13, 17, 19] {
            assert!(verify_kernel_lemma(n).unwrap().passed, "n = {n}");
        }
    }

    #[test]
    fn rejects_bad_n() {
        assert!(verify_kernel_lemma(9).is_err());
        assert!(matches!(verify_kernel_lemma(103), Err(crate::Error::Resource { .. })));
    }
}
