//! Truncated power series in `T = q^{-s}` with exact rational coefficients.
//!
//! A Dirichlet series `sum_m c_m q^{-ms}` is stored as `c_0, ..., c_M`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{domain, invariant, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSeries {
    q: u64,
    coeffs: Vec<BigRational>,
}

impl CoeffSeries {
    /// Coefficients `c_0..=c_order`; missing entries are zero, extra ones dropped.
    pub fn new(q: u64, mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        CoeffSeries { q, coeffs }
    }

    pub fn from_integers(q: u64, coeffs: &[i64], order: usize) -> Self {
        let v = coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CoeffSeries::new(q, v, order)
    }

    pub fn one(q: u64, order: usize) -> Self {
        CoeffSeries::new(q, vec![BigRational::one()], order)
    }

    pub fn zero(q: u64, order: usize) -> Self {
        CoeffSeries::new(q, Vec::new(), order)
    }

    /// `c T^k`.
    pub fn monomial(q: u64, c: BigRational, k: usize, order: usize) -> Self {
        let mut s = CoeffSeries::zero(q, order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_q(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return domain(format!(
                "series over different q ({} vs {})",
                self.q, other.q
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        let order = self.order().min(other.order());
        let v = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Ok(CoeffSeries::new(self.q, v, order))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_q(other)?;
        let order = self.order().min(other.order());
        let v = (0..=order)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        Ok(CoeffSeries::new(self.q, v, order))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CoeffSeries {
            q: self.q,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at `order`.
    pub fn multiply(&self, other: &Self, order: usize) -> Result<Self> {
        self.check_q(other)?;
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        let order = order.min(self.order()).min(other.order());
        Ok(CoeffSeries::new(self.q, out, order))
    }

    /// `self(T^k)`.
    pub fn substitute_power(&self, k: usize) -> Self {
        let order = self.order();
        let mut out = vec![BigRational::zero(); order + 1];
        if k == 0 {
            out[0] = self.coeffs.iter().sum();
        } else {
            for (i, c) in self.coeffs.iter().enumerate() {
                if i * k > order {
                    break;
                }
                out[i * k] = c.clone();
            }
        }
        CoeffSeries::new(self.q, out, order)
    }

    /// `self^n` for a series with constant term 1, via
    /// `(1 + u)^n = sum_j C(n, j) u^j`. Exact for any non-negative `n`.
    pub fn pow_big(&self, n: &BigUint) -> Result<Self> {
        if self.coeffs[0] != BigRational::one() {
            return domain("pow_big needs constant term 1");
        }
        let order = self.order();
        let mut u = self.clone();
        u.coeffs[0] = BigRational::zero();
        let mut out = CoeffSeries::one(self.q, order);
        let mut u_pow = CoeffSeries::one(self.q, order);
        let mut binom = BigInt::one();
        let n = BigInt::from(n.clone());
        for j in 1..=order {
            u_pow = u_pow.multiply(&u, order)?;
            if u_pow.coeffs.iter().all(|c| c.is_zero()) {
                break;
            }
            // C(n, j) = C(n, j-1) (n - j + 1) / j
            binom = binom * (&n - (j - 1)) / j;
            if binom.is_zero() {
                break;
            }
            out = out.add(&u_pow.scale(&BigRational::from_integer(binom.clone())))?;
        }
        Ok(out)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return domain("series with zero constant term is not invertible");
        }
        let order = self.order();
        let inv0 = self.coeffs[0].recip();
        let mut out = vec![BigRational::zero(); order + 1];
        out[0] = inv0.clone();
        for m in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * &out[m - k];
            }
            out[m] = -acc * &inv0;
        }
        Ok(CoeffSeries::new(self.q, out, order))
    }

    /// Coefficients as integers; errors if any is fractional.
    pub fn to_integers(&self) -> Result<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    Ok(c.numer().clone())
                } else {
                    invariant(format!("non-integral coefficient {c}"))
                }
            })
            .collect()
    }
}

/// `zeta(a s - b)` for the affine line as a series in `T`:
/// `sum_k q^{k(1+b)} T^{a k}`. Requires `b >= -1` so coefficients are integers.
pub fn zeta_shift_series(q: u64, a: usize, b: i64, order: usize) -> Result<CoeffSeries> {
    if a == 0 || b < -1 {
        return domain("zeta series needs a >= 1 and b >= -1");
    }
    let base = BigInt::from(q).pow((1 + b) as u32);
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut c = BigInt::one();
    let mut k = 0;
    while a * k <= order {
        coeffs[a * k] = BigRational::from_integer(c.clone());
        c *= &base;
        k += 1;
    }
    Ok(CoeffSeries::new(q, coeffs, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_conjugates() {
        let a = CoeffSeries::from_integers(2, &[1, 1], 6);
        let b = CoeffSeries::from_integers(2, &[1, -1], 6);
        let p = a.multiply(&b, 6).unwrap();
        assert_eq!(p, CoeffSeries::from_integers(2, &[1, 0, -1], 6));
    }

    #[test]
    fn identity_is_neutral() {
        let a = CoeffSeries::from_integers(3, &[1, 4, -2, 7], 5);
        assert_eq!(a.multiply(&CoeffSeries::one(3, 5), 5).unwrap(), a);
    }

    #[test]
    fn mismatched_q() {
        let a = CoeffSeries::one(2, 3);
        let b = CoeffSeries::one(3, 3);
        assert!(a.multiply(&b, 3).is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let a = CoeffSeries::from_integers(2, &[1, 0, 3, -1, 2], 12);
        let mut direct = CoeffSeries::one(2, 12);
        for _ in 0..7 {
            direct = direct.multiply(&a, 12).unwrap();
        }
        assert_eq!(a.pow_big(&BigUint::from(7u32)).unwrap(), direct);
    }

    #[test]
    fn inverse_of_geometric() {
        let a = CoeffSeries::from_integers(2, &[1, -2], 8);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, zeta_shift_series(2, 1, 0, 8).unwrap());
    }
}
