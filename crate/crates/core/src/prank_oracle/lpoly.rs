//! L-polynomials from point counts, and the p-rank as `deg(L mod p)`.

use serde::Serialize;

use super::points::PointCounts;
use crate::error::{domain, invariant, Result};

/// `L(T) = sum a_i T^i`, `a_0 = 1`, degree `2g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub q: u64,
    pub genus: u64,
    pub coeffs: Vec<i128>,
}

impl LPolynomial {
    /// Validates `a_0 = 1`, the functional equation and `L(1) > 0`.
    pub fn new(q: u64, genus: u64, coeffs: Vec<i128>) -> Result<Self> {
        let g = genus as usize;
        if coeffs.len() != 2 * g + 1 || coeffs[0] != 1 {
            return domain(format!("L-polynomial must have degree 2g = {} and a_0 = 1", 2 * g));
        }
        for i in 0..=g {
            if coeffs[2 * g - i] != (q as i128).pow((g - i) as u32) * coeffs[i] {
                return invariant(format!("functional equation fails at a_{}", 2 * g - i));
            }
        }
        let l = LPolynomial { q, genus, coeffs };
        if l.at_one() <= 0 {
            return invariant("L(1) = #Jac(F_q) must be positive");
        }
        Ok(l)
    }

    /// `L(1)`, the number of rational points on the Jacobian.
    pub fn at_one(&self) -> i128 {
        self.coeffs.iter().sum()
    }

    /// `S_k = sum alpha_i^k` for `k = 1..=k_max`, so that
    /// `N_k = q^k + 1 - S_k`.
    pub fn power_sums(&self, k_max: usize) -> Vec<i128> {
        let a = |j: usize| self.coeffs.get(j).copied().unwrap_or(0);
        let mut s: Vec<i128> = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            // k a_k = -sum_{i=1}^{k} S_i a_{k-i}
            let mut v = -(k as i128) * a(k);
            for i in 1..k {
                v -= s[i - 1] * a(k - i);
            }
            s.push(v);
        }
        s
    }

    /// `N_k` predicted by this L-polynomial.
    pub fn predicted_counts(&self, k_max: usize) -> Vec<i64> {
        self.power_sums(k_max)
            .iter()
            .enumerate()
            .map(|(i, s)| ((self.q as i128).pow(i as u32 + 1) + 1 - s) as i64)
            .collect()
    }
}

/// Newton's identities on `S_k = q^k + 1 - N_k`, completed by the
/// functional equation.
pub fn l_polynomial(counts: &PointCounts) -> Result<LPolynomial> {
    let g = counts.genus as usize;
    let q = counts.q as i128;
    if counts.counts.len() < g {
        return domain(format!("need {g} point counts, got {}", counts.counts.len()));
    }
    let s: Vec<i128> = (0..g)
        .map(|i| q.pow(i as u32 + 1) + 1 - counts.counts[i] as i128)
        .collect();
    let mut a = vec![0i128; 2 * g + 1];
    a[0] = 1;
    for k in 1..=g {
        let mut acc = 0i128;
        for i in 1..=k {
            acc -= s[i - 1] * a[k - i];
        }
        if acc % k as i128 != 0 {
            return invariant(format!("a_{k} = {acc}/{k} is not an integer"));
        }
        a[k] = acc / k as i128;
    }
    for i in 0..g {
        a[2 * g - i] = q.pow((g - i) as u32) * a[i];
    }
    LPolynomial::new(counts.q, counts.genus, a)
}

/// Degree of `L mod p`.
pub fn p_rank(l: &LPolynomial, p: u32) -> Result<u64> {
    let p = p as i128;
    if p < 2 {
        return domain("p must be a prime");
    }
    if l.coeffs.first().map_or(true, |&a| a.rem_euclid(p) == 0) {
        return domain("L-polynomial has a_0 divisible by p");
    }
    let deg = l
        .coeffs
        .iter()
        .rposition(|&a| a.rem_euclid(p) != 0)
        .expect("a_0 is a unit") as u64;
    if deg > l.genus {
        return invariant(format!("p-rank {deg} exceeds genus {}", l.genus));
    }
    Ok(deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(q: u64, g: u64, c: Vec<i64>) -> PointCounts {
        PointCounts::new(q, g, c).unwrap()
    }

    #[test]
    fn genus_zero() {
        let l = l_polynomial(&pc(2, 0, vec![])).unwrap();
        assert_eq!(l.coeffs, vec![1]);
        assert_eq!(p_rank(&l, 2).unwrap(), 0);
    }

    #[test]
    fn elliptic_examples() {
        let l = l_polynomial(&pc(2, 1, vec![4])).unwrap();
        assert_eq!(l.coeffs, vec![1, 1, 2]);
        assert_eq!(p_rank(&l, 2).unwrap(), 1);
        let l = l_polynomial(&pc(2, 1, vec![3])).unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 2]);
        assert_eq!(p_rank(&l, 2).unwrap(), 0);
        assert_eq!(l.predicted_counts(2), vec![3, 9]);
    }

    #[test]
    fn rejects_bad_polynomials() {
        assert!(LPolynomial::new(2, 1, vec![1, 0, 3]).is_err());
        assert!(LPolynomial::new(2, 1, vec![2, 0, 4]).is_err());
        // 1 - 3T + 2T^2 has L(1) = 0
        assert!(LPolynomial::new(2, 1, vec![1, -3, 2]).is_err());
    }

    #[test]
    fn closure_on_a_genus_two_curve() {
        // y^2 + y = x^5 over F_2: supersingular, L = 1 + 4T^4
        let l = LPolynomial::new(2, 2, vec![1, 0, 0, 0, 4]).unwrap();
        let n = l.predicted_counts(4);
        let back = l_polynomial(&pc(2, 2, n[..2].to_vec())).unwrap();
        assert_eq!(back, l);
        assert_eq!(p_rank(&l, 2).unwrap(), 0);
    }
}
