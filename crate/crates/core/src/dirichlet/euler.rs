//! Euler products over the places of `F_q[x]`, grouped by degree.
//!
//! A local factor is a function of `u = |Q|^{-1}` alone, so the product over
//! places of degree `d` is `local(q^{-d})^{N_d}` with `N_d` the number of
//! irreducibles of degree `d`. Products are evaluated as
//! `exp(sum_{d <= D} N_d ln local(q^{-d}))`.
//!
//! Tail bound: if `|local(u) - 1| <= c u^e` and `c u^e <= 1/2` for every
//! omitted degree, then `|ln local| <= 2 c u^e` there, and since
//! `N_d <= q^d / d`,
//!
//! ```text
//! sum_{d > D} N_d |ln local(q^{-d})|
//!     <= 2c/(D+1) * q^{-(D+1)(e-1)} / (1 - q^{-(e-1)}) =: T.
//! ```
//!
//! The full product lies within `P_D (e^T - 1)` of the truncation `P_D`.

use serde::Serialize;

use super::real::Real;
use crate::poly_fq::count_irreducibles;

/// Slack added to every error bound for rounding in 128-bit arithmetic.
pub const ROUNDING_SLACK: f64 = 1e-30;

/// Default target for automatically chosen truncation degrees.
pub const DEFAULT_TOLERANCE: f64 = 1e-7;

/// Hard cap on automatically chosen truncation degrees.
pub const MAX_AUTO_DEGREE: u32 = 400;

/// A truncated Euler product with a rigorous bound on the omitted tail.
#[derive(Clone, Debug)]
pub struct EulerProductValue {
    pub value: Real,
    pub truncation_degree: u32,
    pub error_bound: f64,
}

impl EulerProductValue {
    pub fn exact(value: Real) -> Self {
        EulerProductValue {
            value,
            truncation_degree: 0,
            error_bound: 0.0,
        }
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn summary(&self) -> EulerSummary {
        EulerSummary {
            value: self.value_f64(),
            truncation_degree: self.truncation_degree,
            error_bound: self.error_bound,
        }
    }

    pub fn mul(&self, other: &EulerProductValue) -> EulerProductValue {
        let a = self.value_f64().abs();
        let b = other.value_f64().abs();
        EulerProductValue {
            value: self.value.mul(&other.value),
            truncation_degree: self.truncation_degree.max(other.truncation_degree),
            error_bound: a * other.error_bound
                + b * self.error_bound
                + self.error_bound * other.error_bound,
        }
    }

    pub fn scale(&self, c: &Real) -> EulerProductValue {
        EulerProductValue {
            value: self.value.mul(c),
            truncation_degree: self.truncation_degree,
            error_bound: self.error_bound * c.to_f64().abs(),
        }
    }
}

/// Plain-float view for reports.
#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct EulerSummary {
    pub value: f64,
    pub truncation_degree: u32,
    pub error_bound: f64,
}

/// A local factor `u -> L(u)` with `|L(u) - 1| <= c u^e` for `c u^e <= 1/2`.
pub struct LocalFactor<'a> {
    pub eval: Box<dyn Fn(&Real) -> Real + Sync + 'a>,
    pub c: f64,
    pub e: f64,
}

impl<'a> LocalFactor<'a> {
    pub fn new(eval: impl Fn(&Real) -> Real + Sync + 'a, c: f64, e: f64) -> Self {
        LocalFactor {
            eval: Box::new(eval),
            c,
            e,
        }
    }

    /// From an integer polynomial `1 + a_1 u + a_2 u^2 + ...` with `a_1 = 0`;
    /// `c` is the sum of `|a_k|`, `e = 2`.
    pub fn from_integer_poly(coeffs: Vec<i64>) -> LocalFactor<'static> {
        assert_eq!(coeffs.first(), Some(&1), "constant term must be 1");
        assert!(coeffs.get(1).copied().unwrap_or(0) == 0, "linear term must vanish");
        let c = coeffs.iter().skip(2).map(|a| a.unsigned_abs() as f64).sum();
        LocalFactor::new(
            move |u: &Real| {
                coeffs
                    .iter()
                    .rev()
                    .fold(Real::zero(), |acc, &a| acc.mul(u).add(&Real::from_i64(a)))
            },
            c,
            2.0,
        )
    }
}

/// Upper bound on the log-tail over degrees `> d`, or `None` when the
/// dominant-term condition `c q^{-(d+1)e} <= 1/2` fails.
pub fn tail_log_bound(q: u64, c: f64, e: f64, d: u32) -> Option<f64> {
    assert!(e > 1.0, "tail bound needs e > 1");
    if c == 0.0 {
        return Some(0.0);
    }
    let qf = q as f64;
    let lead = c * qf.powf(-((d + 1) as f64) * e);
    if lead > 0.5 {
        return None;
    }
    let g = qf.powf(-(e - 1.0));
    Some(2.0 * c / (d as f64 + 1.0) * g.powf((d + 1) as f64) / (1.0 - g))
}

/// `q^{-d}` as a [`Real`].
pub fn inv_qpow(q: u64, d: u32) -> Real {
    Real::one().div(&Real::from_u64(q).powi(d as usize))
}

/// The product over all places of degree `<= d`, with tail bound.
pub fn euler_product(q: u64, local: &LocalFactor<'_>, d: u32) -> EulerProductValue {
    let mut log_sum = Real::zero();
    for deg in 1..=d {
        let u = inv_qpow(q, deg);
        let l = (local.eval)(&u);
        let n = Real::from_biguint(&count_irreducibles(q, deg as u64));
        log_sum = log_sum.add(&n.mul(&l.ln()));
    }
    let value = log_sum.exp();
    let error_bound = match tail_log_bound(q, local.c, local.e, d) {
        Some(t) => value.to_f64().abs() * t.exp_m1() + ROUNDING_SLACK,
        None => f64::INFINITY,
    };
    EulerProductValue {
        value,
        truncation_degree: d,
        error_bound,
    }
}

/// Smallest truncation degree whose a-priori bound is below `tol`.
pub fn auto_degree(q: u64, local: &LocalFactor<'_>, tol: f64) -> u32 {
    (1..=MAX_AUTO_DEGREE)
        .find(|&d| match tail_log_bound(q, local.c, local.e, d) {
            // value <= 2 is a safe envelope for every factor used here
            Some(t) => 2.0 * t.exp_m1() + ROUNDING_SLACK < tol,
            None => false,
        })
        .unwrap_or(MAX_AUTO_DEGREE)
}

/// [`euler_product`] starting at the degree chosen by [`auto_degree`] and
/// increasing it until the evaluated bound is below `tol`.
pub fn euler_product_auto(q: u64, local: &LocalFactor<'_>, tol: f64) -> EulerProductValue {
    let mut d = auto_degree(q, local, tol);
    loop {
        let v = euler_product(q, local, d);
        if v.error_bound < tol || d >= MAX_AUTO_DEGREE {
            return v;
        }
        d += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_factor() {
        let one = LocalFactor::new(|_| Real::one(), 0.0, 2.0);
        let v = euler_product(2, &one, 10);
        assert_eq!(v.value_f64(), 1.0);
        assert!(v.error_bound <= 1e-29);
    }

    #[test]
    fn tail_bound_decreases() {
        let mut prev = f64::INFINITY;
        for d in 1..30 {
            if let Some(t) = tail_log_bound(2, 2.0, 2.0, d) {
                assert!(t < prev);
                prev = t;
            }
        }
    }

    #[test]
    fn integer_poly_constant() {
        let l = LocalFactor::from_integer_poly(vec![1, 0, -2, 1]);
        assert_eq!(l.c, 3.0);
        let v = (l.eval)(&Real::from_f64(0.5));
        assert!((v.to_f64() - (1.0 - 0.5 + 0.125)).abs() < 1e-15);
    }
}
