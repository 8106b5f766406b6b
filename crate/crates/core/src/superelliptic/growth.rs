//! Numerical check of the bound
//! `sum_{q^{e_1 + ... + e_r} < X} q^{|e|} <= D_r X log(X)^{r-1}`
//! with `D_r = (2r)^{r-1}/(r-1)!` times a safety margin, over
//! `e in Z_{>=0}^r` and natural logarithms.

use num_bigint::BigUint;
use serde::Serialize;

use crate::census::ratio;
use crate::error::{domain, Result};

/// Multiplicative margin on `D_r`.
pub const GROWTH_MARGIN: f64 = 1.1;

/// `(2r)^{r-1}/(r-1)!`.
pub fn growth_constant(r: u32) -> f64 {
    let fact: f64 = (1..r).map(f64::from).product();
    (2.0 * r as f64).powi(r as i32 - 1) / fact
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    /// `X = q^j + 1`, so the sum runs over `|e| <= j`.
    pub j: u32,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / (X log(X)^{r-1})`.
    pub normalized: f64,
    pub holds: bool,
}

fn binomial(n: u64, k: u64) -> BigUint {
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// One row per `j` in `0..=j_max`, each comparing the exact left side with
/// the margin-inflated right side.
pub fn growth_bound_check(q: u64, r: u32, j_max: u32) -> Result<Vec<GrowthRow>> {
    if r == 0 || q < 2 {
        return domain("growth bound needs r >= 1 and q >= 2");
    }
    let d = growth_constant(r) * GROWTH_MARGIN;
    let qb = BigUint::from(q);
    let mut lhs = BigUint::from(0u32);
    let mut rows = Vec::new();
    for j in 0..=j_max {
        // tuples of r non-negative integers summing to j
        lhs += binomial(j as u64 + r as u64 - 1, r as u64 - 1) * qb.pow(j);
        let x = qb.pow(j) + 1u32;
        let xf = ratio(&x, &BigUint::from(1u32));
        let scale = xf * xf.ln().powi(r as i32 - 1);
        let lhs_f = ratio(&lhs, &BigUint::from(1u32));
        rows.push(GrowthRow {
            j,
            lhs: lhs_f,
            rhs: d * scale,
            normalized: lhs_f / scale,
            holds: lhs_f <= d * scale,
        });
    }
    Ok(rows)
}
