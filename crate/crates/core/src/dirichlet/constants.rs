//! Limiting constants attached to the Artin-Schreier and superelliptic
//! censuses, evaluated as truncated Euler products.
//!
//! Local factors, writing `u = |Q|^{-1}`:
//!
//! | constant        | local factor                                            |
//! |-----------------|---------------------------------------------------------|
//! | `phi(1)`        | `1 - 2u^2 + u^3`                                        |
//! | `psi_p(1)`      | `(1 + (p-2)u - (p-1)u^2)(1 - u)^{p-2}`                  |
//! | `phi_k(1)`      | `(1 + k u)(1 - u)^k`                                    |
//! | `L_{n-2}`       | `prod_{j=1}^{n-2} (1 - j u^2 / ((1 + u)(1 + j u)))`     |
//! | `zeta(s)`       | `(1 - u^s)^{-1}`                                        |

use num_bigint::BigInt;
use serde::Serialize;

use super::euler::{
    euler_product, euler_product_auto, inv_qpow, EulerProductValue, LocalFactor,
    DEFAULT_TOLERANCE, ROUNDING_SLACK,
};
use super::real::Real;
use crate::error::{domain, Result};
use crate::poly_fq::field::is_prime;
use crate::poly_fq::prime_power;

fn split_q(q: u64) -> Result<(u32, u32)> {
    prime_power(q).ok_or_else(|| crate::Error::Domain(format!("q = {q} is not a prime power")))
}

fn qr(q: u64) -> Real {
    Real::from_u64(q)
}

/// Integer coefficients of `prod` of the given integer polynomials.
fn poly_product(factors: &[Vec<i64>]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for f in factors {
        let mut out = vec![0i64; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        acc = out;
    }
    acc
}

/// `1/(1 - q^{1-s})`, the zeta function of the affine line.
pub fn zeta_affine(q: u64, s: f64) -> Result<f64> {
    split_q(q)?;
    if s.is_nan() || s <= 1.0 {
        return domain(format!("zeta_affine has a pole at s = 1; s = {s} is not > 1"));
    }
    Ok(1.0 / (1.0 - (q as f64).powf(1.0 - s)))
}

/// `zeta(s) = prod_Q (1 - |Q|^{-s})^{-1}`, truncated at degree `d`.
pub fn zeta_affine_product(q: u64, s: f64, d: u32) -> Result<EulerProductValue> {
    split_q(q)?;
    if s.is_nan() || s <= 1.0 {
        return domain(format!("zeta product diverges for s = {s}"));
    }
    let sr = Real::from_f64(s);
    let local = LocalFactor::new(
        move |u: &Real| Real::one().div(&Real::one().sub(&u.powf(&sr))),
        2.0,
        s,
    );
    Ok(euler_product(q, &local, d))
}

/// `zeta(2) = 1/(1 - q^{-1})`, exactly.
pub fn zeta2(q: u64) -> Real {
    Real::one().div(&Real::one().sub(&inv_qpow(q, 1)))
}

fn phi_local() -> LocalFactor<'static> {
    LocalFactor::from_integer_poly(vec![1, 0, -2, 1])
}

/// `phi(1) = prod_Q (1 - 2|Q|^{-2} + |Q|^{-3})`; characteristic 2 only.
pub fn phi_at_1(q: u64) -> Result<EulerProductValue> {
    phi_at_1_with(q, None)
}

/// [`phi_at_1`] at an explicit truncation degree (`None` picks one).
pub fn phi_at_1_with(q: u64, d: Option<u32>) -> Result<EulerProductValue> {
    let (p, _) = split_q(q)?;
    if p != 2 {
        return domain("phi(1) is defined for characteristic 2");
    }
    Ok(eval(q, &phi_local(), d))
}

fn eval(q: u64, local: &LocalFactor<'_>, d: Option<u32>) -> EulerProductValue {
    match d {
        Some(d) => euler_product(q, local, d),
        None => euler_product_auto(q, local, DEFAULT_TOLERANCE),
    }
}

fn psi_local_coeffs(p: u32) -> Vec<i64> {
    let p = p as i64;
    let mut factors = vec![vec![1, p - 2, -(p - 1)]];
    factors.extend(std::iter::repeat(vec![1, -1]).take((p - 2) as usize));
    poly_product(&factors)
}

/// `psi_p(1)`: `1 - q^{-1}` for `p = 2`, otherwise the Euler product.
pub fn psi_p_at_1(q: u64, p: u32) -> Result<EulerProductValue> {
    psi_p_at_1_with(q, p, None)
}

pub fn psi_p_at_1_with(q: u64, p: u32, d: Option<u32>) -> Result<EulerProductValue> {
    let (char_p, _) = split_q(q)?;
    if p != char_p {
        return domain(format!("p = {p} is not the characteristic of F_{q}"));
    }
    if p == 2 {
        return Ok(EulerProductValue::exact(Real::one().div(&zeta2(q))));
    }
    let local = LocalFactor::from_integer_poly(psi_local_coeffs(p));
    Ok(eval(q, &local, d))
}

/// Limiting probability that an Artin-Schreier cover is ordinary.
///
/// Zero for `p >= 3`. For `p = 2` this is `phi(1) zeta(2)`, multiplied in the
/// family ramified at infinity by `(1 - q^{-1} + q^{-2}) / (1 + q^{-1})`.
pub fn ordinary_probability_as(q: u64, include_infinity: bool) -> Result<EulerProductValue> {
    ordinary_probability_as_with(q, include_infinity, None)
}

pub fn ordinary_probability_as_with(
    q: u64,
    include_infinity: bool,
    d: Option<u32>,
) -> Result<EulerProductValue> {
    let (p, _) = split_q(q)?;
    if p != 2 {
        return Ok(EulerProductValue::exact(Real::zero()));
    }
    let base = phi_at_1_with(q, d)?.scale(&zeta2(q));
    if !include_infinity {
        return Ok(base);
    }
    let u = inv_qpow(q, 1);
    let num = Real::one().sub(&u).add(&u.mul(&u));
    let den = Real::one().add(&u);
    Ok(base.scale(&num.div(&den)))
}

/// The limit of the finite-m census ratio in the family ramified at infinity,
/// using the local factor `1 + (q - 1) q^{-2s}` that the enumeration produces
/// for ordinary behaviour at infinity: `phi(1) zeta(2) (1 + q^{-1} - q^{-2}) / (1 + q^{-1})`.
pub fn modified_family_census_limit(q: u64) -> Result<EulerProductValue> {
    modified_family_census_limit_with(q, None)
}

pub fn modified_family_census_limit_with(q: u64, d: Option<u32>) -> Result<EulerProductValue> {
    let (p, _) = split_q(q)?;
    if p != 2 {
        return Ok(EulerProductValue::exact(Real::zero()));
    }
    let u = inv_qpow(q, 1);
    let num = Real::one().add(&u).sub(&u.mul(&u));
    let den = Real::one().add(&u);
    Ok(phi_at_1_with(q, d)?.scale(&zeta2(q)).scale(&num.div(&den)))
}

/// `prod_{i >= 1} (1 + q^{-i})^{-1}`.
pub fn cezb_constant(q: u64) -> Result<EulerProductValue> {
    split_q(q)?;
    // Tail: the omitted factors lie in (exp(-q^{-I}/(q-1)), 1).
    let qf = q as f64;
    let mut terms = 1u32;
    while qf.powi(-(terms as i32)) / (qf - 1.0) >= DEFAULT_TOLERANCE / 10.0 {
        terms += 1;
    }
    cezb_constant_with(q, terms)
}

pub fn cezb_constant_with(q: u64, terms: u32) -> Result<EulerProductValue> {
    split_q(q)?;
    let mut acc = Real::one();
    for i in 1..=terms {
        acc = acc.div(&Real::one().add(&inv_qpow(q, i)));
    }
    let t = (q as f64).powi(-(terms as i32)) / (q as f64 - 1.0);
    let error_bound = acc.to_f64() * t + ROUNDING_SLACK;
    Ok(EulerProductValue {
        value: acc,
        truncation_degree: terms,
        error_bound,
    })
}

fn phi_k_coeffs(k: u32) -> Vec<i64> {
    let mut factors = vec![vec![1, k as i64]];
    factors.extend(std::iter::repeat(vec![1, -1]).take(k as usize));
    poly_product(&factors)
}

/// `phi_k(1) = prod_Q (1 + k|Q|^{-1})(1 - |Q|^{-1})^k`.
pub fn phi_k_at_1(q: u64, k: u32) -> Result<EulerProductValue> {
    phi_k_at_1_with(q, k, None)
}

pub fn phi_k_at_1_with(q: u64, k: u32, d: Option<u32>) -> Result<EulerProductValue> {
    split_q(q)?;
    if k == 0 {
        return Ok(EulerProductValue::exact(Real::one()));
    }
    if k > 60 {
        return domain("phi_k supports k <= 60");
    }
    Ok(eval(q, &LocalFactor::from_integer_poly(phi_k_coeffs(k)), d))
}

/// The local factor of `phi_k` at a single place of norm `norm`.
pub fn phi_k_local(k: u32, norm: u64) -> Real {
    let u = Real::one().div(&Real::from_u64(norm));
    let kr = Real::from_u64(k as u64);
    Real::one()
        .add(&kr.mul(&u))
        .mul(&Real::one().sub(&u).powi(k as usize))
}

fn check_odd_prime(n: u32) -> Result<()> {
    if n < 3 || !is_prime(n as u64) {
        return domain(format!("n = {n} is not an odd prime"));
    }
    Ok(())
}

fn l_local(n: u32) -> LocalFactor<'static> {
    let c = ((n - 2) * (n - 1) / 2) as f64;
    LocalFactor::new(
        move |u: &Real| {
            let one = Real::one();
            let mut acc = Real::one();
            for j in 1..=(n - 2) as u64 {
                let jr = Real::from_u64(j);
                let den = one.add(u).mul(&one.add(&jr.mul(u)));
                acc = acc.mul(&one.sub(&jr.mul(&u.mul(u)).div(&den)));
            }
            acc
        },
        c,
        2.0,
    )
}

/// `L_{n-2} = prod_{j=1}^{n-2} prod_Q (1 - j / ((|Q| + 1)(|Q| + j)))`.
pub fn l_constant(q: u64, n: u32) -> Result<EulerProductValue> {
    l_constant_with(q, n, None)
}

pub fn l_constant_with(q: u64, n: u32, d: Option<u32>) -> Result<EulerProductValue> {
    split_q(q)?;
    check_odd_prime(n)?;
    Ok(eval(q, &l_local(n), d))
}

/// The `L_{n-2}` local factor at a single place of norm `norm`.
pub fn l_local_at(n: u32, norm: u64) -> Real {
    (l_local(n).eval)(&Real::one().div(&Real::from_u64(norm)))
}

/// `kappa_n(q) = q phi_{n-1}(1) / (log(q) (n-2)!)`.
pub fn kappa_constant(q: u64, n: u32) -> Result<EulerProductValue> {
    check_odd_prime(n)?;
    let phi = phi_k_at_1(q, n - 1)?;
    let fact: BigInt = (1..=(n as u64 - 2)).map(BigInt::from).product();
    let den = qr(q).ln().mul(&Real::from_bigint(&fact));
    Ok(phi.scale(&qr(q).div(&den)))
}

/// The row emitted by the `constants` command.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantsReport {
    pub q: u64,
    pub p: u32,
    pub phi1: Option<f64>,
    pub psi_p1: f64,
    pub zeta2: f64,
    #[serde(rename = "P_AS_unramified")]
    pub p_as_unramified: f64,
    #[serde(rename = "P_AS_modified")]
    pub p_as_modified: f64,
    #[serde(rename = "P_AS_modified_census")]
    pub p_as_modified_census: f64,
    pub cezb: f64,
    pub truncation_degree: u32,
    pub error_bound: f64,
}

/// All constants for `F_q`. `truncation_degree` and `error_bound` are the
/// largest over the Euler products involved.
pub fn constants_report(q: u64, p: u32) -> Result<ConstantsReport> {
    constants_report_with(q, p, None)
}

/// As [`constants_report`], with every place-indexed Euler product truncated
/// at degree `d` when given (the CEZB product keeps its own term count).
pub fn constants_report_with(q: u64, p: u32, d: Option<u32>) -> Result<ConstantsReport> {
    let (char_p, _) = split_q(q)?;
    if char_p != p {
        return domain(format!("q = {q} is not a power of p = {p}"));
    }
    let phi = (p == 2).then(|| phi_at_1_with(q, d)).transpose()?;
    let psi = psi_p_at_1_with(q, p, d)?;
    let unram = ordinary_probability_as_with(q, false, d)?;
    let modified = ordinary_probability_as_with(q, true, d)?;
    let census = modified_family_census_limit_with(q, d)?;
    let cezb = cezb_constant(q)?;
    let all = [
        phi.as_ref(),
        Some(&psi),
        Some(&unram),
        Some(&modified),
        Some(&census),
        Some(&cezb),
    ];
    let truncation_degree = all.iter().flatten().map(|v| v.truncation_degree).max().unwrap_or(0);
    let error_bound = all.iter().flatten().map(|v| v.error_bound).fold(0.0, f64::max);
    Ok(ConstantsReport {
        q,
        p,
        phi1: phi.map(|v| v.value_f64()),
        psi_p1: psi.value_f64(),
        zeta2: zeta2(q).to_f64(),
        p_as_unramified: unram.value_f64(),
        p_as_modified: modified.value_f64(),
        p_as_modified_census: census.value_f64(),
        cezb: cezb.value_f64(),
        truncation_degree,
        error_bound,
    })
}

/// Published six-digit values for `q = 2, 4, 8, 16, 32`:
/// `(q, phi(1), P(AS) with infinity, CEZB constant)`.
pub const TABLE1_PUBLISHED: [(u64, f64, f64, f64); 5] = [
    (2, 0.314148, 0.314148, 0.419422),
    (4, 0.593976, 0.514777, 0.737512),
    (8, 0.776577, 0.702617, 0.873264),
    (16, 0.882162, 0.833730, 0.937270),
    (32, 0.939367, 0.911820, 0.968720),
];

/// One computed row of the characteristic-2 constants table.
#[derive(Clone, Debug, Serialize)]
pub struct Table1Row {
    pub q: u64,
    pub phi1: f64,
    pub phi1_published: f64,
    pub phi1_deviation: f64,
    pub p_as: f64,
    pub p_as_published: f64,
    pub p_as_deviation: f64,
    pub cezb: f64,
    pub cezb_published: f64,
    pub cezb_deviation: f64,
    pub error_bound: f64,
}

pub fn table1() -> Result<Vec<Table1Row>> {
    TABLE1_PUBLISHED
        .iter()
        .map(|&(q, phi_pub, pas_pub, cezb_pub)| {
            let phi = phi_at_1(q)?;
            let pas = ordinary_probability_as(q, true)?;
            let cezb = cezb_constant(q)?;
            let (a, b, c) = (phi.value_f64(), pas.value_f64(), cezb.value_f64());
            Ok(Table1Row {
                q,
                phi1: a,
                phi1_published: phi_pub,
                phi1_deviation: (a - phi_pub).abs(),
                p_as: b,
                p_as_published: pas_pub,
                p_as_deviation: (b - pas_pub).abs(),
                cezb: c,
                cezb_published: cezb_pub,
                cezb_deviation: (c - cezb_pub).abs(),
                error_bound: phi.error_bound.max(pas.error_bound).max(cezb.error_bound),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_closed_forms() {
        assert!((zeta_affine(2, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((zeta_affine(4, 2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(zeta_affine(2, 1.0).is_err());
        assert!(zeta_affine(2, 0.5).is_err());
    }

    #[test]
    fn zeta_product_within_bound() {
        let v = zeta_affine_product(2, 2.0, 12).unwrap();
        assert!((v.value_f64() - 2.0).abs() <= v.error_bound);
    }

    #[test]
    fn phi_known_values() {
        for (q, want) in [(2u64, 0.314148), (16, 0.882162), (32, 0.939367)] {
            let v = phi_at_1(q).unwrap();
            assert!((v.value_f64() - want).abs() < 1e-5, "q={q}: {}", v.value_f64());
            assert!(v.error_bound < 1e-7);
        }
        assert!(phi_at_1(3).is_err());
    }

    #[test]
    fn psi_char_two_closed_form() {
        assert_eq!(psi_p_at_1(2, 2).unwrap().value_f64(), 0.5);
        assert_eq!(psi_p_at_1(4, 2).unwrap().value_f64(), 0.75);
        assert!(psi_p_at_1(4, 3).is_err());
    }

    #[test]
    fn psi_local_has_no_linear_term() {
        for p in [3u32, 5, 7, 11] {
            let c = psi_local_coeffs(p);
            assert_eq!(c[0], 1);
            assert_eq!(c[1], 0);
        }
    }

    #[test]
    fn psi_three_is_stable() {
        let a = psi_p_at_1_with(3, 3, Some(20)).unwrap();
        let b = psi_p_at_1_with(3, 3, Some(22)).unwrap();
        let v = a.value_f64();
        assert!(v > 0.0 && v.is_finite());
        assert!((v - b.value_f64()).abs() < 1e-6);
    }

    #[test]
    fn ordinary_probability_values() {
        let v = ordinary_probability_as(2, true).unwrap().value_f64();
        assert!((v - 0.314148).abs() < 1e-5);
        let v = ordinary_probability_as(8, true).unwrap().value_f64();
        assert!((v - 0.702617).abs() < 1e-5);
        assert_eq!(ordinary_probability_as(3, false).unwrap().value_f64(), 0.0);
        let v = ordinary_probability_as(2, false).unwrap().value_f64();
        assert!((v - 0.628296).abs() < 1e-5);
    }

    #[test]
    fn cezb_values_and_expansion() {
        let v = cezb_constant(2).unwrap().value_f64();
        assert!((v - 0.419422).abs() < 1e-5);
        let v = cezb_constant(32).unwrap().value_f64();
        assert!((v - 0.968720).abs() < 1e-5);
        for q in [16u64, 32, 64, 128] {
            let x = 1.0 / q as f64;
            let approx = 1.0 - x - x.powi(3) + x.powi(4);
            let v = cezb_constant_with(q, 40).unwrap().value_f64();
            assert!((v - approx).abs() <= 4.0 * x.powi(5), "q={q}");
            assert!(v > 0.0 && v < 1.0);
        }
    }

    #[test]
    fn phi_k_examples() {
        assert_eq!(phi_k_at_1(2, 0).unwrap().value_f64(), 1.0);
        assert!((phi_k_local(1, 2).to_f64() - 0.75).abs() < 1e-15);
        let a = phi_k_at_1_with(2, 2, Some(20)).unwrap().value_f64();
        let b = phi_k_at_1_with(2, 2, Some(22)).unwrap().value_f64();
        assert!(a > 0.0 && (a - b).abs() < 1e-6);
    }

    #[test]
    fn l_constant_examples() {
        for q in [2u64, 3, 4, 5] {
            let want = 1.0 - 1.0 / ((q as f64 + 1.0) * (q as f64 + 1.0));
            assert!((l_local_at(3, q).to_f64() - want).abs() < 1e-15);
        }
        let a = l_constant_with(2, 3, Some(20)).unwrap().value_f64();
        let b = l_constant_with(2, 3, Some(22)).unwrap().value_f64();
        assert!((a - b).abs() < 1e-6);
        let v = l_constant(4, 5).unwrap().value_f64();
        assert!(v > 0.0 && v < 1.0);
        assert!(l_constant(2, 9).is_err());
    }

    #[test]
    fn kappa_composition() {
        let q = 2u64;
        let phi2 = phi_k_at_1(q, 2).unwrap().value_f64();
        let k3 = kappa_constant(q, 3).unwrap().value_f64();
        assert!((k3 - q as f64 * phi2 / (q as f64).ln()).abs() < 1e-12);
        let phi4 = phi_k_at_1(q, 4).unwrap().value_f64();
        let k5 = kappa_constant(q, 5).unwrap().value_f64();
        assert!((k5 - q as f64 * phi4 / ((q as f64).ln() * 6.0)).abs() < 1e-12);
    }
}
