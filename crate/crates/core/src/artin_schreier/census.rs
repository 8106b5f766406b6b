//! Exact Artin-Schreier censuses, by coefficient extraction and by
//! enumeration.
//!
//! Local factor at a place of norm `N = |Q|`, in `T = q^{-s}`:
//! `Z_Q = 1 + sum_{d >= 1, p !| d} (N - 1) N^{d - 1 - floor((d-1)/p)} T^{deg(Q)(d+1)}`,
//! and for the ordinary subfamily `Z_{0,Q} = 1 + (N - 1) T^{2 deg(Q)}`.
//! Infinity, in the ramified family, contributes the factors of a degree-1
//! place.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::enumerate::AsEnumerator;
use crate::census::{ratio, CensusRow, CensusSource, CensusTable};
use crate::dirichlet::CoeffSeries;
use crate::error::{domain, guard, invariant, Result};
use crate::poly_fq::{count_irreducibles, prime_power, FieldSpec};

/// Largest `q^m` that [`census_enumerated`] will walk.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

fn family(include_infinity: bool) -> &'static str {
    if include_infinity {
        "artin-schreier-modified"
    } else {
        "artin-schreier"
    }
}

fn int(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

/// `Z_Q(T)` for one place of degree `deg` over `F_q`, truncated at `order`.
pub fn local_factor(q: u64, p: u32, deg: usize, order: usize) -> CoeffSeries {
    let norm = BigInt::from(q).pow(deg as u32);
    let p = p as usize;
    let mut coeffs = vec![BigRational::zero(); order + 1];
    coeffs[0] = int(BigInt::from(1));
    let mut d = 1;
    while deg * (d + 1) <= order {
        if d % p != 0 {
            let free = (d - 1) - (d - 1) / p;
            let c = (&norm - 1) * norm.pow(free as u32);
            coeffs[deg * (d + 1)] = int(c);
        }
        d += 1;
    }
    CoeffSeries::new(q, coeffs, order)
}

/// `Z_{0,Q}(T) = 1 + (|Q| - 1) T^{2 deg}`.
pub fn ordinary_local_factor(q: u64, deg: usize, order: usize) -> CoeffSeries {
    let norm = BigInt::from(q).pow(deg as u32);
    let mut s = CoeffSeries::one(q, order);
    if 2 * deg <= order {
        s = s
            .add(&CoeffSeries::monomial(q, int(norm - 1), 2 * deg, order))
            .expect("same q");
    }
    s
}

/// `prod_Q Z_Q` and `prod_Q Z_{0,Q}` to order `order`, grouping places by degree.
pub fn generating_series(
    q: u64,
    order: usize,
    include_infinity: bool,
) -> Result<(CoeffSeries, CoeffSeries)> {
    let (p, _) = prime_power(q).ok_or_else(|| crate::Error::Domain(format!("bad q = {q}")))?;
    let mut a = CoeffSeries::one(q, order);
    let mut b = CoeffSeries::one(q, order);
    for deg in 1..=order / 2 {
        let n = count_irreducibles(q, deg as u64);
        a = a.multiply(&local_factor(q, p, deg, order).pow_big(&n)?, order)?;
        b = b.multiply(&ordinary_local_factor(q, deg, order).pow_big(&n)?, order)?;
    }
    if include_infinity {
        a = a.multiply(&local_factor(q, p, 1, order), order)?;
        b = b.multiply(&ordinary_local_factor(q, 1, order), order)?;
    }
    Ok((a, b))
}

fn rows_from_series(a: &CoeffSeries, b: &CoeffSeries, m_max: u32) -> Result<Vec<CensusRow>> {
    let a = a.to_integers()?;
    let b = b.to_integers()?;
    (2..=m_max as usize)
        .map(|m| {
            let am = a[m].to_biguint();
            let bm = b[m].to_biguint();
            match (am, bm) {
                (Some(a), Some(b)) => Ok(CensusRow { m: m as u32, a, b }),
                _ => invariant(format!("negative census coefficient at m = {m}")),
            }
        })
        .collect()
}

/// Counts for `2 <= m <= m_max` from the Euler products.
pub fn census_analytic(q: u64, m_max: u32, include_infinity: bool) -> Result<CensusTable> {
    if m_max < 2 {
        return domain("census needs m_max >= 2");
    }
    let (p, _) = prime_power(q).ok_or_else(|| crate::Error::Domain(format!("bad q = {q}")))?;
    let (a, b) = generating_series(q, m_max as usize, include_infinity)?;
    CensusTable::new(
        family(include_infinity),
        q,
        p,
        CensusSource::Analytic,
        rows_from_series(&a, &b, m_max)?,
    )
}

/// Counts for `2 <= m <= m_max` by walking every cover and classifying it.
pub fn census_enumerated(
    field: &FieldSpec,
    m_max: u32,
    include_infinity: bool,
) -> Result<CensusTable> {
    if m_max < 2 {
        return domain("census needs m_max >= 2");
    }
    let requested = (field.q() as u128).checked_pow(m_max).unwrap_or(u128::MAX);
    guard("Artin-Schreier enumeration size q^m_max", requested, ENUMERATION_LIMIT)?;
    let e = AsEnumerator::new(field, m_max);
    let rows = (2..=m_max)
        .map(|m| {
            let shapes = e.shapes(m, include_infinity);
            let (a, b) = shapes
                .par_iter()
                .map(|s| {
                    let mut a = 0u64;
                    let mut b = 0u64;
                    for c in e.covers_of_shape(s) {
                        a += 1;
                        b += c.is_ordinary() as u64;
                    }
                    (a, b)
                })
                .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
            CensusRow {
                m,
                a: BigUint::from(a),
                b: BigUint::from(b),
            }
        })
        .collect();
    CensusTable::new(
        family(include_infinity),
        field.q() as u64,
        field.p(),
        CensusSource::Enumerated,
        rows,
    )
}

/// `sum_{m <= m_max} b(m) / sum_{m <= m_max} a(m)` from the analytic census.
pub fn empirical_probability(q: u64, m_max: u32, include_infinity: bool) -> Result<f64> {
    let t = census_analytic(q, m_max, include_infinity)?;
    let (b, a) = t.cumulative(m_max);
    if a.is_zero() {
        return domain("no covers up to m_max");
    }
    Ok(ratio(&b, &a))
}

/// Number of partitions of `m` into parts from `{2, 3, ..., p}`.
pub fn component_count(m: u32, p: u32) -> Result<BigUint> {
    if p < 2 {
        return domain("component count needs p >= 2");
    }
    let m = m as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::from(1u32);
    for part in 2..=p as usize {
        for total in part..=m {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    Ok(ways[m].clone())
}

/// `component_count(m, p) / m^{p-2}`.
pub fn component_growth_ratio(m: u32, p: u32) -> Result<f64> {
    let c = component_count(m, p)?.to_f64().unwrap_or(f64::INFINITY);
    Ok(c / (m as f64).powi(p as i32 - 2))
}
