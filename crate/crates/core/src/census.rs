//! Per-`m` census counts shared by both cover families.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invariant, Result};

/// Where a table's counts came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusSource {
    Analytic,
    Enumerated,
}

impl fmt::Display for CensusSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusSource::Analytic => "analytic",
            CensusSource::Enumerated => "enumerated",
        })
    }
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `a_m` covers of invariant `m`, `b_m` of them ordinary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub m: u32,
    #[serde(serialize_with = "as_decimal")]
    pub a: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub b: BigUint,
}

/// Exact counts indexed by `m`. Rows are sorted by `m` and contiguous.
/// Counts are serialized as decimal strings because they outgrow 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusTable {
    pub family: String,
    pub q: u64,
    /// Characteristic for Artin-Schreier tables, cover degree `n` for
    /// superelliptic ones.
    pub degree: u32,
    pub source: CensusSource,
    pub rows: Vec<CensusRow>,
}

impl CensusTable {
    pub fn new(
        family: impl Into<String>,
        q: u64,
        degree: u32,
        source: CensusSource,
        rows: Vec<CensusRow>,
    ) -> Result<Self> {
        for r in &rows {
            if r.b > r.a {
                return invariant(format!("row m={} has b > a", r.m));
            }
        }
        if rows.windows(2).any(|w| w[1].m != w[0].m + 1) {
            return invariant("census rows must be contiguous in m");
        }
        Ok(CensusTable {
            family: family.into(),
            q,
            degree,
            source,
            rows,
        })
    }

    pub fn row(&self, m: u32) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    /// `(sum_{m' <= m} b, sum_{m' <= m} a)` over the rows present.
    pub fn cumulative(&self, m: u32) -> (BigUint, BigUint) {
        let mut a = BigUint::zero();
        let mut b = BigUint::zero();
        for r in self.rows.iter().filter(|r| r.m <= m) {
            a += &r.a;
            b += &r.b;
        }
        (b, a)
    }

    /// `sum b / sum a` up to `m`; `None` while the denominator is zero.
    pub fn cumulative_ratio(&self, m: u32) -> Option<f64> {
        let (b, a) = self.cumulative(m);
        if a.is_zero() {
            return None;
        }
        Some(ratio(&b, &a))
    }

    /// Same counts, ignoring the provenance tag.
    pub fn same_counts(&self, other: &CensusTable) -> bool {
        self.q == other.q && self.degree == other.degree && self.rows == other.rows
    }
}

/// `b / a` as a float without overflowing on large integers.
pub fn ratio(b: &BigUint, a: &BigUint) -> f64 {
    let shift = a.bits().saturating_sub(60);
    let a_s = (a >> shift).to_f64().unwrap_or(f64::NAN);
    let b_s = (b >> shift).to_f64().unwrap_or(f64::NAN);
    b_s / a_s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(m: u32, a: u32, b: u32) -> CensusRow {
        CensusRow {
            m,
            a: a.into(),
            b: b.into(),
        }
    }

    #[test]
    fn rejects_b_above_a() {
        assert!(CensusTable::new("x", 2, 2, CensusSource::Analytic, vec![row(2, 1, 2)]).is_err());
    }

    #[test]
    fn ratios() {
        let t = CensusTable::new(
            "x",
            2,
            2,
            CensusSource::Analytic,
            vec![row(2, 2, 2), row(3, 0, 0), row(4, 8, 2)],
        )
        .unwrap();
        assert_eq!(t.cumulative_ratio(2), Some(1.0));
        assert_eq!(t.cumulative_ratio(4), Some(0.4));
        assert_eq!(t.cumulative_ratio(1), None);
    }

    #[test]
    fn big_ratio() {
        let a = BigUint::from(3u32).pow(200);
        let b = &a / 4u32;
        assert!((ratio(&b, &a) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn json_counts_are_strings() {
        let t = CensusTable::new("x", 2, 2, CensusSource::Enumerated, vec![row(2, 2, 1)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"a\":\"2\""));
        assert!(s.contains("\"source\":\"enumerated\""));
    }
}
