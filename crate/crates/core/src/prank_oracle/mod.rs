//! Independent ordinarity check: count points, rebuild the L-polynomial,
//! read off the p-rank, and compare with the combinatorial criteria.

pub mod lpoly;
pub mod points;

use serde::Serialize;

pub use lpoly::{l_polynomial, p_rank, LPolynomial};
pub use points::{count_points_as, count_points_se, PointCounts, MAX_ORACLE_GENUS, MAX_ORACLE_SWEEP};

use crate::artin_schreier::ASCover;
use crate::error::{invariant, Result};
use crate::poly_fq::MAX_FIELD_SIZE;
use crate::superelliptic::SECover;

/// Either family, for [`cross_validate`].
#[derive(Clone, Debug)]
pub enum Cover {
    ArtinSchreier(ASCover),
    Superelliptic(SECover),
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub family: &'static str,
    pub cover: String,
    pub genus: u64,
    /// `N_1..N_{g+1}` (the last one only when `F_{q^{g+1}}` fits).
    pub counts: Vec<i64>,
    pub l_coefficients: Vec<i128>,
    pub p_rank: u64,
    pub ordinary_by_criterion: bool,
    pub a_number: Option<u64>,
    pub ordinary_by_point_count: bool,
    /// Whether `N_{g+1}` was counted (it needs `F_{q^{g+1}}` to fit).
    pub closure_checked: bool,
    /// Counts predicted by L equal the counted values.
    pub closure: bool,
    pub agree: bool,
}

impl CrossReport {
    /// Turns a disagreement into an invariant error carrying the cover.
    pub fn ensure_agree(&self) -> Result<&Self> {
        if self.agree {
            Ok(self)
        } else {
            invariant(format!(
                "oracle disagreement for {} cover {} (p-rank {}, genus {}, criterion {}, a-number {:?})",
                self.family, self.cover, self.p_rank, self.genus, self.ordinary_by_criterion, self.a_number
            ))
        }
    }
}

fn counts_up_to(
    q: u64,
    genus: u64,
    count: impl Fn(u32) -> Result<i64>,
) -> Result<(PointCounts, bool)> {
    let g = genus as u32;
    let extra = (q as u128).saturating_pow(g + 1) <= MAX_FIELD_SIZE as u128;
    let k_max = if extra { g + 1 } else { g };
    let counts = (1..=k_max).map(count).collect::<Result<Vec<_>>>()?;
    Ok((PointCounts::new(q, genus, counts)?, extra))
}

pub fn cross_validate(c: &Cover) -> Result<CrossReport> {
    let (family, cover, field, genus) = match c {
        Cover::ArtinSchreier(a) => ("artin-schreier", a.to_json(), a.field().clone(), a.genus()),
        Cover::Superelliptic(s) => ("superelliptic", s.to_json(), s.field().clone(), s.genus()?),
    };
    let q = field.q() as u64;
    points::check_oracle_size(q, genus)?;
    let (counts, extra) = counts_up_to(q, genus, |k| match c {
        Cover::ArtinSchreier(a) => count_points_as(a, k),
        Cover::Superelliptic(s) => count_points_se(s, k),
    })?;
    let l = l_polynomial(&counts)?;
    let predicted = l.predicted_counts(counts.counts.len());
    let closure = predicted == counts.counts;
    let rank = p_rank(&l, field.p())?;
    let by_points = rank == genus;
    let (criterion, a_number) = match c {
        Cover::ArtinSchreier(a) => (a.is_ordinary(), None),
        Cover::Superelliptic(s) => (s.is_ordinary()?, Some(s.a_number()?)),
    };
    let agree = closure
        && criterion == by_points
        && a_number.map_or(true, |a| (a == 0) == by_points);
    Ok(CrossReport {
        family,
        cover,
        genus,
        counts: counts.counts,
        l_coefficients: l.coeffs,
        p_rank: rank,
        ordinary_by_criterion: criterion,
        a_number,
        ordinary_by_point_count: by_points,
        closure_checked: extra,
        closure,
        agree,
    })
}
