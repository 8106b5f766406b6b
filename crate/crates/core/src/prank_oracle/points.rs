//! Point counts on the smooth projective models of both families.
//!
//! Affine points are counted by sweeping `x` over `F_{q^k}`; the fibres over
//! branch points and over infinity follow from total ramification and from
//! the value of the leading coefficient.

use rayon::prelude::*;
use serde::Serialize;

use crate::artin_schreier::ASCover;
use crate::error::{domain, guard, invariant, Result};
use crate::poly_fq::{FieldElement, FieldSpec, Poly};
use crate::superelliptic::SECover;

/// Largest genus the oracle accepts.
pub const MAX_ORACLE_GENUS: u64 = 6;
/// Largest `q^genus` the oracle accepts.
pub const MAX_ORACLE_SWEEP: u128 = 1 << 24;

/// `N_1, ..., N_r` over `F_q, ..., F_{q^r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCounts {
    pub q: u64,
    pub genus: u64,
    pub counts: Vec<i64>,
}

impl PointCounts {
    /// Checks the Weil bound `|N_k - q^k - 1| <= 2g q^{k/2}` for every entry.
    pub fn new(q: u64, genus: u64, counts: Vec<i64>) -> Result<Self> {
        for (i, &n) in counts.iter().enumerate() {
            let k = i as u32 + 1;
            let qk = (q as i128).pow(k);
            let dev = n as i128 - qk - 1;
            if dev * dev > 4 * (genus as i128).pow(2) * qk {
                return invariant(format!(
                    "Weil bound violated: N_{k} = {n} over F_{q}^{k} with genus {genus}"
                ));
            }
        }
        Ok(PointCounts { q, genus, counts })
    }
}

pub(crate) fn check_oracle_size(q: u64, genus: u64) -> Result<()> {
    guard("oracle genus", genus as u128, MAX_ORACLE_GENUS as u128)?;
    guard(
        "oracle sweep size q^genus",
        (q as u128).saturating_pow(genus as u32),
        MAX_ORACLE_SWEEP,
    )
}

fn lift(p: &Poly, emb: &crate::poly_fq::Embedding) -> Poly {
    Poly::from_coeffs(p.coeffs().iter().map(|&c| emb.map(c)).collect())
}

fn sweep<F>(ext: &FieldSpec, per_x: F) -> i64
where
    F: Fn(FieldElement) -> i64 + Sync,
{
    let q = ext.q();
    (0..q)
        .into_par_iter()
        .with_min_len(1024)
        .map(|r| per_x(ext.element(r).expect("below q")))
        .sum()
}

/// Points of `y^p - y = f(x)` over `F_{q^k}`.
pub fn count_points_as(c: &ASCover, k: u32) -> Result<i64> {
    let f = c.field();
    check_oracle_size(f.q() as u64, c.genus())?;
    if k == 0 || k as u64 > c.genus() + 1 {
        return domain(format!("extension degree {k} outside 1..=genus+1"));
    }
    let emb = f.extension(k)?;
    let ext = emb.ext().clone();
    let (num, den) = c.rational_function();
    let (num, den) = (lift(&num, &emb), lift(&den, &emb));
    let p = f.p() as i64;
    let affine = sweep(&ext, |x| {
        let d = den.eval(x, &ext);
        if d.is_zero() {
            // a pole: one totally ramified point
            return 1;
        }
        let v = ext.div(num.eval(x, &ext), d).expect("nonzero");
        if ext.trace(v).is_zero() {
            p
        } else {
            0
        }
    });
    let infinity = if c.infinity().is_some() { 1 } else { p };
    Ok(affine + infinity)
}

/// Points of `y^n = prod f_i^i` over `F_{q^k}`.
pub fn count_points_se(c: &SECover, k: u32) -> Result<i64> {
    let f = c.field();
    let genus = c.genus()?;
    check_oracle_size(f.q() as u64, genus)?;
    if k == 0 || k as u64 > genus + 1 {
        return domain(format!("extension degree {k} outside 1..=genus+1"));
    }
    let emb = f.extension(k)?;
    let ext = emb.ext().clone();
    let poly = lift(c.f().as_poly(), &emb);
    let n = c.n() as u64;
    let order = ext.q() as u64 - 1;
    let splits = order % n == 0;
    let affine = sweep(&ext, |x| {
        let v = poly.eval(x, &ext);
        if v.is_zero() || !splits {
            1
        } else if ext.pow(v, order / n) == FieldElement::ONE {
            n as i64
        } else {
            0
        }
    });
    let infinity = if c.epsilon() == 1 || !splits { 1 } else { n as i64 };
    Ok(affine + infinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin_schreier::ASCoverFile;
    use crate::poly_fq::MonicPoly;

    fn as_cover(json: &str) -> ASCover {
        serde_json::from_str::<ASCoverFile>(json).unwrap().into_cover().unwrap()
    }

    #[test]
    fn as_hand_counts() {
        let c = as_cover(r#"{"q":2,"p":2,"branch":[{"place":"0,1","local":[1]},{"place":"1,1","local":[1]}]}"#);
        assert_eq!(count_points_as(&c, 1).unwrap(), 4);
        let c = as_cover(r#"{"q":2,"p":2,"branch":[{"place":"0,1","local":[0,0,1]}]}"#);
        assert_eq!(count_points_as(&c, 1).unwrap(), 3);
        let c = as_cover(r#"{"q":2,"p":2,"branch":[{"place":"0,1","local":[1]}]}"#);
        assert_eq!(c.genus(), 0);
        assert_eq!(count_points_as(&c, 1).unwrap(), 3);
    }

    #[test]
    fn se_genus_zero_is_rational() {
        let f2 = FieldSpec::from_q(2).unwrap();
        let x = MonicPoly::parse("0,1", &f2).unwrap();
        let c = SECover::new(f2, 3, vec![x, MonicPoly::one()]).unwrap();
        assert_eq!(c.genus().unwrap(), 0);
        assert_eq!(count_points_se(&c, 1).unwrap(), 3);
    }

    #[test]
    fn se_fibres_split_when_n_divides() {
        let f4 = FieldSpec::from_q(4).unwrap();
        let x = MonicPoly::parse("0,1", &f4).unwrap();
        let x1 = MonicPoly::parse("1,1", &f4).unwrap();
        let c = SECover::new(f4, 3, vec![x, x1]).unwrap();
        // Affine non-branch fibres have 0 or 3 points; two branch points, 3 at infinity.
        let n1 = count_points_se(&c, 1).unwrap();
        assert_eq!((n1 - 2 - 3) % 3, 0);
    }

    #[test]
    fn weil_bound_is_enforced() {
        assert!(PointCounts::new(2, 1, vec![3, 5]).is_ok());
        assert!(PointCounts::new(2, 1, vec![7]).is_err());
        assert!(PointCounts::new(2, 0, vec![4]).is_err());
    }

    #[test]
    fn guard_rejects_large_genus() {
        let f2 = FieldSpec::from_q(2).unwrap();
        let parts: Vec<MonicPoly> = ["1,1,1", "0,1"]
            .iter()
            .map(|s| MonicPoly::parse(s, &f2).unwrap())
            .collect();
        let c = SECover::new(f2.clone(), 3, parts).unwrap();
        assert!(count_points_se(&c, 1).is_ok());
        let c = as_cover(r#"{"q":2,"p":2,"branch":[{"place":"0,1","local":[1,0,1,0,1,0,1,0,1,0,1,0,1,0,1]}]}"#);
        assert!(matches!(count_points_as(&c, 1), Err(crate::Error::Resource { .. })));
    }
}
