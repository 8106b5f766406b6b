//! Partial fractions over `F_q`, grouped by place.
//!
//! `num/den = poly + sum_Q sum_{i=1}^{d_Q} r_{Q,i} / Q^i` with
//! `deg r_{Q,i} < deg Q` and `r_{Q,d_Q} != 0`. For a degree-1 place
//! `Q = x - a` the `r_{Q,i}` are constants, namely the coefficients of the
//! local part in the variable `1/(x - a)`.

use std::collections::BTreeMap;

use super::factor::factor;
use super::field::FieldSpec;
use super::irreducible::Place;
use super::poly::{MonicPoly, Poly};
use crate::error::{domain, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFraction {
    /// Per place, the numerators `r_1, ..., r_d` (index 0 holds `r_1`).
    pub parts: BTreeMap<Place, Vec<Poly>>,
    pub polynomial_part: Poly,
}

impl PartialFraction {
    /// Pole order `d_Q` at each place.
    pub fn pole_orders(&self) -> impl Iterator<Item = (&Place, usize)> {
        self.parts.iter().map(|(q, r)| (q, r.len()))
    }

    /// Recombines to `(numerator, denominator)` with denominator
    /// `prod Q^{d_Q}`.
    pub fn to_rational(&self, f: &FieldSpec) -> (Poly, MonicPoly) {
        let den = self
            .parts
            .iter()
            .fold(MonicPoly::one(), |acc, (q, r)| {
                acc.mul(&q.poly().pow(r.len() as u32, f), f)
            });
        let mut num = self.polynomial_part.mul(den.as_poly(), f);
        for (q, rs) in &self.parts {
            let qp = q.poly().as_poly();
            let d = rs.len() as u32;
            let cofactor = den
                .as_poly()
                .div_exact(&qp.pow(d, f), f)
                .expect("place power divides denominator");
            for (i, r) in rs.iter().enumerate() {
                // r / Q^{i+1} = r Q^{d-i-1} cofactor / den
                let term = r.mul(&qp.pow(d - 1 - i as u32, f), f).mul(&cofactor, f);
                num = num.add(&term, f);
            }
        }
        (num, den)
    }
}

/// Decomposes `num/den`. Errors unless `gcd(num, den) = 1`.
pub fn partial_fractions(num: &Poly, den: &MonicPoly, f: &FieldSpec) -> Result<PartialFraction> {
    if !num.gcd(den.as_poly(), f).is_one() {
        return domain(format!("numerator {num} and denominator {den} are not coprime"));
    }
    let (polynomial_part, rem) = num.divrem(den.as_poly(), f)?;
    let mut parts = BTreeMap::new();
    for (place, e) in factor(den, f) {
        let qp = place.poly().as_poly().clone();
        let pe = qp.pow(e, f);
        let cofactor = den.as_poly().div_exact(&pe, f)?;
        let (g, inv, _) = cofactor.xgcd(&pe, f);
        debug_assert!(g.is_one());
        let mut local = rem.mul(&inv, f).rem(&pe, f)?;
        // Q-adic digits c_0, c_1, ... of local; r_i = c_{e-i}.
        let mut digits = Vec::with_capacity(e as usize);
        for _ in 0..e {
            let (quot, digit) = local.divrem(&qp, f)?;
            digits.push(digit);
            local = quot;
        }
        digits.reverse();
        parts.insert(place, digits);
    }
    Ok(PartialFraction {
        parts,
        polynomial_part,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::from_q(2).unwrap()
    }

    #[test]
    fn two_simple_poles() {
        let f = f2();
        let den = MonicPoly::parse("0,1,1", &f).unwrap();
        let pf = partial_fractions(&Poly::one(), &den, &f).unwrap();
        assert!(pf.polynomial_part.is_zero());
        let got: Vec<_> = pf
            .parts
            .iter()
            .map(|(q, r)| (q.to_string(), r.iter().map(|p| p.to_text()).collect::<Vec<_>>()))
            .collect();
        assert_eq!(
            got,
            [("0,1".to_string(), vec!["1".to_string()]), ("1,1".into(), vec!["1".into()])]
        );
    }

    #[test]
    fn polynomial_part_split_off() {
        let f = f2();
        let num = Poly::parse("1,1", &f).unwrap();
        let den = MonicPoly::x();
        let pf = partial_fractions(&num, &den, &f).unwrap();
        assert!(pf.polynomial_part.is_one());
        assert_eq!(pf.parts.len(), 1);
        assert_eq!(pf.parts.values().next().unwrap(), &vec![Poly::one()]);
    }

    #[test]
    fn already_local() {
        let f = f2();
        let den = MonicPoly::parse("0,0,0,1", &f).unwrap();
        let pf = partial_fractions(&Poly::one(), &den, &f).unwrap();
        let r = pf.parts.values().next().unwrap();
        assert_eq!(r, &vec![Poly::zero(), Poly::zero(), Poly::one()]);
    }

    #[test]
    fn non_coprime_rejected() {
        let f = f2();
        let den = MonicPoly::parse("0,1,1", &f).unwrap();
        assert!(partial_fractions(&Poly::x(), &den, &f).is_err());
    }

    #[test]
    fn round_trip_higher_degree_place() {
        let f = FieldSpec::from_q(4).unwrap();
        let q2 = MonicPoly::parse("2,1,1", &f).unwrap();
        let den = q2.pow(3, &f).mul(&MonicPoly::parse("3,1", &f).unwrap(), &f);
        let num = Poly::parse("1,2,3,0,1,2,3,1,1,2", &f).unwrap();
        if num.gcd(den.as_poly(), &f).is_one() {
            let pf = partial_fractions(&num, &den, &f).unwrap();
            let (n2, d2) = pf.to_rational(&f);
            assert_eq!(num.mul(d2.as_poly(), &f), n2.mul(den.as_poly(), &f));
            for r in pf.parts.values() {
                assert!(!r.last().unwrap().is_zero());
            }
        }
    }
}
