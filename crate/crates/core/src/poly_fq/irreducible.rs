//! Places of `F_q(x)` away from infinity: monic irreducible polynomials.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::field::FieldSpec;
use super::poly::{enumerate_monic, MonicPoly, Poly};
use crate::error::{domain, Result};

/// A monic irreducible polynomial `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place(MonicPoly);

impl Place {
    /// Checks irreducibility.
    pub fn new(poly: MonicPoly, f: &FieldSpec) -> Result<Place> {
        if is_irreducible(&poly, f) {
            Ok(Place(poly))
        } else {
            domain(format!("{poly} is not irreducible over F_{}", f.q()))
        }
    }

    pub(crate) fn new_unchecked(poly: MonicPoly) -> Place {
        Place(poly)
    }

    pub fn poly(&self) -> &MonicPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    /// `|Q| = q^deg Q`.
    pub fn norm(&self, q: u32) -> u128 {
        (q as u128).pow(self.degree() as u32)
    }

    pub fn parse(s: &str, f: &FieldSpec) -> Result<Place> {
        Place::new(MonicPoly::parse(s, f)?, f)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(fmt)
    }
}

/// Ben-Or test: `f` of degree `n` is irreducible iff
/// `gcd(x^{q^i} - x, f) = 1` for every `1 <= i <= n/2`.
pub fn is_irreducible(m: &MonicPoly, f: &FieldSpec) -> bool {
    let n = m.degree();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let modulus = m.as_poly();
    let q = BigUint::from(f.q());
    let x = Poly::x();
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = h.pow_mod(&q, modulus, f).expect("monic modulus");
        let g = h.sub(&x, f).gcd(modulus, f);
        if !g.is_one() {
            return false;
        }
    }
    true
}

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d >= 1` over `F_q`,
/// `(1/d) sum_{e | d} mu(e) q^{d/e}`. Zero for `d = 0`.
pub fn count_irreducibles(q: u64, d: u64) -> BigUint {
    if d == 0 {
        return BigUint::zero();
    }
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for e in (1..=d).filter(|e| d % e == 0) {
        let mu = mobius(e);
        if mu != 0 {
            total += qb.pow((d / e) as u32) * mu;
        }
    }
    debug_assert!(!total.is_negative());
    let total = total.to_biguint().expect("necklace count is non-negative");
    debug_assert!((&total % d).is_zero());
    total / d
}

/// [`count_irreducibles`] as a `u128`, if it fits.
pub fn count_irreducibles_u128(q: u64, d: u64) -> Option<u128> {
    count_irreducibles(q, d).to_u128()
}

/// All places of degree `d`, in polynomial order.
pub fn places_of_degree(f: &FieldSpec, d: usize) -> Vec<Place> {
    if d == 1 {
        return enumerate_monic(f, 1).map(Place::new_unchecked).collect();
    }
    enumerate_monic(f, d)
        .filter(|m| is_irreducible(m, f))
        .map(Place::new_unchecked)
        .collect()
}

/// All places of degree `1..=d_max`, grouped by degree; index 0 is empty.
pub fn places_up_to(f: &FieldSpec, d_max: usize) -> Vec<Vec<Place>> {
    let mut out = vec![Vec::new()];
    out.extend((1..=d_max).map(|d| places_of_degree(f, d)));
    out
}
