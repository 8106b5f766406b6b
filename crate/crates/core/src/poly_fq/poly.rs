//! Dense polynomials over `F_q` and the monic subtype.
//!
//! Text format for polynomials: comma-separated coefficient integers from
//! degree 0 upward, whitespace around items ignored. Each item is the
//! integer representation of a field element (so it must be `< q`). A monic
//! polynomial ends with an explicit `1`. Examples over `F_2`: `"0,1,1"` is
//! `x^2 + x`, `"1"` is the constant 1. The zero polynomial is written `"0"`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use super::field::{FieldElement, FieldSpec};
use crate::error::{domain, Error, Result};

/// A polynomial with no trailing zero coefficients. The zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElement::ONE)
    }

    pub fn x() -> Self {
        Poly {
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^deg`.
    pub fn monomial(c: FieldElement, deg: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Builds from coefficients low degree first, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElement::ONE
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: FieldElement, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division. Errors if `divisor` is zero.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> Result<(Poly, Poly)> {
        let Some(dd) = divisor.degree() else {
            return domain("division by the zero polynomial");
        };
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv_lead);
            quot[top - dd] = factor;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(factor, m));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldSpec) -> Result<Poly> {
        Ok(self.divrem(divisor, f)?.1)
    }

    /// Exact quotient; errors when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly, f: &FieldSpec) -> Result<Poly> {
        let (q, r) = self.divrem(divisor, f)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Invariant("inexact polynomial division".into()))
        }
    }

    /// Scales to leading coefficient 1. The zero polynomial stays zero.
    pub fn make_monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero lead");
        self.scale(inv, f)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(f)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly, f: &FieldSpec) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, f).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1, f), f);
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1, f), f);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead()).expect("nonzero lead");
        (r0.scale(inv, f), s0.scale(inv, f), t0.scale(inv, f))
    }

    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: FieldElement, f: &FieldSpec) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, e: &BigUint, modulus: &Poly, f: &FieldSpec) -> Result<Poly> {
        let mut base = self.rem(modulus, f)?;
        let mut acc = Poly::one().rem(modulus, f)?;
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base, f).rem(modulus, f)?;
            }
            if i + 1 < e.bits() {
                base = base.mul(&base, f).rem(modulus, f)?;
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32, f: &FieldSpec) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Parses the comma-separated text format.
    pub fn parse(s: &str, f: &FieldSpec) -> Result<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let coeffs = s
            .split(',')
            .map(|item| {
                let item = item.trim();
                let v: u32 = item
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {item:?}")))?;
                f.element(v)
                    .map_err(|_| Error::Parse(format!("coefficient {v} is not below q = {}", f.q())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.repr().to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.write_str(&self.to_text())
    }
}

/// A monic polynomial. The leading 1 is part of the stored coefficient
/// vector of the inner [`Poly`]; [`MonicPoly::low_coeffs`] omits it.
///
/// Ordering: by degree, then by the packed index `sum c_j q^j` of the
/// non-leading coefficients (equivalently, lexicographic from the top).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicPoly(Poly);

impl MonicPoly {
    pub fn new(p: Poly) -> Result<Self> {
        if p.is_monic() {
            Ok(MonicPoly(p))
        } else {
            domain(format!("polynomial {p} is not monic"))
        }
    }

    pub fn one() -> Self {
        MonicPoly(Poly::one())
    }

    pub fn x() -> Self {
        MonicPoly(Poly::x())
    }

    /// `x - a`.
    pub fn linear(a: FieldElement, f: &FieldSpec) -> Self {
        MonicPoly(Poly::from_coeffs(vec![f.neg(a), FieldElement::ONE]))
    }

    /// From the non-leading coefficients, low degree first.
    pub fn from_low_coeffs(mut low: Vec<FieldElement>) -> Self {
        low.push(FieldElement::ONE);
        MonicPoly(Poly { coeffs: low })
    }

    /// The polynomial of degree `d` with packed index `idx`.
    pub fn from_index(f: &FieldSpec, d: usize, mut idx: u128) -> Self {
        let q = f.q() as u128;
        let low = (0..d)
            .map(|_| {
                let c = (idx % q) as u32;
                idx /= q;
                f.element(c).expect("digit below q")
            })
            .collect();
        MonicPoly::from_low_coeffs(low)
    }

    pub fn index(&self, q: u32) -> u128 {
        self.low_coeffs()
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * q as u128 + c.repr() as u128)
    }

    pub fn degree(&self) -> usize {
        self.0.coeffs.len() - 1
    }

    pub fn low_coeffs(&self) -> &[FieldElement] {
        &self.0.coeffs[..self.0.coeffs.len() - 1]
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn into_poly(self) -> Poly {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &MonicPoly, f: &FieldSpec) -> MonicPoly {
        MonicPoly(self.0.mul(&other.0, f))
    }

    pub fn pow(&self, e: u32, f: &FieldSpec) -> MonicPoly {
        MonicPoly(self.0.pow(e, f))
    }

    pub fn gcd(&self, other: &MonicPoly, f: &FieldSpec) -> MonicPoly {
        MonicPoly(self.0.gcd(&other.0, f))
    }

    pub fn eval(&self, x: FieldElement, f: &FieldSpec) -> FieldElement {
        self.0.eval(x, f)
    }

    /// Parses the text format and requires a leading 1.
    pub fn parse(s: &str, f: &FieldSpec) -> Result<MonicPoly> {
        let p = Poly::parse(s, f)?;
        if !p.is_monic() {
            return Err(Error::Parse(format!(
                "{s:?} is not monic (the last coefficient must be 1)"
            )));
        }
        Ok(MonicPoly(p))
    }

    pub fn to_text(&self) -> String {
        self.0.to_text()
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.write_str(&self.to_text())
    }
}

impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            self.0
                .coeffs
                .iter()
                .rev()
                .cmp(other.0.coeffs.iter().rev())
        })
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Iterator over all monic polynomials of a fixed degree in packed-index
/// order: the constant coefficient varies fastest.
#[derive(Clone, Debug)]
pub struct MonicIter {
    field: FieldSpec,
    degree: usize,
    next: u128,
    end: u128,
}

impl Iterator for MonicIter {
    type Item = MonicPoly;

    fn next(&mut self) -> Option<MonicPoly> {
        if self.next >= self.end {
            return None;
        }
        let out = MonicPoly::from_index(&self.field, self.degree, self.next);
        self.next += 1;
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next).min(usize::MAX as u128) as usize;
        (n, Some(n))
    }
}

/// Number of monic polynomials of degree `d`, or `None` on `u128` overflow.
pub fn monic_count(q: u32, d: usize) -> Option<u128> {
    (q as u128).checked_pow(d as u32)
}

/// All `q^d` monic polynomials of degree `d`.
pub fn enumerate_monic(f: &FieldSpec, d: usize) -> MonicIter {
    let end = monic_count(f.q(), d).unwrap_or(u128::MAX);
    enumerate_monic_range(f, d, 0, end)
}

/// The slice `[start, end)` of [`enumerate_monic`] by packed index, for
/// splitting work across threads.
pub fn enumerate_monic_range(f: &FieldSpec, d: usize, start: u128, end: u128) -> MonicIter {
    MonicIter {
        field: f.clone(),
        degree: d,
        next: start,
        end,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldSpec {
        FieldSpec::from_q(q).unwrap()
    }

    #[test]
    fn enumerate_linear_over_f2() {
        let f2 = f(2);
        let all: Vec<String> = enumerate_monic(&f2, 1).map(|m| m.to_text()).collect();
        assert_eq!(all, ["0,1", "1,1"]);
    }

    #[test]
    fn enumerate_degree_zero() {
        let all: Vec<_> = enumerate_monic(&f(2), 0).collect();
        assert_eq!(all, vec![MonicPoly::one()]);
    }

    #[test]
    fn enumerate_counts_and_order() {
        let f3 = f(3);
        let all: Vec<_> = enumerate_monic(&f3, 2).collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, m) in all.iter().enumerate() {
            assert_eq!(m.index(3), i as u128);
        }
    }

    #[test]
    fn text_round_trip() {
        let f4 = f(4);
        let m = MonicPoly::parse(" 3, 0 ,2,1", &f4).unwrap();
        assert_eq!(m.degree(), 3);
        assert_eq!(m.to_text(), "3,0,2,1");
        assert!(MonicPoly::parse("1,2", &f4).is_err());
        assert!(MonicPoly::parse("4,1", &f4).is_err());
        assert!(MonicPoly::parse("a,1", &f4).is_err());
        assert_eq!(Poly::parse("0", &f4).unwrap(), Poly::zero());
    }

    #[test]
    fn division_identity() {
        let f3 = f(3);
        let a = Poly::parse("1,2,0,1,2", &f3).unwrap();
        let b = Poly::parse("2,0,1", &f3).unwrap();
        let (q, r) = a.divrem(&b, &f3).unwrap();
        assert_eq!(q.mul(&b, &f3).add(&r, &f3), a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert!(a.divrem(&Poly::zero(), &f3).is_err());
    }

    #[test]
    fn xgcd_bezout() {
        let f2 = f(2);
        let a = Poly::parse("1,1,0,1", &f2).unwrap();
        let b = Poly::parse("1,0,1", &f2).unwrap();
        let (g, s, t) = a.xgcd(&b, &f2);
        assert_eq!(s.mul(&a, &f2).add(&t.mul(&b, &f2), &f2), g);
        assert!(g.is_one());
    }

    #[test]
    fn derivative_vanishes_on_squares_in_char_two() {
        let f2 = f(2);
        let sq = Poly::parse("1,0,1", &f2).unwrap();
        assert!(sq.derivative(&f2).is_zero());
    }

    #[test]
    fn pow_mod_matches_repeated_product() {
        let f2 = f(2);
        let m = Poly::parse("1,1,0,1", &f2).unwrap();
        let x = Poly::x();
        let direct = x.pow(8, &f2).rem(&m, &f2).unwrap();
        assert_eq!(x.pow_mod(&BigUint::from(8u32), &m, &f2).unwrap(), direct);
    }
}
