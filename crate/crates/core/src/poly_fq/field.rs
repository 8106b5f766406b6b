//! Small finite fields `F_q`, `q = p^k`, backed by log/antilog tables.
//!
//! An element is stored as an integer in `[0, q)` whose base-`p` digits are
//! its coordinates in the power basis `1, t, t^2, ...` of the defining
//! modulus. Digit `i` is the coefficient of `t^i`.
//!
//! The default modulus for `(p, k)` is the first irreducible monic
//! polynomial of degree `k` over `F_p` in packed order, where a polynomial
//! `t^k + c_{k-1} t^{k-1} + ... + c_0` packs to `sum c_i p^i`. For `q = 4`
//! this is `t^2 + t + 1`, for `q = 8` it is `t^3 + t + 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{domain, invariant, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 20;

/// An element of some `F_q`. Only meaningful together with its [`FieldSpec`].
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn repr(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus over F_p, low degree first, length k + 1.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field `F_q` together with its defining modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("k", &self.0.k)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Plain polynomial helpers over F_p on digit vectors, used only while the
// tables are being built.

fn digits_of(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    let mut d = vec![0; k as usize];
    for slot in d.iter_mut() {
        *slot = a % p;
        a /= p;
    }
    d
}

fn pack(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_mul(a: u32, b: u32, p: u32, modulus: &[u32]) -> u32 {
    let k = modulus.len() - 1;
    let da = digits_of(a, p, k as u32);
    let db = digits_of(b, p, k as u32);
    let mut prod = vec![0u64; 2 * k.max(1)];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p as u64 - c) * m as u64) % p as u64;
        }
    }
    let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
    pack(&low, p)
}

/// Remainder of `num` modulo the monic `den`, both over F_p, low degree first.
fn rem_fp(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if c != 0 {
            for (i, &m) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - c) * m % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Brute-force irreducibility over F_p by trial division with every monic
/// polynomial of degree at most `deg/2`.
fn irreducible_fp(modulus: &[u32], p: u32) -> bool {
    let n = modulus.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = digits_of(idx as u32, p, d as u32);
            div.push(1);
            if rem_fp(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// `F_q` for a prime power `q`, using the default modulus.
    pub fn from_q(q: u64) -> Result<Self> {
        match prime_power(q) {
            Some((p, k)) => Self::new(p, k),
            None => domain(format!("q = {q} is not a prime power")),
        }
    }

    /// `F_{p^k}` with the default modulus.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::check_size(p, k)?;
        let count = (p as u64).pow(k);
        let modulus = (0..count)
            .map(|idx| {
                let mut m = digits_of(idx as u32, p, k);
                m.push(1);
                m
            })
            .find(|m| irreducible_fp(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Self::build(p, k, modulus)
    }

    /// `F_{p^k}` with an explicit monic modulus (low degree first, including
    /// the leading 1). The modulus is checked for irreducibility.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return domain("modulus must have degree >= 1");
        }
        let k = (modulus.len() - 1) as u32;
        Self::check_size(p, k)?;
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return domain("modulus must be monic with coefficients in [0, p)");
        }
        if !irreducible_fp(&modulus, p) {
            return domain(format!("modulus {modulus:?} is reducible over F_{p}"));
        }
        Self::build(p, k, modulus)
    }

    fn check_size(p: u32, k: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return domain(format!("characteristic {p} is not prime"));
        }
        if k == 0 {
            return domain("extension degree must be >= 1");
        }
        match (p as u64).checked_pow(k) {
            Some(q) if q <= MAX_FIELD_SIZE as u64 => Ok(()),
            _ => domain(format!(
                "field size {p}^{k} exceeds the supported limit {MAX_FIELD_SIZE}"
            )),
        }
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(k);
        let order = q - 1;
        let factors = prime_factors(order);
        let slow_pow = |mut base: u32, mut e: u32| {
            let mut acc = 1;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base, p, &modulus);
                }
                base = slow_mul(base, base, p, &modulus);
                e >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, order / r) != 1))
            .ok_or_else(|| crate::Error::Invariant("no primitive element".into()))?;

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(cur, generator, p, &modulus);
        }
        if cur != 1 {
            return invariant("generator order mismatch while building tables");
        }
        Ok(FieldSpec(Arc::new(Inner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// The defining modulus over `F_p`, low degree first, leading 1 included.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The element with integer representation `repr`.
    pub fn element(&self, repr: u32) -> Result<FieldElement> {
        if repr < self.0.q {
            Ok(FieldElement(repr))
        } else {
            domain(format!("{repr} is not an element of F_{}", self.0.q))
        }
    }

    /// The image of the integer `c` in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.0.q - 1;
        let l = (self.0.log[a.0 as usize] as u64 + self.0.log[b.0 as usize] as u64) % order as u64;
        FieldElement(self.0.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return domain("inversion of zero");
        }
        let order = self.0.q - 1;
        let l = (order - self.0.log[a.0 as usize]) % order;
        Ok(FieldElement(self.0.exp[l as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.0.q - 1) as u64;
        let l = (self.0.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(self.0.exp[l as usize])
    }

    /// Absolute trace `sum_{i<k} a^{p^i}`, an element of the prime field.
    pub fn trace(&self, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.0.p as u64);
        }
        debug_assert!(acc.0 < self.0.p, "trace must land in the prime field");
        acc
    }

    /// `p`-th root, the inverse of Frobenius.
    pub fn pth_root(&self, a: FieldElement) -> FieldElement {
        self.pow(a, (self.0.q / self.0.p) as u64)
    }

    /// The field `F_{q^degree}` with an embedding of `self` into it.
    pub fn extension(&self, degree: u32) -> Result<Embedding> {
        if degree == 0 {
            return domain("extension degree must be >= 1");
        }
        let ext = if degree == 1 {
            self.clone()
        } else {
            FieldSpec::new(self.0.p, self.0.k * degree)?
        };
        // Image of the generator t: a root of our modulus inside ext.
        let root = ext
            .elements()
            .find(|&r| {
                let mut acc = FieldElement::ZERO;
                for &c in self.0.modulus.iter().rev() {
                    acc = ext.add(ext.mul(acc, r), ext.from_int(c as i64));
                }
                acc.is_zero()
            })
            .ok_or_else(|| crate::Error::Invariant("modulus has no root in extension".into()))?;
        let images = self
            .elements()
            .map(|a| {
                let digits = digits_of(a.0, self.0.p, self.0.k);
                let mut acc = FieldElement::ZERO;
                for &c in digits.iter().rev() {
                    acc = ext.add(ext.mul(acc, root), ext.from_int(c as i64));
                }
                acc
            })
            .collect();
        Ok(Embedding {
            base: self.clone(),
            ext,
            images,
        })
    }
}

/// A field embedding `F_q -> F_{q^d}`.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: FieldSpec,
    ext: FieldSpec,
    images: Vec<FieldElement>,
}

impl Embedding {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn ext(&self) -> &FieldSpec {
        &self.ext
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.images[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_addition() {
        let f = FieldSpec::from_q(2).unwrap();
        assert_eq!(f.add(FieldElement::ONE, FieldElement::ONE), FieldElement::ZERO);
    }

    #[test]
    fn f4_default_modulus_and_product() {
        let f = FieldSpec::from_q(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.element(2).unwrap();
        // t^2 = t + 1 modulo t^2 + t + 1
        assert_eq!(f.mul(t, t), f.element(3).unwrap());
    }

    #[test]
    fn f8_default_modulus() {
        let f = FieldSpec::from_q(8).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn trace_in_prime_field() {
        let f = FieldSpec::from_q(2).unwrap();
        assert_eq!(f.trace(FieldElement::ONE), FieldElement::ONE);
        let f16 = FieldSpec::from_q(16).unwrap();
        let mut ones = 0;
        for a in f16.elements() {
            let t = f16.trace(a);
            assert!(t.repr() < 2);
            ones += t.repr();
        }
        assert_eq!(ones, 8);
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = FieldSpec::from_q(9).unwrap();
        assert!(f.inv(FieldElement::ZERO).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27] {
            let f = FieldSpec::from_q(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 21).is_err());
        assert!(FieldSpec::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::from_q(6).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f4 = FieldSpec::from_q(4).unwrap();
        let emb = f4.extension(3).unwrap();
        assert_eq!(emb.ext().q(), 64);
        let e = emb.ext();
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(emb.map(f4.add(a, b)), e.add(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(f4.mul(a, b)), e.mul(emb.map(a), emb.map(b)));
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
