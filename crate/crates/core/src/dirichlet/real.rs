//! Fixed-precision binary floating point wrapper (128-bit mantissa).

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;

/// Working precision in bits.
pub const PRECISION: usize = 128;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

#[derive(Clone, Debug)]
pub struct Real(BigFloat);

impl Real {
    pub fn zero() -> Real {
        Real::from_u64(0)
    }

    pub fn one() -> Real {
        Real::from_u64(1)
    }

    pub fn from_u64(v: u64) -> Real {
        Real(BigFloat::from_u64(v, PRECISION))
    }

    pub fn from_i64(v: i64) -> Real {
        Real(BigFloat::from_i64(v, PRECISION))
    }

    pub fn from_f64(v: f64) -> Real {
        Real(BigFloat::from_f64(v, PRECISION))
    }

    pub fn from_biguint(v: &BigUint) -> Real {
        let base = BigFloat::from_u128(1u128 << 64, PRECISION);
        let mut acc = BigFloat::from_u64(0, PRECISION);
        for limb in v.to_u64_digits().iter().rev() {
            acc = acc
                .mul(&base, PRECISION, RM)
                .add(&BigFloat::from_u64(*limb, PRECISION), PRECISION, RM);
        }
        Real(acc)
    }

    pub fn from_bigint(v: &BigInt) -> Real {
        let mag = Real::from_biguint(v.magnitude());
        if v.sign() == Sign::Minus {
            mag.neg()
        } else {
            mag
        }
    }

    pub fn from_ratio(r: &BigRational) -> Real {
        Real::from_bigint(r.numer()).div(&Real::from_bigint(r.denom()))
    }

    pub fn add(&self, o: &Real) -> Real {
        Real(self.0.add(&o.0, PRECISION, RM))
    }

    pub fn sub(&self, o: &Real) -> Real {
        Real(self.0.sub(&o.0, PRECISION, RM))
    }

    pub fn mul(&self, o: &Real) -> Real {
        Real(self.0.mul(&o.0, PRECISION, RM))
    }

    pub fn div(&self, o: &Real) -> Real {
        Real(self.0.div(&o.0, PRECISION, RM))
    }

    pub fn neg(&self) -> Real {
        Real(self.0.neg())
    }

    pub fn powi(&self, n: usize) -> Real {
        Real(self.0.powi(n, PRECISION, RM))
    }

    pub fn ln(&self) -> Real {
        CONSTS.with(|cc| Real(self.0.ln(PRECISION, RM, &mut cc.borrow_mut())))
    }

    pub fn exp(&self) -> Real {
        CONSTS.with(|cc| Real(self.0.exp(PRECISION, RM, &mut cc.borrow_mut())))
    }

    /// `self^e` for real `e`, `self > 0`.
    pub fn powf(&self, e: &Real) -> Real {
        self.ln().mul(e).exp()
    }

    pub fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_zero() {
            return 0.0;
        }
        self.0.to_string().parse().unwrap_or(f64::NAN)
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_f64() {
        for v in [0.0, 1.0, -2.5, 0.314148, 1e-30, 12345.678] {
            assert!((Real::from_f64(v).to_f64() - v).abs() <= v.abs() * 1e-15);
        }
    }

    #[test]
    fn big_integers() {
        let v = BigUint::from(3u32).pow(100);
        let r = Real::from_biguint(&v);
        let expect = 100.0 * 3f64.ln();
        assert!((r.ln().to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn exp_ln_inverse() {
        let x = Real::from_f64(0.75);
        assert!((x.ln().exp().to_f64() - 0.75).abs() < 1e-15);
        assert!(Real::from_u64(2) > Real::one());
    }
}
