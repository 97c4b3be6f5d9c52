//! Rational interval arithmetic for the real embedding of Z[lambda_q].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A closed interval with exact rational endpoints, tagged with the
/// precision (in bits) it was requested at.
#[derive(Debug, Clone, PartialEq)]
pub struct RealInterval {
    lo: BigRational,
    hi: BigRational,
    bits: u32,
}

impl RealInterval {
    pub fn new(lo: BigRational, hi: BigRational, bits: u32) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        RealInterval { lo, hi, bits }
    }

    pub fn point(v: BigRational, bits: u32) -> Self {
        RealInterval { lo: v.clone(), hi: v, bits }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// Requested precision: the width is at most 2^(-bits).
    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_interval(&self, other: &RealInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Sign of every point in the interval: Some(-1) or Some(1) when the
    /// interval is strictly one-signed, Some(0) for the point interval at
    /// zero, None when the interval straddles zero.
    pub fn definite_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) * BigRational::new(BigInt::one(), BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval { lo: -self.hi.clone(), hi: -self.lo.clone(), bits: self.bits }
    }

    pub fn add(&self, other: &RealInterval) -> RealInterval {
        RealInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            bits: self.bits.min(other.bits),
        }
    }

    pub fn mul(&self, other: &RealInterval) -> RealInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RealInterval { lo, hi, bits: self.bits.min(other.bits) }
    }

    /// Evaluate an integer polynomial (constant term first) over the
    /// interval by Horner's rule.
    pub(crate) fn eval_poly(coeffs: &[BigInt], x: &RealInterval) -> RealInterval {
        let mut acc = RealInterval::point(BigRational::zero(), x.bits);
        for c in coeffs.iter().rev() {
            let c_iv = RealInterval::point(BigRational::from_integer(c.clone()), x.bits);
            acc = acc.mul(x).add(&c_iv);
        }
        acc
    }
}
