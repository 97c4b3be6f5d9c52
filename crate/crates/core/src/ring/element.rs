//! Elements of Z[lambda_q] as reduced coefficient vectors.

use super::{MinimalPolynomial, RealInterval};
use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::sync::Arc;

/// An element of Z[lambda_q], stored as exactly `degree` integer
/// coefficients in the power basis 1, lambda, lambda^2, ...
///
/// The representation is always reduced modulo the minimal polynomial, so
/// two elements are equal as ring values if and only if their coefficient
/// vectors are equal.
#[derive(Clone)]
pub struct RingElement {
    poly: Arc<MinimalPolynomial>,
    coeffs: Vec<BigInt>,
}

/// Exact comparison key: the coefficient vector of a reduced element.
/// Ordering is lexicographic on the integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemKey(pub Box<[BigInt]>);

impl RingElement {
    pub fn zero(poly: &Arc<MinimalPolynomial>) -> Self {
        RingElement { poly: poly.clone(), coeffs: vec![BigInt::zero(); poly.degree()] }
    }

    pub fn one(poly: &Arc<MinimalPolynomial>) -> Self {
        Self::from_bigint(poly, BigInt::one())
    }

    pub fn from_int(poly: &Arc<MinimalPolynomial>, v: i64) -> Self {
        Self::from_bigint(poly, BigInt::from(v))
    }

    pub fn from_bigint(poly: &Arc<MinimalPolynomial>, v: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); poly.degree()];
        coeffs[0] = v;
        RingElement { poly: poly.clone(), coeffs }
    }

    /// Build an element from arbitrary-length power-basis coefficients,
    /// reducing modulo the minimal polynomial.
    pub fn from_coeffs(poly: &Arc<MinimalPolynomial>, coeffs: Vec<BigInt>) -> Self {
        let mut c = coeffs;
        Self::reduce(poly, &mut c);
        RingElement { poly: poly.clone(), coeffs: c }
    }

    fn reduce(poly: &Arc<MinimalPolynomial>, c: &mut Vec<BigInt>) {
        let d = poly.degree();
        let m = poly.coeffs();
        if c.len() > d {
            for i in (d..c.len()).rev() {
                let top = std::mem::replace(&mut c[i], BigInt::zero());
                if top.is_zero() {
                    continue;
                }
                // x^d = -(m_0 + m_1 x + ... + m_{d-1} x^{d-1})
                for k in 0..d {
                    let delta = &top * &m[k];
                    c[i - d + k] -= delta;
                }
            }
        }
        c.resize(d, BigInt::zero());
    }

    pub fn poly(&self) -> &Arc<MinimalPolynomial> {
        &self.poly
    }

    pub fn q(&self) -> u32 {
        self.poly.q()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn key(&self) -> ElemKey {
        ElemKey(self.coeffs.clone().into_boxed_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn check_same_ring(&self, other: &RingElement) -> Result<(), Error> {
        if self.poly.q() != other.poly.q() {
            return Err(Error::RingMismatch(self.poly.q(), other.poly.q()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, Error> {
        self.check_same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(RingElement { poly: self.poly.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, Error> {
        self.check_same_ring(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(RingElement { poly: self.poly.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, Error> {
        self.check_same_ring(other)?;
        let d = self.poly.degree();
        if d == 1 {
            return Ok(RingElement {
                poly: self.poly.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                prod[i + j] += a * b;
            }
        }
        Self::reduce(&self.poly, &mut prod);
        Ok(RingElement { poly: self.poly.clone(), coeffs: prod })
    }

    pub fn negate(&self) -> RingElement {
        RingElement {
            poly: self.poly.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        RingElement {
            poly: self.poly.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> RingElement {
        self.scale(&BigInt::from(k))
    }

    /// An interval of width at most 2^(-bits) containing the real value of
    /// this element under lambda_q -> 2cos(pi/q).
    pub fn embed(&self, bits: u32) -> RealInterval {
        let d = self.poly.degree();
        if d == 1 {
            // The ring is Z (lambda_3 = 1): values are exact integers.
            return RealInterval::point(BigRational::from_integer(self.coeffs[0].clone()), bits);
        }
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits.min(1_000_000) as usize);
        let mut lam_bits = bits + 4;
        loop {
            let (lo, hi) = self.poly.lambda_interval(lam_bits);
            let lam = RealInterval::new(lo, hi, lam_bits);
            let iv = RealInterval::eval_poly(&self.coeffs, &lam);
            if iv.width() <= target {
                return RealInterval::new(iv.lo().clone(), iv.hi().clone(), bits);
            }
            lam_bits = lam_bits.saturating_mul(2);
        }
    }

    /// Exact sign: 0 iff the element is zero; otherwise the embedding is
    /// refined until zero is excluded (guaranteed to terminate because a
    /// nonzero algebraic number is bounded away from zero).
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.poly.degree() == 1 {
            return if self.coeffs[0].is_positive() { 1 } else { -1 };
        }
        if let Some(s) = self.sign_f64_fast() {
            return s;
        }
        let mut bits = 16u32;
        loop {
            let iv = self.embed(bits);
            if let Some(s) = iv.definite_sign() {
                return s;
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Certified floating-point fast path for the sign. Horner evaluation
    /// at a 64-bit approximation of lambda, alongside a same-shape
    /// magnitude accumulator: the true error is below scale * 1e-12 by a
    /// wide margin (inputs convert with relative error 2^-53, lambda
    /// carries error 2^-64, and the polynomial has at most 8 terms), so a
    /// value outside that band has a certain sign. Returns None near zero
    /// or on overflow; callers fall back to exact interval refinement.
    fn sign_f64_fast(&self) -> Option<i32> {
        let lam = self.poly.lambda_f64();
        let mut acc = 0.0f64;
        let mut scale = 0.0f64;
        for c in self.coeffs.iter().rev() {
            let cf = c.to_f64()?;
            acc = acc * lam + cf;
            scale = scale * lam + cf.abs();
        }
        if !acc.is_finite() || !scale.is_finite() {
            return None;
        }
        let err = scale * 1e-12;
        if acc > err {
            Some(1)
        } else if acc < -err {
            Some(-1)
        } else {
            None
        }
    }

    pub fn is_positive_real(&self) -> bool {
        self.sign() > 0
    }

    /// The element with the same magnitude and nonnegative real value.
    pub fn abs_real(&self) -> RingElement {
        if self.sign() < 0 {
            self.negate()
        } else {
            self.clone()
        }
    }

    /// Exact comparison of the real value against a rational number.
    pub fn cmp_rational(&self, r: &BigRational) -> std::cmp::Ordering {
        // sign(self - a/b) = sign(b*self - a) for b > 0.
        let scaled = self.scale(r.denom());
        let diff = scaled.try_sub(&RingElement::from_bigint(&self.poly, r.numer().clone()))
            .expect("same ring by construction");
        match diff.sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Exact comparison of real values.
    pub fn cmp_real(&self, other: &RingElement) -> std::cmp::Ordering {
        let diff = self.try_sub(other).expect("mismatched rings in comparison");
        match diff.sign() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.embed(60).to_f64()
    }

    /// Cheap double-precision estimate (Horner at the cached lambda).
    /// Relative error is a few ulps of the coefficient magnitude scale;
    /// use only as a hint, never for decisions.
    pub(crate) fn approx_f64(&self) -> f64 {
        let lam = self.poly.lambda_f64();
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            match c.to_f64() {
                Some(cf) => acc = acc * lam + cf,
                None => return self.to_f64(),
            }
        }
        if acc.is_finite() {
            acc
        } else {
            self.to_f64()
        }
    }

    /// Total coefficient bit size; used for reduction step budgets.
    pub fn bit_size(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).sum::<u64>().max(1)
    }

    /// Canonical textual form "c0+c1*L+c2*L^2" (with '-' absorbed into the
    /// joining sign, e.g. "3-2*L"). Degree-1 rings print the plain integer.
    pub fn serial_string(&self) -> String {
        let mut out = self.coeffs[0].to_string();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_negative() {
                out.push('-');
            } else {
                out.push('+');
            }
            out.push_str(&c.magnitude().to_string());
            out.push_str("*L");
            if i >= 2 {
                out.push_str(&format!("^{i}"));
            }
        }
        out
    }

    /// Parse the canonical textual form. Missing powers are taken as zero;
    /// powers at or above the field degree are reduced.
    pub fn parse(poly: &Arc<MinimalPolynomial>, s: &str) -> Result<RingElement, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty ring element".into()));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let set = |idx: usize, v: BigInt, coeffs: &mut Vec<BigInt>| {
            if coeffs.len() <= idx {
                coeffs.resize(idx + 1, BigInt::zero());
            }
            coeffs[idx] += v;
        };
        // Split into signed terms.
        let bytes = s.as_bytes();
        let mut terms: Vec<&str> = Vec::new();
        let mut start = 0usize;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'+' && bytes[i - 1] != b'-' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("bad ring element {s:?}")));
            }
            let (coeff_str, power) = match term.find('*') {
                Some(p) => {
                    let tail = &term[p + 1..];
                    let power = if tail == "L" {
                        1usize
                    } else if let Some(e) = tail.strip_prefix("L^") {
                        e.parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad power in {term:?}")))?
                    } else {
                        return Err(Error::Parse(format!("bad term {term:?}")));
                    };
                    (&term[..p], power)
                }
                None => {
                    if term == "L" || term == "+L" || term == "-L" {
                        let sign = if term.starts_with('-') { -1i64 } else { 1 };
                        set(1, BigInt::from(sign), &mut coeffs);
                        continue;
                    }
                    (term, 0usize)
                }
            };
            let v: BigInt = coeff_str
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?;
            set(power, v, &mut coeffs);
        }
        Ok(RingElement::from_coeffs(poly, coeffs))
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.poly.q() == other.poly.q() && self.coeffs == other.coeffs
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement(q={}, {})", self.poly.q(), self.serial_string())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serial_string())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$inner(rhs).expect("ring elements from different q")
            }
        }
        impl std::ops::$trait for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$inner(&rhs).expect("ring elements from different q")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.negate()
    }
}

impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.negate()
    }
}
