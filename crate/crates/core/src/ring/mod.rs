//! Exact arithmetic in Z[lambda_q], lambda_q = 2cos(pi/q).
//!
//! Elements are integer coefficient vectors reduced modulo the minimal
//! polynomial of lambda_q, so equality of values is equality of coefficient
//! vectors. Comparisons against the real line go through certified interval
//! refinement of the real embedding; a nonzero element is bounded away from
//! zero, so sign determination always terminates.

mod element;
mod interval;
mod poly;

pub use element::{ElemKey, RingElement};
pub use interval::RealInterval;

use crate::error::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Arc, RwLock};

/// The monic minimal polynomial of lambda_q over Q, together with a cached
/// isolating interval for the real root lambda_q itself.
///
/// The polynomial is computed exactly from the cyclotomic polynomial of
/// order 2q: lambda_q = zeta + 1/zeta for zeta a primitive 2q-th root of
/// unity, and rewriting the palindromic cyclotomic polynomial in x = z + 1/z
/// yields a monic integer polynomial of degree phi(2q)/2 with lambda_q as
/// its largest real root.
#[derive(Debug)]
pub struct MinimalPolynomial {
    q: u32,
    coeffs: Vec<BigInt>,
    degree: usize,
    root: RwLock<(BigRational, BigRational)>,
    root_f64: std::sync::OnceLock<f64>,
}

/// Construct the minimal polynomial context for a given q >= 3.
pub fn minimal_polynomial(q: u32) -> Result<Arc<MinimalPolynomial>, Error> {
    if q < 3 {
        return Err(Error::InvalidQ(q));
    }
    let coeffs = poly::lambda_minimal_poly(q);
    let degree = coeffs.len() - 1;
    let root = if degree == 1 {
        // lambda is the rational number -c0 (equal to 1 for q = 3).
        let r = BigRational::from_integer(-coeffs[0].clone());
        (r.clone(), r)
    } else {
        poly::isolate_largest_root(&coeffs)
    };
    Ok(Arc::new(MinimalPolynomial {
        q,
        coeffs,
        degree,
        root: RwLock::new(root),
        root_f64: std::sync::OnceLock::new(),
    }))
}

impl MinimalPolynomial {
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Field degree d of lambda_q (1 for q = 3, 2 for q = 4, 5, 6, ...).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Monic coefficients, constant term first, length degree + 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_rational_lambda(&self) -> bool {
        self.degree == 1
    }

    /// An interval of width at most 2^(-bits) containing lambda_q.
    ///
    /// The cached isolating interval is refined monotonically, so repeated
    /// calls at the same precision are cheap.
    pub fn lambda_interval(&self, bits: u32) -> (BigRational, BigRational) {
        let width = BigRational::new(BigInt::one(), BigInt::one() << bits.min(1_000_000) as usize);
        {
            let r = self.root.read().expect("root cache poisoned");
            if &r.1 - &r.0 <= width {
                return r.clone();
            }
        }
        let mut w = self.root.write().expect("root cache poisoned");
        if &w.1 - &w.0 > width {
            let (mut lo, mut hi) = w.clone();
            poly::refine_root(&self.coeffs, &mut lo, &mut hi, &width);
            *w = (lo, hi);
        }
        w.clone()
    }

    /// lambda_q to double precision, from the 64-bit refined interval.
    pub fn lambda_f64(&self) -> f64 {
        *self.root_f64.get_or_init(|| {
            use num_traits::ToPrimitive;
            let (lo, hi) = self.lambda_interval(64);
            let mid = (&lo + &hi) * BigRational::new(BigInt::one(), BigInt::from(2));
            mid.to_f64().expect("lambda fits f64")
        })
    }

    /// lambda_q as an element of its own ring.
    pub fn lambda(self: &Arc<Self>) -> RingElement {
        if self.degree == 1 {
            RingElement::from_bigint(self, -self.coeffs[0].clone())
        } else {
            let mut c = vec![BigInt::zero(); self.degree];
            c[1] = BigInt::one();
            RingElement::from_coeffs(self, c)
        }
    }

    /// Evaluate the minimal polynomial over an interval (used by invariant
    /// checks: the result must straddle zero at every precision).
    pub fn eval_over(&self, iv: &RealInterval) -> RealInterval {
        RealInterval::eval_poly(&self.coeffs, iv)
    }
}

impl PartialEq for MinimalPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for MinimalPolynomial {}
