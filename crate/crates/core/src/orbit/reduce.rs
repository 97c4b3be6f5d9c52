//! Slope reduction: drive a vector to the positive x-axis by alternating
//! the rotation S and shears T^(-j).
//!
//! For (x, y) with y != 0 the shear exponent j is chosen to minimize
//! |x - j lambda y|; since lambda_q < 2 this contracts the real size by a
//! factor of at least lambda/2 < 1 per round. Vectors in the H_q orbit of a
//! positive multiple of (1, 0) terminate at exactly (t, 0); other vectors
//! may contract forever, so the loop carries a step budget and reports
//! inconclusive when it runs out.

use super::{generators, Mat2, Vec2};
use crate::error::Error;
use crate::ring::RingElement;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Outcome of slope reduction.
#[derive(Clone, Debug)]
pub enum Reduction {
    /// h . v = (t, 0) with t > 0 in the real embedding; v lies in V_q if
    /// and only if t = 1.
    Reduced { t: RingElement, witness: Mat2 },
    /// The step budget ran out before the second coordinate vanished.
    Inconclusive { steps: u64 },
}

/// Nearest integer to the real ratio x / w, for w of nonzero real value.
/// The result is exact: an interval hint is corrected by exact descent on
/// (x - j w)^2.
fn nearest_shear_exponent(x: &RingElement, w: &RingElement) -> BigInt {
    let mut j = ratio_hint(x, w);
    let value = |j: &BigInt| {
        let r = x.try_sub(&w.scale(j)).expect("same ring");
        r.try_mul(&r).expect("same ring")
    };
    let mut cur = value(&j);
    loop {
        let up = value(&(&j + 1));
        if up.cmp_real(&cur) == std::cmp::Ordering::Less {
            j += 1;
            cur = up;
            continue;
        }
        let down = value(&(&j - 1));
        if down.cmp_real(&cur) == std::cmp::Ordering::Less {
            j -= 1;
            cur = down;
            continue;
        }
        return j;
    }
}

fn ratio_hint(x: &RingElement, w: &RingElement) -> BigInt {
    let r = x.approx_f64() / w.approx_f64();
    if r.is_finite() && r.abs() < 9.0e15 {
        return BigInt::from((r + 0.5).floor() as i64);
    }
    // Exact fallback for extreme magnitudes.
    let xm = x.embed(48).midpoint();
    let wm = w.embed(48).midpoint();
    if wm.is_zero() {
        return BigInt::zero();
    }
    let half = num_rational::BigRational::new(BigInt::one(), BigInt::from(2));
    (xm / wm + half).floor().to_integer()
}

/// Exact floor of the real ratio x / s for s of positive real value.
pub(crate) fn floor_ratio(x: &RingElement, s: &RingElement) -> BigInt {
    debug_assert!(s.sign() > 0, "floor_ratio needs a positive denominator");
    if x.poly().degree() == 1 {
        // Plain integers: exact floored division.
        return x.coeffs()[0].div_floor(&s.coeffs()[0]);
    }
    let mut k = {
        let r = x.approx_f64() / s.approx_f64();
        if r.is_finite() && r.abs() < 9.0e15 {
            BigInt::from(r.floor() as i64)
        } else {
            let xm = x.embed(48).midpoint();
            let sm = s.embed(48).midpoint();
            (xm / sm).floor().to_integer()
        }
    };
    loop {
        let rem = x.try_sub(&s.scale(&k)).expect("same ring");
        if rem.sign() < 0 {
            k -= 1;
            continue;
        }
        if rem.try_sub(s).expect("same ring").sign() >= 0 {
            k += 1;
            continue;
        }
        return k;
    }
}

/// Reduce v toward the positive x-axis. On success the witness h lies in
/// H_q with det h = 1 and h . v = (t, 0), t > 0.
pub fn reduce_vector(v: &Vec2) -> Result<Reduction, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let poly = v.poly();
    let (s, _) = generators(poly);
    let lam = poly.lambda();
    let mut x = v.x.clone();
    let mut y = v.y.clone();
    let mut h = Mat2::identity(poly);
    let budget = 64 * (v.x.bit_size() + v.y.bit_size());
    let mut steps: u64 = 0;
    loop {
        if y.is_zero() {
            if x.sign() < 0 {
                // S^2 = -I fixes the axis direction.
                h = h.negate();
                x = x.negate();
            }
            return Ok(Reduction::Reduced { t: x, witness: h });
        }
        if steps >= budget {
            return Ok(Reduction::Inconclusive { steps });
        }
        steps += 1;
        let w = lam.try_mul(&y).expect("same ring");
        let j = nearest_shear_exponent(&x, &w);
        if !j.is_zero() {
            // Left-multiply by T^(-j): row 1 -= j lambda * row 2.
            x = x.try_sub(&w.scale(&j)).expect("same ring");
            let jl = lam.scale(&j);
            h.a = h.a.try_sub(&jl.try_mul(&h.c).unwrap()).unwrap();
            h.b = h.b.try_sub(&jl.try_mul(&h.d).unwrap()).unwrap();
        }
        // Left-multiply by S: (x, y) -> (-y, x), rows (r1, r2) -> (-r2, r1).
        let new_x = y.negate();
        y = x;
        x = new_x;
        let (na, nb) = (h.c.negate(), h.d.negate());
        h.c = h.a.clone();
        h.d = h.b.clone();
        h.a = na;
        h.b = nb;
        let _ = s; // S itself is only needed implicitly through the row op
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::gen::witness_ok;
    use crate::ring::minimal_polynomial;
    use std::sync::Arc;

    fn iv(poly: &Arc<crate::ring::MinimalPolynomial>, x: i64, y: i64) -> Vec2 {
        Vec2::new(RingElement::from_int(poly, x), RingElement::from_int(poly, y))
    }

    #[test]
    fn zero_vector_is_rejected() {
        let p = minimal_polynomial(3).unwrap();
        assert!(matches!(reduce_vector(&iv(&p, 0, 0)), Err(Error::ZeroVector)));
    }

    #[test]
    fn q3_coprime_reduces_to_one() {
        let p = minimal_polynomial(3).unwrap();
        let v = iv(&p, 3, 5);
        match reduce_vector(&v).unwrap() {
            Reduction::Reduced { t, witness } => {
                assert!(t.is_one());
                assert_eq!(witness.mul_vec(&v), iv(&p, 1, 0));
                assert!(witness.det().is_one());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q3_gcd_two_reduces_to_two() {
        let p = minimal_polynomial(3).unwrap();
        match reduce_vector(&iv(&p, 2, 4)).unwrap() {
            Reduction::Reduced { t, .. } => assert_eq!(t, RingElement::from_int(&p, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn e1_reduces_with_identity_witness() {
        for q in [3u32, 5, 7] {
            let p = minimal_polynomial(q).unwrap();
            match reduce_vector(&iv(&p, 1, 0)).unwrap() {
                Reduction::Reduced { t, witness } => {
                    assert!(t.is_one());
                    assert_eq!(witness, Mat2::identity(&p));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn q5_one_one_is_not_visible() {
        // (1, 1) reduces to t = lambda - 1 < 1, so it is not in V_5.
        let p = minimal_polynomial(5).unwrap();
        match reduce_vector(&iv(&p, 1, 1)).unwrap() {
            Reduction::Reduced { t, witness } => {
                assert!(!t.is_one());
                assert!(t.sign() > 0);
                let expected = p.lambda().try_sub(&RingElement::one(&p)).unwrap();
                assert_eq!(t, expected);
                assert!(witness.det().is_one());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduction_agrees_with_membership_on_generated_sets() {
        for q in [3u32, 5] {
            let set = crate::orbit::generate_orbit(q, &num_rational::BigRational::from_integer(6.into())).unwrap();
            for v in set.iter_vectors() {
                match reduce_vector(&v).unwrap() {
                    Reduction::Reduced { t, witness } => {
                        assert!(t.is_one(), "q={q} {v:?} reduced to t={t}");
                        let g = witness.inverse_unimodular();
                        assert!(witness_ok(set.poly(), &v, &g));
                    }
                    Reduction::Inconclusive { .. } => panic!("q={q} {v:?} inconclusive"),
                }
            }
        }
    }

    #[test]
    fn floor_ratio_matches_integer_division() {
        let p = minimal_polynomial(3).unwrap();
        for (x, s, want) in [(7i64, 2i64, 3i64), (-7, 2, -4), (6, 3, 2), (0, 5, 0)] {
            let k = floor_ratio(&RingElement::from_int(&p, x), &RingElement::from_int(&p, s));
            assert_eq!(k, BigInt::from(want), "{x}/{s}");
        }
        let p5 = minimal_polynomial(5).unwrap();
        // floor(5 / lambda) with lambda ~ 1.618 is 3.
        let k = floor_ratio(&RingElement::from_int(&p5, 5), &p5.lambda());
        assert_eq!(k, BigInt::from(3));
    }
}
