//! Canonical normal form of a linearly independent pair under H_q.
//!
//! For visible v1, v2 with det(v1 v2) = n != 0, completing v1 to a group
//! element g and multiplying by g^(-1) puts the pair in the shape
//! [[1, l], [0, n]]; left shears T^(-j) then move l by exact multiples of
//! lambda_q n, so l reduces into the fundamental window [1, 1 + lambda|n|)
//! and the representative m is unique. The composite h = T^(-j) g^(-1)
//! stays in H_q and is returned as the witness.

use crate::orbit::{det2, floor_ratio, Mat2, OrbitSet, Vec2};
use crate::error::Error;
use crate::ring::RingElement;
use num_bigint::BigInt;

/// The normal form (n, m) of a pair, with the reducing group element.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    /// Determinant of the pair (preserved by the reduction).
    pub n: RingElement,
    /// Top-right entry of the normal form, in [1, 1 + lambda|n|).
    pub m: RingElement,
    /// h in H_q with h (v1 | v2) = [[1, m], [0, n]].
    pub witness: Mat2,
}

/// A group element with first column v: the witness stored at generation
/// time, or, for imported sets, one recovered by slope reduction.
pub fn complete_to_matrix(v: &Vec2, s: &OrbitSet) -> Result<Mat2, Error> {
    s.witness(v)
}

pub fn canonicalize_pair(v1: &Vec2, v2: &Vec2, s: &OrbitSet) -> Result<CanonicalPair, Error> {
    let n = det2(v1, v2);
    if n.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let poly = s.poly();
    let g = complete_to_matrix(v1, s)?;
    let gi = g.inverse_unimodular();
    // gi (v1 | v2) = [[1, l], [0, n]].
    let l = gi
        .a
        .try_mul(&v2.x)?
        .try_add(&gi.b.try_mul(&v2.y)?)?;
    let bottom = gi.c.try_mul(&v2.x)?.try_add(&gi.d.try_mul(&v2.y)?)?;
    if bottom != n {
        return Err(Error::Consistency(format!(
            "completion of ({}, {}) does not reproduce the determinant: {} vs {}",
            v1.x, v1.y, bottom, n
        )));
    }
    let lam = poly.lambda();
    let n_abs = n.abs_real();
    let step = lam.try_mul(&n_abs)?;
    let one = RingElement::one(poly);
    // Reduce l - 1 into [0, step) by k = floor((l - 1) / step); the shear
    // exponent is j = k * sign(n) because T^(-j) shifts l by -j lambda n.
    let x = l.try_sub(&one)?;
    let k = floor_ratio(&x, &step);
    let m = one.try_add(&x.try_sub(&step.scale(&k))?)?;
    let j = if n.sign() > 0 { k } else { -k };
    // h = T^(-j) g^(-1): row 1 of gi minus j lambda times row 2.
    let jl = lam.scale(&j);
    let witness = Mat2 {
        a: gi.a.try_sub(&jl.try_mul(&gi.c)?)?,
        b: gi.b.try_sub(&jl.try_mul(&gi.d)?)?,
        c: gi.c,
        d: gi.d,
    };
    // The contract is cheap to verify exactly; do it always.
    let w1 = witness.mul_vec(v1);
    let w2 = witness.mul_vec(v2);
    let ok = w1.x.is_one()
        && w1.y.is_zero()
        && w2.x == m
        && w2.y == n
        && witness.det().is_one();
    if !ok {
        return Err(Error::Consistency(format!(
            "canonicalization witness failed for ({}, {}), ({}, {})",
            v1.x, v1.y, v2.x, v2.y
        )));
    }
    Ok(CanonicalPair { n, m, witness })
}

/// Shift an element by integer multiples of lambda|n| into the fundamental
/// window [1, 1 + lambda|n|); returns the representative. Used to compare
/// first coordinates against canonical m values.
pub fn reduce_into_window(
    l: &RingElement,
    step: &RingElement,
) -> Result<(RingElement, BigInt), Error> {
    let one = RingElement::one(l.poly());
    let x = l.try_sub(&one)?;
    let k = floor_ratio(&x, step);
    let m = one.try_add(&x.try_sub(&step.scale(&k))?)?;
    Ok((m, k))
}
