//! Farey fan expansion of V_q inside a disk.

use super::{generators, Mat2, OrbitSet, Vec2, VecKey};
use crate::error::Error;
use crate::ring::RingElement;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug)]
pub struct GenOptions {
    /// Store a witness matrix per element. Disable for very large q = 3
    /// sweeps where witnesses can be recovered by reduction on demand.
    pub store_witnesses: bool,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions { store_witnesses: true }
    }
}

/// The q - 2 fan vectors inserted between the adjacent pair (u, v):
/// a_i = lambda_q a_{i-1} - a_{i-2} for i = 2, ..., q-1, seeded with
/// a_1 = u and a_0 = -v.
///
/// For u, v in the closed first quadrant every returned vector is a
/// nonnegative combination of u and v and dominates both componentwise.
pub fn farey_fan(u: &Vec2, v: &Vec2) -> Vec<Vec2> {
    assert_eq!(u.q(), v.q(), "fan endpoints from different rings");
    let poly = u.poly();
    let lam = poly.lambda();
    let q = poly.q();
    let mut prev = v.negate(); // a_0
    let mut cur = u.clone(); // a_1
    let mut out = Vec::with_capacity(q as usize - 2);
    for _ in 2..q {
        let next = cur.scale_elem(&lam).add(&prev.negate());
        out.push(next.clone());
        prev = cur;
        cur = next;
    }
    out
}

fn norm_within(v: &Vec2, r_sq: &BigRational) -> bool {
    v.norm_sq().cmp_rational(r_sq) != Ordering::Greater
}

/// A pair subtree can contain vectors of norm <= R only if one of the two
/// extreme fan vectors lambda*u + v or u + lambda*v does: every vector
/// inserted below the pair dominates one of them componentwise.
fn expandable(u: &Vec2, v: &Vec2, lam: &RingElement, r_sq: &BigRational) -> bool {
    let f1 = u.scale_elem(lam).add(v);
    if norm_within(&f1, r_sq) {
        return true;
    }
    let f2 = u.add(&v.scale_elem(lam));
    norm_within(&f2, r_sq)
}

/// Generate V_q intersected with the closed ball of the given radius.
pub fn generate_orbit(q: u32, radius: &BigRational) -> Result<OrbitSet, Error> {
    generate_orbit_with(q, radius, GenOptions::default())
}

pub fn generate_orbit_with(
    q: u32,
    radius: &BigRational,
    opts: GenOptions,
) -> Result<OrbitSet, Error> {
    let poly = crate::ring::minimal_polynomial(q)?;
    if radius < &BigRational::one() {
        return Err(Error::EmptyInterior(radius.to_string()));
    }
    let r_sq = radius * radius;
    let (s, t) = generators(&poly);
    let st = s.mul(&t);
    let lam = poly.lambda();

    // Open-first-quadrant vectors with their witness matrices, in discovery
    // order. An adjacent pair (u, v) with det(u v) = 1 is tracked as the
    // matrix [u | v] in H_q; its fan children are G T (S T)^(i-1).
    let mut found: Vec<(Vec2, Mat2)> = Vec::new();
    let mut stack: Vec<Mat2> = vec![Mat2::identity(&poly)];
    while let Some(g) = stack.pop() {
        let mut child = g.mul(&t);
        for i in 1..q {
            if i >= 2 {
                let w = child.col1();
                if norm_within(&w, &r_sq) {
                    found.push((w, child.clone()));
                }
            }
            if expandable(&child.col1(), &child.col2(), &lam, &r_sq) {
                stack.push(child.clone());
            }
            if i < q - 1 {
                child = child.mul(&st);
            }
        }
    }

    let mut elements: BTreeMap<VecKey, Option<Mat2>> = BTreeMap::new();
    let keep = |g: Mat2| if opts.store_witnesses { Some(g) } else { None };

    // Axis vectors: witnesses I, S, S^2 = -I, S^3 = -S.
    let ident = Mat2::identity(&poly);
    let minus_i = s.mul(&s);
    let minus_s = minus_i.mul(&s);
    for (m, _) in [(&ident, 0), (&s, 1), (&minus_i, 2), (&minus_s, 3)] {
        elements.insert(m.col1().key(), keep(m.clone()));
    }

    // 4-fold symmetry: (a, b), (-a, -b) via S^2 g, and (a, -b), (-a, b)
    // via conjugation by diag(1, -1), which normalizes H_q.
    for (v, g) in found {
        let gf = g.flip_conj();
        let gn = g.negate();
        let gfn = gf.negate();
        elements.entry(v.key()).or_insert_with(|| keep(g));
        elements.entry(v.negate().key()).or_insert_with(|| keep(gn));
        elements.entry(v.flip_y().key()).or_insert_with(|| keep(gf.clone()));
        elements
            .entry(v.flip_y().negate().key())
            .or_insert_with(|| keep(gfn));
    }

    Ok(OrbitSet::from_parts(poly, radius.clone(), elements))
}

/// Test helper: check that a witness has determinant one and first column
/// equal to the vector.
#[cfg(test)]
pub(crate) fn witness_ok(
    poly: &std::sync::Arc<crate::ring::MinimalPolynomial>,
    v: &Vec2,
    g: &Mat2,
) -> bool {
    g.det() == crate::ring::RingElement::one(poly) && g.col1() == *v
}
