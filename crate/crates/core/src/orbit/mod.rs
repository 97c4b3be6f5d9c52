//! Orbit generation for V_q = H_q . (1,0)^T inside a disk.
//!
//! Vectors are produced in the open first quadrant by the generalized Farey
//! fan: between an adjacent pair (u, v) the recurrence
//! a_i = lambda_q a_{i-1} - a_{i-2}, seeded with a_1 = u and a_0 = -v,
//! inserts q-2 new vectors, and the construction recurses between each new
//! adjacent pair. The axis vectors are added explicitly and the rest of the
//! orbit follows from the 4-fold symmetry (a,b) -> (+-a, +-b).
//!
//! Every generated vector carries a witness matrix in H_q whose first
//! column is the vector: adjacent pairs are tracked as matrices, the
//! children of a pair matrix G being G T (S T)^(i-1), all of which stay in
//! the group.

mod gen;
mod io;
mod reduce;

pub use gen::{farey_fan, generate_orbit, generate_orbit_with, GenOptions};
pub use io::{parse_radius, read_orbit, write_orbit};
pub use reduce::{reduce_vector, Reduction};

pub(crate) use reduce::floor_ratio;

use crate::error::Error;
use crate::ring::{ElemKey, MinimalPolynomial, RealInterval, RingElement};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

/// A planar vector with coordinates in Z[lambda_q].
#[derive(Clone, PartialEq, Eq)]
pub struct Vec2 {
    pub x: RingElement,
    pub y: RingElement,
}

/// Exact lookup key for a vector: the coefficient tuples of (x, y).
/// Ordering is lexicographic, x-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VecKey(pub ElemKey, pub ElemKey);

impl Vec2 {
    pub fn new(x: RingElement, y: RingElement) -> Self {
        debug_assert_eq!(x.q(), y.q(), "vector components from different rings");
        Vec2 { x, y }
    }

    pub fn q(&self) -> u32 {
        self.x.q()
    }

    pub fn poly(&self) -> &Arc<MinimalPolynomial> {
        self.x.poly()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn key(&self) -> VecKey {
        VecKey(self.x.key(), self.y.key())
    }

    /// Exact squared Euclidean norm x^2 + y^2 as a ring element.
    pub fn norm_sq(&self) -> RingElement {
        let xx = self.x.try_mul(&self.x).expect("same ring");
        let yy = self.y.try_mul(&self.y).expect("same ring");
        xx.try_add(&yy).expect("same ring")
    }

    /// Interval enclosure of the real squared norm.
    pub fn real_norm_sq(&self, bits: u32) -> RealInterval {
        self.norm_sq().embed(bits)
    }

    pub fn negate(&self) -> Vec2 {
        Vec2 { x: self.x.negate(), y: self.y.negate() }
    }

    /// Reflection (x, y) -> (x, -y).
    pub fn flip_y(&self) -> Vec2 {
        Vec2 { x: self.x.clone(), y: self.y.negate() }
    }

    pub fn scale_elem(&self, k: &RingElement) -> Vec2 {
        Vec2 {
            x: self.x.try_mul(k).expect("same ring"),
            y: self.y.try_mul(k).expect("same ring"),
        }
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2 {
            x: self.x.try_add(&other.x).expect("same ring"),
            y: self.y.try_add(&other.y).expect("same ring"),
        }
    }

    /// Exact dot product.
    pub fn dot(&self, other: &Vec2) -> RingElement {
        let xx = self.x.try_mul(&other.x).expect("same ring");
        let yy = self.y.try_mul(&other.y).expect("same ring");
        xx.try_add(&yy).expect("same ring")
    }
}

impl std::fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Determinant of the 2x2 matrix with columns v and w.
pub fn det2(v: &Vec2, w: &Vec2) -> RingElement {
    let ad = v.x.try_mul(&w.y).expect("same ring");
    let bc = v.y.try_mul(&w.x).expect("same ring");
    ad.try_sub(&bc).expect("same ring")
}

/// A 2x2 matrix [[a, b], [c, d]] over Z[lambda_q]; columns are (a, c) and
/// (b, d). Group elements satisfy det = 1 exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub a: RingElement,
    pub b: RingElement,
    pub c: RingElement,
    pub d: RingElement,
}

impl Mat2 {
    pub fn identity(poly: &Arc<MinimalPolynomial>) -> Self {
        Mat2 {
            a: RingElement::one(poly),
            b: RingElement::zero(poly),
            c: RingElement::zero(poly),
            d: RingElement::one(poly),
        }
    }

    pub fn from_cols(col1: &Vec2, col2: &Vec2) -> Self {
        Mat2 {
            a: col1.x.clone(),
            b: col2.x.clone(),
            c: col1.y.clone(),
            d: col2.y.clone(),
        }
    }

    pub fn col1(&self) -> Vec2 {
        Vec2 { x: self.a.clone(), y: self.c.clone() }
    }

    pub fn col2(&self) -> Vec2 {
        Vec2 { x: self.b.clone(), y: self.d.clone() }
    }

    pub fn det(&self) -> RingElement {
        let ad = self.a.try_mul(&self.d).expect("same ring");
        let bc = self.b.try_mul(&self.c).expect("same ring");
        ad.try_sub(&bc).expect("same ring")
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let m = |p: &RingElement, q: &RingElement, r: &RingElement, s: &RingElement| {
            p.try_mul(q)
                .and_then(|pq| r.try_mul(s).and_then(|rs| pq.try_add(&rs)))
                .expect("same ring")
        };
        Mat2 {
            a: m(&self.a, &rhs.a, &self.b, &rhs.c),
            b: m(&self.a, &rhs.b, &self.b, &rhs.d),
            c: m(&self.c, &rhs.a, &self.d, &rhs.c),
            d: m(&self.c, &rhs.b, &self.d, &rhs.d),
        }
    }

    pub fn mul_vec(&self, v: &Vec2) -> Vec2 {
        let x = self
            .a
            .try_mul(&v.x)
            .and_then(|p| self.b.try_mul(&v.y).and_then(|q| p.try_add(&q)))
            .expect("same ring");
        let y = self
            .c
            .try_mul(&v.x)
            .and_then(|p| self.d.try_mul(&v.y).and_then(|q| p.try_add(&q)))
            .expect("same ring");
        Vec2 { x, y }
    }

    /// Inverse of a determinant-one matrix: [[d, -b], [-c, a]].
    pub fn inverse_unimodular(&self) -> Mat2 {
        Mat2 {
            a: self.d.clone(),
            b: self.b.negate(),
            c: self.c.negate(),
            d: self.a.clone(),
        }
    }

    pub fn negate(&self) -> Mat2 {
        Mat2 {
            a: self.a.negate(),
            b: self.b.negate(),
            c: self.c.negate(),
            d: self.d.negate(),
        }
    }

    /// Conjugation by diag(1, -1): flips the signs of the off-diagonal
    /// entries. Maps H_q to itself (S -> S^-1, T -> T^-1) and sends a
    /// matrix with first column (a, c) to one with first column (a, -c).
    pub fn flip_conj(&self) -> Mat2 {
        Mat2 {
            a: self.a.clone(),
            b: self.b.negate(),
            c: self.c.negate(),
            d: self.d.clone(),
        }
    }
}

impl std::fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The generators of the Hecke triangle group H_q:
/// S = [[0, -1], [1, 0]] and T = [[1, lambda_q], [0, 1]].
pub fn hecke_generators(q: u32) -> Result<(Mat2, Mat2), Error> {
    let poly = crate::ring::minimal_polynomial(q)?;
    Ok(generators(&poly))
}

pub(crate) fn generators(poly: &Arc<MinimalPolynomial>) -> (Mat2, Mat2) {
    let zero = RingElement::zero(poly);
    let one = RingElement::one(poly);
    let s = Mat2 {
        a: zero.clone(),
        b: one.negate(),
        c: one.clone(),
        d: zero.clone(),
    };
    let t = Mat2 {
        a: one.clone(),
        b: poly.lambda(),
        c: zero,
        d: one,
    };
    (s, t)
}

/// Membership answer for a vector relative to a generated orbit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotMember,
    /// The vector lies outside the generated ball, so absence from the set
    /// proves nothing.
    OutOfRadius,
}

/// The set V_q intersected with the closed ball of a given radius, stored
/// as an exact-key map with optional witness matrices.
pub struct OrbitSet {
    poly: Arc<MinimalPolynomial>,
    radius: BigRational,
    radius_sq: BigRational,
    elements: BTreeMap<VecKey, Option<Mat2>>,
    y_index: OnceLock<BTreeMap<ElemKey, Vec<RingElement>>>,
}

impl OrbitSet {
    pub(crate) fn from_parts(
        poly: Arc<MinimalPolynomial>,
        radius: BigRational,
        elements: BTreeMap<VecKey, Option<Mat2>>,
    ) -> Self {
        let radius_sq = &radius * &radius;
        OrbitSet { poly, radius, radius_sq, elements, y_index: OnceLock::new() }
    }

    pub fn q(&self) -> u32 {
        self.poly.q()
    }

    pub fn poly(&self) -> &Arc<MinimalPolynomial> {
        &self.poly
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn radius_sq(&self) -> &BigRational {
        &self.radius_sq
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Vectors in deterministic (lexicographic key) order.
    pub fn iter_vectors(&self) -> impl Iterator<Item = Vec2> + '_ {
        self.elements.keys().map(move |k| self.vec_from_key(k))
    }

    pub(crate) fn vec_from_key(&self, k: &VecKey) -> Vec2 {
        Vec2 {
            x: RingElement::from_coeffs(&self.poly, k.0 .0.to_vec()),
            y: RingElement::from_coeffs(&self.poly, k.1 .0.to_vec()),
        }
    }

    /// Exact membership relative to the generated ball.
    pub fn membership(&self, v: &Vec2) -> Membership {
        if v.q() != self.q() {
            return Membership::NotMember;
        }
        if v.norm_sq().cmp_rational(&self.radius_sq) == std::cmp::Ordering::Greater {
            return Membership::OutOfRadius;
        }
        if self.elements.contains_key(&v.key()) {
            Membership::Member
        } else {
            Membership::NotMember
        }
    }

    /// True iff v is an orbit element within the generated ball. Vectors
    /// outside the ball report false (the caller is responsible for the
    /// radius precondition; see [`OrbitSet::membership`]).
    pub fn is_member(&self, v: &Vec2) -> bool {
        self.membership(v) == Membership::Member
    }

    /// A matrix g in H_q with det g = 1 and first column v: the stored
    /// witness when available, otherwise recovered by slope reduction.
    pub fn witness(&self, v: &Vec2) -> Result<Mat2, Error> {
        match self.elements.get(&v.key()) {
            None => Err(Error::NotAMember(format!("({}, {})", v.x, v.y))),
            Some(Some(g)) => Ok(g.clone()),
            Some(None) => match reduce_vector(v)? {
                Reduction::Reduced { t, witness } if t.is_one() => {
                    Ok(witness.inverse_unimodular())
                }
                Reduction::Reduced { t, .. } => Err(Error::Consistency(format!(
                    "stored orbit vector ({}, {}) reduces to t = {}",
                    v.x, v.y, t
                ))),
                Reduction::Inconclusive { .. } => {
                    Err(Error::Inconclusive(format!("({}, {})", v.x, v.y)))
                }
            },
        }
    }

    /// All first coordinates x such that (x, y) lies in the set, in
    /// ascending key order. Builds a second-coordinate index on first use.
    pub fn y_slice(&self, y: &RingElement) -> &[RingElement] {
        let idx = self.y_index.get_or_init(|| {
            let mut map: BTreeMap<ElemKey, Vec<RingElement>> = BTreeMap::new();
            for k in self.elements.keys() {
                let x = RingElement::from_coeffs(&self.poly, k.0 .0.to_vec());
                map.entry(k.1.clone()).or_default().push(x);
            }
            map
        });
        idx.get(&y.key()).map_or(&[], |v| v.as_slice())
    }

    pub(crate) fn elements(&self) -> &BTreeMap<VecKey, Option<Mat2>> {
        &self.elements
    }
}
