//! Classification of k-tuples of orbit vectors.
//!
//! A tuple of visible vectors is either linearly dependent — every entry is
//! +-v1, recorded as a sign vector with leading +1 — or has a first entry
//! v_j independent of v1. In the independent case the pair (v1, v_j) is
//! put in canonical form [[1, m], [0, n]] by a witness h in H_q, and every
//! later entry decomposes as v_i = alpha_i v1 + beta_i v_j with
//! (alpha_i, beta_i) determined exactly by determinants over n. The
//! membership criterion for the tail is that [[1, m], [0, n]] applied to
//! (alpha_i, beta_i) lands in V_q; that image is exactly h v_i, so it is
//! verified by exact lookup (with slope reduction as the radius-free
//! fallback).

use super::canonical::{canonicalize_pair, complete_to_matrix};
use crate::error::Error;
use crate::orbit::{det2, reduce_vector, Mat2, Membership, OrbitSet, Reduction, Vec2, VecKey};
use crate::ring::{ElemKey, RingElement};
use num_rational::BigRational;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

/// An exact ring quotient num/den (den is the class determinant n).
#[derive(Clone, Debug)]
pub struct RingFraction {
    pub num: RingElement,
    pub den: RingElement,
}

impl RingFraction {
    /// Cross-multiplied equality of values.
    pub fn value_eq(&self, other: &RingFraction) -> bool {
        let l = self.num.try_mul(&other.den).expect("same ring");
        let r = other.num.try_mul(&self.den).expect("same ring");
        l == r
    }

    pub fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den.to_f64()
    }
}

/// Classification of an ordered k-tuple of orbit vectors.
#[derive(Clone, Debug)]
pub enum TupleClass {
    /// Every entry is +-v1; signs has leading +1.
    Dependent { signs: Vec<i8> },
    /// Entry j (1-based) is the first vector independent of v1.
    Independent {
        j: usize,
        n: RingElement,
        m: RingElement,
        /// Signs of the colinear prefix (entries before j), leading +1.
        signs: Vec<i8>,
        /// Coefficients of entries j.. in the basis (v1, v_j):
        /// alpha[0] = 0, beta[0] = 1.
        alpha: Vec<RingFraction>,
        beta: Vec<RingFraction>,
        /// h in H_q with h v1 = e1 and h v_j = (m, n).
        witness: Mat2,
        /// h v_i for i >= j; images[0] = (m, n). These encode (alpha,
        /// beta) exactly and are the vectors whose visibility realizes the
        /// tail membership criterion.
        images: Vec<Vec2>,
    },
}

/// Exact census key of a class (witness and redundant encodings dropped).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TupleClassKey {
    Dependent { signs: Vec<i8> },
    Independent {
        j: usize,
        n: ElemKey,
        m: ElemKey,
        signs: Vec<i8>,
        tail: Vec<VecKey>,
    },
}

impl TupleClass {
    pub fn key(&self) -> TupleClassKey {
        match self {
            TupleClass::Dependent { signs } => TupleClassKey::Dependent { signs: signs.clone() },
            TupleClass::Independent { j, n, m, signs, images, .. } => TupleClassKey::Independent {
                j: *j,
                n: n.key(),
                m: m.key(),
                signs: signs.clone(),
                tail: images.iter().skip(1).map(|v| v.key()).collect(),
            },
        }
    }

    /// Number of tail membership checks the classification performed.
    pub fn verified_images(&self) -> u64 {
        match self {
            TupleClass::Dependent { .. } => 0,
            TupleClass::Independent { images, .. } => images.len() as u64,
        }
    }
}

/// Membership with slope reduction as the fallback for vectors outside the
/// generated ball. Errors only if both routes are inconclusive.
fn member_or_reduce(s: &OrbitSet, v: &Vec2) -> Result<bool, Error> {
    match s.membership(v) {
        Membership::Member => Ok(true),
        Membership::NotMember => Ok(false),
        Membership::OutOfRadius => match reduce_vector(v)? {
            Reduction::Reduced { t, .. } => Ok(t.is_one()),
            Reduction::Inconclusive { .. } => {
                Err(Error::Inconclusive(format!("({}, {})", v.x, v.y)))
            }
        },
    }
}

fn sign_of_multiple(v1: &Vec2, v: &Vec2) -> Result<i8, Error> {
    if v == v1 {
        Ok(1)
    } else if v == &v1.negate() {
        Ok(-1)
    } else {
        Err(Error::Consistency(format!(
            "colinear orbit entry ({}, {}) is not +-({}, {})",
            v.x, v.y, v1.x, v1.y
        )))
    }
}

/// Classify an ordered tuple of orbit vectors (k >= 1). Every entry must
/// belong to the set; tail images are verified to be visible and the
/// coefficient identities are checked exactly — any failure is a
/// consistency error, never ignored.
pub fn classify_tuple(vs: &[Vec2], s: &OrbitSet) -> Result<TupleClass, Error> {
    if vs.is_empty() {
        return Err(Error::Parse("classify_tuple needs at least one vector".into()));
    }
    for v in vs {
        if !member_or_reduce(s, v)? {
            return Err(Error::NotAMember(format!("({}, {})", v.x, v.y)));
        }
    }
    let v1 = &vs[0];
    let indep = vs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, v)| !det2(v1, v).is_zero());
    let Some((j0, vj)) = indep else {
        let mut signs = vec![1i8];
        for v in &vs[1..] {
            signs.push(sign_of_multiple(v1, v)?);
        }
        return Ok(TupleClass::Dependent { signs });
    };
    let mut signs = vec![1i8];
    for v in &vs[1..j0] {
        signs.push(sign_of_multiple(v1, v)?);
    }
    let cp = canonicalize_pair(v1, vj, s)?;
    let (n, m, h) = (cp.n, cp.m, cp.witness);
    let mut alpha = Vec::with_capacity(vs.len() - j0);
    let mut beta = Vec::with_capacity(vs.len() - j0);
    let mut images = Vec::with_capacity(vs.len() - j0);
    for v in &vs[j0..] {
        let w = h.mul_vec(v);
        // v = alpha v1 + beta v_j with alpha = det(v, v_j)/n and
        // beta = det(v1, v)/n; the image w = [[1, m], [0, n]] (alpha, beta)
        // must agree coordinatewise: w.y = beta n and n w.x - m w.y =
        // alpha n.
        let beta_num = det2(v1, v);
        let alpha_num = det2(v, vj);
        if w.y != beta_num {
            return Err(Error::Consistency(format!(
                "image second coordinate {} differs from det(v1, v) = {}",
                w.y, beta_num
            )));
        }
        let lhs = n.try_mul(&w.x)?.try_sub(&m.try_mul(&w.y)?)?;
        if lhs != alpha_num {
            return Err(Error::Consistency(format!(
                "image first coordinate inconsistent: n w.x - m w.y = {lhs} vs det(v, v_j) = {alpha_num}"
            )));
        }
        if !member_or_reduce(s, &w)? {
            return Err(Error::Consistency(format!(
                "tail image ({}, {}) is not visible",
                w.x, w.y
            )));
        }
        alpha.push(RingFraction { num: alpha_num, den: n.clone() });
        beta.push(RingFraction { num: beta_num, den: n.clone() });
        images.push(w);
    }
    Ok(TupleClass::Independent { j: j0 + 1, n, m, signs, alpha, beta, witness: h, images })
}

/// Apply the class witness to the tuple and reclassify; a stable
/// classification returns the same key. Used as a structural self-check.
pub fn reclassify_transformed(
    vs: &[Vec2],
    class: &TupleClass,
    s: &OrbitSet,
) -> Result<TupleClassKey, Error> {
    let transformed: Vec<Vec2> = match class {
        TupleClass::Dependent { .. } => {
            let g = complete_to_matrix(&vs[0], s)?;
            let gi = g.inverse_unimodular();
            vs.iter().map(|v| gi.mul_vec(v)).collect()
        }
        TupleClass::Independent { witness, .. } => vs.iter().map(|v| witness.mul_vec(v)).collect(),
    };
    Ok(classify_tuple(&transformed, s)?.key())
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOpts {
    /// Maximum number of tuples to classify before aborting.
    pub budget: u64,
    /// Also reclassify every tuple through its witness and require the
    /// same class key.
    pub verify_roundtrip: bool,
}

impl Default for CensusOpts {
    fn default() -> Self {
        CensusOpts { budget: 50_000_000, verify_roundtrip: false }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusStats {
    pub tuples: u64,
    pub eq_criterion_checked: u64,
    pub eq_criterion_failed: u64,
    pub roundtrip_checked: u64,
    pub roundtrip_failed: u64,
    /// First few failure messages, for diagnostics.
    pub failures: Vec<String>,
}

impl CensusStats {
    fn absorb(&mut self, other: CensusStats) {
        self.tuples += other.tuples;
        self.eq_criterion_checked += other.eq_criterion_checked;
        self.eq_criterion_failed += other.eq_criterion_failed;
        self.roundtrip_checked += other.roundtrip_checked;
        self.roundtrip_failed += other.roundtrip_failed;
        for f in other.failures {
            if self.failures.len() < 16 {
                self.failures.push(f);
            }
        }
    }

    pub fn all_pass(&self) -> bool {
        self.eq_criterion_failed == 0 && self.roundtrip_failed == 0
    }
}

/// Classify every ordered k-tuple of set elements inside the radius-r ball
/// of (R^2)^k (sum of squared norms at most r^2) and tally by class key.
///
/// The cost grows like the k-th power of the element count; the budget
/// guard turns runaway requests into an error carrying progress.
pub fn tuple_census(
    s: &OrbitSet,
    r: &BigRational,
    k: usize,
    opts: CensusOpts,
) -> Result<(BTreeMap<TupleClassKey, u64>, CensusStats), Error> {
    if k == 0 || k > 4 {
        return Err(Error::Parse(format!("tuple census supports 1 <= k <= 4, got {k}")));
    }
    if r > s.radius() {
        return Err(Error::InsufficientRadius {
            radius: s.radius().to_string(),
            needed: r.to_string(),
            what: "tuple census ball".into(),
        });
    }
    let r_sq = r * r;
    let mut els: Vec<(Vec2, RingElement)> = s
        .iter_vectors()
        .filter_map(|v| {
            let n = v.norm_sq();
            (n.cmp_rational(&r_sq) != Ordering::Greater).then_some((v, n))
        })
        .collect();
    els.sort_by(|(va, na), (vb, nb)| na.cmp_real(nb).then_with(|| va.key().cmp(&vb.key())));

    let processed = AtomicU64::new(0);
    let stop = AtomicBool::new(false);

    let results: Vec<Result<(BTreeMap<TupleClassKey, u64>, CensusStats), Error>> = els
        .par_iter()
        .map(|first| {
            let mut map = BTreeMap::new();
            let mut stats = CensusStats::default();
            if stop.load(AtomicOrdering::Relaxed) {
                return Ok((map, stats));
            }
            let mut tuple: Vec<Vec2> = vec![first.0.clone()];
            let res = extend_tuple(
                s,
                &els,
                &r_sq,
                &first.1,
                k,
                &mut tuple,
                &mut map,
                &mut stats,
                &processed,
                &stop,
                opts,
            );
            res.map(|()| (map, stats))
        })
        .collect();

    let mut map = BTreeMap::new();
    let mut stats = CensusStats::default();
    for r in results {
        let (m, st) = r?;
        for (k, c) in m {
            *map.entry(k).or_insert(0) += c;
        }
        stats.absorb(st);
    }
    if stop.load(AtomicOrdering::Relaxed) {
        return Err(Error::BudgetExceeded {
            processed: processed.load(AtomicOrdering::Relaxed),
            limit: opts.budget,
        });
    }
    Ok((map, stats))
}

#[allow(clippy::too_many_arguments)]
fn extend_tuple(
    s: &OrbitSet,
    els: &[(Vec2, RingElement)],
    r_sq: &BigRational,
    norm_so_far: &RingElement,
    k: usize,
    tuple: &mut Vec<Vec2>,
    map: &mut BTreeMap<TupleClassKey, u64>,
    stats: &mut CensusStats,
    processed: &AtomicU64,
    stop: &AtomicBool,
    opts: CensusOpts,
) -> Result<(), Error> {
    if tuple.len() == k {
        let done = processed.fetch_add(1, AtomicOrdering::Relaxed) + 1;
        if done > opts.budget {
            stop.store(true, AtomicOrdering::Relaxed);
            return Ok(());
        }
        stats.tuples += 1;
        match classify_tuple(tuple, s) {
            Ok(class) => {
                stats.eq_criterion_checked += class.verified_images();
                if opts.verify_roundtrip {
                    stats.roundtrip_checked += 1;
                    match reclassify_transformed(tuple, &class, s) {
                        Ok(key2) if key2 == class.key() => {}
                        Ok(_) => {
                            stats.roundtrip_failed += 1;
                            if stats.failures.len() < 16 {
                                stats.failures.push(format!("roundtrip key drift for {tuple:?}"));
                            }
                        }
                        Err(e) => {
                            stats.roundtrip_failed += 1;
                            if stats.failures.len() < 16 {
                                stats.failures.push(format!("roundtrip error: {e}"));
                            }
                        }
                    }
                }
                *map.entry(class.key()).or_insert(0) += 1;
            }
            Err(e @ (Error::Consistency(_) | Error::Inconclusive(_))) => {
                stats.eq_criterion_failed += 1;
                if stats.failures.len() < 16 {
                    stats.failures.push(e.to_string());
                }
            }
            Err(e) => return Err(e),
        }
        return Ok(());
    }
    for (v, nv) in els {
        if stop.load(AtomicOrdering::Relaxed) {
            return Ok(());
        }
        let total = norm_so_far.try_add(nv)?;
        if total.cmp_rational(r_sq) == Ordering::Greater {
            break; // sorted by norm: no later candidate fits either
        }
        tuple.push(v.clone());
        extend_tuple(s, els, r_sq, &total, k, tuple, map, stats, processed, stop, opts)?;
        tuple.pop();
    }
    Ok(())
}
