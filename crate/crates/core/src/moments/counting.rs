//! Counting ordered pairs of orbit vectors by determinant.
//!
//! Two routes are provided. `count_pairs` iterates every ordered pair in
//! the R^4 ball and buckets by exact determinant; it is the reference route
//! and is quartic in the radius. `count_pairs_for` targets specific
//! determinants: for a fixed v1 the solutions of det(v1 v2) = n form the
//! affine line v2 = (m + k lambda n) v1 + n g2 (g = [v1 | g2] a completion
//! of v1, k over the integers, m over the canonical window), so each (v1,
//! n, m) contributes one exactly-solved quadratic inequality in k instead
//! of a scan. The two routes agree everywhere they overlap, which the test
//! suites check against the q = 3 integer oracle as well.

use super::canonical::canonicalize_pair;
use super::{phi_candidates, PhiMode};
use crate::error::Error;
use crate::orbit::{det2, floor_ratio, OrbitSet, Vec2};
use crate::ring::{ElemKey, RingElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Count bucket for one determinant.
#[derive(Clone, Debug)]
pub struct DetCount {
    pub n: RingElement,
    pub count: u64,
}

fn check_covers(s: &OrbitSet, r: &BigRational) -> Result<(), Error> {
    if r > s.radius() {
        return Err(Error::InsufficientRadius {
            radius: s.radius().to_string(),
            needed: r.to_string(),
            what: "pair counting ball".into(),
        });
    }
    Ok(())
}

/// Elements with squared norm <= r^2, sorted ascending by real norm (key
/// order breaking ties). The exact norms ride along.
fn elements_by_norm(s: &OrbitSet, r_sq: &BigRational) -> Vec<(Vec2, RingElement)> {
    let mut els: Vec<(Vec2, RingElement)> = s
        .iter_vectors()
        .filter_map(|v| {
            let n = v.norm_sq();
            (n.cmp_rational(r_sq) != Ordering::Greater).then_some((v, n))
        })
        .collect();
    els.sort_by(|(va, na), (vb, nb)| {
        na.cmp_real(nb).then_with(|| va.key().cmp(&vb.key()))
    });
    els
}

/// Exhaustive ordered-pair census: every (v1, v2) from the set with
/// |v1|^2 + |v2|^2 <= r^2 and nonzero determinant, grouped by exact
/// determinant key.
pub fn count_pairs(
    s: &OrbitSet,
    r: &BigRational,
) -> Result<BTreeMap<ElemKey, DetCount>, Error> {
    check_covers(s, r)?;
    let r_sq = r * r;
    let els = elements_by_norm(s, &r_sq);
    let maps: Vec<BTreeMap<ElemKey, DetCount>> = els
        .par_iter()
        .map(|(v1, n1)| {
            let mut local: BTreeMap<ElemKey, DetCount> = BTreeMap::new();
            for (v2, n2) in &els {
                let total = n1.try_add(n2).expect("same ring");
                if total.cmp_rational(&r_sq) == Ordering::Greater {
                    // Sorted by norm: every later v2 is at least as large.
                    break;
                }
                let det = det2(v1, v2);
                if det.is_zero() {
                    continue;
                }
                local
                    .entry(det.key())
                    .or_insert_with(|| DetCount { n: det.clone(), count: 0 })
                    .count += 1;
            }
            local
        })
        .collect();
    let mut out: BTreeMap<ElemKey, DetCount> = BTreeMap::new();
    for m in maps {
        for (k, v) in m {
            out.entry(k)
                .and_modify(|e| e.count += v.count)
                .or_insert(v);
        }
    }
    Ok(out)
}

/// One row of a targeted pair count: determinant n, optional canonical m,
/// and the number of ordered pairs in the ball.
#[derive(Clone, Debug)]
pub struct PairCountRow {
    pub n: RingElement,
    pub m: Option<RingElement>,
    pub count: u64,
}

/// Count pairs for the given determinants by the affine-line sweep,
/// optionally split by the canonical m of the pair.
///
/// For every v1 the determinant-n solutions split into the disjoint
/// progressions v2(k) = (m + k lambda n) v1 + n g2 indexed by the window
/// representatives m with (m, n) in V_q; membership of v2(k) is automatic,
/// so only the ball inequality |v2(k)|^2 <= r^2 - |v1|^2 has to be solved,
/// and it is an exactly-evaluated convex quadratic in k.
pub fn count_pairs_for(
    s: &OrbitSet,
    r: &BigRational,
    ns: &[RingElement],
    refine_m: bool,
) -> Result<Vec<PairCountRow>, Error> {
    check_covers(s, r)?;
    let r_sq = r * r;
    let poly = s.poly();
    let lam = poly.lambda();
    let els = elements_by_norm(s, &r_sq);

    let mut rows = Vec::new();
    for n in ns {
        if n.is_zero() {
            return Err(Error::DegeneratePair);
        }
        if n.q() != s.q() {
            return Err(Error::RingMismatch(n.q(), s.q()));
        }
        // Window representatives; complete per the phi radius precondition.
        let ms = phi_candidates(n, s, PhiMode::Fundamental)?;
        let step_elem = lam.try_mul(n)?; // lambda * n (signed)
        let per_m: Vec<u64> = if ms.is_empty() {
            Vec::new()
        } else {
            let partials: Vec<Vec<u64>> = els
                .par_iter()
                .map(|(v1, n1)| {
                    let mut counts = vec![0u64; ms.len()];
                    let g = s.witness(v1).expect("ball elements are members");
                    let g2 = g.col2();
                    let p = v1.scale_elem(&step_elem);
                    let a = p.norm_sq();
                    let nv = g2.scale_elem(n);
                    for (mi, m) in ms.iter().enumerate() {
                        let w = v1.scale_elem(m).add(&nv);
                        counts[mi] += count_quadratic(&a, &w.dot(&p).scale_i64(2), &w.norm_sq(), n1, &r_sq);
                    }
                    counts
                })
                .collect();
            let mut totals = vec![0u64; ms.len()];
            for part in partials {
                for (t, c) in totals.iter_mut().zip(part) {
                    *t += c;
                }
            }
            totals
        };
        if refine_m {
            for (m, c) in ms.iter().zip(&per_m) {
                rows.push(PairCountRow { n: n.clone(), m: Some(m.clone()), count: *c });
            }
        } else {
            rows.push(PairCountRow { n: n.clone(), m: None, count: per_m.iter().sum() });
        }
    }
    Ok(rows)
}

/// Number of integers k with A k^2 + B k + C <= r^2 - n1, all quantities
/// exact (A of positive real value). The candidate range is located from
/// the exact integer vertex floor(-B / 2A) and expanded by galloping
/// search, so only O(log range) exact sign evaluations are needed.
fn count_quadratic(
    a: &RingElement,
    b: &RingElement,
    c: &RingElement,
    n1: &RingElement,
    r_sq: &BigRational,
) -> u64 {
    // Q(k) = den*(A k^2 + B k + C + n1) - num <= 0, for r^2 = num/den.
    let den = r_sq.denom().clone();
    let num = r_sq.numer().clone();
    let poly = a.poly();
    let qa = a.scale(&den);
    let qb = b.scale(&den);
    let qc = c
        .try_add(n1)
        .expect("same ring")
        .scale(&den)
        .try_sub(&RingElement::from_bigint(poly, num))
        .expect("same ring");
    let q_at = |k: &BigInt| -> bool {
        // Q(k) <= 0
        let v = qa
            .scale(&(k * k))
            .try_add(&qb.scale(k))
            .and_then(|t| t.try_add(&qc))
            .expect("same ring");
        v.sign() <= 0
    };
    // Exact integer vertex of the parabola.
    let kf = floor_ratio(&qb.negate(), &qa.scale(&BigInt::from(2)));
    let anchor = if q_at(&kf) {
        kf
    } else {
        let k1 = &kf + 1;
        if q_at(&k1) {
            k1
        } else {
            return 0;
        }
    };
    let lo = gallop(&anchor, &q_at, true);
    let hi = gallop(&anchor, &q_at, false);
    let width = hi - lo + 1u32;
    width.to_u64().expect("pair count fits u64")
}

/// Furthest integer from `anchor` (downward when `left`) still satisfying
/// the convex predicate.
fn gallop(anchor: &BigInt, pred: &dyn Fn(&BigInt) -> bool, left: bool) -> BigInt {
    let dir = BigInt::from(if left { -1 } else { 1 });
    let mut good = anchor.clone();
    let mut step = BigInt::from(1);
    while pred(&(&good + &dir * &step)) {
        good += &dir * &step;
        step *= 2;
    }
    // Invariant: pred(good), !pred(good + dir*step). Bisect the gap.
    let mut bad_off = step;
    let mut good_off = BigInt::zero();
    while &good_off + 1u32 < bad_off {
        let mid = (&good_off + &bad_off) / 2;
        if pred(&(&good + &dir * &mid)) {
            good_off = mid;
        } else {
            bad_off = mid;
        }
    }
    good + dir * good_off
}

/// Slope-plot data: for each ordered pair (v1, v2) = ((a,b), (c,d)) in the
/// set with determinant n and both slopes a/b, c/d in [0, 1], the exact
/// pair. Restricted to positive second coordinates so each slope appears
/// once; returned in key order.
pub fn slope_pairs(
    s: &OrbitSet,
    n: &RingElement,
) -> Result<Vec<(Vec2, Vec2)>, Error> {
    if n.q() != s.q() {
        return Err(Error::RingMismatch(n.q(), s.q()));
    }
    // Slope a/b in [0, 1] with b > 0 means 0 <= a <= b.
    let slice: Vec<Vec2> = s
        .iter_vectors()
        .filter(|v| {
            v.y.sign() > 0 && v.x.sign() >= 0 && v.x.try_sub(&v.y).map(|d| d.sign() <= 0).unwrap_or(false)
        })
        .collect();
    let mut out: Vec<(Vec2, Vec2)> = Vec::new();
    for v1 in &slice {
        for v2 in &slice {
            if &det2(v1, v2) == n {
                out.push((v1.clone(), v2.clone()));
            }
        }
    }
    Ok(out)
}

/// Convenience: canonical m census of an exhaustively enumerated ball,
/// used by tests to cross-check the line sweep.
pub fn count_pairs_refined_exhaustive(
    s: &OrbitSet,
    r: &BigRational,
    n: &RingElement,
) -> Result<BTreeMap<ElemKey, (RingElement, u64)>, Error> {
    check_covers(s, r)?;
    let r_sq = r * r;
    let els = elements_by_norm(s, &r_sq);
    let mut out: BTreeMap<ElemKey, (RingElement, u64)> = BTreeMap::new();
    for (v1, n1) in &els {
        for (v2, n2) in &els {
            let total = n1.try_add(n2)?;
            if total.cmp_rational(&r_sq) == Ordering::Greater {
                break;
            }
            if &det2(v1, v2) != n {
                continue;
            }
            let cp = canonicalize_pair(v1, v2, s)?;
            out.entry(cp.m.key())
                .and_modify(|e| e.1 += 1)
                .or_insert((cp.m.clone(), 1));
        }
    }
    Ok(out)
}
