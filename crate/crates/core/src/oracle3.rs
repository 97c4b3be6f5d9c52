//! Independent q = 3 reference implementation over plain integers.
//!
//! V_3 is exactly the set of primitive (visible) integer vectors, so every
//! q = 3 quantity has a brute-force ground truth: primitive vectors by an
//! exhaustive gcd scan, the standard Euler totient by trial factorization,
//! and pair counts by a double loop. Nothing here touches the exact-ring
//! machinery; that independence is the point.

use crate::error::Error;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// A plain integer vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec2 {
    pub x: i64,
    pub y: i64,
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Largest integer radius floor usable in scans; exact for rational R.
fn floor_radius(r: &BigRational) -> i64 {
    r.floor().to_integer().to_i64().expect("oracle radius fits i64")
}

/// All primitive integer vectors with squared norm at most R^2, by
/// exhaustive scan of the integer disk.
pub fn primitive_vectors(r: &BigRational) -> BTreeSet<IntVec2> {
    let r_sq = r * r;
    let bound = floor_radius(r);
    let mut out = BTreeSet::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x == 0 && y == 0 {
                continue;
            }
            if gcd(x.unsigned_abs(), y.unsigned_abs()) != 1 {
                continue;
            }
            let n = BigRational::from_integer((x * x + y * y).into());
            if n <= r_sq {
                out.insert(IntVec2 { x, y });
            }
        }
    }
    out
}

/// Euler's totient by trial factorization.
pub fn std_totient(n: u64) -> u64 {
    assert!(n >= 1, "totient needs n >= 1");
    let mut result = n;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Count of ordered primitive-vector pairs (v1, v2) with determinant n and
/// |v1|^2 + |v2|^2 <= R^2, by exhaustive double loop. Guarded at R <= 60:
/// the cost grows with the fourth power of the radius.
pub fn brute_count_pairs(r: &BigRational, n: i64) -> Result<u64, Error> {
    Ok(*brute_count_map(r)?.get(&n).unwrap_or(&0))
}

/// Determinant histogram of all ordered primitive-vector pairs in the
/// R^4 ball; the per-n view of [`brute_count_pairs`].
pub fn brute_count_map(r: &BigRational) -> Result<BTreeMap<i64, u64>, Error> {
    if r > &BigRational::from_integer(60.into()) {
        return Err(Error::BudgetExceeded { processed: 0, limit: 60 });
    }
    let vs: Vec<IntVec2> = primitive_vectors(r).into_iter().collect();
    let norms: Vec<i64> = vs.iter().map(|v| v.x * v.x + v.y * v.y).collect();
    // 2 R^2 fits comfortably in i64 at the guarded scale; compare against
    // the exact rational R^2 scaled to an integer threshold.
    let r_sq = r * r;
    let num = r_sq.numer().to_i64().expect("radius fits i64");
    let den = r_sq.denom().to_i64().expect("radius fits i64");
    let mut map: BTreeMap<i64, u64> = BTreeMap::new();
    for (i, v1) in vs.iter().enumerate() {
        for (j, v2) in vs.iter().enumerate() {
            if (norms[i] + norms[j]) * den > num {
                continue;
            }
            let det = v1.x * v2.y - v1.y * v2.x;
            if det != 0 {
                *map.entry(det).or_insert(0) += 1;
            }
        }
    }
    Ok(map)
}
