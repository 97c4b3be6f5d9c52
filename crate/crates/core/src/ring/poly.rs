//! Integer and rational polynomial helpers used to construct the minimal
//! polynomial of lambda_q = 2cos(pi/q) and to isolate its real root.
//!
//! Polynomials are coefficient vectors with the constant term first and no
//! trailing zeros (the zero polynomial is the empty vector).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

pub(crate) type IPoly = Vec<BigInt>;
pub(crate) type RPoly = Vec<BigRational>;

fn trim_int(p: &mut IPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn trim_rat(p: &mut RPoly) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn ipoly_mul(a: &IPoly, b: &IPoly) -> IPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim_int(&mut out);
    out
}

/// Exact quotient of `num` by the monic polynomial `den`.
///
/// Panics if `den` is not monic or the division leaves a remainder; callers
/// only divide by cyclotomic factors, where the division is exact.
pub(crate) fn ipoly_div_exact_monic(num: &IPoly, den: &IPoly) -> IPoly {
    assert!(!den.is_empty() && den.last().unwrap().is_one(), "divisor must be monic");
    let mut rem = num.clone();
    let d = den.len() - 1;
    if rem.len() < den.len() {
        assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    for i in (d..rem.len()).rev() {
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        if c.is_zero() {
            continue;
        }
        for (k, dk) in den.iter().take(d).enumerate() {
            let delta = &c * dk;
            rem[i - d + k] -= delta;
        }
        quot[i - d] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    trim_int(&mut quot);
    quot
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            out.push(d);
        }
    }
    out
}

/// n-th cyclotomic polynomial, computed by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
pub(crate) fn cyclotomic(n: u32) -> IPoly {
    fn go(n: u32, memo: &mut HashMap<u32, IPoly>) -> IPoly {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // x^n - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = -BigInt::one();
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let phi_d = go(d, memo);
            num = ipoly_div_exact_monic(&num, &phi_d);
        }
        memo.insert(n, num.clone());
        num
    }
    go(n, &mut HashMap::new())
}

/// Polynomial expressing z^k + z^(-k) in terms of x = z + 1/z.
///
/// psi_0 = 2, psi_1 = x, psi_k = x * psi_{k-1} - psi_{k-2}.
fn power_sum_poly(k: usize) -> IPoly {
    let mut prev: IPoly = vec![BigInt::from(2)];
    if k == 0 {
        return prev;
    }
    let mut cur: IPoly = vec![BigInt::zero(), BigInt::one()];
    let x = cur.clone();
    for _ in 1..k {
        let mut next = ipoly_mul(&x, &cur);
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        trim_int(&mut next);
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial of 2cos(pi/q) over the rationals, monic with the
/// constant term first.
///
/// 2cos(pi/q) = zeta + 1/zeta for zeta a primitive 2q-th root of unity, so
/// the minimal polynomial is the degree-phi(2q)/2 polynomial obtained from
/// the (palindromic) cyclotomic polynomial of order 2q by rewriting
/// z^k + z^(-k) in terms of x = z + 1/z.
pub(crate) fn lambda_minimal_poly(q: u32) -> IPoly {
    let phi = cyclotomic(2 * q);
    let big_d = phi.len() - 1;
    assert!(big_d % 2 == 0, "cyclotomic degree must be even for q >= 3");
    let d = big_d / 2;
    let mut p: IPoly = vec![phi[d].clone()];
    for k in 1..=d {
        let psi = power_sum_poly(k);
        if p.len() < psi.len() {
            p.resize(psi.len(), BigInt::zero());
        }
        for (i, c) in psi.iter().enumerate() {
            p[i] += &phi[d + k] * c;
        }
    }
    trim_int(&mut p);
    assert_eq!(p.len(), d + 1, "real subfield polynomial has wrong degree");
    assert!(p.last().unwrap().is_one(), "real subfield polynomial is not monic");
    p
}

pub(crate) fn rpoly_from(p: &IPoly) -> RPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub(crate) fn rpoly_eval(p: &RPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub(crate) fn ipoly_eval_rat(p: &IPoly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

fn rpoly_deriv(p: &RPoly) -> RPoly {
    let mut out = Vec::with_capacity(p.len().saturating_sub(1));
    for (i, c) in p.iter().enumerate().skip(1) {
        out.push(c * BigRational::from_integer(BigInt::from(i)));
    }
    trim_rat(&mut out);
    out
}

/// Remainder of polynomial division a mod b (b nonzero).
fn rpoly_rem(a: &RPoly, b: &RPoly) -> RPoly {
    assert!(!b.is_empty());
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while rem.len() > db {
        let c = rem.last().unwrap() / lead;
        let dr = rem.len() - 1;
        for (k, bk) in b.iter().enumerate() {
            let delta = &c * bk;
            rem[dr - db + k] -= delta;
        }
        // The leading term cancels exactly.
        rem.pop();
        trim_rat(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    rem
}

/// Sturm chain of a squarefree polynomial.
pub(crate) fn sturm_chain(p: &RPoly) -> Vec<RPoly> {
    let mut chain = vec![p.clone(), rpoly_deriv(p)];
    loop {
        let k = chain.len();
        if chain[k - 1].is_empty() {
            chain.pop();
            break;
        }
        if chain[k - 1].len() == 1 {
            break;
        }
        let mut r = rpoly_rem(&chain[k - 2], &chain[k - 1]);
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[RPoly], x: &BigRational) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for p in chain {
        let v = rpoly_eval(p, x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                changes += 1;
            }
        }
        last = Some(pos);
    }
    changes
}

/// Number of distinct real roots in the half-open interval (a, b].
pub(crate) fn count_roots_in(chain: &[RPoly], a: &BigRational, b: &BigRational) -> isize {
    sign_variations(chain, a) as isize - sign_variations(chain, b) as isize
}

/// Isolating interval (lo, hi) for the largest real root of `p`, which is
/// assumed to lie in (1, 2) and to be simple (true for the minimal
/// polynomial of 2cos(pi/q) with q >= 4). The returned endpoints satisfy
/// p(lo) * p(hi) < 0.
pub(crate) fn isolate_largest_root(p: &IPoly) -> (BigRational, BigRational) {
    let rp = rpoly_from(p);
    let chain = sturm_chain(&rp);
    let mut lo = BigRational::from_integer(BigInt::from(1));
    let mut hi = BigRational::from_integer(BigInt::from(2));
    let mut count = count_roots_in(&chain, &lo, &hi);
    assert!(count >= 1, "no root of the minimal polynomial in (1, 2]");
    while count > 1 {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mid = (&lo + &hi) * half;
        let top = count_roots_in(&chain, &mid, &hi);
        if top >= 1 {
            lo = mid;
            count = top;
        } else {
            hi = mid;
            count = count_roots_in(&chain, &lo, &hi);
        }
    }
    debug_assert!(
        (ipoly_eval_rat(p, &lo).is_positive()) != (ipoly_eval_rat(p, &hi).is_positive()),
        "isolating interval does not bracket a sign change"
    );
    (lo, hi)
}

/// One bisection refinement pass: shrink (lo, hi) until hi - lo <= width.
pub(crate) fn refine_root(p: &IPoly, lo: &mut BigRational, hi: &mut BigRational, width: &BigRational) {
    let lo_positive = ipoly_eval_rat(p, lo).is_positive();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while &(&*hi - &*lo) > width {
        let mid = (&*lo + &*hi) * &half;
        let v = ipoly_eval_rat(p, &mid);
        // Rational midpoints are never roots of an irreducible polynomial of
        // degree >= 2, so the sign is well defined.
        if v.is_positive() == lo_positive {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }
}
