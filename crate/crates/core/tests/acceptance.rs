//! Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them on success).
//!
//! Criterion 2 contains a sub-check that is expected to fail: the quoted
//! visible-density constant 1/c(q) for q > 3 omits the cusp-width factor
//! lambda_q that the unfolding of the counting integral over the stabilizer
//! of (1, 0) produces. The measured densities match lambda_q/c(q) to a
//! fraction of a percent (see the printed diagnostics); the check is kept
//! as stated rather than loosened.

use hecke_orbits::moments::{
    classify_tuple, count_pairs, count_pairs_for, phi_q, sv_constant, tuple_census, CensusOpts,
    PhiMode, TupleClass,
};
use hecke_orbits::oracle3;
use hecke_orbits::orbit::{
    generate_orbit, generate_orbit_with, GenOptions, OrbitSet, Vec2,
};
use hecke_orbits::ring::{minimal_polynomial, RingElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::OnceLock;
use std::time::Instant;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn report(criterion: &str, ok: bool, detail: &str) -> bool {
    println!(
        "criterion {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

/// Shared q = 3 set of radius 500 with witnesses (criteria 3, 4, 6).
fn big_q3_set() -> &'static OrbitSet {
    static SET: OnceLock<OrbitSet> = OnceLock::new();
    SET.get_or_init(|| generate_orbit(3, &rat(500)).expect("generate q=3 R=500"))
}

fn iv(s: &OrbitSet, x: i64, y: i64) -> Vec2 {
    Vec2::new(
        RingElement::from_int(s.poly(), x),
        RingElement::from_int(s.poly(), y),
    )
}

#[test]
fn criterion_1_orbit_oracle_equivalence() {
    let t0 = Instant::now();
    let mut ok = true;
    for r in [10i64, 25, 50, 100] {
        let set = generate_orbit(3, &rat(r)).unwrap();
        let oracle = oracle3::primitive_vectors(&rat(r));
        let mut equal = set.len() == oracle.len();
        if equal {
            for v in &oracle {
                if !set.is_member(&iv(&set, v.x, v.y)) {
                    equal = false;
                    break;
                }
            }
        }
        if !equal {
            ok = false;
        }
        println!(
            "  R={r}: generated {} vs oracle {} ({})",
            set.len(),
            oracle.len(),
            if equal { "equal" } else { "MISMATCH" }
        );
    }
    let ok = report(
        "1 (orbit oracle equivalence)",
        ok,
        &format!("exact set equality at R in {{10, 25, 50, 100}} in {:.2?}", t0.elapsed()),
    );
    assert!(ok);
}

#[test]
fn criterion_2_visible_density_law() {
    let pi = std::f64::consts::PI;
    let mut all = true;

    let set3 = generate_orbit(3, &rat(100)).unwrap();
    let ratio3 = set3.len() as f64 / (pi * 100.0 * 100.0);
    let inv_zeta2 = 6.0 / (pi * pi);
    let ok3 = (ratio3 - inv_zeta2).abs() / inv_zeta2 <= 0.02;
    println!(
        "  q=3 R=100: ratio {ratio3:.5} vs 1/zeta(2) = {inv_zeta2:.5} ({})",
        if ok3 { "within 2%" } else { "OUT OF TOLERANCE" }
    );
    all &= ok3;

    for q in [4u32, 5] {
        let set = generate_orbit(q, &rat(200)).unwrap();
        let ratio = set.len() as f64 / (pi * 200.0 * 200.0);
        let c = sv_constant(q).unwrap().value;
        let lam = 2.0 * (pi / q as f64).cos();
        let ok = (ratio - 1.0 / c).abs() / (1.0 / c) <= 0.05;
        println!(
            "  q={q} R=200: ratio {ratio:.5} vs 1/c(q) = {:.5} ({}); width-adjusted lambda/c(q) = {:.5} (off by {:.3}%)",
            1.0 / c,
            if ok { "within 5%" } else { "OUT OF TOLERANCE" },
            lam / c,
            100.0 * (ratio - lam / c).abs() / (lam / c),
        );
        all &= ok;
    }

    let all = report(
        "2 (visible-density law)",
        all,
        "q=3 vs 1/zeta(2) at 2%; q in {4, 5} vs 1/c(q) at 5% (see lines above; \
         the q > 3 sub-checks measure lambda_q/c(q), so the stated constant fails)",
    );
    assert!(all);
}

#[test]
fn criterion_3_newman_constant() {
    let t0 = Instant::now();
    let set = big_q3_set();
    let one = RingElement::one(set.poly());
    let rows = count_pairs_for(set, &rat(500), &[one], false).unwrap();
    let density = rows[0].count as f64 / (500.0 * 500.0);
    let ok = (density - 6.0).abs() / 6.0 <= 0.05;
    let ok = report(
        "3 (Newman constant)",
        ok,
        &format!(
            "Count_3(500, 1)/500^2 = {density:.4} vs 6 (count {}) in {:.2?}",
            rows[0].count,
            t0.elapsed()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_4_fig2_densities() {
    let t0 = Instant::now();
    let set = big_q3_set();
    let p = set.poly().clone();
    let expected = [(1i64, 6.0f64), (2, 3.0), (3, 4.0), (4, 3.0)];
    let mut ok = true;
    for (n, want) in expected {
        let ne = RingElement::from_int(&p, n);
        let rows = count_pairs_for(set, &rat(500), &[ne], false).unwrap();
        let density = rows[0].count as f64 / (500.0 * 500.0);
        let good = (density - want).abs() / want <= 0.05;
        println!("  n={n}: {density:.4} vs {want} ({})", if good { "ok" } else { "BAD" });
        ok &= good;
    }
    let ok = report(
        "4 (pair densities for n = 1..4)",
        ok,
        &format!("within 5% of {{6, 3, 4, 3}} at R=500 in {:.2?}", t0.elapsed()),
    );
    assert!(ok);
}

#[test]
fn criterion_5_totient_equality() {
    let t0 = Instant::now();
    // Radius covers every candidate (a, n) with a <= n <= 1000:
    // sqrt(2) * 1000 < 1415.
    let set = generate_orbit_with(3, &rat(1415), GenOptions { store_witnesses: false }).unwrap();
    let p = set.poly().clone();
    let mut ok = true;
    for n in 1..=1000i64 {
        let got = phi_q(&RingElement::from_int(&p, n), &set, PhiMode::Paper).unwrap();
        let want = oracle3::std_totient(n as u64);
        if got != want {
            println!("  phi(= {n}): got {got}, want {want}");
            ok = false;
        }
    }
    let ok = report(
        "5 (totient equality)",
        ok,
        &format!("phi_3 = standard totient for 1 <= n <= 1000, exact, in {:.2?}", t0.elapsed()),
    );
    assert!(ok);
}

/// Independent q = 3 count of det-n pairs in the R^4 ball: for each
/// primitive v1, complete by extended Euclid (no orbit machinery), walk the
/// integer line v2 = n g2 + t v1 over a padded range, and test gcd and the
/// ball inequality directly.
fn independent_pair_count_q3(set: &OrbitSet, r: i64, n: i64) -> u64 {
    fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
            (g, y, x - (a.div_euclid(b)) * y)
        }
    }
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a.rem_euclid(b))
        }
    }
    let r_sq = r * r;
    let mut total = 0u64;
    for v in set.iter_vectors() {
        let a = v.x.coeffs()[0].to_string().parse::<i64>().unwrap();
        let b = v.y.coeffs()[0].to_string().parse::<i64>().unwrap();
        let n1 = a * a + b * b;
        if n1 > r_sq {
            continue;
        }
        // a*w - b*u = 1
        let (g, x, y) = ext_gcd(a, b);
        debug_assert_eq!(g.abs(), 1);
        let (u, w) = (-y * g, x * g);
        debug_assert_eq!(a * w - b * u, 1);
        let (bx, by) = (n * u, n * w);
        let rem = r_sq - n1;
        // |v2|^2 = |b + t v1|^2: conservative t-range from floats, padded.
        let nb = (bx * bx + by * by) as f64;
        let dot = (bx * a + by * b) as f64;
        let nv = n1 as f64;
        let disc = dot * dot - nv * (nb - rem as f64);
        if disc < 0.0 {
            continue;
        }
        let t_lo = ((-dot - disc.sqrt()) / nv).floor() as i64 - 2;
        let t_hi = ((-dot + disc.sqrt()) / nv).ceil() as i64 + 2;
        for t in t_lo..=t_hi {
            let cx = bx + t * a;
            let cy = by + t * b;
            if cx * cx + cy * cy <= rem && gcd(cx, cy) == 1 {
                total += 1;
            }
        }
    }
    total
}

#[test]
fn criterion_6_orbit_partition_and_equidistribution() {
    let t0 = Instant::now();
    let set = big_q3_set();
    let p = set.poly().clone();
    let mut ok = true;
    for n in [5i64, 7] {
        let ne = RingElement::from_int(&p, n);
        let refined = count_pairs_for(set, &rat(300), &[ne.clone()], true).unwrap();
        let phi = oracle3::std_totient(n as u64);
        let classes_ok = refined.len() as u64 == phi;
        // The canonical m values are exactly the residues coprime to n.
        let mut ms: Vec<i64> = refined
            .iter()
            .map(|row| row.m.as_ref().unwrap().coeffs()[0].to_string().parse().unwrap())
            .collect();
        ms.sort_unstable();
        let want_ms: Vec<i64> = (1..=n).filter(|m| {
            let mut a = *m;
            let mut b = n;
            while b != 0 {
                let t = b;
                b = a % b;
                a = t;
            }
            a == 1
        })
        .collect();
        let ms_ok = ms == want_ms;
        let total: u64 = refined.iter().map(|r| r.count).sum();
        let independent = independent_pair_count_q3(set, 300, n);
        let partition_ok = total == independent;
        let max = refined.iter().map(|r| r.count).max().unwrap() as f64;
        let min = refined.iter().map(|r| r.count).min().unwrap() as f64;
        let spread_ok = (max - min) / max <= 0.10;
        println!(
            "  n={n}: {} classes (m = {ms:?}), total {total} vs independent {independent}, \
             per-class min {min} max {max} spread {:.2}%",
            refined.len(),
            100.0 * (max - min) / max
        );
        ok &= classes_ok && ms_ok && partition_ok && spread_ok;
    }
    let ok = report(
        "6 (orbit partition and equidistribution)",
        ok,
        &format!(
            "m-refined counts at R=300 partition exactly into phi(n) classes, pairwise within 10%, in {:.2?}",
            t0.elapsed()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_7_pair_count_oracle_equivalence() {
    let t0 = Instant::now();
    let mut ok = true;
    for r in [10i64, 25, 40] {
        let set = generate_orbit(3, &rat(r)).unwrap();
        let counted = count_pairs(&set, &rat(r)).unwrap();
        let oracle = oracle3::brute_count_map(&rat(r)).unwrap();
        let mut equal = counted.len() == oracle.len();
        if equal {
            let p = set.poly().clone();
            for (n, c) in &oracle {
                let key = RingElement::from_int(&p, *n).key();
                if counted.get(&key).map(|d| d.count) != Some(*c) {
                    equal = false;
                    println!("  R={r} n={n}: mismatch");
                    break;
                }
            }
        }
        println!("  R={r}: {} determinants ({})", oracle.len(), if equal { "equal" } else { "MISMATCH" });
        ok &= equal;
    }
    let ok = report(
        "7 (pair-count oracle equivalence)",
        ok,
        &format!("exact histogram equality for R in {{10, 25, 40}} in {:.2?}", t0.elapsed()),
    );
    assert!(ok);
}

#[test]
fn criterion_8_tuple_classification_soundness() {
    let t0 = Instant::now();
    let mut ok = true;
    for q in [3u32, 5] {
        let set = generate_orbit(q, &rat(10)).unwrap();
        for (k, r) in [(2usize, 10i64), (3, if q == 3 { 8 } else { 7 })] {
            let opts = CensusOpts { budget: 5_000_000, verify_roundtrip: true };
            let (map, stats) = tuple_census(&set, &rat(r), k, opts).unwrap();
            let tally: u64 = map.values().sum();
            let one_class_each = tally == stats.tuples;
            let good = one_class_each && stats.all_pass() && stats.tuples > 0;
            println!(
                "  q={q} k={k} R={r}: {} tuples, {} classes, eq-criterion checks {} (failed {}), \
                 roundtrips {} (failed {})",
                stats.tuples,
                map.len(),
                stats.eq_criterion_checked,
                stats.eq_criterion_failed,
                stats.roundtrip_checked,
                stats.roundtrip_failed
            );
            for f in &stats.failures {
                println!("    failure: {f}");
            }
            ok &= good;
        }
    }
    let ok = report(
        "8 (tuple classification soundness)",
        ok,
        &format!(
            "every tuple in exactly one class, 100% tail-membership verification, stable \
             witness round trips, in {:.2?}",
            t0.elapsed()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_9_ring_property_suite() {
    let t0 = Instant::now();
    let mut ok = true;
    for q in [3u32, 4, 5, 7] {
        let p = minimal_polynomial(q).unwrap();
        let d = p.degree();
        let mut rng = StdRng::seed_from_u64(0x5ec4e11e + q as u64);
        let mut rand_elem = |rng: &mut StdRng| {
            let coeffs: Vec<BigInt> =
                (0..d).map(|_| BigInt::from(rng.gen_range(-30i64..=30))).collect();
            RingElement::from_coeffs(&p, coeffs)
        };
        // 2000 triples x 5 exact identities = 10^4 axiom checks per q.
        let mut checks = 0u32;
        for _ in 0..2000 {
            let a = rand_elem(&mut rng);
            let b = rand_elem(&mut rng);
            let c = rand_elem(&mut rng);
            let assoc_add = (&a + &b) + c.clone() == a.clone() + (&b + &c);
            let comm_add = &a + &b == &b + &a;
            let assoc_mul = (&a * &b) * c.clone() == a.clone() * (&b * &c);
            let comm_mul = &a * &b == &b * &a;
            let distrib = a.clone() * (&b + &c) == (&a * &b) + (&a * &c);
            checks += 5;
            if !(assoc_add && comm_add && assoc_mul && comm_mul && distrib) {
                println!("  q={q}: axiom failure on {a:?}, {b:?}, {c:?}");
                ok = false;
            }
        }
        assert_eq!(checks, 10_000);
        // 10^3 sign determinations on elements of independently known sign:
        // e = b*lambda - a with |a/b - lambda| > 1/128 (float-certified gap,
        // far above float error), in all four sign/scale variants.
        let lam_f = 2.0 * (std::f64::consts::PI / q as f64).cos();
        let lam = p.lambda();
        let mut signs = 0u32;
        let mut rng2 = StdRng::seed_from_u64(0x0dd5 + q as u64);
        while signs < 1000 {
            let b = rng2.gen_range(1i64..=64);
            let a = rng2.gen_range(-128i64..=128);
            let ratio = a as f64 / b as f64;
            if (ratio - lam_f).abs() < 1.0 / 128.0 {
                continue;
            }
            let want = if lam_f > ratio { 1 } else { -1 };
            let e = lam.scale_i64(b).try_sub(&RingElement::from_int(&p, a)).unwrap();
            let le = &lam * &e;
            for (elem, expect) in [
                (e.clone(), want),
                (e.negate(), -want),
                (le.clone(), want),
                (le.negate(), -want),
            ] {
                if elem.sign() != expect {
                    println!("  q={q}: sign misclassified {elem:?} (want {expect})");
                    ok = false;
                }
                signs += 1;
            }
        }
        assert!(signs >= 1000);
    }
    let ok = report(
        "9 (ring property suite)",
        ok,
        &format!(
            "10^4 exact axiom checks and >= 10^3 certified sign determinations per q in \
             {{3, 4, 5, 7}}, in {:.2?}",
            t0.elapsed()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_10_higher_moment_structural_checks() {
    // The k >= 3 moment integrals have no closed form to reproduce; the
    // acceptance for the higher-moment machinery rests on the structural
    // checks of criterion 8 (disjoint classification, tail-membership
    // verification, witness round trips). This criterion re-runs them at a
    // small scale and additionally confirms that the linearly dependent
    // classes carry the expected sign structure.
    let mut ok = true;
    for q in [3u32, 5] {
        let set = generate_orbit(q, &rat(6)).unwrap();
        let opts = CensusOpts { budget: 2_000_000, verify_roundtrip: true };
        let (map, stats) = tuple_census(&set, &rat(6), 3, opts).unwrap();
        ok &= stats.all_pass() && stats.tuples > 0;
        ok &= map.values().sum::<u64>() == stats.tuples;
        // Leading sign is +1 in every dependent class; a concrete spot
        // check that the class decomposition is the claimed one.
        let e1 = iv(&set, 1, 0);
        let class = classify_tuple(&[e1.clone(), e1.negate(), e1.clone()], &set).unwrap();
        match class {
            TupleClass::Dependent { signs } => ok &= signs == vec![1, -1, 1],
            _ => ok = false,
        }
        println!(
            "  q={q} k=3 R=6: {} tuples across {} classes, all verifications pass: {}",
            stats.tuples,
            map.len(),
            stats.all_pass()
        );
    }
    let ok = report(
        "10 (higher moments via structural checks)",
        ok,
        "no closed form exists for k >= 3 integrals; acceptance rests on criterion 8's \
         decomposition checks, re-confirmed here",
    );
    assert!(ok);
}
