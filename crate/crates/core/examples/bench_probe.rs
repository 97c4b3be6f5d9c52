// Temporary probe; removed before finalizing.
use hecke_orbits::moments::{count_pairs_for, phi_q, sv_constant, PhiMode};
use hecke_orbits::orbit::generate_orbit;
use hecke_orbits::ring::RingElement;
use num_rational::BigRational;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let q: u32 = args[1].parse().unwrap();
    let r: i64 = args[2].parse().unwrap();
    let t0 = Instant::now();
    let set = generate_orbit(q, &BigRational::from_integer(r.into())).unwrap();
    println!("gen: {} elements in {:.2?}", set.len(), t0.elapsed());
    let p = set.poly().clone();
    let ns: Vec<RingElement> = if q == 3 {
        (1..=4).map(|n| RingElement::from_int(&p, n)).collect()
    } else {
        vec![RingElement::one(&p), p.lambda()]
    };
    let c = sv_constant(q).unwrap().value;
    for n in ns {
        let t1 = Instant::now();
        let rows = count_pairs_for(&set, &BigRational::from_integer(r.into()), &[n.clone()], false).unwrap();
        let count = rows[0].count;
        let phi_f = phi_q(&n, &set, PhiMode::Fundamental).unwrap();
        let phi_p = phi_q(&n, &set, PhiMode::Paper).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let pred_f = phi_f as f64 * pi2 / (n.to_f64() * c);
        let pred_p = phi_p as f64 * pi2 / (n.to_f64() * c);
        println!(
            "n={}: count={} count/R^2={:.4} pred(paper phi={})={:.4} pred(fund phi={})={:.4}  [{:.2?}]",
            n,
            count,
            count as f64 / (r * r) as f64,
            phi_p,
            pred_p,
            phi_f,
            pred_f,
            t1.elapsed()
        );
    }
}
