//! Line-based text format for orbit sets.
//!
//! Header: `q=<q> R=<radius>` with the radius an integer or `num/den`.
//! Body: one vector per line, the two coordinates space-separated in the
//! canonical ring-element form. Lines are emitted in key order, so the
//! format is byte-deterministic for a given set.
//!
//! Witness matrices are not part of the format; imported sets recover them
//! on demand by slope reduction.

use super::{OrbitSet, Vec2, VecKey};
use crate::error::Error;
use crate::ring::RingElement;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};

fn radius_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_radius(s: &str) -> Result<BigRational, Error> {
    let parse_int = |t: &str| -> Result<BigInt, Error> {
        t.parse().map_err(|_| Error::Parse(format!("bad radius {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d <= BigInt::from(0) {
                return Err(Error::Parse(format!("bad radius {s:?}")));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => match s.split_once('.') {
            // Decimal radii like 2.5 are accepted and kept exact.
            Some((whole, frac)) => {
                if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad radius {s:?}")));
                }
                let scale = BigInt::from(10u32).pow(frac.len() as u32);
                let whole_i = parse_int(whole)?;
                let frac_i = parse_int(frac)?;
                let neg = whole.starts_with('-');
                let total = &whole_i * &scale + if neg { -frac_i } else { frac_i };
                Ok(BigRational::new(total, scale))
            }
            None => Ok(BigRational::from_integer(parse_int(s)?)),
        },
    }
}

/// Write the set in the line-based text format.
pub fn write_orbit<W: Write>(set: &OrbitSet, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "q={} R={}", set.q(), radius_string(set.radius()))?;
    for v in set.iter_vectors() {
        writeln!(out, "{} {}", v.x.serial_string(), v.y.serial_string())?;
    }
    Ok(())
}

/// Read a set written by [`write_orbit`]. Witnesses are not stored.
pub fn read_orbit<R: BufRead>(input: R) -> Result<OrbitSet, Error> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty orbit file".into()))?
        .map_err(|e| Error::Io { path: "<orbit stream>".into(), source: e })?;
    let mut q: Option<u32> = None;
    let mut radius: Option<BigRational> = None;
    for field in header.split_whitespace() {
        if let Some(v) = field.strip_prefix("q=") {
            q = Some(v.parse().map_err(|_| Error::Parse(format!("bad header {header:?}")))?);
        } else if let Some(v) = field.strip_prefix("R=") {
            radius = Some(parse_radius(v)?);
        }
    }
    let q = q.ok_or_else(|| Error::Parse(format!("missing q in header {header:?}")))?;
    let radius = radius.ok_or_else(|| Error::Parse(format!("missing R in header {header:?}")))?;
    let poly = crate::ring::minimal_polynomial(q)?;
    let mut elements: BTreeMap<VecKey, Option<super::Mat2>> = BTreeMap::new();
    for line in lines {
        let line = line.map_err(|e| Error::Io { path: "<orbit stream>".into(), source: e })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (xs, ys) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad orbit line {line:?}")))?;
        let x = RingElement::parse(&poly, xs)?;
        let y = RingElement::parse(&poly, ys)?;
        elements.insert(Vec2::new(x, y).key(), None);
    }
    Ok(OrbitSet::from_parts(poly, radius, elements))
}
