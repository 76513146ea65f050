//! Text forms: `"3"`, `"-3/7"`, `"[1,0,1]@GF(2^3)"`, and ring descriptors
//! `GF(5)`, `GF(2^6)`, `Z`, `Z[1/30]`, `Q`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ring::{Elem, ScalarRing};
use super::ScalarError;

impl FromStr for ScalarRing {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ring(s)
    }
}

pub fn parse_ring(s: &str) -> Result<ScalarRing, ScalarError> {
    let s = s.trim();
    let bad = || ScalarError::Parse(format!("unknown ring descriptor {s:?}"));
    match s {
        "Z" => return Ok(ScalarRing::integers()),
        "Q" => return Ok(ScalarRing::rationals_all()),
        _ => {}
    }
    if let Some(inner) = s.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
        let n: u64 = inner.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(ScalarRing::localization(n));
    }
    if let Some(inner) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
        let (p, k) = match inner.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim().parse::<usize>().map_err(|_| bad())?),
            None => (inner.trim(), 1),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        return ScalarRing::build_extension(p, k);
    }
    Err(bad())
}

fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let bad = || ScalarError::Parse(format!("malformed scalar {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// Parses a scalar literal as an element of `ring`. Integer and fraction
/// literals reduce into finite fields when the denominator is invertible.
pub fn parse_scalar(s: &str, ring: &ScalarRing) -> Result<Elem, ScalarError> {
    let s = s.trim();
    if let Some((coeffs, field)) = s.split_once('@') {
        let field = parse_ring(field)?;
        if field != *ring {
            return Err(ScalarError::RingMismatch(field.to_string(), ring.to_string()));
        }
        let inner = coeffs
            .trim()
            .strip_prefix('[')
            .and_then(|c| c.strip_suffix(']'))
            .ok_or_else(|| ScalarError::Parse(format!("malformed extension literal {s:?}")))?;
        let p = ring.characteristic();
        let mut out = Vec::new();
        for part in inner.split(',').filter(|x| !x.trim().is_empty()) {
            let v: i64 = part
                .trim()
                .parse()
                .map_err(|_| ScalarError::Parse(format!("malformed coefficient in {s:?}")))?;
            out.push(v.rem_euclid(p as i64) as u64);
        }
        if out.len() > ring.degree().max(1) {
            return Err(ScalarError::Parse(format!("too many coefficients in {s:?}")));
        }
        return Ok(ring.from_coeffs(&out));
    }
    ring.from_rational(parse_rational(s)?)
}
