use rug::{Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::QLaurent;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Wire {
    weight: i64,
    valuation: i64,
    truncation: i64,
    coeffs: Vec<[String; 2]>,
}

impl Serialize for QLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            weight: self.weight(),
            valuation: self.valuation(),
            truncation: self.truncation(),
            coeffs: self
                .coeffs()
                .iter()
                .map(|c| [c.numer().to_string(), c.denom().to_string()])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        from_wire(w).map_err(serde::de::Error::custom)
    }
}

fn from_wire(w: Wire) -> Result<QLaurent> {
    if w.truncation < w.valuation - 1 {
        return Err(Error::TruncationUnderflow);
    }
    if w.coeffs.len() as i64 != w.truncation - w.valuation + 1 {
        return Err(Error::Parse(format!(
            "expected {} coefficients, found {}",
            w.truncation - w.valuation + 1,
            w.coeffs.len()
        )));
    }
    let coeffs = w
        .coeffs
        .iter()
        .map(|[n, d]| parse_fraction(n, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(QLaurent::new(w.weight, w.valuation, coeffs))
}

fn parse_fraction(n: &str, d: &str) -> Result<Rational> {
    let n: Integer = n.parse().map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
    let d: Integer = d.parse().map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
    if d == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rational::from((n, d)))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        Some((n, d)) => parse_fraction(n.trim(), d.trim()),
        None => parse_fraction(s.trim(), "1"),
    }
}
