//! Serialization helpers: rationals as `"p/q"` strings and floats as
//! decimal strings.

use rug::{Float, Rational};
use serde::Serializer;

use crate::scalar::Symbol;

pub fn rational_str<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn symbol_str<S: Serializer>(sym: &Symbol, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(sym.name())
}

/// A float paired with the number of digits to print.
pub fn decimal(x: &Float, digits: u32) -> serde_json::Value {
    serde_json::Value::String(crate::hp::format_float(x, digits))
}

/// Digits worth printing for a float carried at `bits` of precision.
pub fn digits_for_bits(bits: u32) -> u32 {
    let useful = bits.saturating_sub(crate::hp::GUARD_BITS).max(4);
    (useful as f64 / std::f64::consts::LOG2_10).floor() as u32
}

pub fn float_str<S: Serializer>(x: &Float, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::hp::format_float(x, digits_for_bits(x.prec())))
}

pub fn precision_digits<S: Serializer>(p: &crate::hp::Precision, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u32(p.digits())
}

/// A complex number as `{"re": "...", "im": "..."}`.
pub fn complex_str<S: Serializer>(z: &rug::Complex, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let digits = digits_for_bits(z.prec().0);
    let mut map = s.serialize_map(Some(2))?;
    map.serialize_entry("re", &crate::hp::format_float(z.real(), digits))?;
    map.serialize_entry("im", &crate::hp::format_float(z.imag(), digits))?;
    map.end()
}
