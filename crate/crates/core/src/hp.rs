//! Working precision and small helpers around `rug` floats.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::error::{Error, Result};

/// Extra bits carried beyond the requested decimal digits.
pub const GUARD_BITS: u32 = 32;

/// Target accuracy in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision { digits: 40 }
    }
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        assert!(digits > 0, "precision needs at least one digit");
        Precision { digits }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    /// Binary precision used for every float at this setting.
    pub fn bits(self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn zero(self) -> Float {
        Float::with_val(self.bits(), 0)
    }

    pub fn czero(self) -> Complex {
        Complex::with_val(self.bits(), 0)
    }

    pub fn pi(self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    /// `2 pi i`.
    pub fn two_pi_i(self) -> Complex {
        Self::two_pi_i_at(self.bits())
    }

    pub fn pi_at(bits: u32) -> Float {
        Float::with_val(bits, Constant::Pi)
    }

    pub fn two_pi_i_at(bits: u32) -> Complex {
        Complex::with_val(bits, (0, Self::pi_at(bits) * 2u32))
    }

    /// `10^-(digits - margin)`.
    pub fn tolerance(self, margin: u32) -> Float {
        let e = self.digits.saturating_sub(margin) as i32;
        Float::with_val(self.bits(), 10).pow(-e)
    }
}

pub fn rational_to_float(r: &Rational, bits: u32) -> Float {
    Float::with_val(bits, r)
}

pub fn rational_to_complex(r: &Rational, bits: u32) -> Complex {
    Complex::with_val(bits, (Float::with_val(bits, r), 0))
}

pub fn cabs(z: &Complex) -> Float {
    Float::with_val(z.prec().0, z.abs_ref())
}

/// Significant-digit decimal rendering, stable across runs.
pub fn format_float(x: &Float, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits as usize))
}

pub fn format_complex(z: &Complex, digits: u32) -> String {
    let re = format_float(z.real(), digits);
    let im = z.imag();
    if im.is_sign_negative() && !im.is_zero() {
        format!("{re} - {}i", format_float(&Float::with_val(im.prec(), -im), digits))
    } else {
        format!("{re} + {}i", format_float(im, digits))
    }
}

/// Parses `"2i"`, `"0.5+1.2i"`, `"-0.4 + 0.95i"`, `"i"`, `"3"`.
pub fn parse_complex(s: &str, bits: u32) -> Result<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("cannot read complex number {s:?}"));
    let real = |x: &str| -> Result<Float> {
        if x.is_empty() || x == "+" {
            return Ok(Float::with_val(bits, 1));
        }
        if x == "-" {
            return Ok(Float::with_val(bits, -1));
        }
        Float::parse(x).map(|v| Float::with_val(bits, v)).map_err(|_| bad())
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::with_val(bits, (real(&t)?, 0)));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = Float::parse(&body[..i]).map(|v| Float::with_val(bits, v)).map_err(|_| bad())?;
            Ok(Complex::with_val(bits, (re, real(&body[i..])?)))
        }
        None => Ok(Complex::with_val(bits, (0, real(body)?))),
    }
}
