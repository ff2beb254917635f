use std::collections::{BTreeMap, HashMap};

use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

use super::expansion::BiExpansion;
use crate::cocycle::Mat2;
use crate::error::{Error, Result};
use crate::hp::{cabs, Precision};
use crate::scalar::{PeriodScalar, SymbolValues};

/// Points below this height are refused by [`evaluate`].
pub const EVAL_Y_MIN: f64 = 0.5;

/// The value of a truncated expansion together with a bound on what was cut off.
#[derive(Clone, Debug, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "crate::json::complex_str")]
    pub value: Complex,
    #[serde(serialize_with = "crate::json::float_str")]
    pub tail: Float,
}

/// `sum a_(k,m,n) L^k q^m qbar^n` at `z`, with `q = e^(2πiz)` and `L = -2π Im z`.
///
/// The tail estimate assumes the coefficients beyond the truncation are no
/// larger than the last three stored ones, for each power of `L` separately.
pub fn evaluate(f: &BiExpansion, z: &Complex, values: &SymbolValues, precision: Precision) -> Result<Evaluation> {
    let bits = precision.bits();
    let y = z.imag().to_f64();
    if y.is_nan() || y < EVAL_Y_MIN {
        return Err(Error::PathTooLow { im: y, min: EVAL_Y_MIN });
    }
    let pi = Precision::pi_at(bits);
    let l = Float::with_val(bits, -(pi * 2u32) * z.imag());
    let q = Complex::with_val(bits, Precision::two_pi_i_at(bits) * z).exp();
    let qbar = Complex::with_val(bits, q.conj_ref());
    let mut q_pow: HashMap<i64, Complex> = HashMap::new();
    let mut qbar_pow: HashMap<i64, Complex> = HashMap::new();
    let mut l_pow: HashMap<i64, Float> = HashMap::new();

    // Largest numeric coefficient near the truncation, per power of L.
    let t = f.truncation();
    let mut edge: BTreeMap<i64, Float> = BTreeMap::new();
    let mut value = Complex::with_val(bits, 0);
    for (&(k, m, n), c) in f.terms() {
        let c = c.evaluate(values);
        if m.max(n) > t - 3 {
            let e = edge.entry(k).or_insert_with(|| Float::new(bits));
            let a = Float::with_val(bits, c.abs_ref());
            if a > *e {
                *e = a;
            }
        }
        let lk = l_pow.entry(k).or_insert_with(|| Float::with_val(bits, l.clone().pow(k as i32)));
        let qm = q_pow.entry(m).or_insert_with(|| Complex::with_val(bits, q.clone().pow(m as i32)));
        let mut term = Complex::with_val(bits, &*qm * &c) * &*lk;
        if n != 0 {
            let qn = qbar_pow.entry(n).or_insert_with(|| Complex::with_val(bits, qbar.clone().pow(n as i32)));
            term *= &*qn;
        }
        value += term;
    }

    let aq = cabs(&q);
    let geometric = Float::with_val(bits, aq.clone().pow(t as i32 + 1)) / (Float::with_val(bits, 1) - &aq);
    let mut tail = Float::new(bits);
    for (k, a) in edge {
        let lk = Float::with_val(bits, l.clone().pow(k as i32)).abs();
        // Both the q and the qbar directions.
        tail += a * lk * &geometric * 2u32;
    }
    Ok(Evaluation { value, tail })
}

/// Numerical values for the symbols: `sigma`, `tau` as given, `alpha` from
/// its symbolic value, and `zeta = zeta(zeta_arg)`.
pub fn symbol_values(sigma: &Float, tau: &Float, alpha: &PeriodScalar, zeta_arg: u32, bits: u32) -> SymbolValues {
    let mut v = SymbolValues {
        sigma: Float::with_val(bits, sigma),
        tau: Float::with_val(bits, tau),
        alpha: Float::new(bits),
        zeta: Float::with_val(bits, Float::zeta_u(zeta_arg)),
    };
    v.alpha = alpha.evaluate(&v);
    v
}

/// How far `F(γz)` is from `(cz+d)^r (c zbar+d)^s F(z)`.
#[derive(Clone, Debug, Serialize)]
pub struct ModularityResidual {
    #[serde(serialize_with = "crate::json::float_str")]
    pub absolute: Float,
    /// `absolute / max(|F(γz)|, |(cz+d)^r (c zbar+d)^s F(z)|)`.
    #[serde(serialize_with = "crate::json::float_str")]
    pub relative: Float,
    /// Sum of the tail estimates at both points, scaled like the residual.
    #[serde(serialize_with = "crate::json::float_str")]
    pub tail: Float,
}

pub fn modularity_check(
    f: &BiExpansion,
    gamma: &Mat2,
    z: &Complex,
    values: &SymbolValues,
    precision: Precision,
) -> Result<ModularityResidual> {
    let bits = precision.bits();
    let gz = gamma.act(z);
    let at_gz = evaluate(f, &gz, values, precision)?;
    let at_z = evaluate(f, z, values, precision)?;
    let j = Complex::with_val(bits, z * gamma.c) + gamma.d;
    let jbar = Complex::with_val(bits, j.conj_ref());
    let factor = Complex::with_val(bits, j.pow(f.r() as i32)) * jbar.pow(f.s() as i32);
    let rhs = Complex::with_val(bits, &at_z.value * &factor);
    let absolute = cabs(&Complex::with_val(bits, &at_gz.value - &rhs));
    let scale = cabs(&at_gz.value).max(&cabs(&rhs));
    let tail = at_gz.tail + at_z.tail * cabs(&factor);
    let relative = if scale.is_zero() { absolute.clone() } else { Float::with_val(bits, &absolute / &scale) };
    Ok(ModularityResidual { absolute, relative, tail })
}
