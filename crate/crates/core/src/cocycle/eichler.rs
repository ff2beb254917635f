use rug::ops::Pow;
use rug::{Complex, Float};

use super::quadrature::gauss_legendre;
use super::vn::VnPoly;
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::hp::{cabs, Precision};
use crate::qexact::QLaurent;

/// Knobs for numerical Eichler integrals.
#[derive(Clone, Debug)]
pub struct EichlerOptions {
    pub precision: Precision,
    /// Lowest imaginary part a path may reach.
    pub y_min: f64,
    pub start_order: usize,
    pub max_order: usize,
    /// Quadrature agreement is required to `10^-(digits - margin)`.
    pub margin: u32,
    /// The truncation tail must be below `10^-(digits - tail_margin)` relative.
    pub tail_margin: u32,
}

impl Default for EichlerOptions {
    fn default() -> Self {
        EichlerOptions {
            precision: Precision::default(),
            y_min: 0.5,
            start_order: 32,
            max_order: 1024,
            margin: 5,
            tail_margin: 10,
        }
    }
}

impl EichlerOptions {
    pub fn with_precision(precision: Precision) -> Self {
        EichlerOptions { precision, ..Default::default() }
    }
}

/// `∫ (2πi)^(n+1) f(z) (X - zY)^n dz` along a segment.
#[derive(Clone, Debug)]
pub struct EichlerIntegral {
    pub value: VnPoly<Complex>,
    /// Max-norm change between the last two quadrature orders.
    pub error_estimate: Float,
    pub order: usize,
}

/// A q-series prepared for repeated evaluation.
pub struct SeriesEvaluator {
    valuation: i64,
    coeffs: Vec<Float>,
    bits: u32,
}

impl SeriesEvaluator {
    pub fn new(f: &QLaurent, bits: u32) -> Self {
        let coeffs = f.coeffs().iter().map(|c| Float::with_val(bits, c)).collect();
        SeriesEvaluator { valuation: f.valuation(), coeffs, bits }
    }

    /// The truncated sum at `z`.
    pub fn eval(&self, z: &Complex, two_pi_i: &Complex) -> Complex {
        let q = Complex::with_val(self.bits, two_pi_i * z).exp();
        let mut acc = Complex::with_val(self.bits, 0);
        for c in self.coeffs.iter().rev() {
            acc *= &q;
            acc += c;
        }
        if self.valuation != 0 {
            acc *= q.pow(self.valuation as i32);
        }
        acc
    }

    /// Crude bound on the omitted tail at height `y`, relative to the size of the kept terms.
    pub fn relative_tail(&self, y: f64) -> Float {
        let bits = self.bits;
        let pi = Precision::pi_at(bits);
        let aq = Float::with_val(bits, -(pi * 2u32) * y).exp();
        let t = self.valuation + self.coeffs.len() as i64 - 1;
        let mut scale = Float::new(bits);
        for (i, c) in self.coeffs.iter().enumerate() {
            let m = self.valuation + i as i64;
            scale += Float::with_val(bits, c.abs_ref()) * Float::with_val(bits, aq.clone().pow(m as i32));
        }
        if scale.is_zero() {
            return scale;
        }
        let lead = self
            .coeffs
            .iter()
            .rev()
            .take(3)
            .map(|c| Float::with_val(bits, c.abs_ref()))
            .fold(Float::new(bits), |a, b| a.max(&b));
        let one_minus = Float::with_val(bits, 1) - &aq;
        lead * Float::with_val(bits, aq.clone().pow(t as i32)) / one_minus / scale
    }
}

/// Integrates along the straight segment `from -> to`.
pub fn eichler_integral(
    f: &QLaurent,
    n: u32,
    from: &Complex,
    to: &Complex,
    opts: &EichlerOptions,
) -> Result<EichlerIntegral> {
    let bits = opts.precision.bits();
    let eval = SeriesEvaluator::new(f, bits);
    eichler_integral_prepared(&eval, n, from, to, opts)
}

pub(crate) fn eichler_integral_prepared(
    f: &SeriesEvaluator,
    n: u32,
    from: &Complex,
    to: &Complex,
    opts: &EichlerOptions,
) -> Result<EichlerIntegral> {
    let bits = opts.precision.bits();
    if from == to || f.coeffs.is_empty() {
        return Ok(EichlerIntegral {
            value: VnPoly::zero(n, bits),
            error_estimate: Float::new(bits),
            order: 0,
        });
    }
    let y = from.imag().to_f64().min(to.imag().to_f64());
    if y < opts.y_min {
        return Err(Error::PathTooLow { im: y, min: opts.y_min });
    }
    let tail_tol = opts.precision.tolerance(opts.tail_margin);
    let tail = f.relative_tail(y);
    if tail > tail_tol {
        return Err(Error::TailBound { bound: tail.to_f64(), tolerance: tail_tol.to_f64(), im: y });
    }

    let tol = opts.precision.tolerance(opts.margin);
    let mut order = opts.start_order;
    let mut prev = integrate(f, n, from, to, order, bits);
    loop {
        order *= 2;
        if order > opts.max_order {
            let change = prev.1.to_f64();
            return Err(Error::QuadratureNoConvergence { order: order / 2, change });
        }
        let cur = integrate(f, n, from, to, order, bits);
        let diff = cur.0.sub(&prev.0).norm();
        let scale = cur.0.norm().max(&cur.1);
        if diff <= Float::with_val(bits, &tol * &scale) {
            return Ok(EichlerIntegral { value: cur.0, error_estimate: diff, order });
        }
        prev = (cur.0, diff);
    }
}

/// One Gauss-Legendre pass. The second component is the integral of
/// `|(2πi)^(n+1) f|` along the path, a size against which to judge agreement
/// when the value itself cancels to something small.
fn integrate(
    f: &SeriesEvaluator,
    n: u32,
    from: &Complex,
    to: &Complex,
    order: usize,
    bits: u32,
) -> (VnPoly<Complex>, Float) {
    let rule = gauss_legendre(order, bits);
    let two_pi_i = Precision::two_pi_i_at(bits);
    let lead = Complex::with_val(bits, two_pi_i.clone().pow(n as i32 + 1));
    let half = Complex::with_val(bits, to - from) / 2u32;
    let mid = Complex::with_val(bits, to + from) / 2u32;
    let binoms: Vec<Float> = (0..=n).map(|j| Float::with_val(bits, binomial(n, j))).collect();
    let mut acc = vec![Complex::with_val(bits, 0); n as usize + 1];
    let mut mag = Float::new(bits);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let z = Complex::with_val(bits, &half * x) + &mid;
        let fz = f.eval(&z, &two_pi_i) * &lead * w;
        mag += cabs(&fz);
        let minus_z = Complex::with_val(bits, -&z);
        let mut zp = Complex::with_val(bits, 1);
        for (j, b) in binoms.iter().enumerate() {
            acc[j] += Complex::with_val(bits, &fz * &zp) * b;
            zp *= &minus_z;
        }
    }
    let scale = cabs(&half);
    let value = VnPoly::new(acc.into_iter().map(|c| c * &half).collect());
    (value, mag * scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::delta;

    fn c(re: f64, im: f64) -> Complex {
        Complex::with_val(Precision::default().bits(), (re, im))
    }

    /// Termwise antiderivative of `q^m z^j`:
    /// `∫ e^(kz) z^j dz = e^(kz) sum_l (-1)^l j!/(j-l)! z^(j-l) / k^(l+1)`, `k = 2πim`.
    fn closed_form(f: &QLaurent, n: u32, a: &Complex, b: &Complex) -> VnPoly<Complex> {
        let bits = a.prec().0;
        let tpi = Precision::two_pi_i_at(bits);
        let prim = |z: &Complex, m: i64, j: u32| -> Complex {
            let k = Complex::with_val(bits, &tpi * m);
            let e = Complex::with_val(bits, &k * z).exp();
            let mut s = Complex::with_val(bits, 0);
            let mut falling = Float::with_val(bits, 1);
            for l in 0..=j {
                let zp = Complex::with_val(bits, z.clone().pow(j - l));
                let kp = Complex::with_val(bits, k.clone().pow(l + 1));
                let term = zp / kp * &falling;
                if l % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
                falling *= j - l;
            }
            e * s
        };
        let lead = Complex::with_val(bits, tpi.clone().pow(n as i32 + 1));
        let coeffs = (0..=n)
            .map(|j| {
                let mut acc = Complex::with_val(bits, 0);
                for (m, am) in f.terms() {
                    let d = prim(b, m, j) - prim(a, m, j);
                    acc += d * Float::with_val(bits, am);
                }
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc * &lead * Float::with_val(bits, binomial(n, j)) * sign
            })
            .collect();
        VnPoly::new(coeffs)
    }

    #[test]
    fn empty_path() {
        let d = delta(30);
        let z = c(0.0, 1.0);
        let r = eichler_integral(&d, 10, &z, &z, &EichlerOptions::default()).unwrap();
        assert!(r.value.norm().is_zero());
    }

    #[test]
    fn matches_termwise_antiderivative() {
        let d = delta(30);
        let (a, b) = (c(0.0, 1.0), c(0.0, 2.0));
        let r = eichler_integral(&d, 10, &a, &b, &EichlerOptions::default()).unwrap();
        let exact = closed_form(&d, 10, &a, &b);
        let err = r.value.sub(&exact).norm() / exact.norm();
        assert!(err < 1e-33, "{err}");
        let (a, b) = (c(0.3, 0.9), c(-0.2, 1.7));
        let r = eichler_integral(&d, 10, &a, &b, &EichlerOptions::default()).unwrap();
        let exact = closed_form(&d, 10, &a, &b);
        assert!(r.value.sub(&exact).norm() / exact.norm() < 1e-33);
    }

    #[test]
    fn additivity() {
        let d = delta(30);
        let (a, b, m) = (c(0.0, 2.0), c(0.5, 1.0), c(-0.3, 1.4));
        let o = EichlerOptions::default();
        let whole = eichler_integral(&d, 10, &a, &b, &o).unwrap().value;
        let parts = eichler_integral(&d, 10, &a, &m, &o)
            .unwrap()
            .value
            .add(&eichler_integral(&d, 10, &m, &b, &o).unwrap().value);
        assert!(whole.sub(&parts).norm() < 1e-20);
    }

    #[test]
    fn low_paths_are_refused() {
        let d = delta(30);
        let o = EichlerOptions::default();
        let e = eichler_integral(&d, 10, &c(0.0, 1.0), &c(0.0, 0.3), &o);
        assert!(matches!(e, Err(Error::PathTooLow { .. })));
        let short = delta(5);
        let e = eichler_integral(&short, 10, &c(0.0, 1.0), &c(0.0, 0.6), &o);
        assert!(matches!(e, Err(Error::TailBound { .. })));
    }
}
