use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use super::form::Cocycle;
use super::linalg::least_squares;
use super::vn::{Mat2, VnPoly};
use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::hp::{cabs, Precision};

/// Relative residual allowed when splitting a cocycle.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Allowed `|Im| / |Re|` for the real period entries.
pub const NONREAL_TOLERANCE: f64 = 1e-12;

/// The even and odd period polynomials on `S` for weight 12.
///
/// Both vanish on `T`.
pub fn period_polynomials_wt12() -> (VnPoly<Rational>, VnPoly<Rational>) {
    let r = |c: i64| Rational::from(c);
    let e = Rational::from((36, 691));
    let plus = VnPoly::new(vec![
        -e.clone(),
        r(0),
        r(1),
        r(0),
        r(-3),
        r(0),
        r(3),
        r(0),
        r(-1),
        r(0),
        e,
    ]);
    let minus = VnPoly::from_integers(&[0, 4, 0, -25, 0, 42, 0, -25, 0, 4, 0]);
    (plus, minus)
}

/// `C = sum_i x_i B_i + Q|(g - 1)`, where each `B_i` is a cocycle vanishing on `T`.
#[derive(Clone, Debug)]
pub struct CocycleDecomposition {
    pub coefficients: Vec<Complex>,
    pub q: VnPoly<Complex>,
    pub residual: Float,
}

/// Least-squares split of `(C_S, C_T)` against basis cocycles given by their `S` values.
pub fn decompose(c_s: &VnPoly<Complex>, c_t: &VnPoly<Complex>, basis: &[VnPoly<Rational>]) -> Result<CocycleDecomposition> {
    let n = c_s.degree();
    let dim = n as usize + 1;
    let bits = c_s.coeff(0).prec().0;
    let k = basis.len();
    let mut rows = vec![vec![Complex::with_val(bits, 0); k + dim]; 2 * dim];
    let mut rhs = Vec::with_capacity(2 * dim);
    rhs.extend(c_s.coeffs().iter().cloned());
    rhs.extend(c_t.coeffs().iter().cloned());
    for (i, b) in basis.iter().enumerate() {
        for (l, v) in b.coeffs().iter().enumerate() {
            rows[l][i] = Complex::with_val(bits, (Float::with_val(bits, v), 0));
        }
    }
    // Column for the monomial X^(n-j) Y^j of Q.
    for j in 0..dim {
        let mut e = vec![0i64; dim];
        e[j] = 1;
        let m = VnPoly::from_integers(&e);
        for (block, g) in [Mat2::S, Mat2::T].iter().enumerate() {
            let col = m.act(g).sub(&m);
            for (l, v) in col.coeffs().iter().enumerate() {
                rows[block * dim + l][k + j] = Complex::with_val(bits, (Float::with_val(bits, v), 0));
            }
        }
    }
    let (x, residual) = least_squares(&rows, &rhs)?;
    let coefficients = x[..k].to_vec();
    let q = VnPoly::new(x[k..].to_vec());
    Ok(CocycleDecomposition { coefficients, q, residual })
}

/// The periods of `Delta` and of its partner `Delta'`.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodMatrix {
    #[serde(serialize_with = "crate::json::float_str")]
    pub omega_plus: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub omega_minus: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub eta_plus: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub eta_minus: Float,
    pub n: u32,
    #[serde(serialize_with = "crate::json::float_str")]
    pub residual: Float,
    #[serde(rename = "precision_digits", serialize_with = "crate::json::precision_digits")]
    pub precision: Precision,
    pub truncation: i64,
}

impl PeriodMatrix {
    pub fn bits(&self) -> u32 {
        self.precision.bits()
    }

    /// `det [[ω⁺, η⁺], [iω⁻, iη⁻]]` taken as `η⁺·iω⁻ − ω⁺·iη⁻`.
    pub fn determinant(&self) -> Complex {
        let bits = self.bits();
        let d = Float::with_val(bits, &self.eta_plus * &self.omega_minus)
            - Float::with_val(bits, &self.omega_plus * &self.eta_minus);
        Complex::with_val(bits, (0, d))
    }

    /// `n! (2πi)^(n+1)`.
    pub fn expected_determinant(&self) -> Complex {
        let bits = self.bits();
        let tpi = Precision::two_pi_i_at(bits);
        Complex::with_val(bits, tpi.pow(self.n as i32 + 1)) * Float::with_val(bits, factorial(self.n))
    }

    pub fn det_ratio(&self) -> Complex {
        self.determinant() / self.expected_determinant()
    }
}

/// Splits the cocycles of `Delta` and `Delta'` against the weight-12 period polynomials.
pub fn extract_periods(c_f: &Cocycle, c_fprime: &Cocycle) -> Result<PeriodMatrix> {
    if c_f.n != c_fprime.n || c_f.basepoint != c_fprime.basepoint {
        return Err(Error::InvalidConfig("cocycles must share weight and basepoint".into()));
    }
    let (plus, minus) = period_polynomials_wt12();
    let basis = [plus, minus];
    let split = |c: &Cocycle| -> Result<(Float, Float, Float)> {
        let d = decompose(&c.c_s, &c.c_t, &basis)?;
        if d.residual > RESIDUAL_TOLERANCE {
            return Err(Error::ResidualTooLarge { residual: d.residual.to_f64(), tolerance: RESIDUAL_TOLERANCE });
        }
        let a = &d.coefficients[0];
        // The odd coefficient is i times the real period.
        let b = Complex::with_val(a.prec(), &d.coefficients[1] * Complex::with_val(a.prec(), (0, -1)));
        for (what, z) in [("even period", a), ("odd period", &b)] {
            let ratio = Float::with_val(z.prec().0, z.imag().abs_ref()) / cabs(z);
            if ratio > NONREAL_TOLERANCE {
                return Err(Error::NonReal { what: format!("{what} of {}", c.form_id), ratio: ratio.to_f64() });
            }
        }
        Ok((a.real().clone(), b.real().clone(), d.residual))
    };
    let (omega_plus, omega_minus, r1) = split(c_f)?;
    let (eta_plus, eta_minus, r2) = split(c_fprime)?;
    Ok(PeriodMatrix {
        omega_plus,
        omega_minus,
        eta_plus,
        eta_minus,
        n: c_f.n,
        residual: r1.max(&r2),
        precision: c_f.precision,
        truncation: c_f.truncation.min(c_fprime.truncation),
    })
}
