//! The single-valued involution on the de Rham span of `Delta` and `Delta'`,
//! and the scalar invariants of the period matrix.

use rug::ops::Pow;
use rug::{Complex, Float};
use serde::Serialize;

use crate::cocycle::PeriodMatrix;
use crate::error::{Error, Result};
use crate::hp::{cabs, Precision};

/// Allowed `|Im| / |z|` for quantities that must be real.
pub const REALITY_TOLERANCE: f64 = 1e-10;

type Mat = [[Complex; 2]; 2];

/// `P` with rows `f, f'` and columns `P+, P-`.
pub fn period_matrix_complex(p: &PeriodMatrix) -> Mat {
    let bits = p.bits();
    let re = |x: &Float| Complex::with_val(bits, (x, 0));
    let im = |x: &Float| Complex::with_val(bits, (0, x));
    [[re(&p.omega_plus), im(&p.omega_minus)], [re(&p.eta_plus), im(&p.eta_minus)]]
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let bits = a[0][0].prec().0;
    let e = |i: usize, j: usize| {
        Complex::with_val(bits, &a[i][0] * &b[0][j]) + Complex::with_val(bits, &a[i][1] * &b[1][j])
    };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_det(a: &Mat) -> Complex {
    let bits = a[0][0].prec().0;
    Complex::with_val(bits, &a[0][0] * &a[1][1]) - Complex::with_val(bits, &a[0][1] * &a[1][0])
}

fn mat_inv(a: &Mat) -> Result<Mat> {
    let bits = a[0][0].prec().0;
    let d = mat_det(a);
    if d.is_zero() {
        return Err(Error::SingularSystem);
    }
    let s = |x: &Complex, neg: bool| {
        let v = Complex::with_val(bits, x / &d);
        if neg {
            -v
        } else {
            v
        }
    };
    Ok([[s(&a[1][1], false), s(&a[0][1], true)], [s(&a[1][0], true), s(&a[0][0], false)]])
}

/// The matrix of `s` on row coordinates in the basis `(f, f')`: `conj(P) P^-1`.
///
/// A class `x` has Betti coordinates `xP`; `s(x)` is the class whose Betti
/// coordinates are `conj(xP)`.
pub fn single_valued_operator(p: &Mat) -> Result<Mat> {
    let bits = p[0][0].prec().0;
    let conj = |z: &Complex| Complex::with_val(bits, z.conj_ref());
    let pbar = [[conj(&p[0][0]), conj(&p[0][1])], [conj(&p[1][0]), conj(&p[1][1])]];
    Ok(mat_mul(&pbar, &mat_inv(p)?))
}

fn real_part(z: &Complex, what: &str) -> Result<Float> {
    let size = cabs(z);
    if !size.is_zero() {
        let ratio = Float::with_val(size.prec(), z.imag().abs_ref()) / &size;
        if ratio > REALITY_TOLERANCE {
            return Err(Error::NonReal { what: what.to_string(), ratio: ratio.to_f64() });
        }
    }
    Ok(z.real().clone())
}

/// The explicit single-valued period matrix
/// `(i / det P) [[η⁺ω⁻ + ω⁺η⁻, 2ω⁺ω⁻], [−2η⁺η⁻, −(η⁺ω⁻ + ω⁺η⁻)]]`.
#[derive(Clone, Debug, Serialize)]
pub struct SvMatrix {
    #[serde(serialize_with = "float_grid")]
    pub entries: [[Float; 2]; 2],
    #[serde(skip)]
    pub periods: PeriodMatrix,
}

fn float_grid<S: serde::Serializer>(m: &[[Float; 2]; 2], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let digits = crate::json::digits_for_bits(m[0][0].prec());
    let mut seq = s.serialize_seq(Some(2))?;
    for row in m {
        let r: Vec<String> = row.iter().map(|x| crate::hp::format_float(x, digits)).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl SvMatrix {
    /// Coefficient of `f'` in `s(f)`.
    pub fn sigma(&self) -> &Float {
        &self.entries[0][1]
    }

    /// Coefficient of `f` in `s(f)`.
    pub fn tau(&self) -> &Float {
        &self.entries[1][1]
    }

    pub fn trace(&self) -> Float {
        Float::with_val(self.entries[0][0].prec(), &self.entries[0][0] + &self.entries[1][1])
    }

    /// `max |M M - 1|`.
    pub fn square_residual(&self) -> Float {
        let m = &self.entries;
        let bits = m[0][0].prec();
        let e = |i: usize, j: usize| {
            let v = Float::with_val(bits, &m[i][0] * &m[0][j]) + Float::with_val(bits, &m[i][1] * &m[1][j]);
            if i == j {
                v - 1u32
            } else {
                v
            }
        };
        [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
            .into_iter()
            .map(|x| x.abs())
            .fold(Float::new(bits), |a, b| a.max(&b))
    }
}

pub fn sv_matrix(p: &PeriodMatrix) -> Result<SvMatrix> {
    let bits = p.bits();
    let det = p.determinant();
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let f = |x: &Float, y: &Float| Float::with_val(bits, x * y);
    let cross = f(&p.eta_plus, &p.omega_minus) + f(&p.omega_plus, &p.eta_minus);
    let raw = [
        [cross.clone(), f(&p.omega_plus, &p.omega_minus) * 2u32],
        [-(f(&p.eta_plus, &p.eta_minus) * 2u32), -cross],
    ];
    let scale = Complex::with_val(bits, (0, 1)) / &det;
    let entry = |x: &Float| real_part(&Complex::with_val(bits, &scale * x), "single-valued period matrix entry");
    let entries = [
        [entry(&raw[0][0])?, entry(&raw[0][1])?],
        [entry(&raw[1][0])?, entry(&raw[1][1])?],
    ];
    Ok(SvMatrix { entries, periods: p.clone() })
}

/// `ρ = τ/σ = −(η⁺/ω⁺ + η⁻/ω⁻)/2`.
pub fn rho(p: &PeriodMatrix) -> Float {
    let bits = p.bits();
    let s = Float::with_val(bits, &p.eta_plus / &p.omega_plus) + Float::with_val(bits, &p.eta_minus / &p.omega_minus);
    -s / 2u32
}

#[derive(Clone, Debug)]
pub struct PeriodInvariants {
    pub det: Complex,
    pub perm: Complex,
    pub det_ratio: Complex,
    pub petersson: Float,
}

pub fn invariants_of_p(p: &PeriodMatrix) -> Result<PeriodInvariants> {
    let bits = p.bits();
    let det = p.determinant();
    let cross = Float::with_val(bits, &p.eta_plus * &p.omega_minus) + Float::with_val(bits, &p.omega_plus * &p.eta_minus);
    let perm = Complex::with_val(bits, (0, cross));
    let det_ratio = p.det_ratio();
    // −2ω⁺ω⁻ / (2^(n+1) (2πi)^(2n+2))
    let n = p.n as i32;
    let tpi = Precision::two_pi_i_at(bits);
    let denom = Complex::with_val(bits, tpi.pow(2 * n + 2)) * Float::with_val(bits, Float::i_exp(1, n + 1));
    let num = Float::with_val(bits, &p.omega_plus * &p.omega_minus) * -2i32;
    let pet = Complex::with_val(bits, (num, 0)) / denom;
    let petersson = real_part(&pet, "Petersson norm")?;
    Ok(PeriodInvariants { det, perm, det_ratio, petersson })
}

/// Everything the `sv` command reports.
#[derive(Clone, Debug, Serialize)]
pub struct SvReport {
    #[serde(serialize_with = "crate::json::float_str")]
    pub sigma: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub tau: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub rho: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub det_ratio: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub petersson: Float,
    pub sv_matrix: SvMatrix,
}

pub fn sv_report(p: &PeriodMatrix) -> Result<SvReport> {
    let m = sv_matrix(p)?;
    let inv = invariants_of_p(p)?;
    Ok(SvReport {
        sigma: m.sigma().clone(),
        tau: m.tau().clone(),
        rho: rho(p),
        det_ratio: real_part(&inv.det_ratio, "determinant ratio")?,
        petersson: inv.petersson,
        sv_matrix: m,
    })
}
