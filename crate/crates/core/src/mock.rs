//! The mock modular form attached to `Delta`, with coefficients `a + b rho`,
//! and the Kloosterman-Bessel series for the same coefficients.

use std::collections::BTreeMap;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::arith::{factorial, gcd, mod_inverse, rational_pow};
use crate::error::{Error, Result};
use crate::heckebol::{alpha_for_eigenform, HeckeEigenData};
use crate::hp::rational_to_float;
use crate::qexact::{delta, delta_prime};
use crate::scalar::{PeriodScalar, Symbol, SymbolicSeries};

/// `M'_Delta = scale (sum_n (a_n + b_n rho) q^n)`, known through `q^truncation`.
#[derive(Clone, Debug, PartialEq)]
pub struct MockSeries {
    pub terms: BTreeMap<i64, (Rational, Rational)>,
    pub overall_scale: Integer,
    pub truncation: i64,
}

/// `11! (-7! 13/691 - sum_(n != 0) (a'_n + rho a_n)/n^11 q^n)` for `Delta` and `Delta'`.
///
/// The constant comes from the constant `alpha` of the primitive of `Delta`,
/// rescaled by `-11 2^11 / sigma`.
pub fn mock_series(truncation: i64) -> Result<MockSeries> {
    let t = truncation.max(2);
    let f = delta(t);
    let fp = delta_prime(t)?;
    let g = SymbolicSeries::new(vec![(PeriodScalar::sigma(), fp.clone()), (PeriodScalar::tau(), f.clone())]);
    let eig = HeckeEigenData::from_eigenform(&f, 2, "Delta")?;
    let alpha = alpha_for_eigenform(&f, &g, &eig, 2, 10)?;
    let a_sigma = match alpha.as_multiple() {
        Some((c, Symbol::Sigma)) if c != 0 => c,
        _ => return Err(Error::InvalidConfig(format!("alpha = {alpha} is not a multiple of sigma"))),
    };
    let scale = factorial(11);
    // M' = -(11 2^11 / sigma) M and M = alpha + 10!/2^11 sum (...) q^n.
    let constant = -Rational::from(11 * (1 << 11)) * a_sigma / Rational::from(scale.clone());
    let mut terms = BTreeMap::new();
    terms.insert(0, (constant, Rational::new()));
    for n in fp.valuation().min(f.valuation())..=truncation {
        if n == 0 {
            continue;
        }
        let d = rational_pow(n, 11);
        let a = -(fp.coeff(n) / &d);
        let b = -(f.coeff(n) / &d);
        if a != 0 || b != 0 {
            terms.insert(n, (a, b));
        }
    }
    Ok(MockSeries { terms, overall_scale: scale, truncation })
}

impl MockSeries {
    /// `(a_n, b_n)`, zero where nothing is stored.
    pub fn coefficient(&self, n: i64) -> (Rational, Rational) {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// `a_n + b_n rho` without the overall scale.
    pub fn value(&self, n: i64, rho: &Float) -> Float {
        let (a, b) = self.coefficient(n);
        let bits = rho.prec();
        rational_to_float(&a, bits) + rational_to_float(&b, bits) * rho
    }

    /// The rows `(n, a_n, b_n, a_n + b_n rho)` as CSV, without the overall scale.
    pub fn to_csv(&self, rho: Option<&Float>, digits: u32) -> String {
        let mut out = String::from(if rho.is_some() { "n,a,b,value\n" } else { "n,a,b\n" });
        for (n, (a, b)) in &self.terms {
            out.push_str(&format!("{n},{a},{b}"));
            if let Some(rho) = rho {
                out.push(',');
                out.push_str(&crate::hp::format_float(&self.value(*n, rho), digits));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for MockSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<i64, (Rational, Rational)>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (n, (a, b)) in self.0 {
                    let mut row = BTreeMap::new();
                    row.insert("n", n.to_string());
                    row.insert("a", a.to_string());
                    row.insert("b", b.to_string());
                    seq.serialize_element(&row)?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("overall_scale", &self.overall_scale.to_string())?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.serialize_entry("truncation", &self.truncation)?;
        map.end()
    }
}

/// One term `K(m, n, c)` of a Kloosterman series.
#[derive(Clone, Debug)]
pub struct KloostermanTerm {
    pub c: u64,
    pub value: Float,
}

/// `K(m, n, c) = sum_(d mod c, (d, c) = 1) e^(2πi (m d + n dbar)/c)`.
///
/// Panics if the imaginary part is not negligible, which would mean a bug.
pub fn kloosterman(m: i64, n: i64, c: u64, bits: u32) -> Float {
    assert!(c >= 1, "Kloosterman modulus must be positive");
    let ci = c as i64;
    let two_pi = Float::with_val(bits, Constant::Pi) * 2u32;
    let mut re = Float::new(bits);
    let mut im = Float::new(bits);
    for d in 0..ci {
        if gcd(d, ci) != 1 {
            continue;
        }
        let dbar = mod_inverse(d, ci).expect("d is a unit");
        let k = (m.rem_euclid(ci) * d + n.rem_euclid(ci) * dbar).rem_euclid(ci);
        let theta = Float::with_val(bits, &two_pi * k) / ci;
        let (s, cs) = theta.sin_cos(Float::new(bits));
        re += cs;
        im += s;
    }
    let tol = Float::with_val(bits, Float::i_exp(1, 16 - bits as i32)) * c;
    assert!(im.abs() <= tol, "Kloosterman sum with a large imaginary part");
    re
}

/// `I_nu(x) = sum_k (x/2)^(2k+nu) / (k! (k+nu)!)`, summed until the terms are negligible.
pub fn bessel_i(nu: u32, x: &Float) -> Float {
    let bits = x.prec();
    assert!(*x >= 0, "bessel_i needs x >= 0");
    let half = Float::with_val(bits, x / 2u32);
    let sq = Float::with_val(bits, half.square_ref());
    let mut term = Float::with_val(bits, half.clone().pow(nu)) / Float::with_val(bits, factorial(nu));
    let mut sum = Float::new(bits);
    let eps = Float::with_val(bits, Float::i_exp(1, -(bits as i32)));
    let mut k = 0u32;
    loop {
        sum += &term;
        k += 1;
        term *= &sq;
        term /= k * (k + nu);
        if term.is_zero() || Float::with_val(bits, &term / &sum).abs() < eps {
            break;
        }
    }
    sum
}

/// Both sides of `2π n^(11/2) sum_c K(-1,n,c)/c I_11(4π sqrt(n)/c) = a'_n + rho a_n`.
#[derive(Clone, Debug, Serialize)]
pub struct CorollaryCheck {
    pub n: u64,
    pub c_max: u64,
    #[serde(serialize_with = "crate::json::float_str")]
    pub lhs: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub rhs: Float,
    #[serde(serialize_with = "crate::json::float_str")]
    pub rel_err: Float,
    /// Bound on the omitted terms `c > c_max`, relative to `|rhs|`.
    #[serde(serialize_with = "crate::json::float_str")]
    pub tail_bound: Float,
}

/// Relative tail tolerance used by [`verify_corollary`].
pub const KLOOSTERMAN_TAIL_TOLERANCE: f64 = 1e-8;

/// Sums the Kloosterman-Bessel series for the `n`-th coefficient through `c_max`
/// and compares with `a'_n + rho a_n`.
///
/// The tail uses `|K| <= c`, `I_11(x) <= (x/2)^11/11! e^(x^2/48)` and
/// `sum_(c > C) c^-11 <= C^-10/10`.
pub fn verify_corollary(n: u64, c_max: u64, rho: &Float) -> Result<CorollaryCheck> {
    if n == 0 || c_max == 0 {
        return Err(Error::InvalidConfig("verify_corollary needs n >= 1 and c_max >= 1".into()));
    }
    let bits = rho.prec();
    let t = n as i64 + 1;
    let (a, ap) = (delta(t).coeff(n as i64), delta_prime(t)?.coeff(n as i64));
    let rhs = rational_to_float(&ap, bits) + rational_to_float(&a, bits) * rho;

    let pi = Float::with_val(bits, Constant::Pi);
    let sqrt_n = Float::with_val(bits, n).sqrt();
    let x = Float::with_val(bits, &pi * 4u32) * &sqrt_n;
    let prefactor = Float::with_val(bits, &pi * 2u32) * Float::with_val(bits, sqrt_n.clone().pow(11u32));

    let mut sum = Float::new(bits);
    for c in 1..=c_max {
        let k = kloosterman(-1, n as i64, c, bits);
        if k.is_zero() {
            continue;
        }
        let arg = Float::with_val(bits, &x / c);
        sum += k / c * bessel_i(11, &arg);
    }
    let lhs = Float::with_val(bits, &prefactor * &sum);

    let big_c = Float::with_val(bits, c_max);
    let lead = Float::with_val(bits, Float::with_val(bits, &x / 2u32).pow(11u32)) / Float::with_val(bits, factorial(11));
    let growth = Float::with_val(bits, Float::with_val(bits, x.square_ref()) / Float::with_val(bits, big_c.square_ref()) / 48u32).exp();
    let zeta_tail = Float::with_val(bits, big_c.pow(-10i32)) / 10u32;
    let abs_rhs = Float::with_val(bits, rhs.abs_ref());
    let tail_bound = prefactor * lead * growth * zeta_tail / &abs_rhs;
    if tail_bound > KLOOSTERMAN_TAIL_TOLERANCE {
        return Err(Error::KloostermanTail { n, c_max, bound: tail_bound.to_f64(), tolerance: KLOOSTERMAN_TAIL_TOLERANCE });
    }
    let rel_err = Float::with_val(bits, &lhs - &rhs).abs() / abs_rhs;
    Ok(CorollaryCheck { n, c_max, lhs, rhs, rel_err, tail_bound })
}
