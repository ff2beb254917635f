use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;

use super::{hecke_qexp, modular_bol_preimage};
use crate::arith::{divisors, factorial, gcd, sigma};
use crate::error::{Error, Result};
use crate::qexact::QLaurent;
use crate::scalar::{PeriodScalar, Symbol, SymbolicSeries};

/// Hecke eigenvalues `lambda_m` of a normalised eigenform, for `m` up to a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeEigenData {
    pub weight: i64,
    pub eigenvalues: BTreeMap<u64, Rational>,
    pub source: String,
}

impl HeckeEigenData {
    /// Reads `lambda_m = a_m(f)` for `1 <= m <= max_m` off a normalised cusp form.
    pub fn from_eigenform(f: &QLaurent, max_m: u64, source: &str) -> Result<Self> {
        if f.valuation() < 1 || f.coeff(1) != 1 {
            return Err(Error::InvalidConfig(format!("{source} is not a normalised cusp form")));
        }
        let eigenvalues = (1..=max_m)
            .map(|m| Ok((m, f.try_coeff(m as i64)?)))
            .collect::<Result<_>>()?;
        Ok(HeckeEigenData { weight: f.weight(), eigenvalues, source: source.to_string() })
    }

    pub fn eigenvalue(&self, m: u64) -> Result<&Rational> {
        self.eigenvalues.get(&m).ok_or(Error::MissingEigenvalue(m))
    }

    pub fn max_index(&self) -> u64 {
        self.eigenvalues.keys().next_back().copied().unwrap_or(0)
    }

    /// Checks `lambda_mn = lambda_m lambda_n` for coprime `m, n` and
    /// `lambda_p lambda_{p^k} = lambda_{p^{k+1}} + p^(w-1) lambda_{p^{k-1}}`
    /// for every pair of stored indices.
    pub fn check_relations(&self) -> bool {
        let top = self.max_index();
        if self.eigenvalues.get(&1).is_some_and(|l| *l != 1) {
            return false;
        }
        for m in 2..=top {
            for n in 2..=top / m {
                if gcd(m as i64, n as i64) == 1 {
                    let lhs = Rational::from(&self.eigenvalues[&m] * &self.eigenvalues[&n]);
                    if lhs != self.eigenvalues[&(m * n)] {
                        return false;
                    }
                }
            }
            if divisors(m).len() == 2 {
                let p = m;
                let pw = Integer::from(p).pow((self.weight - 1) as u32);
                let mut pk = p;
                let mut prev = Rational::from(1);
                while pk * p <= top {
                    let lhs = Rational::from(&self.eigenvalues[&p] * &self.eigenvalues[&pk]);
                    let rhs = Rational::from(&self.eigenvalues[&(pk * p)] + &prev * Rational::from(&pw));
                    if lhs != rhs {
                        return false;
                    }
                    prev = self.eigenvalues[&pk].clone();
                    pk *= p;
                }
            }
        }
        true
    }
}

/// The failure of `f` to be a Hecke eigenform at index `m`, modulo the Bol image.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDefect {
    pub m: u64,
    /// `(T_m - lambda_m) f`, of weight `n + 2`.
    pub defect: QLaurent,
    /// The weakly holomorphic form of weight `-n` with `D^(n+1) p = defect`.
    pub p: QLaurent,
    /// `psi_m = n!/2^(n+1) p`, the normalisation used in the Hecke equation for primitives.
    pub psi: QLaurent,
}

/// `n! / 2^(n+1)`.
pub fn psi_normalization(n: u32) -> Rational {
    Rational::from((factorial(n), Integer::from(1) << (n + 1)))
}

/// Solves `(T_m - lambda_m) f = D^(n+1) p` for a weakly holomorphic `p`.
pub fn eigen_defect(f: &QLaurent, eig: &HeckeEigenData, m: u64, n: u32) -> Result<EigenDefect> {
    let lambda = eig.eigenvalue(m)?;
    let tf = hecke_qexp(f, m)?;
    let defect = tf.sub(&f.scale(lambda).truncate(tf.truncation()))?;
    if defect.truncation() >= 0 {
        let c = defect.coeff(0);
        if c != 0 {
            return Err(Error::NotWeakEigenform { m, constant: c.to_string() });
        }
    }
    let p = modular_bol_preimage(&defect, n)?;
    let psi = p.scale(&psi_normalization(n));
    Ok(EigenDefect { m, defect, p, psi })
}

/// `(T_m - lambda_m) psi_k = (T_k - lambda_k) psi_m` on the weight `n + 2`
/// defects of `f`, compared through the common truncation.
pub fn consistency_psi(f: &QLaurent, eig: &HeckeEigenData, m: u64, k: u64, n: u32) -> Result<bool> {
    let dm = eigen_defect(f, eig, m, n)?.defect;
    let dk = eigen_defect(f, eig, k, n)?.defect;
    let lhs = hecke_qexp(&dk, m)?.sub(&dk.scale(eig.eigenvalue(m)?))?;
    let rhs = hecke_qexp(&dm, k)?.sub(&dm.scale(eig.eigenvalue(k)?))?;
    let t = lhs.truncation().min(rhs.truncation());
    let lo = lhs.valuation().min(rhs.valuation());
    if t < lo.min(0) {
        return Err(Error::InsufficientTruncation { needed: lo.min(0), available: t });
    }
    Ok(lhs.agrees_through(&rhs, t))
}

/// `alpha = (a_0(psi_m) + a_0(phi_m)) / (sigma_(n+1)(m) - lambda_m)`.
pub fn alpha_constant(
    eig: &HeckeEigenData,
    m: u64,
    n: u32,
    psi_zero: &PeriodScalar,
    phi_zero: &PeriodScalar,
) -> Result<PeriodScalar> {
    let denom = Rational::from(sigma(n + 1, m)) - eig.eigenvalue(m)?;
    if denom == 0 {
        return Err(Error::DegenerateHeckeIndex { m });
    }
    Ok((psi_zero + phi_zero).scale(&denom.recip()))
}

/// The constant `alpha` of the primitive of `f` whose single-valued partner is `g`.
///
/// `psi_m` comes from `f` and `phi_m` from each component of `g`.
pub fn alpha_for_eigenform(
    f: &QLaurent,
    g: &SymbolicSeries,
    eig: &HeckeEigenData,
    m: u64,
    n: u32,
) -> Result<PeriodScalar> {
    let psi_zero = PeriodScalar::rational(eigen_defect(f, eig, m, n)?.psi.try_coeff(0)?);
    let mut phi_zero = PeriodScalar::zero();
    for (c, gi) in &g.terms {
        let a0 = eigen_defect(gi, eig, m, n)?.psi.try_coeff(0)?;
        phi_zero += &c.scale(&a0);
    }
    alpha_constant(eig, m, n, &psi_zero, &phi_zero)
}

/// `alpha` as a rational multiple of a single period symbol.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaValue {
    #[serde(serialize_with = "crate::json::rational_str")]
    pub rational_part: Rational,
    #[serde(serialize_with = "crate::json::symbol_str")]
    pub symbol: Symbol,
}

impl AlphaValue {
    pub fn to_scalar(&self) -> PeriodScalar {
        PeriodScalar::symbol_times(self.symbol, self.rational_part.clone())
    }
}

impl TryFrom<&PeriodScalar> for AlphaValue {
    type Error = Error;
    fn try_from(s: &PeriodScalar) -> Result<Self> {
        match s.as_multiple() {
            Some((rational_part, symbol)) => Ok(AlphaValue { rational_part, symbol }),
            None if s.is_zero() => Ok(AlphaValue { rational_part: Rational::new(), symbol: Symbol::One }),
            None => Err(Error::InvalidConfig(format!("alpha = {s} is not a single symbol multiple"))),
        }
    }
}
