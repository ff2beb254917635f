use std::fmt;

use rug::{Integer, Rational};

use crate::error::{Error, Result};

/// A truncated Laurent series `sum_{v <= m <= t} a_m q^m + O(q^{t+1})` with
/// exact rational coefficients.
///
/// Leading zeros are stripped on construction, so `valuation()` is the order
/// of the series. The zero series is stored with an empty window starting at
/// `truncation + 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct QLaurent {
    weight: i64,
    valuation: i64,
    coeffs: Vec<Rational>,
}

impl QLaurent {
    /// Builds a series from the coefficients of `q^valuation, q^(valuation+1), ...`.
    /// The truncation is `valuation + coeffs.len() - 1`.
    pub fn new(weight: i64, valuation: i64, coeffs: Vec<Rational>) -> Self {
        let mut s = QLaurent { weight, valuation, coeffs };
        s.normalize();
        s
    }

    pub fn from_integers<I, T>(weight: i64, valuation: i64, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        Integer: From<T>,
    {
        let coeffs = coeffs
            .into_iter()
            .map(|c| Rational::from(Integer::from(c)))
            .collect();
        Self::new(weight, valuation, coeffs)
    }

    /// `a_m = f(m)` for `valuation <= m <= truncation`.
    pub fn from_fn(
        weight: i64,
        valuation: i64,
        truncation: i64,
        mut f: impl FnMut(i64) -> Rational,
    ) -> Self {
        Self::new(weight, valuation, (valuation..=truncation).map(&mut f).collect())
    }

    pub fn zero(weight: i64, truncation: i64) -> Self {
        QLaurent { weight, valuation: truncation + 1, coeffs: Vec::new() }
    }

    pub fn one(truncation: i64) -> Self {
        Self::monomial(0, 0, Rational::from(1), truncation)
    }

    /// `c q^e + O(q^{truncation+1})`.
    pub fn monomial(weight: i64, e: i64, c: Rational, truncation: i64) -> Self {
        if truncation < e {
            return Self::zero(weight, truncation);
        }
        let mut coeffs = vec![Rational::new(); (truncation - e + 1) as usize];
        coeffs[0] = c;
        Self::new(weight, e, coeffs)
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients `a_valuation, ..., a_truncation`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The coefficient of `q^m`. Panics if `m` lies beyond the truncation.
    pub fn coeff(&self, m: i64) -> Rational {
        self.try_coeff(m).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_coeff(&self, m: i64) -> Result<Rational> {
        if m > self.truncation() {
            return Err(Error::InsufficientTruncation { needed: m, available: self.truncation() });
        }
        if m < self.valuation {
            return Ok(Rational::new());
        }
        Ok(self.coeffs[(m - self.valuation) as usize].clone())
    }

    fn coeff_ref(&self, m: i64) -> Option<&Rational> {
        if m < self.valuation {
            None
        } else {
            self.coeffs.get((m - self.valuation) as usize)
        }
    }

    /// Nonzero terms `(m, a_m)` in increasing order of `m`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// Forgets every coefficient past `q^t`.
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.truncation() {
            return self.clone();
        }
        if t < self.valuation {
            return Self::zero(self.weight, t);
        }
        let keep = (t - self.valuation + 1) as usize;
        QLaurent {
            weight: self.weight,
            valuation: self.valuation,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Applies `a_m -> f(m, a_m)` to every coefficient in the window.
    pub fn map_coeffs(&self, weight: i64, mut f: impl FnMut(i64, &Rational) -> Rational) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| f(self.valuation + i as i64, c))
            .collect();
        Self::new(weight, self.valuation, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(self.weight, |_, a| Rational::from(a * c))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(self.weight, |_, a| Rational::from(-a))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurent { weight: self.weight, valuation: self.valuation + k, coeffs: self.coeffs.clone() }
    }

    fn check_weight(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(self.weight.to_string(), other.weight.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_weight(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_weight(other)?;
        Ok(self.add_unchecked(other, true))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let t = self.truncation().min(other.truncation());
        let v = self.valuation.min(other.valuation).min(t + 1);
        let coeffs = (v..=t)
            .map(|m| {
                let mut c = self.coeff_ref(m).cloned().unwrap_or_default();
                if let Some(b) = other.coeff_ref(m) {
                    if negate {
                        c -= b;
                    } else {
                        c += b;
                    }
                }
                c
            })
            .collect();
        Self::new(self.weight, v, coeffs)
    }

    /// Known through `min(t_a + v_b, t_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Self {
        let weight = self.weight + other.weight;
        let t = (self.truncation() + other.valuation).min(other.truncation() + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(weight, t);
        }
        let v = self.valuation + other.valuation;
        let len = (t - v + 1) as usize;
        let mut coeffs = vec![Rational::new(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if *b != 0 {
                    coeffs[i + j] += Rational::from(a * b);
                }
            }
        }
        Self::new(weight, v, coeffs)
    }

    /// Multiplicative inverse, known through `t - 2v`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let v = self.valuation;
        let len = self.coeffs.len();
        let lead_inv = Rational::from(self.coeffs[0].recip_ref());
        let mut out: Vec<Rational> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for k in 1..len {
            let mut acc = Rational::new();
            for j in 1..=k {
                if self.coeffs[j] != 0 {
                    acc += Rational::from(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-acc * &lead_inv);
        }
        Ok(Self::new(-self.weight, -v, out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            if self.is_zero() {
                return Err(Error::ZeroLeadingCoefficient);
            }
            return Ok(Self::one(self.truncation() - self.valuation));
        }
        let mut sq = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut result: Option<Self> = None;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => sq.clone(),
                    Some(r) => r.mul(&sq),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(result.expect("nonzero exponent"))
    }

    /// The constant term, if known.
    pub fn constant_term(&self) -> Result<Rational> {
        self.try_coeff(0)
    }

    /// True if both series agree coefficientwise through `q^t`.
    pub fn agrees_through(&self, other: &Self, t: i64) -> bool {
        if self.truncation() < t || other.truncation() < t {
            return false;
        }
        let lo = self.valuation.min(other.valuation);
        (lo..=t).all(|m| self.coeff(m) == other.coeff(m))
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent(weight {}, ", self.weight)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            if first {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let abs = Rational::from(c.abs_ref());
            match m {
                0 => write!(f, "{abs}")?,
                _ => {
                    if abs != 1 {
                        write!(f, "{abs}")?;
                    }
                    if m == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{m}")?;
                    }
                }
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(q^{})", self.truncation() + 1)
    }
}
