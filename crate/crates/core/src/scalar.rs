//! Exact linear combinations of the period symbols `1, sigma, tau, alpha, zeta`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rug::{Float, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qexact::QLaurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    One,
    Sigma,
    Tau,
    Alpha,
    Zeta,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::One, Symbol::Sigma, Symbol::Tau, Symbol::Alpha, Symbol::Zeta];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::One => "one",
            Symbol::Sigma => "sigma",
            Symbol::Tau => "tau",
            Symbol::Alpha => "alpha",
            Symbol::Zeta => "zeta",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// `c_1 + c_sigma sigma + c_tau tau + c_alpha alpha + c_zeta zeta` with rational `c`.
///
/// All symbols are real, so complex conjugation fixes every scalar.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PeriodScalar {
    coords: [Rational; 5],
}

impl PeriodScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::symbol_times(s, Rational::from(1))
    }

    pub fn symbol_times(s: Symbol, c: Rational) -> Self {
        let mut out = Self::zero();
        out.coords[s.index()] = c;
        out
    }

    pub fn rational(c: Rational) -> Self {
        Self::symbol_times(Symbol::One, c)
    }

    pub fn sigma() -> Self {
        Self::symbol(Symbol::Sigma)
    }

    pub fn tau() -> Self {
        Self::symbol(Symbol::Tau)
    }

    pub fn coord(&self, s: Symbol) -> &Rational {
        &self.coords[s.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| *c == 0)
    }

    /// The rational value if no symbol other than `1` occurs.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..].iter().all(|c| *c == 0).then(|| &self.coords[0])
    }

    /// `(c, s)` if the scalar is `c s` for a single symbol `s`.
    pub fn as_multiple(&self) -> Option<(Rational, Symbol)> {
        let mut found = None;
        for s in Symbol::ALL {
            if *self.coord(s) != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((self.coord(s).clone(), s));
            }
        }
        found
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for x in &mut out.coords {
            *x *= c;
        }
        out
    }

    /// Product of two scalars; at most one of them may involve a symbol.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match (self.as_rational(), other.as_rational()) {
            (Some(c), _) => Ok(other.scale(c)),
            (_, Some(c)) => Ok(self.scale(c)),
            _ => Err(Error::SymbolProduct),
        }
    }

    pub fn evaluate(&self, values: &SymbolValues) -> Float {
        let prec = values.sigma.prec();
        let mut acc = Float::with_val(prec, 0);
        for s in Symbol::ALL {
            let c = self.coord(s);
            if *c != 0 {
                acc += Float::with_val(prec, c) * values.get(s);
            }
        }
        acc
    }
}

impl fmt::Debug for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PeriodScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in Symbol::ALL {
            let c = self.coord(s);
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match s {
                Symbol::One => write!(f, "{c}")?,
                _ => write!(f, "{c}*{}", s.name())?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for PeriodScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(5))?;
        for sym in Symbol::ALL {
            map.serialize_entry(sym.name(), &self.coord(sym).to_string())?;
        }
        map.end()
    }
}

impl From<Rational> for PeriodScalar {
    fn from(c: Rational) -> Self {
        Self::rational(c)
    }
}

impl From<i64> for PeriodScalar {
    fn from(c: i64) -> Self {
        Self::rational(Rational::from(c))
    }
}

impl AddAssign<&PeriodScalar> for PeriodScalar {
    fn add_assign(&mut self, rhs: &PeriodScalar) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

impl SubAssign<&PeriodScalar> for PeriodScalar {
    fn sub_assign(&mut self, rhs: &PeriodScalar) {
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a -= b;
        }
    }
}

impl Add<&PeriodScalar> for &PeriodScalar {
    type Output = PeriodScalar;
    fn add(self, rhs: &PeriodScalar) -> PeriodScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&PeriodScalar> for &PeriodScalar {
    type Output = PeriodScalar;
    fn sub(self, rhs: &PeriodScalar) -> PeriodScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &PeriodScalar {
    type Output = PeriodScalar;
    fn neg(self) -> PeriodScalar {
        self.scale(&Rational::from(-1))
    }
}

impl Mul<&Rational> for &PeriodScalar {
    type Output = PeriodScalar;
    fn mul(self, rhs: &Rational) -> PeriodScalar {
        self.scale(rhs)
    }
}

/// Numerical values substituted for the symbols at evaluation time.
#[derive(Clone, Debug)]
pub struct SymbolValues {
    pub sigma: Float,
    pub tau: Float,
    pub alpha: Float,
    pub zeta: Float,
}

impl SymbolValues {
    /// All symbols zero at `prec` bits.
    pub fn zeros(prec: u32) -> Self {
        let z = Float::with_val(prec, 0);
        SymbolValues { sigma: z.clone(), tau: z.clone(), alpha: z.clone(), zeta: z }
    }

    pub fn get(&self, s: Symbol) -> Float {
        match s {
            Symbol::One => Float::with_val(self.sigma.prec(), 1),
            Symbol::Sigma => self.sigma.clone(),
            Symbol::Tau => self.tau.clone(),
            Symbol::Alpha => self.alpha.clone(),
            Symbol::Zeta => self.zeta.clone(),
        }
    }
}

/// A finite sum `sum_i c_i g_i` of rational q-series with scalar coefficients.
#[derive(Clone, Debug, Default)]
pub struct SymbolicSeries {
    pub terms: Vec<(PeriodScalar, QLaurent)>,
}

impl SymbolicSeries {
    pub fn new(terms: Vec<(PeriodScalar, QLaurent)>) -> Self {
        SymbolicSeries { terms }
    }

    pub fn single(f: QLaurent) -> Self {
        Self::new(vec![(PeriodScalar::from(1), f)])
    }

    pub fn truncation(&self) -> i64 {
        self.terms.iter().map(|(_, f)| f.truncation()).min().unwrap_or(i64::MAX)
    }

    pub fn valuation(&self) -> i64 {
        self.terms.iter().map(|(_, f)| f.valuation()).min().unwrap_or(0)
    }

    pub fn coeff(&self, m: i64) -> PeriodScalar {
        let mut acc = PeriodScalar::zero();
        for (c, f) in &self.terms {
            let a = f.coeff(m);
            if a != 0 {
                acc += &c.scale(&a);
            }
        }
        acc
    }

    /// Applies the same rational-linear map to every component series.
    pub fn map(&self, f: impl Fn(&QLaurent) -> QLaurent) -> Self {
        Self::new(self.terms.iter().map(|(c, g)| (c.clone(), f(g))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_structure() {
        let a = &PeriodScalar::sigma().scale(&Rational::from(3)) + &PeriodScalar::from(2);
        let b = &a - &PeriodScalar::from(2);
        assert_eq!(b.as_multiple(), Some((Rational::from(3), Symbol::Sigma)));
        assert!(a.as_rational().is_none());
        assert_eq!(a.to_string(), "2 + 3*sigma");
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn products_of_symbols_are_refused() {
        let s = PeriodScalar::sigma();
        let t = PeriodScalar::tau();
        assert_eq!(s.try_mul(&t), Err(Error::SymbolProduct));
        assert_eq!(s.try_mul(&PeriodScalar::from(4)).unwrap(), s.scale(&Rational::from(4)));
    }

    #[test]
    fn evaluation() {
        let mut v = SymbolValues::zeros(128);
        v.sigma = Float::with_val(128, 2);
        v.zeta = Float::with_val(128, 0.5);
        let x = &PeriodScalar::sigma() + &PeriodScalar::symbol_times(Symbol::Zeta, Rational::from(4));
        assert_eq!(x.evaluate(&v), 4);
    }
}
