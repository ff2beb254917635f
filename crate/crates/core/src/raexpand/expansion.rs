use std::collections::BTreeMap;

use rug::Rational;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::arith::divisors;
use crate::arith::rational_pow;
use crate::error::{Error, Result};
use crate::qexact::QLaurent;
use crate::scalar::{PeriodScalar, SymbolicSeries};

/// `(k, m, n)` indexing the monomial `L^k q^m qbar^n`.
pub type Key = (i64, i64, i64);

/// A finite sum `sum a_(k,m,n) L^k q^m qbar^n` of modular weights `(r, s)`,
/// known for every exponent `m, n <= truncation`.
///
/// Here `L = log|q| = -2 pi Im z`.
#[derive(Clone, PartialEq)]
pub struct BiExpansion {
    r: i64,
    s: i64,
    truncation: i64,
    terms: BTreeMap<Key, PeriodScalar>,
}

impl std::fmt::Debug for BiExpansion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiExpansion(({}, {}), O({}))", self.r, self.s, self.truncation)?;
        let mut list = f.debug_map();
        for (key, c) in &self.terms {
            list.entry(key, c);
        }
        list.finish()
    }
}

impl BiExpansion {
    pub fn zero(r: i64, s: i64, truncation: i64) -> Self {
        BiExpansion { r, s, truncation, terms: BTreeMap::new() }
    }

    /// `c L^k q^m qbar^n`.
    pub fn monomial(r: i64, s: i64, truncation: i64, key: Key, c: PeriodScalar) -> Self {
        let mut out = Self::zero(r, s, truncation);
        out.add_term(key, &c);
        out
    }

    /// `L^k f` for a holomorphic series `f`.
    pub fn from_holomorphic(f: &QLaurent, k: i64, r: i64, s: i64) -> Self {
        let mut out = Self::zero(r, s, f.truncation());
        for (m, a) in f.terms() {
            out.add_term((k, m, 0), &PeriodScalar::rational(a.clone()));
        }
        out
    }

    /// `L^k g` for a symbolic combination of holomorphic series.
    pub fn from_symbolic(g: &SymbolicSeries, k: i64, r: i64, s: i64) -> Result<Self> {
        let mut out = Self::zero(r, s, g.truncation());
        for (c, gi) in &g.terms {
            for (m, a) in gi.terms() {
                if m <= out.truncation {
                    out.add_term((k, m, 0), &c.scale(a));
                }
            }
        }
        Ok(out)
    }

    pub fn weights(&self) -> (i64, i64) {
        (self.r, self.s)
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &PeriodScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64, m: i64, n: i64) -> PeriodScalar {
        self.terms.get(&(k, m, n)).cloned().unwrap_or_default()
    }

    /// Relabels the modular weights.
    pub fn with_weights(mut self, r: i64, s: i64) -> Self {
        self.r = r;
        self.s = s;
        self
    }

    /// Adds `c` to the coefficient at `key`; exponents past the truncation are dropped.
    pub fn add_term(&mut self, key: Key, c: &PeriodScalar) {
        if c.is_zero() || key.1 > self.truncation || key.2 > self.truncation {
            return;
        }
        let slot = self.terms.entry(key).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn truncate(&self, t: i64) -> Self {
        let t = t.min(self.truncation);
        let terms = self.terms.iter().filter(|(k, _)| k.1 <= t && k.2 <= t).map(|(k, c)| (*k, c.clone())).collect();
        BiExpansion { r: self.r, s: self.s, truncation: t, terms }
    }

    fn check_weights(&self, other: &Self) -> Result<()> {
        if self.weights() != other.weights() {
            return Err(Error::WeightMismatch(format!("{:?}", self.weights()), format!("{:?}", other.weights())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_weights(other)?;
        let mut out = self.truncate(other.truncation);
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero(self.r, self.s, self.truncation);
        }
        self.map_coeffs(|x| x * c)
    }

    /// Multiplication by a scalar; fails if a symbol would meet a symbol.
    pub fn scale_scalar(&self, c: &PeriodScalar) -> Result<Self> {
        let mut out = Self::zero(self.r, self.s, self.truncation);
        for (k, x) in &self.terms {
            out.add_term(*k, &x.try_mul(c)?);
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&PeriodScalar) -> PeriodScalar) -> Self {
        let mut out = Self::zero(self.r, self.s, self.truncation);
        for (k, c) in &self.terms {
            out.add_term(*k, &f(c));
        }
        out
    }

    fn map_keys(&self, r: i64, s: i64, f: impl Fn(Key) -> Key) -> Self {
        let mut out = Self::zero(r, s, self.truncation);
        for (k, c) in &self.terms {
            out.add_term(f(*k), c);
        }
        out
    }

    /// Multiplication by `L^j`, which has weights `(-j, -j)`.
    pub fn mul_l(&self, j: i64) -> Self {
        self.map_keys(self.r - j, self.s - j, |(k, m, n)| (k + j, m, n))
    }

    /// `∂_r L^k q^m qbar^n = (2m L + r + k) L^k q^m qbar^n`; weights go to `(r+1, s-1)`.
    pub fn d_holo(&self) -> Self {
        let mut out = Self::zero(self.r + 1, self.s - 1, self.truncation);
        for (&(k, m, n), c) in &self.terms {
            out.add_term((k + 1, m, n), &(c * &Rational::from(2 * m)));
            out.add_term((k, m, n), &(c * &Rational::from(self.r + k)));
        }
        out
    }

    /// `∂̄_s L^k q^m qbar^n = (2n L + s + k) L^k q^m qbar^n`; weights go to `(r-1, s+1)`.
    pub fn d_anti(&self) -> Self {
        let mut out = Self::zero(self.r - 1, self.s + 1, self.truncation);
        for (&(k, m, n), c) in &self.terms {
            out.add_term((k + 1, m, n), &(c * &Rational::from(2 * n)));
            out.add_term((k, m, n), &(c * &Rational::from(self.s + k)));
        }
        out
    }

    pub fn d_holo_pow(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |f, _| f.d_holo())
    }

    pub fn d_anti_pow(&self, e: u32) -> Self {
        (0..e).fold(self.clone(), |f, _| f.d_anti())
    }

    /// `Δ_(r,s) = -∂̄_(s-1) ∂_r + r(s-1)`.
    ///
    /// Panics if the second form `-∂_(r-1) ∂̄_s + s(r-1)` disagrees.
    pub fn laplacian(&self) -> Self {
        let a = self
            .d_holo()
            .d_anti()
            .neg()
            .add(&self.scale(&Rational::from(self.r * (self.s - 1))))
            .expect("weights agree");
        let b = self
            .d_anti()
            .d_holo()
            .neg()
            .add(&self.scale(&Rational::from(self.s * (self.r - 1))))
            .expect("weights agree");
        assert_eq!(a, b, "the two forms of the Laplacian disagree");
        a
    }

    /// `h F = (r - s) F`.
    pub fn h(&self) -> Self {
        self.scale(&Rational::from(self.r - self.s))
    }

    /// `w F = (r + s) F`.
    pub fn w(&self) -> Self {
        self.scale(&Rational::from(self.r + self.s))
    }

    /// Complex conjugation: swaps `q` and `qbar` and the two weights. All symbols are real.
    pub fn conj(&self) -> Self {
        self.map_keys(self.s, self.r, |(k, m, n)| (k, n, m))
    }

    /// `D = q d/dq = (1/2πi) ∂/∂z`, using `D L = 1/2`; the first weight goes up by 2.
    pub fn bol_d(&self) -> Self {
        let mut out = Self::zero(self.r + 2, self.s, self.truncation);
        for (&(k, m, n), c) in &self.terms {
            out.add_term((k - 1, m, n), &(c * &Rational::from((k, 2))));
            out.add_term((k, m, n), &(c * &Rational::from(m)));
        }
        out
    }

    /// Terms with `n = 0, m != 0`.
    pub fn holomorphic_part(&self) -> Self {
        self.filter(|(_, m, n)| n == 0 && m != 0)
    }

    /// Terms with `m = 0, n != 0`.
    pub fn antiholomorphic_part(&self) -> Self {
        self.filter(|(_, m, n)| m == 0 && n != 0)
    }

    /// Terms with `m = n = 0`.
    pub fn constant_part(&self) -> Self {
        self.filter(|(_, m, n)| m == 0 && n == 0)
    }

    fn filter(&self, keep: impl Fn(Key) -> bool) -> Self {
        let terms = self.terms.iter().filter(|(k, _)| keep(**k)).map(|(k, c)| (*k, c.clone())).collect();
        BiExpansion { r: self.r, s: self.s, truncation: self.truncation, terms }
    }

    /// Smallest and largest power of `L` present.
    pub fn l_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    /// Equal weights and equal coefficients through the smaller truncation.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if self.weights() != other.weights() {
            return false;
        }
        let t = self.truncation.min(other.truncation);
        self.truncate(t).terms == other.truncate(t).terms
    }

    /// The Hecke operator `T_N`:
    /// `a'_(k, μ, ν) = sum_(a | (N, μ, ν)) a^(w-1) (a^2/N)^k a_(k, μN/a^2, νN/a^2)`, `w = r + s`.
    ///
    /// Requires `a_(k,m,n) = 0` whenever `0 != m ≡ n (mod d)` for a divisor `d > 1` of `N`.
    pub fn hecke(&self, index: u64) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidConfig("Hecke index must be positive".into()));
        }
        let big_n = index as i64;
        let w = self.r + self.s;
        let mut out = Self::zero(self.r, self.s, self.truncation.div_euclid(big_n));
        for (&(k, m, n), c) in &self.terms {
            for d in divisors(index) {
                let d = d as i64;
                if (m - n).rem_euclid(d) != 0 {
                    continue;
                }
                if m.rem_euclid(d) != 0 {
                    return Err(Error::HeckeCondition { k, m, n, index });
                }
                let a = big_n / d;
                let factor = rational_pow(a, w - 1 + k) * rational_pow(d, -k);
                out.add_term((k, m / d * a, n / d * a), &(c * &factor));
            }
        }
        Ok(out)
    }
}

impl Serialize for BiExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a BTreeMap<Key, PeriodScalar>);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                #[derive(Serialize)]
                struct Term<'a> {
                    k: i64,
                    m: i64,
                    n: i64,
                    coeff: &'a PeriodScalar,
                }
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (&(k, m, n), coeff) in self.0 {
                    seq.serialize_element(&Term { k, m, n, coeff })?;
                }
                seq.end()
            }
        }
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("r", &self.r)?;
        map.serialize_entry("s", &self.s)?;
        map.serialize_entry("terms", &Terms(&self.terms))?;
        map.serialize_entry("truncation", &self.truncation)?;
        map.end()
    }
}

/// `sigma_k(n)` for possibly negative `k`, as a rational.
pub fn sigma_rational(k: i64, n: u64) -> Rational {
    divisors(n).into_iter().map(|d| rational_pow(d as i64, k)).sum()
}
