use rug::{Integer, Rational};

use super::expansion::BiExpansion;
use crate::arith::{bernoulli, binomial, factorial};
use crate::error::{Error, Result};
use crate::heckebol::{alpha_for_eigenform, psi_normalization, HeckeEigenData};
use crate::qexact::{delta, delta_prime, eisenstein, iterated_primitive, QLaurent};
use crate::scalar::{PeriodScalar, Symbol, SymbolicSeries};

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_weight(f_weight: i64, r: u32, s: u32) -> Result<u32> {
    let n = r + s;
    if f_weight != n as i64 + 2 {
        return Err(Error::WeightMismatch(format!("weight {}", n + 2), format!("weight {f_weight}")));
    }
    Ok(n)
}

/// The coefficients `(-1)^r C(n,r) C(r,k-s) (-1)^k k!` of `L^-k f^(k+1)` in `R_(r,s)`.
fn r_coefficients(r: u32, s: u32) -> Vec<(u32, Rational)> {
    let n = r + s;
    let outer = Integer::from(sign(r)) * binomial(n, r);
    (s..=n)
        .map(|k| {
            let c = Integer::from(&outer * binomial(r, k - s)) * factorial(k) * sign(k);
            (k, Rational::from(c))
        })
        .collect()
}

/// `R_(r,s)(f) = (-1)^r C(n,r) sum_(k=s..n) C(r,k-s) (-1)^k k! L^-k f^(k+1)`,
/// for `f` of weight `n + 2 = r + s + 2`.
pub fn build_r(f: &QLaurent, r: u32, s: u32) -> Result<BiExpansion> {
    check_weight(f.weight(), r, s)?;
    let mut out = BiExpansion::zero(r as i64, s as i64, f.truncation());
    for (k, c) in r_coefficients(r, s) {
        let g = iterated_primitive(f, k + 1);
        let term = BiExpansion::from_holomorphic(&g, -(k as i64), r as i64, s as i64).scale(&c);
        out = out.add(&term)?;
    }
    Ok(out)
}

/// [`build_r`] applied to each component of a symbolic combination.
pub fn build_r_symbolic(g: &SymbolicSeries, r: u32, s: u32) -> Result<BiExpansion> {
    let mut out = BiExpansion::zero(r as i64, s as i64, g.truncation());
    for (c, gi) in &g.terms {
        out = out.add(&build_r(gi, r, s)?.scale_scalar(c)?)?;
    }
    Ok(out)
}

/// `X_(r,s) = a_0(f)/(n+1) L + alpha (-1)^r C(n,r) L^-n + R_(r,s)(f) + conj R_(s,r)(g)`.
pub fn build_x(f: &QLaurent, g: &SymbolicSeries, alpha: &PeriodScalar, r: u32, s: u32) -> Result<BiExpansion> {
    let n = check_weight(f.weight(), r, s)?;
    let (ri, si) = (r as i64, s as i64);
    let t = f.truncation().min(g.truncation());
    let mut out = build_r(f, r, s)?.add(&build_r_symbolic(g, s, r)?.conj())?.truncate(t);
    let a0 = f.constant_term()?;
    out.add_term((1, 0, 0), &PeriodScalar::rational(a0 / Rational::from(n + 1)));
    let c = Rational::from(binomial(n, r) * sign(r));
    out.add_term((-(n as i64), 0, 0), &alpha.scale(&c));
    debug_assert_eq!(out.weights(), (ri, si));
    Ok(out)
}

/// The data fixing a family `H(f)_(r,s)`: the form `f`, the antiholomorphic
/// partner `g` and the constant `alpha`.
///
/// With periods normalised by `(2πi)^(n+1)`, conjugation contributes the sign
/// `(-1)^(n+1)`, so the partner is `g = (-1)^(n+1) s(f)`. The same sign is why
/// `E_(r,s)` is built from `G` itself although `s(G) = -G`.
#[derive(Clone, Debug)]
pub struct HInputs {
    pub f: QLaurent,
    pub g: SymbolicSeries,
    pub alpha: PeriodScalar,
    pub eigen: HeckeEigenData,
    pub n: u32,
}

impl HInputs {
    /// `f = Delta` and `g = -s(Delta) = -(sigma Delta' + tau Delta)`, with `alpha` computed from `T_2`.
    pub fn delta(truncation: i64) -> Result<Self> {
        let f = delta(truncation);
        let g = SymbolicSeries::new(vec![
            (-&PeriodScalar::sigma(), delta_prime(truncation)?),
            (-&PeriodScalar::tau(), f.clone()),
        ]);
        let eigen = HeckeEigenData::from_eigenform(&f, 12, "Delta")?;
        let alpha = alpha_for_eigenform(&f, &g, &eigen, 2, 10)?;
        Ok(HInputs { f, g, alpha, eigen, n: 10 })
    }

    /// Replaces `alpha` by the free symbol `alpha`.
    pub fn with_symbolic_alpha(mut self) -> Self {
        self.alpha = PeriodScalar::symbol(Symbol::Alpha);
        self
    }

    pub fn truncation(&self) -> i64 {
        self.f.truncation().min(self.g.truncation())
    }

    /// `g` as a BiExpansion of weights `(n + 2, 0)`.
    pub fn g_expansion(&self) -> Result<BiExpansion> {
        BiExpansion::from_symbolic(&self.g, 0, self.n as i64 + 2, 0)
    }
}

/// `H(f)_(r,s)` for `r + s = n`.
pub fn build_h(inputs: &HInputs, r: u32, s: u32) -> Result<BiExpansion> {
    if r + s != inputs.n {
        return Err(Error::InvalidConfig(format!("r + s = {} but n = {}", r + s, inputs.n)));
    }
    build_x(&inputs.f, &inputs.g, &inputs.alpha, r, s)
}

/// The whole family `[H_(n,0), H_(n-1,1), ..., H_(0,n)]`.
pub fn build_h_family(inputs: &HInputs) -> Result<Vec<BiExpansion>> {
    (0..=inputs.n).rev().map(|r| build_h(inputs, r, inputs.n - r)).collect()
}

/// `G_(2k)` as a weight-`(2k, 0)` expansion.
pub fn eisenstein_expansion(k: u32, truncation: i64) -> BiExpansion {
    let g = eisenstein(k, truncation);
    BiExpansion::from_holomorphic(&g, 0, 2 * k as i64, 0)
}

/// `G_2* = G_2 - 1/(4L)`, of weights `(2, 0)`.
pub fn g2_star(truncation: i64) -> BiExpansion {
    let mut g = eisenstein_expansion(1, truncation);
    g.add_term((-1, 0, 0), &PeriodScalar::rational(Rational::from((-1, 4))));
    g
}

/// `-B_(w+2) / (2 (w+1)(w+2)) L + (-1)^r C(w,r) w!/2^(w+1) zeta(w+1) L^-w`,
/// with `zeta(w+1)` kept as a symbol.
pub fn e_constant_part(r: u32, s: u32, truncation: i64) -> BiExpansion {
    let w = r + s;
    let mut out = BiExpansion::zero(r as i64, s as i64, truncation);
    let b = -bernoulli(w + 2) / Rational::from(2 * (w + 1) * (w + 2));
    out.add_term((1, 0, 0), &PeriodScalar::rational(b));
    let c = psi_normalization(w) * Rational::from(binomial(w, r) * sign(r));
    out.add_term((-(w as i64), 0, 0), &PeriodScalar::symbol_times(Symbol::Zeta, c));
    out
}

/// The real analytic Eisenstein series `E_(r,s)`, `r + s = w` even and at least 2.
pub fn build_e(r: u32, s: u32, truncation: i64) -> Result<BiExpansion> {
    let w = r + s;
    if w < 2 || w % 2 != 0 {
        return Err(Error::InvalidConfig(format!("E_(r,s) needs r + s even and >= 2, got {w}")));
    }
    let g = eisenstein(w / 2 + 1, truncation);
    e_constant_part(r, s, truncation).add(&build_r(&g, r, s)?)?.add(&build_r(&g, s, r)?.conj())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r_at_the_ends() {
        let f = delta(20);
        // R_(0,n) = (-1)^n n! L^-n f^(n+1).
        let r0 = build_r(&f, 0, 10).unwrap();
        let expected =
            BiExpansion::from_holomorphic(&iterated_primitive(&f, 11), -10, 0, 10).scale(&Rational::from(factorial(10)));
        assert_eq!(r0, expected);
        assert!(r0.d_anti().is_zero());
        // ∂ R_(n,0) = (-1)^n L f^(0).
        let rn = build_r(&f, 10, 0).unwrap();
        assert_eq!(rn.d_holo(), BiExpansion::from_holomorphic(&f, 1, 11, -1));
        assert!(build_r(&f, 3, 3).is_err());
    }

    #[test]
    fn r_ladder() {
        let f = delta_prime(20).unwrap();
        for s in 1..=10u32 {
            let r = 10 - s;
            let lhs = build_r(&f, r, s).unwrap().d_holo();
            let rhs = build_r(&f, r + 1, s - 1).unwrap().scale(&Rational::from(r + 1));
            assert_eq!(lhs, rhs, "(r, s) = ({r}, {s})");
        }
    }

    #[test]
    fn e_constant_l_coefficient() {
        let e = e_constant_part(1, 1, 10);
        assert_eq!(e.coeff(1, 0, 0), PeriodScalar::rational(-bernoulli(4) / Rational::from(24)));
        assert_eq!(e.coeff(-2, 0, 0), PeriodScalar::symbol_times(Symbol::Zeta, Rational::from((-1, 2))));
    }
}
