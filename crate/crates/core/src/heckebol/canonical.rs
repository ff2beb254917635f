use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::qexact::{bol, bol_inverse, delta, eisenstein_monomial, j_invariant, QLaurent};

/// Largest pole order for which a weight `-n` basis form is built by default.
pub const DEFAULT_POLE_BOUND: i64 = 64;

/// `dim M_k` for level one.
pub fn dim_modular_forms(k: i64) -> i64 {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// `dim S_k` for level one.
pub fn dim_cusp_forms(k: i64) -> i64 {
    if k < 4 {
        0
    } else {
        dim_modular_forms(k) - 1
    }
}

/// The smallest `a` with `E_(12a - n)` available, i.e. `12a - n >= 0` and `!= 2`.
fn min_pole(n: i64) -> i64 {
    (0..).find(|a| {
        let k = 12 * a - n;
        k >= 0 && k != 2
    })
    .unwrap()
}

/// The weight `-n` form `Delta^-a E_(12a-n) j^(p-a) = q^-p + ...`, known through `q^truncation`.
pub fn negative_weight_basis(n: u32, p: i64, truncation: i64) -> Option<QLaurent> {
    let n = n as i64;
    let a = min_pole(n);
    if p < a {
        return None;
    }
    let work = truncation + 2 * p + 4;
    let e = eisenstein_monomial(12 * a - n, work)?;
    let d = delta(work).pow(-a).ok()?;
    let j = j_invariant(work).pow(p - a).ok()?;
    let h = e.mul(&d).mul(&j).with_weight(-n);
    debug_assert!(h.truncation() >= truncation);
    Some(h.truncate(truncation))
}

/// The weakly holomorphic `h` of weight `-n` with `D^(n+1) h = g`.
///
/// Unlike [`bol_inverse`], which sets the constant term to zero, this fixes
/// the constant term by modularity: `h` is rebuilt from its principal part in
/// the basis of [`negative_weight_basis`], and the remaining coefficients are
/// checked against `g`.
pub fn modular_bol_preimage(g: &QLaurent, n: u32) -> Result<QLaurent> {
    let p0 = bol_inverse(g, n)?;
    let t = p0.truncation();
    let amin = min_pole(n as i64);
    let mut rem = p0.clone();
    let mut acc = QLaurent::zero(-(n as i64), t);
    while !rem.is_zero() && rem.valuation() < 0 {
        let p = -rem.valuation();
        let h = (p >= amin)
            .then(|| negative_weight_basis(n, p, t))
            .flatten()
            .ok_or_else(|| Error::NoBolPreimage(format!("no weight -{n} form with pole q^-{p}")))?;
        let c = rem.coeff(-p);
        let ch = h.scale(&c);
        rem = rem.sub(&ch)?;
        acc = acc.add(&ch)?;
    }
    if let Some((m, _)) = rem.terms().find(|(m, _)| *m > 0) {
        return Err(Error::NoBolPreimage(format!(
            "the q^{m} coefficient is not matched by any weight -{n} form"
        )));
    }
    Ok(acc)
}

/// Reduces `f` of weight `n + 2` modulo `D^(n+1) M^!_{-n}` until its pole
/// order is at most `dim S_(n+2)`.
pub fn canonical_representative(f: &QLaurent, n: u32) -> Result<QLaurent> {
    canonical_representative_bounded(f, n, DEFAULT_POLE_BOUND)
}

pub fn canonical_representative_bounded(f: &QLaurent, n: u32, bound: i64) -> Result<QLaurent> {
    let target = dim_cusp_forms(n as i64 + 2);
    let mut g = f.clone();
    while !g.is_zero() && g.valuation() < -target {
        let p = -g.valuation();
        if p > bound {
            return Err(Error::BasisPoleOrder { pole: p, bound });
        }
        let h = negative_weight_basis(n, p, g.truncation())
            .ok_or(Error::BasisPoleOrder { pole: p, bound })?;
        let lead = Integer::from(-p).pow(n + 1);
        let c = Rational::from(g.coeff(-p) / lead);
        g = g.sub(&bol(&h, n).scale(&c))?;
    }
    Ok(g)
}
