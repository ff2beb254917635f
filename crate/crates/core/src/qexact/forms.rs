//! The specific level-one forms used throughout: Eisenstein series, `Delta`,
//! `j` and the weakly holomorphic partner `Delta'`.

use rug::{Integer, Rational};

use super::QLaurent;
use crate::arith::{bernoulli, sigma};
use crate::error::{Error, Result};

/// Hecke-normalised Eisenstein series of weight `2k`:
/// `-B_{2k}/(4k) + sum_{n>=1} sigma_{2k-1}(n) q^n`, known through `q^truncation`.
pub fn eisenstein(k: u32, truncation: i64) -> QLaurent {
    assert!(k >= 1, "eisenstein series need k >= 1");
    let constant = -bernoulli(2 * k) / Rational::from(4 * k);
    QLaurent::from_fn(2 * k as i64, 0, truncation, |n| {
        if n == 0 {
            constant.clone()
        } else {
            Rational::from(sigma(2 * k - 1, n as u64))
        }
    })
}

/// Eisenstein series of weight `2k` scaled to constant term 1.
pub fn eisenstein_normalized(k: u32, truncation: i64) -> QLaurent {
    let g = eisenstein(k, truncation);
    let c = g.coeff(0).recip();
    g.scale(&c)
}

/// Ramanujan's `Delta = q prod (1 - q^n)^24`, known through `q^truncation`.
pub fn delta(truncation: i64) -> QLaurent {
    assert!(truncation >= 1, "delta needs truncation >= 1");
    let t = (truncation - 1) as usize;
    // Euler's product prod (1 - q^n) through q^t, in integers.
    let mut euler = vec![Integer::new(); t + 1];
    euler[0] = Integer::from(1);
    for n in 1..=t {
        for m in (n..=t).rev() {
            let prev = euler[m - n].clone();
            euler[m] -= prev;
        }
    }
    let eta = QLaurent::from_integers(0, 0, euler);
    let p = eta.pow(24).expect("positive power");
    p.shift(1).with_weight(12)
}

/// `Delta` again, as `(E4^3 - E6^2)/1728`. Used to cross-check [`delta`].
pub fn delta_from_eisenstein(truncation: i64) -> QLaurent {
    let e4 = eisenstein_normalized(2, truncation);
    let e6 = eisenstein_normalized(3, truncation);
    let d = e4.pow(3).unwrap().sub(&e6.pow(2).unwrap()).unwrap();
    d.scale(&Rational::from((1, 1728)))
}

/// `j = E4^3 / Delta = q^-1 + 744 + 196884 q + ...`, known through `q^truncation`.
pub fn j_invariant(truncation: i64) -> QLaurent {
    assert!(truncation >= -1, "j needs truncation >= -1");
    let e4 = eisenstein_normalized(2, truncation + 1);
    let d = delta(truncation + 2);
    e4.pow(3).unwrap().div(&d).expect("Delta has leading coefficient 1").truncate(truncation)
}

/// The unique `Delta' = q^-1 + O(q^2)` in `Delta * Q[j]`, known through `q^truncation`.
///
/// Written as `Delta (j^2 + c1 j + c0)`; the two constants are solved from
/// the vanishing of the `q^0` and `q^1` coefficients.
pub fn delta_prime(truncation: i64) -> Result<QLaurent> {
    let (f, _) = delta_prime_with_constants(truncation)?;
    Ok(f)
}

/// As [`delta_prime`], also returning `(c1, c0)`.
pub fn delta_prime_with_constants(truncation: i64) -> Result<(QLaurent, (Rational, Rational))> {
    let t = truncation.max(2);
    let e4_cubed = eisenstein_normalized(2, t + 1).pow(3)?;
    let d = delta(t + 2);
    let j = e4_cubed.div(&d)?.truncate(t);
    // Delta j = E4^3 and Delta j^2 = E4^3 j.
    let dj = e4_cubed.truncate(t);
    let dj2 = e4_cubed.mul(&j).truncate(t);
    let d = d.truncate(t);
    // Unknowns (c1, c0) in  dj2 + c1 dj + c0 d,  coefficients of q^0 and q^1.
    let m = [[dj.coeff(0), d.coeff(0)], [dj.coeff(1), d.coeff(1)]];
    let rhs = [-dj2.coeff(0), -dj2.coeff(1)];
    let det = Rational::from(&m[0][0] * &m[1][1]) - Rational::from(&m[0][1] * &m[1][0]);
    if det == 0 {
        return Err(Error::SingularSystem);
    }
    let c1 = (Rational::from(&rhs[0] * &m[1][1]) - Rational::from(&m[0][1] * &rhs[1])) / &det;
    let c0 = (Rational::from(&m[0][0] * &rhs[1]) - Rational::from(&rhs[0] * &m[1][0])) / &det;
    let f = dj2.add(&dj.scale(&c1))?.add(&d.scale(&c0))?.truncate(truncation);
    Ok((f, (c1, c0)))
}

/// The weight-`k` form `E4^a E6^b` with `4a + 6b = k`, constant term 1.
/// Returns `None` when `k` is odd, negative or 2.
pub fn eisenstein_monomial(k: i64, truncation: i64) -> Option<QLaurent> {
    if k < 0 || k % 2 != 0 || k == 2 {
        return None;
    }
    let b = match k % 4 {
        0 => 0,
        _ => 1,
    };
    let a = (k - 6 * b) / 4;
    let e4 = eisenstein_normalized(2, truncation);
    let e6 = eisenstein_normalized(3, truncation);
    let f = e4.pow(a).unwrap().mul(&e6.pow(b).unwrap());
    Some(f.with_weight(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_and_g4() {
        let g2 = eisenstein(1, 4);
        assert_eq!(g2.coeff(0), Rational::from((-1, 24)));
        assert_eq!(g2.coeffs()[1..], [1, 3, 4, 7].map(Rational::from));
        let g4 = eisenstein(2, 3);
        assert_eq!(g4.coeff(0), Rational::from((1, 240)));
        assert_eq!(g4.coeffs()[1..], [1, 9, 28].map(Rational::from));
        assert_eq!(eisenstein(7, 2).coeff(2), 8193);
        assert_eq!(eisenstein(7, 2).coeff(0), Rational::from((-1, 24)));
    }

    #[test]
    fn ramanujan_tau() {
        let d = delta(6);
        assert_eq!(d.valuation(), 1);
        // a_4 is -1472 from the product; one printed expansion drops the sign.
        let tau = [1, -24, 252, -1472, 4830, -6048];
        assert_eq!(d.coeffs(), tau.map(Rational::from));
    }

    #[test]
    fn delta_two_ways() {
        assert_eq!(delta(40), delta_from_eisenstein(40));
    }

    #[test]
    fn j_coefficients() {
        let j = j_invariant(2);
        assert_eq!(j.valuation(), -1);
        assert_eq!(j.coeffs(), [1, 744, 196884, 21493760].map(Rational::from));
        assert_eq!(j.mul(&delta(5)).valuation(), 0);
    }

    #[test]
    fn delta_prime_coefficients() {
        let (f, (c1, c0)) = delta_prime_with_constants(4).unwrap();
        assert_eq!(c1, -1464);
        assert_eq!(c0, 142236);
        assert_eq!(f.valuation(), -1);
        assert_eq!(f.coeff(-1), 1);
        assert_eq!(f.coeff(0), 0);
        assert_eq!(f.coeff(1), 0);
        assert_eq!(f.coeff(2), 47709536);
        assert_eq!(f.coeff(3), 39862705122_i64);
        assert_eq!(f.coeff(4), 7552626810624_i64);
        assert_eq!(f.weight(), 12);
    }

    #[test]
    fn eisenstein_monomials() {
        let e14 = eisenstein_monomial(14, 3).unwrap();
        let direct = eisenstein_normalized(7, 3);
        assert_eq!(e14, direct);
        assert!(eisenstein_monomial(2, 3).is_none());
        assert_eq!(eisenstein_monomial(0, 3).unwrap(), QLaurent::one(3));
    }
}
