use rug::Rational;

use crate::arith::{divisors, gcd, rational_pow};
use crate::error::{Error, Result};
use crate::qexact::QLaurent;

/// `T_m f` on q-expansions of weight `f.weight()`:
/// `a_mu(T_m f) = sum_{a | (m, mu)} a^(w-1) a_{mu m / a^2}(f)`.
///
/// The output is known through `floor(t / m)` where `t` is the truncation of
/// `f`; a pole of order `p` becomes a pole of order at most `m p`.
pub fn hecke_qexp(f: &QLaurent, m: u64) -> Result<QLaurent> {
    assert!(m >= 1, "Hecke index must be positive");
    let w = f.weight();
    let mi = m as i64;
    let t_out = f.truncation().div_euclid(mi);
    if f.is_zero() {
        return Ok(QLaurent::zero(w, t_out));
    }
    let v = f.valuation();
    let lower = if v < 0 { v * mi } else { v.div_euclid(mi) };
    if t_out < lower.min(0) {
        return Err(Error::InsufficientTruncation { needed: mi * lower.min(0), available: f.truncation() });
    }
    let weights: Vec<(i64, Rational)> =
        divisors(m).into_iter().map(|a| (a as i64, rational_pow(a as i64, w - 1))).collect();
    let coeffs = (lower..=t_out)
        .map(|mu| {
            let g = gcd(mi, mu);
            let mut acc = Rational::new();
            for (a, aw) in &weights {
                if g % a != 0 {
                    continue;
                }
                let idx = mu * mi / (a * a);
                let c = f.coeff(idx);
                if c != 0 {
                    acc += c * aw;
                }
            }
            acc
        })
        .collect();
    Ok(QLaurent::new(w, lower, coeffs))
}

/// `T_m f` known through `out_truncation`, refusing inputs that are too short.
pub fn hecke_qexp_to(f: &QLaurent, m: u64, out_truncation: i64) -> Result<QLaurent> {
    let needed = out_truncation * m as i64;
    if f.truncation() < needed {
        return Err(Error::InsufficientTruncation { needed, available: f.truncation() });
    }
    Ok(hecke_qexp(f, m)?.truncate(out_truncation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::{delta, delta_prime, eisenstein};

    #[test]
    fn eigenforms() {
        let g12 = eisenstein(6, 40);
        assert_eq!(hecke_qexp(&g12, 2).unwrap(), g12.scale(&Rational::from(2049)).truncate(20));
        let d = delta(40);
        assert_eq!(hecke_qexp(&d, 2).unwrap(), d.scale(&Rational::from(-24)).truncate(20));
        assert_eq!(hecke_qexp(&d, 3).unwrap(), d.scale(&Rational::from(252)).truncate(13));
    }

    #[test]
    fn identity_and_poles() {
        let f = delta_prime(12).unwrap();
        assert_eq!(hecke_qexp(&f, 1).unwrap(), f);
        let t2 = hecke_qexp(&f, 2).unwrap();
        assert_eq!(t2.valuation(), -2);
        assert_eq!(t2.truncation(), 6);
        // a_{-2}(T_2 f) = 2^11 a_{-1}(f).
        assert_eq!(t2.coeff(-2), 2048);
    }

    #[test]
    fn requested_truncation_is_checked() {
        let f = delta(10);
        assert!(hecke_qexp_to(&f, 3, 4).is_err());
        assert_eq!(hecke_qexp_to(&f, 2, 5).unwrap().truncation(), 5);
    }
}
