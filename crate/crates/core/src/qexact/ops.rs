use rug::ops::Pow;
use rug::{Integer, Rational};

use super::QLaurent;
use crate::error::{Error, Result};

/// The iterated primitive `f^(k)` with coefficients `a_m / (2m)^k`; the
/// constant term is dropped. Its weight is recorded as `w - 2k`.
pub fn iterated_primitive(f: &QLaurent, k: u32) -> QLaurent {
    f.map_coeffs(f.weight() - 2 * k as i64, |m, a| {
        if m == 0 {
            Rational::new()
        } else {
            Rational::from(a / Integer::from(2 * m).pow(k))
        }
    })
}

/// Bol's operator `D^(n+1)`, `a_m -> m^(n+1) a_m`, from weight `-n` to weight `n + 2`.
pub fn bol(f: &QLaurent, n: u32) -> QLaurent {
    f.map_coeffs(n as i64 + 2, |m, a| Rational::from(a * Integer::from(m).pow(n + 1)))
}

/// The preimage of `g` under [`bol`] with zero constant term; `g` must have
/// vanishing constant term.
pub fn bol_inverse(g: &QLaurent, n: u32) -> Result<QLaurent> {
    if g.truncation() >= 0 {
        let c = g.coeff(0);
        if c != 0 {
            return Err(Error::NoBolPreimage(format!("constant term {c}")));
        }
    }
    Ok(g.map_coeffs(-(n as i64), |m, a| {
        if m == 0 {
            Rational::new()
        } else {
            Rational::from(a / Integer::from(m).pow(n + 1))
        }
    }))
}

/// The pairing `{f, g} = sum_k a_k(f) a_{-k}(g) / k^(n+1)` on weight `n + 2` forms.
///
/// The sum runs over `ord f <= k <= -ord g`, so both series must be known
/// far enough to cover it.
pub fn pairing(f: &QLaurent, g: &QLaurent, n: u32) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Ok(Rational::new());
    }
    let lo = f.valuation();
    let hi = -g.valuation();
    if hi < lo {
        return Ok(Rational::new());
    }
    if f.truncation() < hi {
        return Err(Error::InsufficientTruncation { needed: hi, available: f.truncation() });
    }
    if g.truncation() < -lo {
        return Err(Error::InsufficientTruncation { needed: -lo, available: g.truncation() });
    }
    let mut acc = Rational::new();
    for k in lo..=hi {
        let a = f.coeff(k);
        let b = g.coeff(-k);
        if a == 0 || b == 0 {
            continue;
        }
        if k == 0 {
            return Err(Error::PairingUndefined);
        }
        acc += Rational::from(&a * &b) / Integer::from(k).pow(n + 1);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::{delta, delta_prime};

    #[test]
    fn primitive_coefficients() {
        let d = delta(5);
        assert_eq!(iterated_primitive(&d, 0), d);
        assert_eq!(iterated_primitive(&d, 1).coeff(2), -6);
        let dp = delta_prime(5).unwrap();
        assert_eq!(iterated_primitive(&dp, 11).coeff(-1), Rational::from((-1, 2048)));
        assert_eq!(iterated_primitive(&dp, 11).weight(), -10);
    }

    #[test]
    fn bol_examples() {
        let inv_q = QLaurent::monomial(-10, -1, Rational::from(1), 3);
        assert_eq!(bol(&inv_q, 10).coeff(-1), -1);
        assert!(bol(&QLaurent::one(3), 10).is_zero());
        let f = QLaurent::from_integers(-10, 1, [1, 1]);
        let g = bol(&f, 10);
        assert_eq!(g.coeffs(), [1, 2048].map(Rational::from));
        assert_eq!(g.weight(), 12);
        assert_eq!(bol_inverse(&g, 10).unwrap(), f);
        let five = QLaurent::monomial(12, 0, Rational::from(5), 2);
        assert!(matches!(bol_inverse(&five, 10), Err(Error::NoBolPreimage(_))));
    }

    #[test]
    fn pairing_examples() {
        let d = delta(5);
        let dp = delta_prime(5).unwrap();
        assert_eq!(pairing(&d, &dp, 10).unwrap(), 1);
        assert_eq!(pairing(&dp, &d, 10).unwrap(), -1);
        assert_eq!(pairing(&d, &d, 10).unwrap(), 0);
        let h = QLaurent::monomial(-10, -1, Rational::from(1), 5);
        assert_eq!(pairing(&bol(&h, 10), &dp, 10).unwrap(), 0);
    }

    #[test]
    fn pairing_needs_coverage() {
        let d = delta(5);
        let dp = QLaurent::from_integers(12, -3, [1]);
        assert!(matches!(pairing(&d, &dp, 10), Err(Error::InsufficientTruncation { .. })));
    }
}
