use std::fmt;
use std::ops::Mul;

use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::arith::binomial;

/// An integer 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const ID: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };
    pub const S: Mat2 = Mat2 { a: 0, b: -1, c: 1, d: 0 };
    pub const T: Mat2 = Mat2 { a: 1, b: 1, c: 0, d: 1 };
    pub const T_INV: Mat2 = Mat2 { a: 1, b: -1, c: 0, d: 1 };
    /// `(X, Y) -> (X, -Y)`.
    pub const EPSILON: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: -1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    /// The Moebius action `z -> (az + b)/(cz + d)`.
    pub fn act(&self, z: &Complex) -> Complex {
        let prec = z.prec();
        let num = Complex::with_val(prec, z * self.a) + self.b;
        let den = Complex::with_val(prec, z * self.c) + self.d;
        num / den
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Coefficient rings for [`VnPoly`].
pub trait Coefficient: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    /// `self += k * other`.
    fn add_scaled(&mut self, other: &Self, k: &Integer);
    fn sub_assign_ref(&mut self, other: &Self);
}

impl Coefficient for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }
    fn add_scaled(&mut self, other: &Self, k: &Integer) {
        *self += Rational::from(other * k);
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

impl Coefficient for Complex {
    fn zero_like(&self) -> Self {
        Complex::with_val(self.prec(), 0)
    }
    fn add_scaled(&mut self, other: &Self, k: &Integer) {
        *self += Complex::with_val(self.prec(), other * k);
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
}

/// A homogeneous polynomial `sum_j c_j X^(n-j) Y^j` of degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct VnPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> VnPoly<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial in V_n has n + 1 coefficients");
        VnPoly { coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    /// The coefficient of `X^(n-j) Y^j`.
    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn zero_like(&self) -> Self {
        VnPoly { coeffs: self.coeffs.iter().map(|c| c.zero_like()).collect() }
    }

    /// The right action `P|g (X, Y) = P(aX + bY, cX + dY)`.
    pub fn act(&self, g: &Mat2) -> Self {
        let n = self.degree();
        let m = action_matrix(n, g);
        let mut out = self.zero_like();
        for (j, c) in self.coeffs.iter().enumerate() {
            for (l, k) in m[j].iter().enumerate() {
                if *k != 0 {
                    out.coeffs[l].add_scaled(c, k);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let one = Integer::from(1);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, &one);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            a.sub_assign_ref(b);
        }
        out
    }
}

impl VnPoly<Rational> {
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn to_complex(&self, bits: u32) -> VnPoly<Complex> {
        VnPoly::new(
            self.coeffs
                .iter()
                .map(|c| Complex::with_val(bits, (Float::with_val(bits, c), 0)))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }
}

impl VnPoly<Complex> {
    pub fn zero(n: u32, bits: u32) -> Self {
        VnPoly { coeffs: vec![Complex::with_val(bits, 0); n as usize + 1] }
    }

    /// Largest coefficient modulus.
    pub fn norm(&self) -> Float {
        let prec = self.coeffs[0].prec().0;
        self.coeffs
            .iter()
            .map(|c| Float::with_val(prec, c.abs_ref()))
            .fold(Float::with_val(prec, 0), |a, b| if b > a { b } else { a })
    }

    pub fn scale(&self, k: &Complex) -> Self {
        VnPoly { coeffs: self.coeffs.iter().map(|c| Complex::with_val(c.prec(), c * k)).collect() }
    }
}

/// `m[j][l]`: coefficient of `X^(n-l) Y^l` in `(aX + bY)^(n-j) (cX + dY)^j`.
fn action_matrix(n: u32, g: &Mat2) -> Vec<Vec<Integer>> {
    let pow_expand = |e: u32, x: i64, y: i64| -> Vec<Integer> {
        (0..=e)
            .map(|i| binomial(e, i) * Integer::from(x).pow(e - i) * Integer::from(y).pow(i))
            .collect()
    };
    (0..=n)
        .map(|j| {
            let p = pow_expand(n - j, g.a, g.b);
            let q = pow_expand(j, g.c, g.d);
            let mut row = vec![Integer::new(); n as usize + 1];
            for (i, x) in p.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                for (k, y) in q.iter().enumerate() {
                    row[i + k] += Integer::from(x * y);
                }
            }
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monomial(n: usize, j: usize) -> VnPoly<Rational> {
        let mut c = vec![0; n + 1];
        c[j] = 1;
        VnPoly::from_integers(&c)
    }

    #[test]
    fn substitutions() {
        // Y^10 | S = X^10, X^10 | S = Y^10.
        assert_eq!(monomial(10, 10).act(&Mat2::S), monomial(10, 0));
        assert_eq!(monomial(10, 0).act(&Mat2::S), monomial(10, 10));
        // X | T = X + Y.
        assert_eq!(monomial(1, 0).act(&Mat2::T), VnPoly::from_integers(&[1, 1]));
        let p = VnPoly::from_integers(&[3, -1, 4, 1, -5, 9, 2, -6, 5, 3, 5]);
        assert_eq!(p.act(&Mat2::S).act(&Mat2::S), p);
    }

    #[test]
    fn right_action() {
        let p = VnPoly::from_integers(&[1, 2, 0, -3, 7]);
        let g = Mat2::S * Mat2::T;
        let h = Mat2::T * Mat2::T * Mat2::S;
        assert_eq!(p.act(&g).act(&h), p.act(&(g * h)));
        let u = Mat2::S * Mat2::T;
        assert_eq!(u * u * u, Mat2::new(-1, 0, 0, -1));
    }

    #[test]
    fn moebius() {
        let i = Complex::with_val(64, (0, 1));
        let si = Mat2::S.act(&i);
        assert!((si.real().to_f64()).abs() < 1e-15 && (si.imag().to_f64() - 1.0).abs() < 1e-15);
        assert_eq!(Mat2::S.det(), 1);
    }
}
