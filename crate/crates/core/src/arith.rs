//! Small number-theoretic helpers shared by the exact and numerical layers.

use std::sync::Mutex;

use rug::ops::Pow;
use rug::{Integer, Rational};

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_k` with `B_1 = -1/2`.
///
/// Computed with the recurrence `sum_{j<=k} C(k+1, j) B_j = 0` and cached.
pub fn bernoulli(k: u32) -> Rational {
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= k as usize {
        let m = table.len() as u32;
        let mut acc = Rational::new();
        for (j, b) in table.iter().enumerate() {
            acc += Rational::from(binomial(m + 1, j as u32)) * b;
        }
        table.push(-acc / Rational::from(m + 1));
    }
    table[k as usize].clone()
}

pub fn binomial(n: u32, k: u32) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(n, k))
}

/// Signed binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial_i(n: i64, k: i64) -> Integer {
    if k < 0 {
        return Integer::new();
    }
    let mut acc = Integer::from(1);
    for i in 0..k {
        acc *= n - i;
    }
    acc / factorial(k as u32)
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn sigma(k: u32, n: u64) -> Integer {
    divisors(n)
        .into_iter()
        .map(|d| Integer::from(d).pow(k))
        .sum()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Inverse of `a` modulo `c` by the extended Euclidean algorithm.
pub fn mod_inverse(a: i64, c: i64) -> Option<i64> {
    let (mut r0, mut r1) = (a.rem_euclid(c), c);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(c))
}

/// `a^e` as an exact rational, for any integer exponent.
pub fn rational_pow(a: i64, e: i64) -> Rational {
    let p = Integer::from(a).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from(p)
    } else {
        Rational::from((Integer::from(1), p))
    }
}
