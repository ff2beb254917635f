use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::Float;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

type Cache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `order`-point rule at `bits` of precision, computed once per process.
pub fn gauss_legendre(order: usize, bits: u32) -> Arc<GaussLegendre> {
    if let Some(rule) = cache().lock().unwrap().get(&(order, bits)) {
        return rule.clone();
    }
    let rule = Arc::new(compute(order, bits));
    cache().lock().unwrap().insert((order, bits), rule.clone());
    rule
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 1..n {
        let k = k as u32;
        let p2 = (Float::with_val(prec, x * &p1) * (2 * k + 1) - &p0 * Float::with_val(prec, k)) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    // (x^2 - 1) P_n' = n (x P_n - P_{n-1})
    let num = (Float::with_val(prec, x * &p1) - &p0) * n as u32;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    (p1, num / den)
}

fn compute(n: usize, bits: u32) -> GaussLegendre {
    assert!(n >= 2, "Gauss-Legendre needs at least two nodes");
    let pi = Float::with_val(bits, Constant::Pi);
    let eps = Float::with_val(bits, Float::i_exp(1, 8 - bits as i32));
    let mut nodes = vec![Float::new(bits); n];
    let mut weights = vec![Float::new(bits); n];
    for i in 0..n.div_ceil(2) {
        let theta = Float::with_val(bits, &pi * (4 * i as u32 + 3)) / (4 * n as u32 + 2);
        let mut x = theta.cos();
        let mut dp = Float::new(bits);
        for _ in 0..100 {
            let (p, d) = legendre(n, &x);
            let dx = Float::with_val(bits, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() <= eps {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        let one_minus = Float::with_val(bits, 1) - Float::with_val(bits, x.square_ref());
        let w = Float::with_val(bits, 2) / (one_minus * Float::with_val(bits, dp.square_ref()));
        nodes[i] = Float::with_val(bits, -&x);
        nodes[n - 1 - i] = x;
        weights[i] = w.clone();
        weights[n - 1 - i] = w;
    }
    GaussLegendre { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = gauss_legendre(8, 200);
        // An 8-point rule is exact through degree 15.
        for k in 0..16u32 {
            let s: Float = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| x.clone().pow(k) * w)
                .fold(Float::new(200), |a, b| a + b);
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((s.to_f64() - exact).abs() < 1e-14, "k = {k}");
        }
        let total: Float = rule.weights.iter().fold(Float::new(200), |a, b| a + b);
        assert!(Float::with_val(200, total - 2u32).abs() < 1e-55);
    }

    #[test]
    fn odd_order_has_centre_node() {
        let rule = gauss_legendre(5, 128);
        assert!(rule.nodes[2].clone().abs() < 1e-30);
        assert!((rule.weights[2].to_f64() - 128.0 / 225.0).abs() < 1e-15);
    }
}
