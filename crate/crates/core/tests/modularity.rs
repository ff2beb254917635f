use racusp::cocycle::{cocycle_of_form, extract_periods, CocycleOptions, Mat2};
use racusp::hp::Precision;
use racusp::qexact::{delta, delta_prime};
use racusp::raexpand::{build_e, build_h_family, evaluate, modularity_check, symbol_values, BiExpansion, HInputs};
use racusp::scalar::{PeriodScalar, SymbolValues};
use racusp::svperiods::sv_report;
use rug::{Complex, Float};

const POINTS: [(f64, f64); 5] = [(1.0 / 3.0, 1.0), (0.0, 2.0), (0.0, 1.2), (0.3, 1.1), (-0.4, 0.95)];

fn values(prec: Precision) -> (HInputs, SymbolValues) {
    let opts = CocycleOptions::with_precision(prec);
    let bits = prec.bits();
    let tau0 = Complex::with_val(bits, (0, 2));
    let z = Complex::with_val(bits, (0, 1));
    let cf = cocycle_of_form(&delta(30), 10, &tau0, &z, "delta", &opts).unwrap();
    let cfp = cocycle_of_form(&delta_prime(30).unwrap(), 10, &tau0, &z, "delta_prime", &opts).unwrap();
    let sv = sv_report(&extract_periods(&cf, &cfp).unwrap()).unwrap();
    let inputs = HInputs::delta(30).unwrap();
    let v = symbol_values(&sv.sigma, &sv.tau, &inputs.alpha, 5, bits);
    (inputs, v)
}

fn point(x: f64, y: f64, prec: Precision) -> Complex {
    Complex::with_val(prec.bits(), (x, y))
}

#[test]
fn real_analytic_cusp_forms_are_modular() {
    let prec = Precision::default();
    let (_, v) = values(prec);
    // N = 60 puts the truncation tail far below the tolerance even at Im = 1/2.
    let inputs = HInputs::delta(60).unwrap();
    for h in &build_h_family(&inputs).unwrap() {
        for (x, y) in POINTS {
            let r = modularity_check(h, &Mat2::S, &point(x, y, prec), &v, prec).unwrap();
            assert!(r.relative < 1e-15, "{:?} at ({x}, {y}): {}", h.weights(), r.relative.to_f64());
            let t = modularity_check(h, &Mat2::T, &point(x, y, prec), &v, prec).unwrap();
            assert!(t.relative < 1e-30);
        }
    }
}

#[test]
fn residual_tracks_the_tail_estimate() {
    let prec = Precision::default();
    let (inputs, v) = values(prec);
    let family = build_h_family(&inputs).unwrap();
    let r = modularity_check(&family[0], &Mat2::S, &point(1.0 / 3.0, 1.0, prec), &v, prec).unwrap();
    assert!(r.relative < 1e-15);
    for h in &family {
        let r = modularity_check(h, &Mat2::S, &point(0.0, 2.0, prec), &v, prec).unwrap();
        let scale = Float::with_val(prec.bits(), &r.absolute / &r.relative);
        assert!(r.absolute < r.tail.clone() * 10u32 + scale * 1e-20, "{:?}", h.weights());
    }
}

#[test]
fn wrong_sign_is_not_modular() {
    // The partner s(f) itself, without the sign, does not give a modular function.
    let prec = Precision::default();
    let (mut inputs, v) = values(prec);
    for (c, _) in inputs.g.terms.iter_mut() {
        *c = -&*c;
    }
    inputs.alpha = -&inputs.alpha;
    let h = &build_h_family(&inputs).unwrap()[0];
    let r = modularity_check(h, &Mat2::S, &point(0.0, 1.2, prec), &v, prec).unwrap();
    assert!(r.relative > 1e-3);
}

#[test]
fn eisenstein_is_modular() {
    let prec = Precision::default();
    let bits = prec.bits();
    for (r, s) in [(2, 2), (4, 0), (1, 3), (3, 3), (6, 0)] {
        let e = build_e(r, s, 30).unwrap();
        let v = symbol_values(&Float::new(bits), &Float::new(bits), &PeriodScalar::zero(), r + s + 1, bits);
        for (x, y) in POINTS {
            let res = modularity_check(&e, &Mat2::S, &point(x, y, prec), &v, prec).unwrap();
            assert!(res.relative < 1e-15, "E_({r},{s}) at ({x}, {y}): {}", res.relative.to_f64());
        }
    }
}

/// Direct double sum in a different order: every term evaluated from scratch.
fn naive(f: &BiExpansion, z: &Complex, v: &SymbolValues) -> Complex {
    let bits = z.prec().0;
    let pi = Precision::pi_at(bits);
    let y = z.imag().to_f64();
    let mut acc = Complex::with_val(bits, 0);
    let terms: Vec<_> = f.terms().collect();
    for (&(k, m, n), c) in terms.into_iter().rev() {
        let l = Float::with_val(bits, -(pi.clone() * 2u32) * z.imag());
        let lk = Float::with_val(bits, rug::ops::Pow::pow(l, k as i32));
        let arg = Complex::with_val(bits, (Float::with_val(bits, &pi * 2u32) * z.real() * (m - n), 0));
        let phase = Complex::with_val(bits, (0, arg.real())).exp();
        let damp = Float::with_val(bits, -(pi.clone() * 2u32) * y * (m + n) as f64).exp();
        acc += phase * damp * lk * c.evaluate(v);
    }
    acc
}

#[test]
fn evaluation_matches_direct_summation() {
    let prec = Precision::default();
    let (inputs, v) = values(prec);
    let h = racusp::raexpand::build_r(&inputs.f, 10, 0).unwrap();
    for (x, y) in POINTS {
        let z = point(x, y, prec);
        let a = evaluate(&h, &z, &v, prec).unwrap().value;
        let b = naive(&h, &z, &v);
        let d = Float::with_val(prec.bits(), (a.clone() - &b).abs().real()) / Float::with_val(prec.bits(), b.abs().real());
        assert!(d < 1e-25, "{}", d.to_f64());
    }
}
