use proptest::prelude::*;
use racusp::arith::{gcd, mod_inverse};
use racusp::heckebol::{hecke_qexp, negative_weight_basis};
use racusp::mock::{bessel_i, kloosterman};
use racusp::qexact::{bol, bol_inverse, delta, delta_prime, pairing, QLaurent};
use racusp::raexpand::{BiExpansion, Key};
use racusp::scalar::{PeriodScalar, Symbol};
use rug::{Float, Rational};

fn series(weight: i64) -> impl Strategy<Value = QLaurent> {
    (-3i64..=2, prop::collection::vec(-50i64..=50, 1..14))
        .prop_map(move |(v, c)| QLaurent::new(weight, v, c.into_iter().map(Rational::from).collect()))
}

fn scalar() -> impl Strategy<Value = PeriodScalar> {
    (prop::sample::select(Symbol::ALL.to_vec()), -20i64..=20, 1i64..=6)
        .prop_map(|(s, p, q)| PeriodScalar::symbol_times(s, Rational::from((p, q))))
}

fn expansion() -> impl Strategy<Value = BiExpansion> {
    let term = ((-3i64..=3, -2i64..=12, -2i64..=12), scalar());
    (-5i64..=5, -5i64..=5, prop::collection::vec(term, 0..10)).prop_map(|(r, s, terms)| {
        let mut f = BiExpansion::zero(r, s, 12);
        for (key, c) in terms {
            f.add_term(key as Key, &c);
        }
        f
    })
}

fn common(a: &QLaurent, b: &QLaurent) -> i64 {
    a.truncation().min(b.truncation())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(a in series(0), b in series(0), c in series(0)) {
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        prop_assert_eq!(l.truncation(), r.truncation());
        prop_assert!(l.agrees_through(&r, common(&l, &r)));
    }

    #[test]
    fn multiplication_distributes(a in series(0), b in series(2), c in series(2)) {
        let l = a.mul(&b.add(&c).unwrap());
        let r = a.mul(&b).add(&a.mul(&c)).unwrap();
        prop_assert!(l.agrees_through(&r, common(&l, &r)));
    }

    #[test]
    fn inverse_is_an_inverse(a in series(0)) {
        prop_assume!(!a.is_zero() && a.coeff(a.valuation()) != 0);
        let one = a.mul(&a.inverse().unwrap());
        prop_assert!(one.agrees_through(&QLaurent::one(one.truncation()), one.truncation()));
    }

    #[test]
    fn bol_round_trip(f in series(-10)) {
        let f = f.map_coeffs(-10, |m, c| if m == 0 { Rational::new() } else { c.clone() });
        prop_assert_eq!(bol_inverse(&bol(&f, 10), 10).unwrap(), f.clone());
        let g = bol(&f, 10);
        prop_assert_eq!(bol(&bol_inverse(&g, 10).unwrap(), 10), g);
    }

    #[test]
    fn pairing_kills_the_bol_image(c in prop::collection::vec(-30i64..=30, 1..=4)) {
        // A weakly holomorphic form of weight -10; poles start at order 2.
        let mut h = QLaurent::zero(-10, 8);
        for (p, c) in c.iter().enumerate() {
            let b = negative_weight_basis(10, p as i64 + 2, 8).unwrap();
            h = h.add(&b.scale(&Rational::from(*c))).unwrap();
        }
        let d = delta(8);
        let dp = delta_prime(8).unwrap();
        for g in [&d, &dp] {
            prop_assert_eq!(pairing(&bol(&h, 10), g, 10).unwrap(), 0);
        }
    }

    #[test]
    fn coprime_hecke_operators_compose(v in -3i64..=2, c in prop::collection::vec(-50i64..=50, 60..70)) {
        let f = QLaurent::new(12, v, c.into_iter().map(Rational::from).collect());
        let a = hecke_qexp(&hecke_qexp(&f, 3).unwrap(), 2).unwrap();
        let b = hecke_qexp(&hecke_qexp(&f, 2).unwrap(), 3).unwrap();
        let c = hecke_qexp(&f, 6).unwrap();
        let t = a.truncation().min(b.truncation()).min(c.truncation());
        prop_assert!(a.agrees_through(&c, t));
        prop_assert!(b.agrees_through(&c, t));
    }

    #[test]
    fn conjugation_swaps_the_derivatives(f in expansion()) {
        prop_assert_eq!(f.conj().conj(), f.clone());
        prop_assert_eq!(f.d_holo().conj(), f.conj().d_anti());
        let comm = f.d_anti().d_holo().sub(&f.d_holo().d_anti()).unwrap();
        prop_assert_eq!(comm, f.h());
    }

    #[test]
    fn laplacian_commutes_with_l_up_to_weight(f in expansion()) {
        let lf = f.mul_l(1);
        prop_assert_eq!(f.laplacian().mul_l(1).sub(&lf.laplacian()).unwrap(), lf.w());
    }

    #[test]
    fn kloosterman_symmetries(m in -30i64..30, n in -30i64..30, c in 1u64..40, a in 1i64..40) {
        let k = kloosterman(m, n, c, 128);
        prop_assert!(Float::with_val(128, &k - kloosterman(n, m, c, 128)).abs() < 1e-30);
        let phi = (1..=c as i64).filter(|d| gcd(*d, c as i64) == 1).count() as f64;
        prop_assert!(k.to_f64().abs() <= phi + 1e-20);
        if gcd(a, c as i64) == 1 {
            prop_assert!(Float::with_val(128, &k - kloosterman(a * m, n * mod_inverse(a, c as i64).unwrap(), c, 128)).abs() < 1e-30);
        }
    }

    #[test]
    fn kloosterman_is_twisted_multiplicative(m in -20i64..20, n in -20i64..20, c1 in 1i64..15, c2 in 1i64..15) {
        prop_assume!(gcd(c1, c2) == 1);
        let i2 = mod_inverse(c2, c1).unwrap();
        let i1 = mod_inverse(c1, c2).unwrap();
        let whole = kloosterman(m, n, (c1 * c2) as u64, 128);
        let split = kloosterman(m * i2 * i2, n, c1 as u64, 128) * kloosterman(m * i1 * i1, n, c2 as u64, 128);
        prop_assert!(Float::with_val(128, &whole - &split).abs() < 1e-28);
    }

    #[test]
    fn bessel_recurrence(nu in 1u32..14, x in 0.05f64..25.0) {
        let x = Float::with_val(160, x);
        let lhs = bessel_i(nu - 1, &x) - bessel_i(nu + 1, &x);
        let rhs = Float::with_val(160, bessel_i(nu, &x) * (2 * nu)) / &x;
        let scale = rhs.to_f64().abs().max(f64::MIN_POSITIVE);
        prop_assert!(Float::with_val(160, &lhs - &rhs).abs().to_f64() <= 1e-35 * scale);
    }

    #[test]
    fn modular_inverse(a in -1000i64..1000, c in 1i64..500) {
        match mod_inverse(a, c) {
            Some(i) => prop_assert_eq!((a * i).rem_euclid(c), 1 % c),
            None => prop_assert!(gcd(a, c) != 1),
        }
    }
}
