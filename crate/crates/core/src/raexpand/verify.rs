use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use serde::Serialize;

use super::build::{build_e, build_h_family, eisenstein_expansion, g2_star, HInputs};
use super::expansion::{sigma_rational, BiExpansion};
use crate::error::Result;
use crate::heckebol::eigen_defect;
use crate::scalar::{PeriodScalar, Symbol, SymbolicSeries};

/// One exact identity and whether it held.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub truncation: i64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub truncation: i64,
    pub random_cases: usize,
    pub bol_cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { truncation: 30, random_cases: 50, bol_cases: 20, seed: 0x5eed }
    }
}

/// Runs every identity of the suite for the `Delta` family.
pub fn verify_all(opts: &VerifyOptions) -> Result<VerifyReport> {
    let inputs = HInputs::delta(opts.truncation)?;
    let family = build_h_family(&inputs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = Vec::new();
    checks.extend(ladder_checks(&inputs, &family)?);
    checks.extend(laplacian_checks(&family));
    checks.extend(shape_checks(&inputs, &family));
    checks.extend(eisenstein_checks(opts.truncation)?);
    checks.extend(operator_identity_checks(&mut rng, opts.random_cases, opts.truncation));
    checks.extend(bol_checks(&mut rng, opts.bol_cases, opts.truncation));
    checks.extend(kernel_checks(&mut rng, opts.truncation));
    checks.extend(hecke_relation_checks(&mut rng, &family)?);
    checks.extend(g2_star_checks(opts.truncation)?);
    checks.extend(verify_hecke_inhomogeneous(&inputs, &family, 2)?);
    checks.extend(verify_hecke_inhomogeneous(&inputs, &family, 1)?);
    Ok(VerifyReport { truncation: opts.truncation, checks })
}

/// `∂H_(r,s) = (r+1) H_(r+1,s-1)`, `∂̄H_(r,s) = (s+1) H_(r-1,s+1)` and the two ends.
///
/// `family[i]` is `H_(n-i, i)`.
pub fn ladder_checks(inputs: &HInputs, family: &[BiExpansion]) -> Result<Vec<Check>> {
    let n = inputs.n as usize;
    let mut out = Vec::new();
    for s in 0..=n {
        let r = n - s;
        let h = &family[s];
        if s >= 1 {
            let rhs = family[s - 1].scale(&Rational::from(r + 1));
            out.push(Check::new(format!("d H_({r},{s}) = {} H_({},{})", r + 1, r + 1, s - 1), h.d_holo().agrees_with(&rhs)));
        }
        if r >= 1 {
            let rhs = family[s + 1].scale(&Rational::from(s + 1));
            out.push(Check::new(format!("dbar H_({r},{s}) = {} H_({},{})", s + 1, r - 1, s + 1), h.d_anti().agrees_with(&rhs)));
        }
    }
    let top = BiExpansion::from_holomorphic(&inputs.f, 1, n as i64 + 1, -1);
    out.push(Check::new(format!("d H_({n},0) = L f"), family[0].d_holo().agrees_with(&top)));
    let bottom = BiExpansion::from_symbolic(&inputs.g, 1, n as i64 + 1, -1)?.conj();
    out.push(Check::new(format!("dbar H_(0,{n}) = L conj g"), family[n].d_anti().agrees_with(&bottom)));
    Ok(out)
}

/// `(Δ + n) H = 0` and `Δ (L^-1 H) = 0`.
pub fn laplacian_checks(family: &[BiExpansion]) -> Vec<Check> {
    let mut out = Vec::new();
    for h in family {
        let (r, s) = h.weights();
        let w = Rational::from(r + s);
        let eig = h.laplacian().add(&h.scale(&w)).map(|x| x.is_zero()).unwrap_or(false);
        out.push(Check::new(format!("(Delta + {}) H_({r},{s}) = 0", r + s), eig));
        out.push(Check::new(format!("Delta L^-1 H_({r},{s}) = 0"), h.mul_l(-1).laplacian().is_zero()));
    }
    out
}

/// Holomorphic part in `L^k`, `-n <= k <= -s`; antiholomorphic part in `-n <= k <= -r`;
/// constant part `alpha (-1)^r C(n,r) L^-n` plus `a_0(f)/(n+1) L`.
pub fn shape_checks(inputs: &HInputs, family: &[BiExpansion]) -> Vec<Check> {
    let n = inputs.n as i64;
    let within = |f: &BiExpansion, lo: i64, hi: i64| f.l_range().is_none_or(|(a, b)| a >= lo && b <= hi);
    let mut out = Vec::new();
    for h in family {
        let (r, s) = h.weights();
        out.push(Check::new(format!("holomorphic shape of H_({r},{s})"), within(&h.holomorphic_part(), -n, -s)));
        out.push(Check::new(format!("antiholomorphic shape of H_({r},{s})"), within(&h.antiholomorphic_part(), -n, -r)));
        let mixed = h.terms().all(|(&(_, m, n), _)| m == 0 || n == 0);
        out.push(Check::new(format!("no mixed terms in H_({r},{s})"), mixed));
        let c = h.constant_part();
        let mut expected = BiExpansion::zero(r, s, h.truncation());
        let binom = Rational::from(crate::arith::binomial(inputs.n, r as u32) * if r % 2 == 0 { 1 } else { -1 });
        expected.add_term((-n, 0, 0), &inputs.alpha.scale(&binom));
        expected.add_term((1, 0, 0), &PeriodScalar::rational(inputs.f.coeff(0) / Rational::from(n + 1)));
        out.push(Check::new(format!("constant part of H_({r},{s})"), c == expected));
    }
    out
}

/// `∂E_(w,0) = L G_(w+2)`, the ladder, `Δ E = -w E` and `conj E_(r,s) = E_(s,r)`.
pub fn eisenstein_checks(truncation: i64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for w in [2u32, 4, 6] {
        let family: Vec<BiExpansion> = (0..=w).map(|s| build_e(w - s, s, truncation)).collect::<Result<_>>()?;
        let top = eisenstein_expansion(w / 2 + 1, truncation).mul_l(1).with_weights(w as i64 + 1, -1);
        out.push(Check::new(format!("d E_({w},0) = L G_{}", w + 2), family[0].d_holo().agrees_with(&top)));
        for (s, e) in family.iter().enumerate() {
            let r = w as usize - s;
            let lap = e.laplacian().add(&e.scale(&Rational::from(w))).map(|x| x.is_zero()).unwrap_or(false);
            out.push(Check::new(format!("(Delta + {w}) E_({r},{s}) = 0"), lap));
            out.push(Check::new(format!("conj E_({r},{s}) = E_({s},{r})"), e.conj() == family[r]));
            if s >= 1 {
                let rhs = family[s - 1].scale(&Rational::from(r + 1));
                out.push(Check::new(format!("d E_({r},{s}) = {} E_({},{})", r + 1, r + 1, s - 1), e.d_holo() == rhs));
            }
        }
    }
    Ok(out)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> PeriodScalar {
    let c = Rational::from((rng.gen_range(-20i64..=20), rng.gen_range(1i64..=6)));
    let sym = [Symbol::One, Symbol::One, Symbol::Sigma, Symbol::Tau][rng.gen_range(0..4)];
    PeriodScalar::symbol_times(sym, c)
}

/// A sparse random expansion; with `mixed` false, every term has `m = 0` or `n = 0`.
pub fn random_expansion(rng: &mut ChaCha8Rng, r: i64, s: i64, truncation: i64, terms: usize, mixed: bool) -> BiExpansion {
    let mut f = BiExpansion::zero(r, s, truncation);
    for _ in 0..terms {
        let k = rng.gen_range(-4..=3);
        let m = rng.gen_range(-2..=truncation);
        let n = if mixed {
            rng.gen_range(-2..=truncation)
        } else if rng.gen_bool(0.5) {
            0
        } else {
            rng.gen_range(-2..=truncation)
        };
        let (m, n) = if !mixed && n != 0 { (0, n) } else { (m, n) };
        f.add_term((k, m, n), &random_scalar(rng));
    }
    f
}

/// `sl_2` relations and the commutation rules with `L` and `Δ`.
pub fn operator_identity_checks(rng: &mut ChaCha8Rng, cases: usize, truncation: i64) -> Vec<Check> {
    let mut ok = [true; 8];
    for _ in 0..cases {
        let (r, s) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        let f = random_expansion(rng, r, s, truncation, 12, true);
        let eq = |a: BiExpansion, b: BiExpansion| a == b;
        ok[0] &= eq(f.d_anti().d_holo().sub(&f.d_holo().d_anti()).unwrap(), f.h());
        ok[1] &= eq(f.d_holo().h().sub(&f.h().d_holo()).unwrap(), f.d_holo().scale(&Rational::from(2)));
        ok[2] &= eq(f.d_anti().h().sub(&f.h().d_anti()).unwrap(), f.d_anti().scale(&Rational::from(-2)));
        ok[3] &= eq(f.mul_l(1).d_holo(), f.d_holo().mul_l(1));
        ok[4] &= eq(f.mul_l(1).d_anti(), f.d_anti().mul_l(1));
        ok[5] &= eq(f.laplacian().d_holo(), f.d_holo().laplacian());
        ok[6] &= eq(f.laplacian().d_anti(), f.d_anti().laplacian());
        let lf = f.mul_l(1);
        ok[7] &= eq(f.laplacian().mul_l(1).sub(&lf.laplacian()).unwrap(), lf.w());
    }
    let names = [
        "[d, dbar] = h",
        "[h, d] = 2 d",
        "[h, dbar] = -2 dbar",
        "[d, L] = 0",
        "[dbar, L] = 0",
        "[d, Delta] = 0",
        "[dbar, Delta] = 0",
        "[L, Delta] = w L",
    ];
    names.iter().zip(ok).map(|(n, p)| Check::new(format!("{n} ({cases} random)"), p)).collect()
}

/// `D^(n+1) = 2^(-n-1) L^(-n-1) ∂^(n+1)` on weight `(-n, s)` with `n = 10`.
pub fn bol_checks(rng: &mut ChaCha8Rng, cases: usize, truncation: i64) -> Vec<Check> {
    let n = 10u32;
    let scale = Rational::from((1, 1u64 << (n + 1)));
    let mut ok = true;
    for _ in 0..cases {
        let s = rng.gen_range(-4..=4);
        let f = random_expansion(rng, -(n as i64), s, truncation, 12, true);
        let lhs = (0..=n).fold(f.clone(), |g, _| g.bol_d());
        let rhs = f.d_holo_pow(n + 1).mul_l(-(n as i64) - 1).scale(&scale);
        ok &= lhs == rhs;
    }
    vec![Check::new(format!("Bol identity ({cases} random)"), ok)]
}

/// `ker ∂ = L^-r (antiholomorphic)` and `ker ∂̄ = L^-s (holomorphic)`, probed on monomials and sums.
pub fn kernel_checks(rng: &mut ChaCha8Rng, truncation: i64) -> Vec<Check> {
    let mut ok = true;
    for r in -3..=3i64 {
        for k in -4..=4i64 {
            for m in -1..=2i64 {
                for n in -1..=2i64 {
                    let f = BiExpansion::monomial(r, 1, truncation, (k, m, n), PeriodScalar::from(1));
                    ok &= f.d_holo().is_zero() == (m == 0 && k == -r);
                    let g = BiExpansion::monomial(1, r, truncation, (k, m, n), PeriodScalar::from(1));
                    ok &= g.d_anti().is_zero() == (n == 0 && k == -r);
                }
            }
        }
    }
    for _ in 0..10 {
        let r = rng.gen_range(-5..=5);
        let mut anti = BiExpansion::zero(0, 2, truncation);
        for _ in 0..8 {
            anti.add_term((0, 0, rng.gen_range(-2..=truncation)), &random_scalar(rng));
        }
        let f = anti.mul_l(-r);
        ok &= f.r() == r && f.d_holo().is_zero();
        ok &= !f.mul_l(1).with_weights(r, 2).d_holo().is_zero();
    }
    vec![Check::new("kernels of d and dbar", ok)]
}

/// `T_2 T_3 = T_6`, `T_2 T_4 = T_8 + 2^(w-1) T_2`, `[T_2, ∂] = 0` and `[T_2, Δ] = 0`.
pub fn hecke_relation_checks(rng: &mut ChaCha8Rng, family: &[BiExpansion]) -> Result<Vec<Check>> {
    let t = 48;
    let mut objects = vec![
        BiExpansion::from_holomorphic(&crate::qexact::delta(t), 0, 12, 0),
        BiExpansion::from_holomorphic(&crate::qexact::delta_prime(t)?, 0, 12, 0),
        BiExpansion::from_holomorphic(&crate::qexact::delta_prime(t)?, -3, 15, 3).conj(),
    ];
    for (r, s) in [(12, 0), (7, 5), (6, 6), (0, 12)] {
        objects.push(dense_random(rng, r, s, t));
    }
    let mut rel23 = true;
    let mut rel24 = true;
    for f in &objects {
        let w = f.r() + f.s();
        let p = crate::arith::rational_pow(2, w - 1);
        rel23 &= f.hecke(3)?.hecke(2)?.agrees_with(&f.hecke(6)?);
        let lhs = f.hecke(4)?.hecke(2)?;
        rel24 &= lhs.agrees_with(&f.hecke(8)?.add(&f.hecke(2)?.scale(&p))?);
    }
    let mut commute = true;
    for f in family.iter().chain(objects.iter()) {
        commute &= f.hecke(2)?.d_holo().agrees_with(&f.d_holo().hecke(2)?);
        commute &= f.hecke(2)?.d_anti().agrees_with(&f.d_anti().hecke(2)?);
        commute &= f.hecke(2)?.laplacian().agrees_with(&f.laplacian().hecke(2)?);
    }
    Ok(vec![
        Check::new("T_2 T_3 = T_6", rel23),
        Check::new("T_2 T_4 = T_8 + 2^(w-1) T_2", rel24),
        Check::new("T_2 commutes with d, dbar and Delta", commute),
    ])
}

fn dense_random(rng: &mut ChaCha8Rng, r: i64, s: i64, t: i64) -> BiExpansion {
    let mut f = BiExpansion::zero(r, s, t);
    for k in -2..=1 {
        for m in -2..=t {
            if m != 0 && rng.gen_bool(0.6) {
                f.add_term((k, m, 0), &random_scalar(rng));
            }
            if m != 0 && rng.gen_bool(0.6) {
                f.add_term((k, 0, m), &random_scalar(rng));
            }
        }
        f.add_term((k, 0, 0), &random_scalar(rng));
    }
    f
}

/// `T_n G_2* = sigma_1(n) G_2*` for `n <= 6`, and `T_n L^-1 = sigma_1(n) L^-1` at weights `(1, 1)`.
pub fn g2_star_checks(truncation: i64) -> Result<Vec<Check>> {
    let g = g2_star(truncation);
    let l = BiExpansion::monomial(1, 1, truncation, (-1, 0, 0), PeriodScalar::from(1));
    let mut out = Vec::new();
    for n in 1..=6u64 {
        let sigma = sigma_rational(1, n);
        out.push(Check::new(format!("T_{n} G_2* = sigma_1({n}) G_2*"), g.hecke(n)?.agrees_with(&g.scale(&sigma))));
        out.push(Check::new(format!("T_{n} L^-1 = sigma_1({n}) L^-1"), l.hecke(n)?.agrees_with(&l.scale(&sigma))));
    }
    Ok(out)
}

/// `(T_m - λ_m/m) X_(r,s) = (1/m) L^-n (∂^r/r! ψ_m + ∂̄^s/s! conj φ_m)` for every `(r, s)`.
pub fn verify_hecke_inhomogeneous(inputs: &HInputs, family: &[BiExpansion], m: u64) -> Result<Vec<Check>> {
    let n = inputs.n;
    let ni = n as i64;
    let lambda = inputs.eigen.eigenvalue(m)?.clone();
    let psi = eigen_defect(&inputs.f, &inputs.eigen, m, n)?.psi;
    let psi = BiExpansion::from_holomorphic(&psi, 0, -ni, 0);
    let mut phi_terms = Vec::new();
    for (c, gi) in &inputs.g.terms {
        phi_terms.push((c.clone(), eigen_defect(gi, &inputs.eigen, m, n)?.psi));
    }
    let phi = BiExpansion::from_symbolic(&SymbolicSeries::new(phi_terms), 0, -ni, 0)?.conj();
    let inv_m = Rational::from((1, m));
    let mut out = Vec::new();
    for x in family {
        let (r, s) = x.weights();
        let lhs = x.hecke(m)?.sub(&x.scale(&(lambda.clone() * &inv_m)))?;
        let a = psi.d_holo_pow(r as u32).scale(&Rational::from(crate::arith::factorial(r as u32)).recip());
        let b = phi.d_anti_pow(s as u32).scale(&Rational::from(crate::arith::factorial(s as u32)).recip());
        let rhs = a.add(&b)?.mul_l(-ni).scale(&inv_m);
        let depth = lhs.truncation().min(rhs.truncation());
        out.push(Check::new(
            format!("(T_{m} - lambda_{m}/{m}) X_({r},{s}) through q^{depth}"),
            lhs.agrees_with(&rhs),
        ));
    }
    Ok(out)
}
