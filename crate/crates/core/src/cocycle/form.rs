use rug::{Complex, Float};

use super::eichler::{eichler_integral_prepared, EichlerOptions, SeriesEvaluator};
use super::vn::{Mat2, VnPoly};
use crate::error::{Error, Result};
use crate::hp::Precision;
use crate::qexact::QLaurent;

/// Generators of the modular group used to address cocycle values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    S,
    T,
    TInv,
}

impl Generator {
    pub fn matrix(self) -> Mat2 {
        match self {
            Generator::S => Mat2::S,
            Generator::T => Mat2::T,
            Generator::TInv => Mat2::T_INV,
        }
    }
}

/// A cocycle of the modular group with values in `V_n`, stored by its values on `S` and `T`.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub n: u32,
    pub c_s: VnPoly<Complex>,
    pub c_t: VnPoly<Complex>,
    pub basepoint: Complex,
    pub form_id: String,
    pub precision: Precision,
    pub truncation: i64,
}

impl Cocycle {
    fn generator_value(&self, g: Generator) -> VnPoly<Complex> {
        match g {
            Generator::S => self.c_s.clone(),
            Generator::T => self.c_t.clone(),
            // 0 = C_(T T^-1) = C_T|T^-1 + C_(T^-1)
            Generator::TInv => {
                let v = self.c_t.act(&Mat2::T_INV);
                v.zero_like().sub(&v)
            }
        }
    }

    /// `C_w` for a word `w = g_1 ... g_k`, by `C_(gh) = C_g|h + C_h`.
    pub fn at(&self, word: &[Generator]) -> VnPoly<Complex> {
        let mut acc = VnPoly::zero(self.n, self.precision.bits());
        let mut suffix = Mat2::ID;
        for g in word.iter().rev() {
            acc = self.generator_value(*g).act(&suffix).add(&acc);
            suffix = g.matrix() * suffix;
        }
        acc
    }

    /// `C_(ST)`.
    pub fn c_u(&self) -> VnPoly<Complex> {
        self.at(&[Generator::S, Generator::T])
    }

    pub fn scale(&self) -> Float {
        self.c_s.norm().max(&self.c_t.norm())
    }

    fn relative(&self, x: Float) -> Float {
        let s = self.scale();
        if s.is_zero() {
            x
        } else {
            x / s
        }
    }

    /// `|C_S|S + C_S|`, relative to the cocycle size.
    pub fn s_residual(&self) -> Float {
        self.relative(self.c_s.act(&Mat2::S).add(&self.c_s).norm())
    }

    /// `|C_U|U^2 + C_U|U + C_U|` for `U = ST`, relative to the cocycle size.
    pub fn u_residual(&self) -> Float {
        let u = Mat2::S * Mat2::T;
        let cu = self.c_u();
        let r = cu.act(&(u * u)).add(&cu.act(&u)).add(&cu);
        self.relative(r.norm())
    }

    pub fn check_relations(&self, tolerance: &Float) -> Result<()> {
        for r in [self.s_residual(), self.u_residual()] {
            if r > *tolerance {
                return Err(Error::ResidualTooLarge { residual: r.to_f64(), tolerance: tolerance.to_f64() });
            }
        }
        Ok(())
    }

    /// `max |C'_g - C_g|` over the generators, relative to `self`.
    pub fn distance(&self, other: &Cocycle) -> Float {
        let d = self.c_s.sub(&other.c_s).norm().max(&self.c_t.sub(&other.c_t).norm());
        self.relative(d)
    }
}

#[derive(Clone, Debug)]
pub struct CocycleOptions {
    pub eichler: EichlerOptions,
    /// Second evaluation point for the independence check; `None` uses `z + 1/2`.
    pub check_point: Option<Complex>,
    /// Skip the second evaluation entirely.
    pub skip_check: bool,
}

impl Default for CocycleOptions {
    fn default() -> Self {
        CocycleOptions { eichler: EichlerOptions::default(), check_point: None, skip_check: false }
    }
}

impl CocycleOptions {
    pub fn with_precision(precision: Precision) -> Self {
        CocycleOptions { eichler: EichlerOptions::with_precision(precision), ..Default::default() }
    }

    /// Relative tolerance for relations and point independence.
    pub fn tolerance(&self) -> Float {
        self.eichler.precision.tolerance(self.eichler.tail_margin)
    }
}

/// The cocycle `C_g = F(gz)|g - F(z)` with `F(w) = ∫_(τ₀)^w (2πi)^(n+1) f(τ)(X - τY)^n dτ`.
pub fn cocycle_of_form(
    f: &QLaurent,
    n: u32,
    tau0: &Complex,
    z_eval: &Complex,
    form_id: &str,
    opts: &CocycleOptions,
) -> Result<Cocycle> {
    let bits = opts.eichler.precision.bits();
    let eval = SeriesEvaluator::new(f, bits);
    let (c_s, c_t) = values_at(&eval, n, tau0, z_eval, &opts.eichler)?;
    let cocycle = Cocycle {
        n,
        c_s,
        c_t,
        basepoint: tau0.clone(),
        form_id: form_id.to_string(),
        precision: opts.eichler.precision,
        truncation: f.truncation(),
    };
    let tol = opts.tolerance();
    if !opts.skip_check {
        let w = opts.check_point.clone().unwrap_or_else(|| Complex::with_val(bits, z_eval + 0.5f64));
        let (c_s, c_t) = values_at(&eval, n, tau0, &w, &opts.eichler)?;
        let other = Cocycle { c_s, c_t, ..cocycle.clone() };
        let d = cocycle.distance(&other);
        if d > tol {
            return Err(Error::CocycleDependsOnPoint { difference: d.to_f64() });
        }
    }
    cocycle.check_relations(&tol)?;
    Ok(cocycle)
}

fn values_at(
    f: &SeriesEvaluator,
    n: u32,
    tau0: &Complex,
    z: &Complex,
    opts: &EichlerOptions,
) -> Result<(VnPoly<Complex>, VnPoly<Complex>)> {
    let sz = Mat2::S.act(z);
    let tz = Mat2::T.act(z);
    let ends = &[z.clone(), sz, tz];
    let vals: Vec<Result<VnPoly<Complex>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ends
            .iter()
            .enumerate()
            .map(|(i, w)| {
                scope.spawn(move || {
                    // S fixes i; avoid integrating the same segment twice.
                    if i == 1 && ends[1] == ends[0] {
                        return None;
                    }
                    Some(eichler_integral_prepared(f, n, tau0, w, opts).map(|r| r.value))
                })
            })
            .collect();
        let mut out: Vec<Option<Result<VnPoly<Complex>>>> =
            handles.into_iter().map(|h| h.join().expect("quadrature thread panicked")).collect();
        if out[1].is_none() {
            out[1] = out[0].clone();
        }
        out.into_iter().map(Option::unwrap).collect()
    });
    let mut vals = vals.into_iter();
    let fz = vals.next().unwrap()?;
    let fsz = vals.next().unwrap()?;
    let ftz = vals.next().unwrap()?;
    Ok((fsz.act(&Mat2::S).sub(&fz), ftz.act(&Mat2::T).sub(&fz)))
}
