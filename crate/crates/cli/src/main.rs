use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use racusp::cocycle::CocycleOptions;
use racusp::heckebol::{hecke_qexp_to, AlphaValue};
use racusp::hp::{format_float, Precision};
use racusp::json::digits_for_bits;
use racusp::mock::{mock_series, verify_corollary};
use racusp::pipeline::{alpha_for_delta, compute_periods, run_pipeline, PipelineConfig};
use racusp::qexact::{delta, delta_prime, eisenstein, j_invariant, QLaurent};
use racusp::raexpand::{build_e, build_h, evaluate, symbol_values, verify_all, BiExpansion, HInputs, VerifyOptions};
use racusp::svperiods::{sv_report, SvReport};
use racusp::Error;
use rug::Complex;

#[derive(Parser)]
#[command(name = "racusp", version, about = "Real analytic cusp forms and mock modular forms for SL2(Z)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// q-expansion truncation N.
    #[arg(long, global = true, default_value_t = 30)]
    truncation: i64,
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, default_value_t = 40)]
    precision: u32,
    /// Base point of the Eichler integrals, as `2i`, `1.5i` or `x,y`.
    #[arg(long, global = true, default_value = "2i", value_parser = parse_point)]
    basepoint: (f64, f64),
    /// Largest modulus in Kloosterman sums.
    #[arg(long, global = true, default_value_t = 100)]
    cmax: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of delta, delta-prime, eisensteinK (weight K) or j.
    Qexp { form: String },
    /// T_m applied to a named form or to a series read from a JSON file.
    Hecke {
        #[arg(long)]
        m: u64,
        #[arg(conflicts_with = "input")]
        form: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Periods of Delta and Delta'.
    Periods,
    /// Single-valued matrix, sigma, tau and rho.
    Sv,
    /// The constant alpha from the Hecke index m.
    Alpha {
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Symbolic expansion of H(Delta)_(r,s) or E_(r,s).
    RaBuild(RaTarget),
    /// The exact identity suite.
    RaVerify,
    /// Numerical value of H(Delta)_(r,s) or E_(r,s) at a point.
    RaEval {
        #[command(flatten)]
        target: RaTarget,
        /// Evaluation point `x,y` or `yi`.
        #[arg(long, value_parser = parse_point)]
        z: (f64, f64),
    },
    /// The mock modular form attached to Delta.
    Mock,
    /// Kloosterman-Bessel series for the coefficients a'_n + rho a_n.
    VerifyKloosterman {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
        n: Vec<u64>,
    },
    /// Everything, with one pass/fail line per criterion.
    Pipeline,
}

#[derive(Args, Clone)]
struct RaTarget {
    #[arg(long, value_enum, default_value_t = Family::H)]
    family: Family,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    s: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    H,
    E,
}

/// Relative tolerance for `verify-kloosterman`.
const KLOOSTERMAN_TOLERANCE: f64 = 1e-6;

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let s = s.trim();
    let bad = || format!("cannot read {s:?} as a point, use `2i` or `x,y`");
    if let Some((x, y)) = s.split_once(',') {
        return Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?));
    }
    let y = s.strip_suffix('i').ok_or_else(bad)?;
    let y = if y.is_empty() { 1.0 } else { y.parse().map_err(|_| bad())? };
    Ok((0.0, y))
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_)
            | Error::Parse(_)
            | Error::PathTooLow { .. }
            | Error::InsufficientTruncation { .. }
            | Error::KloostermanTail { .. } => Failure::Usage(e.to_string()),
            e => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialization") + "\n"
}

fn csv_unsupported(what: &str) -> Failure {
    Failure::Usage(format!("{what} has no CSV form, use --format json"))
}

impl Global {
    fn precision(&self) -> Result<Precision, Failure> {
        if self.precision == 0 {
            return Err(Failure::Usage("precision must be positive".into()));
        }
        Ok(Precision::new(self.precision))
    }

    fn config(&self) -> Result<PipelineConfig, Failure> {
        let c = PipelineConfig {
            truncation: self.truncation,
            precision: self.precision()?,
            basepoint: self.basepoint,
            c_max: self.cmax,
        };
        c.validate()?;
        Ok(c)
    }

    fn sv(&self) -> Result<SvReport, Failure> {
        let c = self.config()?;
        let p = compute_periods(c.truncation, &c.basepoint_complex(), &CocycleOptions::with_precision(c.precision))?;
        Ok(sv_report(&p)?)
    }
}

fn named_form(name: &str, t: i64) -> Result<QLaurent, Failure> {
    match name {
        "delta" => Ok(delta(t)),
        "delta-prime" => Ok(delta_prime(t)?),
        "j" => Ok(j_invariant(t)),
        _ => {
            let k: u32 = name
                .strip_prefix("eisenstein")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Failure::Usage(format!("unknown form {name:?}")))?;
            if k < 2 || k % 2 != 0 {
                return Err(Failure::Usage(format!("Eisenstein weight must be even and at least 2, got {k}")));
            }
            Ok(eisenstein(k / 2, t))
        }
    }
}

fn series_csv(f: &QLaurent) -> String {
    let mut out = String::from("n,coeff\n");
    for (n, c) in f.terms() {
        out.push_str(&format!("{n},{c}\n"));
    }
    out
}

fn ra_expansion(target: &RaTarget, t: i64) -> Result<BiExpansion, Failure> {
    Ok(match target.family {
        Family::H => {
            let inputs = HInputs::delta(t)?;
            if target.r + target.s != inputs.n {
                return Err(Failure::Usage(format!("H needs r + s = {}", inputs.n)));
            }
            build_h(&inputs, target.r, target.s)?
        }
        Family::E => build_e(target.r, target.s, t)?,
    })
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let t = g.truncation;
    let csv = g.format == Format::Csv;
    match &cli.command {
        Command::Qexp { form } => {
            let f = named_form(form, t)?;
            Ok((if csv { series_csv(&f) } else { json(&f) }, true))
        }
        Command::Hecke { m, form, input } => {
            if *m == 0 {
                return Err(Failure::Usage("m must be positive".into()));
            }
            let f = match (form, input) {
                (Some(name), None) => named_form(name, t * *m as i64)?,
                (None, Some(path)) => {
                    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                _ => return Err(Failure::Usage("give a form name or --input".into())),
            };
            let out = hecke_qexp_to(&f, *m, t.min(f.truncation() / *m as i64))?;
            Ok((if csv { series_csv(&out) } else { json(&out) }, true))
        }
        Command::Periods => {
            if csv {
                return Err(csv_unsupported("periods"));
            }
            let c = g.config()?;
            let p = compute_periods(c.truncation, &c.basepoint_complex(), &CocycleOptions::with_precision(c.precision))?;
            Ok((json(&p), true))
        }
        Command::Sv => {
            if csv {
                return Err(csv_unsupported("sv"));
            }
            Ok((json(&g.sv()?), true))
        }
        Command::Alpha { m } => {
            if csv {
                return Err(csv_unsupported("alpha"));
            }
            let a = alpha_for_delta(t, *m)?;
            Ok((json(&AlphaValue::try_from(&a)?), true))
        }
        Command::RaBuild(target) => {
            if csv {
                return Err(csv_unsupported("ra-build"));
            }
            Ok((json(&ra_expansion(target, t)?), true))
        }
        Command::RaVerify => {
            let report = verify_all(&VerifyOptions { truncation: t, ..Default::default() })?;
            let ok = report.all_passed();
            let text = if csv {
                let mut out = String::from("name,passed\n");
                for c in &report.checks {
                    out.push_str(&format!("\"{}\",{}\n", c.name.replace('"', "\"\""), c.passed));
                }
                out
            } else {
                json(&report)
            };
            Ok((text, ok))
        }
        Command::RaEval { target, z } => {
            if csv {
                return Err(csv_unsupported("ra-eval"));
            }
            let prec = g.precision()?;
            let f = ra_expansion(target, t)?;
            let sv = g.sv()?;
            let inputs = HInputs::delta(t)?;
            let values = symbol_values(&sv.sigma, &sv.tau, &inputs.alpha, target.r + target.s + 1, prec.bits());
            let point = Complex::with_val(prec.bits(), *z);
            Ok((json(&evaluate(&f, &point, &values, prec)?), true))
        }
        Command::Mock => {
            let m = mock_series(t)?;
            if csv {
                let sv = g.sv()?;
                Ok((m.to_csv(Some(&sv.rho), digits_for_bits(sv.rho.prec())), true))
            } else {
                Ok((json(&m), true))
            }
        }
        Command::VerifyKloosterman { n } => {
            let sv = g.sv()?;
            let digits = digits_for_bits(sv.rho.prec());
            let mut checks = Vec::new();
            for &k in n {
                checks.push(verify_corollary(k, g.cmax, &sv.rho)?);
            }
            let ok = checks.iter().all(|c| c.rel_err <= KLOOSTERMAN_TOLERANCE);
            let text = if csv {
                let mut out = String::from("n,c_max,lhs,rhs,rel_err,tail_bound\n");
                for c in &checks {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        c.n,
                        c.c_max,
                        format_float(&c.lhs, digits),
                        format_float(&c.rhs, digits),
                        format_float(&c.rel_err, 6),
                        format_float(&c.tail_bound, 6)
                    ));
                }
                out
            } else {
                json(&checks)
            };
            Ok((text, ok))
        }
        Command::Pipeline => {
            let report = run_pipeline(&g.config()?)?;
            let text = if csv {
                let mut out = String::from("id,name,passed,detail\n");
                for c in &report.criteria {
                    out.push_str(&format!("{},\"{}\",{},\"{}\"\n", c.id, c.name, c.passed, c.detail));
                }
                out
            } else {
                json(&report)
            };
            Ok((text, report.all_passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
