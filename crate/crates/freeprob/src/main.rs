//! Command-line frontend: transform evaluation, curve scanning, cumulant
//! computation, curve-based checks, and the verification battery. Exit code
//! 0 on success, 1 when a check or computation fails, 2 on usage errors.

use clap::{Parser, Subcommand};
use freeprob::config::RunConfig;
use freeprob::cumulants::{
    cond_psd_check, free_convolve_moments, moments_to_free_cumulants, CumulantSequence,
};
use freeprob::error::Error;
use freeprob::exact::{format_rational, parse_rational, Rat};
use freeprob::fidcheck::{run_full_check, scan_curve, CurveSpec};
use freeprob::measures::{reference_moments, Measure};
use freeprob::transforms::{
    char_function_meixner, char_function_meixner_closed, default_method, f_inverse_numeric, f_of,
    g_eval, voiculescu_phi, ConeSpec, EvalMethod,
};
use freeprob::verify;
use num_complex::Complex64;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "freeprob",
    version,
    about = "Cauchy-transform toolkit for a catalog of probability laws"
)]
struct Cli {
    /// Config file of `key = value` lines; FREEPROB_CONFIG names a default
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Cauchy transform G at a point of the upper half-plane
    EvalG {
        /// Measure tag, e.g. meixner:t=0.3, logistic, semicircle
        tag: String,
        /// Evaluation point as a+bi, e.g. 0.5+2i
        #[arg(long)]
        z: String,
        /// residue_series | quadrature | continuation | closed_form | trigamma_closed
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the reciprocal transform F = 1/G
    EvalF {
        tag: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Solve F(w) = z for w inside a truncated cone
    InvertF {
        tag: String,
        #[arg(long)]
        z: String,
        /// Cone aperture (default 1)
        #[arg(long)]
        alpha: Option<f64>,
        /// Cone height (default 8 + 8 sqrt(variance))
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the Voiculescu transform F^{-1}(z) - z
    Phi {
        tag: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        height: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Characteristic function of the Meixner law at a real frequency
    Charfn {
        #[arg(long)]
        t: f64,
        #[arg(long)]
        zeta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Print a reference moment sequence (exact rationals)
    Moments {
        /// secant | rescaled_logistic | hyperbolic_secant | logistic |
        /// semicircle | free_poisson | meixner:t=<rational>
        tag: String,
        #[arg(long)]
        order: usize,
        /// Write one rational per line to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Free cumulants of a reference moment sequence (exact rationals)
    Cumulants {
        tag: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conditional positivity check on the shifted cumulant matrix
    PsdCheck {
        /// Moment-sequence tag, or a file of cumulants (one rational per line)
        source: String,
        /// Matrix dimension N; needs cumulants up to order 2N
        #[arg(long)]
        size: usize,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Moments of the free convolution of two reference laws
    Freeconv {
        tag_a: String,
        tag_b: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the curve checks and emit a JSON report; exit 0 iff they pass
    CheckFid {
        tag: String,
        /// Curve depth d (the curve is x - d i); default per measure
        #[arg(long)]
        depth: Option<f64>,
        #[arg(long)]
        xmax: Option<f64>,
        /// Samples per side for the boundary-sign grid
        #[arg(long)]
        points: Option<usize>,
        /// Contour radius for the zero count
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Tabulate G and F along the curve as CSV
    ScanCurve {
        tag: String,
        #[arg(long)]
        depth: Option<f64>,
        #[arg(long)]
        xmax: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full verification battery; exit 0 iff every criterion passes
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, &config) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn load_config(cli: &Cli) -> freeprob::Result<RunConfig> {
    match &cli.config {
        Some(path) => RunConfig::load(path),
        None => RunConfig::from_env(),
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::UnsupportedTag(_)
        | Error::Parse(_)
        | Error::Config { .. }
        | Error::Domain(_)
        | Error::InsufficientOrder { .. } => 2,
        _ => 1,
    }
}

fn run(command: Command, config: &RunConfig) -> freeprob::Result<bool> {
    match command {
        Command::EvalG {
            tag,
            z,
            method,
            json,
        } => {
            let measure = Measure::parse(&tag)?;
            let z = parse_complex(&z)?;
            let method = resolve_method(&measure, method.as_deref())?;
            let value = g_eval(&measure, z, method)?;
            let err = err_estimate(method, config, value);
            emit_value(value, err, json);
            Ok(true)
        }
        Command::EvalF {
            tag,
            z,
            method,
            json,
        } => {
            let measure = Measure::parse(&tag)?;
            let z = parse_complex(&z)?;
            let method = resolve_method(&measure, method.as_deref())?;
            let value = f_of(&measure, z, method)?;
            let g_err = err_estimate(method, config, 1.0 / value);
            let err = g_err * value.norm_sqr();
            emit_value(value, err, json);
            Ok(true)
        }
        Command::InvertF {
            tag,
            z,
            alpha,
            height,
            json,
        } => {
            let measure = Measure::parse(&tag)?;
            let z = parse_complex(&z)?;
            let cone = resolve_cone(&measure, alpha, height)?;
            let w = f_inverse_numeric(&measure, z, &cone)?;
            emit_point(w, json);
            Ok(true)
        }
        Command::Phi {
            tag,
            z,
            alpha,
            height,
            json,
        } => {
            let measure = Measure::parse(&tag)?;
            let z = parse_complex(&z)?;
            let cone = resolve_cone(&measure, alpha, height)?;
            let value = voiculescu_phi(&measure, z, &cone)?;
            emit_point(value, json);
            Ok(true)
        }
        Command::Charfn { t, zeta, json } => {
            let value = char_function_meixner(t, zeta)?;
            let closed = char_function_meixner_closed(t, zeta);
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "re": value.re,
                        "im": value.im,
                        "closed_form": closed,
                    })
                );
            } else {
                println!("{},{}", value.re, value.im);
            }
            Ok(true)
        }
        Command::Moments { tag, order, out } => {
            let m = reference_moments(&tag, order)?;
            emit_rationals(m.values(), out.as_deref())?;
            Ok(true)
        }
        Command::Cumulants { tag, order, out } => {
            let m = reference_moments(&tag, order)?;
            let r = moments_to_free_cumulants(&m);
            emit_rationals(r.values(), out.as_deref())?;
            Ok(true)
        }
        Command::PsdCheck {
            source,
            size,
            rel_tol,
            json,
        } => {
            let cumulants = if Path::new(&source).is_file() {
                read_rational_file(Path::new(&source)).map(CumulantSequence::from_values)?
            } else {
                let m = reference_moments(&source, 2 * size)?;
                moments_to_free_cumulants(&m)
            };
            let rel_tol = rel_tol.unwrap_or(config.psd_rel_tol);
            let report = cond_psd_check(&cumulants, size, rel_tol)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "pass": report.pass,
                        "min_eigenvalue": report.min_eigenvalue,
                        "scale": report.scale,
                        "size": size,
                        "rel_tol": rel_tol,
                    })
                );
            } else {
                println!(
                    "{} min_eigenvalue={:e} scale={:e}",
                    if report.pass { "pass" } else { "fail" },
                    report.min_eigenvalue,
                    report.scale
                );
            }
            Ok(report.pass)
        }
        Command::Freeconv {
            tag_a,
            tag_b,
            order,
            out,
        } => {
            let a = reference_moments(&tag_a, order)?;
            let b = reference_moments(&tag_b, order)?;
            let conv = free_convolve_moments(&a, &b, order)?;
            emit_rationals(conv.values(), out.as_deref())?;
            Ok(true)
        }
        Command::CheckFid {
            tag,
            depth,
            xmax,
            points,
            radius,
        } => {
            let measure = Measure::parse(&tag)?;
            let mut config = config.clone();
            if let Some(p) = points {
                config.grid_points = p;
            }
            if let Some(r) = radius {
                config.contour_radius = r;
            }
            let xmax = xmax.unwrap_or(config.grid_xmax);
            let curve = match depth {
                Some(d) => CurveSpec::at_depth(&measure, d, xmax),
                None => CurveSpec::default_for(&measure, xmax),
            };
            let report = run_full_check(&measure, &curve, &config)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report is serializable"));
            Ok(report.overall_pass)
        }
        Command::ScanCurve {
            tag,
            depth,
            xmax,
            points,
            out,
        } => {
            let measure = Measure::parse(&tag)?;
            let xmax = xmax.unwrap_or(config.grid_xmax);
            let n_points = points.unwrap_or(config.grid_points);
            let curve = match depth {
                Some(d) => CurveSpec::at_depth(&measure, d, xmax),
                None => CurveSpec::default_for(&measure, xmax),
            };
            let rows = scan_curve(&measure, &curve, n_points)?;
            let mut text = String::from("x,re_G,im_G,re_F,im_F\n");
            for row in rows {
                text.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                    row.x, row.g.re, row.g.im, row.f.re, row.f.im
                ));
            }
            write_text(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::VerifyAll => {
            let results = verify::run_all();
            print!("{}", verify::format_results(&results));
            let all_pass = results.iter().all(|r| r.pass);
            println!(
                "{} of {} criteria passed",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            );
            Ok(all_pass)
        }
    }
}

fn resolve_method(measure: &Measure, method: Option<&str>) -> freeprob::Result<EvalMethod> {
    match method {
        Some(name) => EvalMethod::from_str(name),
        None => Ok(default_method(measure)),
    }
}

fn resolve_cone(
    measure: &Measure,
    alpha: Option<f64>,
    height: Option<f64>,
) -> freeprob::Result<ConeSpec> {
    let base = ConeSpec::default_for(measure);
    ConeSpec::new(alpha.unwrap_or(base.alpha), height.unwrap_or(base.m))
}

/// Documented error bound of the chosen route, scaled to the emitted value.
fn err_estimate(method: EvalMethod, config: &RunConfig, value: Complex64) -> f64 {
    match method {
        EvalMethod::Quadrature | EvalMethod::Continuation => config.quadrature_tol.max(1e-12),
        EvalMethod::ResidueSeries => config.series_tol,
        EvalMethod::ClosedForm | EvalMethod::TrigammaClosed => {
            f64::EPSILON * value.norm().max(1.0)
        }
    }
}

fn emit_value(value: Complex64, err: f64, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::json!({"re": value.re, "im": value.im, "err_estimate": err})
        );
    } else {
        println!("{},{},{:e}", value.re, value.im, err);
    }
}

fn emit_point(value: Complex64, json: bool) {
    if json {
        println!("{}", serde_json::json!({"re": value.re, "im": value.im}));
    } else {
        println!("{},{}", value.re, value.im);
    }
}

/// Stdout gets a single space-separated line; files get one rational per
/// line.
fn emit_rationals(values: &[Rat], out: Option<&Path>) -> freeprob::Result<()> {
    match out {
        Some(path) => {
            let mut text = String::new();
            for v in values {
                text.push_str(&format_rational(v));
                text.push('\n');
            }
            write_text(Some(path), &text)
        }
        None => {
            let line: Vec<String> = values.iter().map(format_rational).collect();
            println!("{}", line.join(" "));
            Ok(())
        }
    }
}

fn write_text(out: Option<&Path>, text: &str) -> freeprob::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_rational_file(path: &Path) -> freeprob::Result<Vec<Rat>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_rational)
        .collect()
}

/// Parses `a+bi` style complex literals: `2`, `3i`, `-i`, `0.5-2i`,
/// `1e-3+2.5i`.
fn parse_complex(s: &str) -> freeprob::Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let parse_real = |part: &str| -> freeprob::Result<f64> {
        part.parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad number `{part}` in `{s}`")))
    };
    if let Some(body) = t.strip_suffix('i') {
        let bytes = body.as_bytes();
        let mut split = None;
        for k in (1..bytes.len()).rev() {
            let c = bytes[k] as char;
            if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
                split = Some(k);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            0.0
        } else {
            parse_real(re_part)?
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => parse_real(im_part)?,
        };
        Ok(Complex64::new(re, im))
    } else {
        Ok(Complex64::new(parse_real(&t)?, 0.0))
    }
}
