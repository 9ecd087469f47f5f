//! The measure catalog: Meixner family, hyperbolic secant, logistic,
//! semicircle, free Poisson, Cauchy, power beta laws, a symmetric two-point
//! law used as a negative control, and user-defined densities. Also exact
//! reference moment sequences (Euler/Bernoulli/Catalan) and the closed-form
//! inverse reciprocal transforms of the oracle laws.

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_numbers, catalan_numbers, parse_rational, rat, secant_numbers,
    symmetric_psd_exact, Rat,
};
use crate::ComplexValue;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use std::f64::consts::PI;
use std::sync::Arc;

/// A user-supplied absolutely continuous measure.
#[derive(Clone)]
pub struct CustomMeasure {
    pub name: String,
    pub density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub support: (f64, f64),
    pub symmetric: bool,
}

impl std::fmt::Debug for CustomMeasure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomMeasure")
            .field("name", &self.name)
            .field("support", &self.support)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

/// Catalog entry. Evaluators are pure; entries are immutable once built.
#[derive(Clone, Debug)]
pub enum Measure {
    /// rho_t with density 4^t / (2 pi Gamma(2t)) |Gamma(t + ix)|^2.
    Meixner { t: f64 },
    /// Density 1/cosh(pi x); coincides with Meixner t = 1/2.
    HyperbolicSecant,
    /// Density pi / (2 cosh^2(pi x)).
    Logistic,
    /// Standard semicircle on [-2, 2].
    Semicircle,
    /// Free Poisson (Marchenko-Pastur) with rate 1, on (0, 4].
    FreePoisson,
    /// Standard Cauchy.
    Cauchy,
    /// Power beta law on (0, 1) with parameter a, 1/2 <= |a| < 1.
    Beta { a: f64 },
    /// (delta_{-1} + delta_{+1}) / 2; not freely infinitely divisible.
    TwoPointSymmetric,
    Custom(CustomMeasure),
}

/// Measure tags recognized by the catalog but intentionally not implemented.
pub const UNIMPLEMENTED_TAGS: [&str; 5] = [
    "gaussian",
    "q_gaussian",
    "ultraspherical",
    "student",
    "boolean_stable",
];

impl Measure {
    /// Parses a CLI-style tag: `meixner:t=0.3`, `logistic`, `secant`,
    /// `semicircle`, `free_poisson`, `cauchy`, `beta:a=0.75`, `twopoint`.
    pub fn parse(tag: &str) -> Result<Measure> {
        let tag = tag.trim();
        let lower = tag.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("meixner:") {
            let t = parse_param(rest, "t")?;
            if !(t > 0.0) {
                return Err(Error::Domain(format!("meixner needs t > 0, got {t}")));
            }
            return Ok(Measure::Meixner { t });
        }
        if let Some(rest) = lower.strip_prefix("beta:") {
            let a = parse_param(rest, "a")?;
            if !(0.5..1.0).contains(&a.abs()) {
                return Err(Error::Domain(format!(
                    "beta needs 1/2 <= |a| < 1, got {a}"
                )));
            }
            return Ok(Measure::Beta { a });
        }
        match lower.as_str() {
            "secant" | "hyperbolic_secant" | "sech" => Ok(Measure::HyperbolicSecant),
            "logistic" => Ok(Measure::Logistic),
            "semicircle" => Ok(Measure::Semicircle),
            "free_poisson" | "freepoisson" | "marchenko_pastur" => Ok(Measure::FreePoisson),
            "cauchy" => Ok(Measure::Cauchy),
            "twopoint" | "two_point" | "two-point" => Ok(Measure::TwoPointSymmetric),
            other => {
                if UNIMPLEMENTED_TAGS.contains(&other) {
                    Err(Error::UnsupportedTag(format!(
                        "`{other}` is cataloged but not implemented"
                    )))
                } else {
                    Err(Error::UnsupportedTag(other.to_string()))
                }
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Measure::Meixner { t } => format!("meixner:t={t}"),
            Measure::HyperbolicSecant => "secant".into(),
            Measure::Logistic => "logistic".into(),
            Measure::Semicircle => "semicircle".into(),
            Measure::FreePoisson => "free_poisson".into(),
            Measure::Cauchy => "cauchy".into(),
            Measure::Beta { a } => format!("beta:a={a}"),
            Measure::TwoPointSymmetric => "twopoint".into(),
            Measure::Custom(c) => c.name.clone(),
        }
    }

    /// Support interval; infinite endpoints use IEEE infinities.
    pub fn support(&self) -> (f64, f64) {
        match self {
            Measure::Meixner { .. }
            | Measure::HyperbolicSecant
            | Measure::Logistic
            | Measure::Cauchy => (f64::NEG_INFINITY, f64::INFINITY),
            Measure::Semicircle => (-2.0, 2.0),
            Measure::FreePoisson => (0.0, 4.0),
            Measure::Beta { .. } => (0.0, 1.0),
            Measure::TwoPointSymmetric => (-1.0, 1.0),
            Measure::Custom(c) => c.support,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Measure::Meixner { .. }
            | Measure::HyperbolicSecant
            | Measure::Logistic
            | Measure::Semicircle
            | Measure::Cauchy
            | Measure::TwoPointSymmetric => true,
            Measure::FreePoisson | Measure::Beta { .. } => false,
            Measure::Custom(c) => c.symmetric,
        }
    }

    /// Atoms of a purely atomic catalog entry.
    pub fn atoms(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            Measure::TwoPointSymmetric => Some(vec![(-1.0, 0.5), (1.0, 0.5)]),
            _ => None,
        }
    }

    /// Density at `x`. Errors for purely atomic entries.
    pub fn density(&self, x: f64) -> Result<f64> {
        match self {
            Measure::Meixner { t } => density_meixner(*t, x),
            Measure::HyperbolicSecant => Ok(1.0 / (PI * x).cosh()),
            Measure::Logistic => Ok(density_logistic(x)),
            Measure::Semicircle => Ok(if x.abs() >= 2.0 {
                0.0
            } else {
                (4.0 - x * x).sqrt() / (2.0 * PI)
            }),
            Measure::FreePoisson => Ok(if x <= 0.0 || x >= 4.0 {
                0.0
            } else {
                ((4.0 - x) / x).sqrt() / (2.0 * PI)
            }),
            Measure::Cauchy => Ok(1.0 / (PI * (1.0 + x * x))),
            Measure::Beta { a } => Ok(if x <= 0.0 || x >= 1.0 {
                0.0
            } else {
                (PI * a).sin() / (PI * a) * ((1.0 - x) / x).powf(*a)
            }),
            Measure::TwoPointSymmetric => Err(Error::Domain(
                "two-point measure has no density".into(),
            )),
            Measure::Custom(c) => Ok((c.density)(x)),
        }
    }

    /// Density as a standalone closure with per-measure constants folded in.
    pub fn density_fn(&self) -> Result<Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
        match self {
            Measure::Meixner { t } => {
                let t = *t;
                let log_norm = meixner_log_norm(t)?;
                Ok(Arc::new(move |x: f64| {
                    match crate::specfun::log_gamma(Complex64::new(t, x)) {
                        Ok(lg) => (log_norm + 2.0 * lg.re).exp(),
                        Err(_) => 0.0,
                    }
                }))
            }
            Measure::Custom(c) => Ok(c.density.clone()),
            Measure::TwoPointSymmetric => Err(Error::Domain(
                "two-point measure has no density".into(),
            )),
            other => {
                let m = other.clone();
                Ok(Arc::new(move |x: f64| m.density(x).unwrap_or(0.0)))
            }
        }
    }

    /// Truncation half-width X such that the neglected tail mass (and the
    /// tails of degree <= 16 polynomial integrands) stay below 1e-12.
    /// Returns None for finite supports and heavy tails.
    pub fn tail_cutoff(&self) -> Option<f64> {
        match self {
            Measure::Meixner { t } => Some(30.0 + 4.0 * t.max(0.0)),
            Measure::HyperbolicSecant | Measure::Logistic => Some(30.0),
            _ => None,
        }
    }

    /// Raw second moment, when finite; used to size default cones.
    pub fn second_moment(&self) -> Option<f64> {
        match self {
            Measure::Meixner { t } => Some(t / 2.0),
            Measure::HyperbolicSecant => Some(0.25),
            Measure::Logistic => Some(1.0 / 12.0),
            Measure::Semicircle => Some(1.0),
            Measure::FreePoisson => Some(2.0),
            Measure::Cauchy => None,
            // crude bounded-support bounds are fine for cone sizing
            Measure::Beta { .. } => Some(1.0),
            Measure::TwoPointSymmetric => Some(1.0),
            Measure::Custom(_) => None,
        }
    }

    /// Whether a closed-form inverse of F = 1/G is available.
    pub fn has_closed_form_f_inverse(&self) -> bool {
        matches!(
            self,
            Measure::Semicircle | Measure::FreePoisson | Measure::Cauchy | Measure::Beta { .. }
        )
    }
}

fn parse_param(rest: &str, key: &str) -> Result<f64> {
    let (k, v) = rest
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("expected `{key}=<value>`, got `{rest}`")))?;
    if k.trim() != key {
        return Err(Error::Parse(format!("expected parameter `{key}`, got `{k}`")));
    }
    v.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("bad numeric value `{v}`")))
}

fn meixner_log_norm(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("meixner density needs t > 0, got {t}")));
    }
    let lg2t = crate::specfun::log_gamma(Complex64::new(2.0 * t, 0.0))?.re;
    Ok(t * 4f64.ln() - (2.0 * PI).ln() - lg2t)
}

/// Density of rho_t: 4^t / (2 pi Gamma(2t)) |Gamma(t + ix)|^2.
pub fn density_meixner(t: f64, x: f64) -> Result<f64> {
    let log_norm = meixner_log_norm(t)?;
    let lg = crate::specfun::log_gamma(Complex64::new(t, x))?;
    Ok((log_norm + 2.0 * lg.re).exp())
}

/// Density of the logistic law: pi / (2 cosh^2(pi x)).
pub fn density_logistic(x: f64) -> f64 {
    let c = (PI * x).cosh();
    PI / (2.0 * c * c)
}

// ---------------------------------------------------------------------------
// Moment sequences
// ---------------------------------------------------------------------------

/// Exact moments m_1..m_N of a measure, 1-indexed via `get`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentSequence {
    values: Vec<Rat>,
}

impl MomentSequence {
    pub fn from_values(values: Vec<Rat>) -> Self {
        MomentSequence { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// m_n for 1 <= n <= order.
    pub fn get(&self, n: usize) -> Option<&Rat> {
        if n == 0 {
            None
        } else {
            self.values.get(n - 1)
        }
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Moments of cX: m_n -> c^n m_n.
    pub fn rescale(&self, c: &Rat) -> MomentSequence {
        let mut p = Rat::one();
        let values = self
            .values
            .iter()
            .map(|m| {
                p *= c;
                m * &p
            })
            .collect();
        MomentSequence { values }
    }

    /// Exact positive-semidefiniteness of the Hankel matrix
    /// (m_{i+j})_{i,j=0..floor(N/2)}, with m_0 = 1.
    pub fn hankel_is_psd(&self) -> bool {
        let k = self.order() / 2;
        let m = |n: usize| -> Rat {
            if n == 0 {
                Rat::one()
            } else {
                self.values[n - 1].clone()
            }
        };
        let mat: Vec<Vec<Rat>> = (0..=k)
            .map(|i| (0..=k).map(|j| m(i + j)).collect())
            .collect();
        symmetric_psd_exact(&mat)
    }
}

/// Moment-sequence tags understood by [`reference_moments`].
/// The four core tags generate their sequences from exact recurrences;
/// `secant` is an alias for `rescaled_secant` (the CLI spelling), and the
/// unit-scale laws are derived by exact rescaling with c = 1/2.
pub fn reference_moments(id: &str, n: usize) -> Result<MomentSequence> {
    if n > 40 {
        return Err(Error::Domain(format!("order {n} exceeds the cap of 40")));
    }
    let lower = id.trim().to_ascii_lowercase();
    match lower.as_str() {
        "rescaled_secant" | "secant" => Ok(euler_moment_sequence(n)),
        "rescaled_logistic" => Ok(bernoulli_moment_sequence(n)),
        "hyperbolic_secant" => Ok(euler_moment_sequence(n).rescale(&rat(1, 2))),
        "logistic" => Ok(bernoulli_moment_sequence(n).rescale(&rat(1, 2))),
        "semicircle" => {
            let cat = catalan_numbers(n / 2);
            Ok(MomentSequence::from_values(
                (1..=n)
                    .map(|k| {
                        if k % 2 == 0 {
                            Rat::from_integer(cat[k / 2].clone())
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect(),
            ))
        }
        "free_poisson" => {
            let cat = catalan_numbers(n);
            Ok(MomentSequence::from_values(
                (1..=n).map(|k| Rat::from_integer(cat[k].clone())).collect(),
            ))
        }
        other => {
            if let Some(rest) = other.strip_prefix("meixner:") {
                let (k, v) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected `t=<rational>` in `{other}`")))?;
                if k.trim() != "t" {
                    return Err(Error::Parse(format!("expected parameter `t`, got `{k}`")));
                }
                let t = parse_rational(v)?;
                if !t.is_positive() {
                    return Err(Error::Domain("meixner moments need t > 0".into()));
                }
                let rec = crate::orthopoly::PolynomialRecurrence::meixner_pollaczek(t);
                return crate::orthopoly::moments_from_jacobi(&rec, n);
            }
            Err(Error::UnsupportedTag(other.to_string()))
        }
    }
}

/// Euler (secant-number) moments: m_{2k} = 1, 5, 61, 1385, ...; odd zero.
fn euler_moment_sequence(n: usize) -> MomentSequence {
    let sec = secant_numbers(n / 2 + 1);
    MomentSequence::from_values(
        (1..=n)
            .map(|k| {
                if k % 2 == 0 {
                    Rat::from_integer(sec[k / 2].clone())
                } else {
                    Rat::zero()
                }
            })
            .collect(),
    )
}

/// Bernoulli-derived moments m_n = |(2 - 2^n) B_n|: 1/3, 7/15, 31/21, ...
fn bernoulli_moment_sequence(n: usize) -> MomentSequence {
    let bern = bernoulli_numbers(n);
    MomentSequence::from_values(
        (1..=n)
            .map(|k| {
                if k % 2 == 0 {
                    let factor = Rat::from_integer(
                        BigInt::from(2) - BigInt::from(2).pow(k as u32),
                    );
                    (factor * &bern[k]).abs()
                } else {
                    Rat::zero()
                }
            })
            .collect(),
    )
}

/// Alias for [`MomentSequence::rescale`] in operation form.
pub fn rescale_moments(m: &MomentSequence, c: &Rat) -> MomentSequence {
    m.rescale(c)
}

// ---------------------------------------------------------------------------
// Closed-form inverse reciprocal transforms (oracle laws)
// ---------------------------------------------------------------------------

/// F^{-1} in closed form for the oracle laws:
/// semicircle z + 1/z, free Poisson z + z/(z-1), Cauchy z - i,
/// beta_a 1/(1 - (1 - a/z)^{1/a}).
pub fn closed_form_f_inverse(measure: &Measure, z: ComplexValue) -> Result<ComplexValue> {
    match measure {
        Measure::Semicircle => {
            if z.norm() < 1e-12 {
                return Err(Error::ZeroDivisor { location: z });
            }
            Ok(z + 1.0 / z)
        }
        Measure::FreePoisson => {
            let d = z - 1.0;
            if d.norm() < 1e-12 {
                return Err(Error::ZeroDivisor { location: z });
            }
            Ok(z + z / d)
        }
        Measure::Cauchy => Ok(z - Complex64::new(0.0, 1.0)),
        Measure::Beta { a } => {
            if z.norm() < 1e-12 {
                return Err(Error::ZeroDivisor { location: z });
            }
            let base = Complex64::new(1.0, 0.0) - a / z;
            let denom = Complex64::new(1.0, 0.0) - base.powf(1.0 / a);
            if denom.norm() < 1e-12 {
                return Err(Error::ZeroDivisor { location: z });
            }
            Ok(1.0 / denom)
        }
        other => Err(Error::UnsupportedTag(format!(
            "no closed-form F inverse for `{}`",
            other.name()
        ))),
    }
}
