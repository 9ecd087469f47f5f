//! Monic orthogonal polynomial recurrences and exact moment recovery from
//! Jacobi coefficients. The catalog laws with finite moments are determined
//! by their three-term recurrence
//! P_{n+1}(x) = (x - alpha_n) P_n(x) - beta_n P_{n-1}(x),
//! and the k-th moment equals the (0,0) entry of the k-th power of the
//! truncated Jacobi matrix.

use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_to_f64, Rat};
use crate::measures::{Measure, MomentSequence};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::Arc;

type CoefFn = Arc<dyn Fn(usize) -> Rat + Send + Sync>;

/// Three-term recurrence coefficients, exact.
/// `alpha(n)` is defined for n >= 0, `beta(n)` for n >= 1.
#[derive(Clone)]
pub struct PolynomialRecurrence {
    name: String,
    alpha: CoefFn,
    beta: CoefFn,
}

impl std::fmt::Debug for PolynomialRecurrence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolynomialRecurrence")
            .field("name", &self.name)
            .finish()
    }
}

impl PolynomialRecurrence {
    pub fn new(name: &str, alpha: CoefFn, beta: CoefFn) -> Self {
        PolynomialRecurrence {
            name: name.to_string(),
            alpha,
            beta,
        }
    }

    /// Meixner-Pollaczek recurrence for rho_t:
    /// alpha_n = 0, beta_n = n (n + 2t - 1) / 4.
    pub fn meixner_pollaczek(t: Rat) -> Self {
        let two_t_minus_one = &t + &t - Rat::one();
        PolynomialRecurrence::new(
            "meixner_pollaczek",
            Arc::new(|_| Rat::zero()),
            Arc::new(move |n| {
                let n_rat = rat_int(n as i64);
                &n_rat * (&n_rat + &two_t_minus_one) / rat_int(4)
            }),
        )
    }

    /// Continuous Hahn recurrence for the logistic law:
    /// alpha_n = 0, beta_n = n^4 / (4 (4 n^2 - 1)).
    pub fn continuous_hahn() -> Self {
        PolynomialRecurrence::new(
            "continuous_hahn",
            Arc::new(|_| Rat::zero()),
            Arc::new(|n| {
                let n2 = BigInt::from(n) * BigInt::from(n);
                let num = &n2 * &n2;
                let den = BigInt::from(4) * (BigInt::from(4) * &n2 - BigInt::from(1));
                Rat::new(num, den)
            }),
        )
    }

    /// Chebyshev (second kind, monic) recurrence for the semicircle:
    /// alpha_n = 0, beta_n = 1.
    pub fn semicircle() -> Self {
        PolynomialRecurrence::new(
            "semicircle",
            Arc::new(|_| Rat::zero()),
            Arc::new(|_| Rat::one()),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self, n: usize) -> Rat {
        (self.alpha)(n)
    }

    pub fn beta(&self, n: usize) -> Rat {
        (self.beta)(n)
    }

    /// Squared norm of monic P_n: h_n = beta_1 beta_2 ... beta_n, h_0 = 1.
    pub fn norm_squared(&self, n: usize) -> Rat {
        let mut h = Rat::one();
        for k in 1..=n {
            h *= self.beta(k);
        }
        h
    }
}

/// Evaluates the monic orthogonal polynomial P_n at a real point.
pub fn eval_poly(rec: &PolynomialRecurrence, n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = x - rat_to_f64(&rec.alpha(0));
    for k in 1..n {
        let next = (x - rat_to_f64(&rec.alpha(k))) * cur - rat_to_f64(&rec.beta(k)) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact-arithmetic variant of [`eval_poly`].
pub fn eval_poly_exact(rec: &PolynomialRecurrence, n: usize, x: &Rat) -> Rat {
    if n == 0 {
        return Rat::one();
    }
    let mut prev = Rat::one();
    let mut cur = x - rec.alpha(0);
    for k in 1..n {
        let next = (x - rec.alpha(k)) * &cur - rec.beta(k) * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact moments m_1..m_N from the recurrence, via powers of the truncated
/// Jacobi matrix. A walk of length k from index 0 back to 0 never leaves
/// the first floor(k/2) + 1 rows, so truncating at floor(N/2) + 1 is exact.
pub fn moments_from_jacobi(rec: &PolynomialRecurrence, n: usize) -> Result<MomentSequence> {
    if n > 64 {
        return Err(Error::Domain(format!("moment order {n} exceeds the cap of 64")));
    }
    let dim = n / 2 + 1;
    let alpha: Vec<Rat> = (0..dim).map(|i| rec.alpha(i)).collect();
    let beta: Vec<Rat> = (0..dim).map(|i| rec.beta(i)).collect();
    let mut v = vec![Rat::zero(); dim];
    v[0] = Rat::one();
    let mut out = Vec::with_capacity(n);
    for _ in 1..=n {
        let mut next = vec![Rat::zero(); dim];
        for i in 0..dim {
            let mut acc = &alpha[i] * &v[i];
            if i > 0 {
                acc += &beta[i] * &v[i - 1];
            }
            if i + 1 < dim {
                acc += &v[i + 1];
            }
            next[i] = acc;
        }
        v = next;
        out.push(v[0].clone());
    }
    Ok(MomentSequence::from_values(out))
}

/// Numerically integrates P_n P_m against the measure's density and checks
/// orthogonality: off-diagonal entries must vanish relative to the norm
/// scale sqrt(h_n h_m); diagonal entries must be positive.
pub fn verify_orthogonality(
    measure: &Measure,
    rec: &PolynomialRecurrence,
    n: usize,
    m: usize,
) -> Result<(f64, bool)> {
    if n > 8 || m > 8 {
        return Err(Error::Domain(format!(
            "orthogonality check limited to degree 8, got ({n}, {m})"
        )));
    }
    let (lo, hi) = match measure.tail_cutoff() {
        Some(x) => (-x, x),
        None => {
            let (a, b) = measure.support();
            if !a.is_finite() || !b.is_finite() {
                return Err(Error::Domain(format!(
                    "no integration window for `{}`",
                    measure.name()
                )));
            }
            (a, b)
        }
    };
    let density = measure.density_fn()?;
    let integrand = move |x: f64| density(x) * eval_poly(rec, n, x) * eval_poly(rec, m, x);
    // seed the adaptive integrator with panels around the origin; on the
    // full window the initial nodes can straddle the concentrated bulk of
    // the density and accept a spurious near-zero estimate
    let mut cuts: Vec<f64> = [lo, -8.0, -2.0, 2.0, 8.0, hi]
        .into_iter()
        .filter(|x| (lo..=hi).contains(x))
        .collect();
    cuts.sort_by(|a, b| a.total_cmp(b));
    cuts.dedup();
    let mut value = 0.0;
    for pair in cuts.windows(2) {
        let (v, _) = crate::quad::integrate_real(&integrand, pair[0], pair[1], 1e-12, 200_000)?;
        value += v;
    }
    let pass = if n == m {
        value > 0.0
    } else {
        let scale = (rat_to_f64(&rec.norm_squared(n)) * rat_to_f64(&rec.norm_squared(m))).sqrt();
        value.abs() < 1e-7 * scale.max(1e-300)
    };
    Ok((value, pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::measures::reference_moments;

    #[test]
    fn eval_poly_low_orders() {
        let rec = PolynomialRecurrence::meixner_pollaczek(rat(1, 2));
        assert_eq!(eval_poly(&rec, 0, 3.7), 1.0);
        assert_eq!(eval_poly(&rec, 1, 3.7), 3.7);
        // P_2 = x^2 - beta_1 = x^2 - 1/4
        let x = 1.5;
        assert!((eval_poly(&rec, 2, x) - (x * x - 0.25)).abs() < 1e-15);
    }

    #[test]
    fn eval_poly_exact_matches_float() {
        let rec = PolynomialRecurrence::continuous_hahn();
        for n in 0..=6 {
            let exact = eval_poly_exact(&rec, n, &rat(3, 2));
            let float = eval_poly(&rec, n, 1.5);
            assert!((rat_to_f64(&exact) - float).abs() < 1e-10, "n = {n}");
        }
    }

    #[test]
    fn polynomials_are_monic() {
        let recs = [
            PolynomialRecurrence::meixner_pollaczek(rat(3, 10)),
            PolynomialRecurrence::continuous_hahn(),
            PolynomialRecurrence::semicircle(),
        ];
        let x = 1e6;
        for rec in &recs {
            for n in 1..=5 {
                let ratio = eval_poly(rec, n, x) / x.powi(n as i32);
                assert!(
                    (ratio - 1.0).abs() < 1e-4,
                    "{} degree {n}: leading ratio {ratio}",
                    rec.name()
                );
            }
        }
    }

    #[test]
    fn moments_match_examples() {
        let mp = PolynomialRecurrence::meixner_pollaczek(rat(1, 2));
        let m = moments_from_jacobi(&mp, 2).unwrap();
        assert_eq!(m.get(2).unwrap(), &rat(1, 4));
        let ch = PolynomialRecurrence::continuous_hahn();
        let m = moments_from_jacobi(&ch, 2).unwrap();
        assert_eq!(m.get(2).unwrap(), &rat(1, 12));
        assert!(m.get(1).unwrap().is_zero());
    }

    #[test]
    fn meixner_second_moment_is_t_over_two() {
        for (p, q) in [(1i64, 10i64), (1, 4), (1, 2), (1, 1), (7, 5)] {
            let t = rat(p, q);
            let rec = PolynomialRecurrence::meixner_pollaczek(t.clone());
            let m = moments_from_jacobi(&rec, 2).unwrap();
            assert_eq!(m.get(2).unwrap(), &(t / rat_int(2)));
        }
    }

    #[test]
    fn jacobi_moments_match_euler_sequence() {
        // rho_{1/2} is the rescaled secant law with moments E_{2k} / 4^k
        let rec = PolynomialRecurrence::meixner_pollaczek(rat(1, 2));
        let m = moments_from_jacobi(&rec, 12).unwrap();
        let euler = reference_moments("rescaled_secant", 12)
            .unwrap()
            .rescale(&rat(1, 2));
        assert_eq!(m, euler);
    }

    #[test]
    fn jacobi_moments_match_bernoulli_sequence() {
        let rec = PolynomialRecurrence::continuous_hahn();
        let m = moments_from_jacobi(&rec, 12).unwrap();
        let bern = reference_moments("rescaled_logistic", 12)
            .unwrap()
            .rescale(&rat(1, 2));
        assert_eq!(m, bern);
    }

    #[test]
    fn semicircle_moments_are_catalan() {
        let rec = PolynomialRecurrence::semicircle();
        let m = moments_from_jacobi(&rec, 10).unwrap();
        let want = reference_moments("semicircle", 10).unwrap();
        assert_eq!(m, want);
    }

    #[test]
    fn orthogonality_meixner() {
        let measure = Measure::Meixner { t: 0.3 };
        let rec = PolynomialRecurrence::meixner_pollaczek(rat(3, 10));
        for n in 0..=4 {
            for m in 0..=4 {
                let (_, pass) = verify_orthogonality(&measure, &rec, n, m).unwrap();
                assert!(pass, "({n}, {m}) failed");
            }
        }
    }

    #[test]
    fn orthogonality_logistic_and_semicircle() {
        let cases = [
            (Measure::Logistic, PolynomialRecurrence::continuous_hahn()),
            (Measure::Semicircle, PolynomialRecurrence::semicircle()),
        ];
        for (measure, rec) in &cases {
            for (n, m) in [(0, 2), (1, 3), (2, 4), (3, 3), (5, 7), (8, 8)] {
                let (value, pass) = verify_orthogonality(measure, rec, n, m).unwrap();
                assert!(pass, "{} ({n}, {m}): integral {value}", rec.name());
            }
        }
    }

    #[test]
    fn degree_cap_enforced() {
        let measure = Measure::Logistic;
        let rec = PolynomialRecurrence::continuous_hahn();
        assert!(verify_orthogonality(&measure, &rec, 9, 2).is_err());
    }

    #[test]
    fn diagonal_integrals_match_exact_norms() {
        let measure = Measure::Logistic;
        let rec = PolynomialRecurrence::continuous_hahn();
        for n in 0..=5 {
            let (value, _) = verify_orthogonality(&measure, &rec, n, n).unwrap();
            let want = rat_to_f64(&rec.norm_squared(n));
            assert!(
                (value - want).abs() < 1e-9 * want.max(1.0),
                "n = {n}: {value} vs {want}"
            );
        }
    }
}
