//! End-to-end verification battery. Each criterion exercises one slice of
//! the library against an independent target: frozen integer sequences,
//! closed forms, or a brute-force combinatorial oracle. The battery is the
//! single source of truth for both the CLI `verify-all` command and the
//! acceptance test target.

use crate::config::RunConfig;
use crate::cumulants::{
    cond_psd_check, cumulants_via_reversion, free_convolve_moments, free_cumulants_to_moments,
    moments_to_free_cumulants, CumulantSequence,
};
use crate::error::Result;
use crate::exact::{rat, rat_int, Rat};
use crate::fidcheck::{run_full_check, CurveSpec};
use crate::measures::{
    closed_form_f_inverse, density_meixner, reference_moments, Measure, MomentSequence,
};
use crate::orthopoly::{moments_from_jacobi, PolynomialRecurrence};
use crate::quad::integrate_real;
use crate::transforms::{
    char_function_meixner, char_function_meixner_closed, f_inverse_numeric, g_logistic_curve_im,
    logistic_curve_im_partial, recursion_residual, voiculescu_phi, ConeSpec,
};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn run_criterion(
    id: usize,
    name: &'static str,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    match body() {
        Ok((pass, detail)) => CriterionResult {
            id,
            name,
            pass,
            detail,
        },
        Err(e) => CriterionResult {
            id,
            name,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs the whole battery in order. Deterministic: fixed seeds, fixed
/// grids, no ambient state.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_01_secant_cumulants(),
        criterion_02_jacobi_moments(),
        criterion_03_positivity_screen(),
        criterion_04_density_normalization(),
        criterion_05_half_shift_recursion(),
        criterion_06_logistic_boundary_curve(),
        criterion_07_curve_checks(),
        criterion_08_inversion_against_closed_forms(),
        criterion_09_characteristic_function(),
        criterion_10_partition_oracle(),
        criterion_11_semicircle_self_convolution(),
    ]
}

/// One line per criterion, `PASS`/`FAIL` plus the recorded detail.
pub fn format_results(results: &[CriterionResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!(
            "criterion {:02} [{}] {}: {}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        ));
    }
    out
}

const SECANT_CUMULANT_TARGETS: [i64; 5] = [1, 3, 38, 947, 37394];

pub fn criterion_01_secant_cumulants() -> CriterionResult {
    run_criterion(1, "secant cumulants by two routes", || {
        let m = reference_moments("rescaled_secant", 10)?;
        let direct = moments_to_free_cumulants(&m);
        let reverted = cumulants_via_reversion(&m);
        let mut ok = true;
        for n in 1..=10 {
            if direct.get(n) != reverted.get(n) {
                ok = false;
            }
            let want = if n % 2 == 0 {
                rat_int(SECANT_CUMULANT_TARGETS[n / 2 - 1])
            } else {
                Rat::zero()
            };
            if direct.get(n) != Some(&want) {
                ok = false;
            }
        }
        Ok((
            ok,
            format!(
                "even cumulants {:?} vs targets {:?}, routes agree to order 10",
                (1..=5)
                    .map(|k| direct.get(2 * k).unwrap().to_string())
                    .collect::<Vec<_>>(),
                SECANT_CUMULANT_TARGETS
            ),
        ))
    })
}

pub fn criterion_02_jacobi_moments() -> CriterionResult {
    run_criterion(2, "Jacobi-matrix moments of the orthogonal families", || {
        let mp = moments_from_jacobi(&PolynomialRecurrence::meixner_pollaczek(rat(1, 2)), 10)?;
        let mp2 = mp.rescale(&rat_int(2));
        let secant_targets = [1i64, 5, 61, 1385, 50521];
        let mut ok = true;
        for (k, &t) in secant_targets.iter().enumerate() {
            if mp2.get(2 * (k + 1)) != Some(&rat_int(t)) {
                ok = false;
            }
        }
        let ch = moments_from_jacobi(&PolynomialRecurrence::continuous_hahn(), 8)?;
        let ch2 = ch.rescale(&rat_int(2));
        let logistic_targets = [rat(1, 3), rat(7, 15), rat(31, 21), rat(127, 15)];
        for (k, t) in logistic_targets.iter().enumerate() {
            if ch2.get(2 * (k + 1)) != Some(t) {
                ok = false;
            }
        }
        Ok((
            ok,
            format!(
                "doubled even moments: {:?} and {:?}",
                (1..=5)
                    .map(|k| mp2.get(2 * k).unwrap().to_string())
                    .collect::<Vec<_>>(),
                (1..=4)
                    .map(|k| ch2.get(2 * k).unwrap().to_string())
                    .collect::<Vec<_>>()
            ),
        ))
    })
}

pub fn criterion_03_positivity_screen() -> CriterionResult {
    run_criterion(3, "conditional positivity screen", || {
        let m = reference_moments("rescaled_secant", 10)?;
        let r = moments_to_free_cumulants(&m);
        let accept = cond_psd_check(&r, 5, 1e-9)?;
        // symmetric two-point law at +-1: r_4 = -1 breaks positivity
        let two_point = MomentSequence::from_values(vec![
            Rat::zero(),
            Rat::one(),
            Rat::zero(),
            Rat::one(),
        ]);
        let r2 = moments_to_free_cumulants(&two_point);
        let reject = cond_psd_check(&r2, 2, 1e-9)?;
        let ok = accept.pass && !reject.pass;
        Ok((
            ok,
            format!(
                "secant 5x5 min eigenvalue {:.3e} (pass), two-point 2x2 min eigenvalue {:.3e} (fail)",
                accept.min_eigenvalue, reject.min_eigenvalue
            ),
        ))
    })
}

pub fn criterion_04_density_normalization() -> CriterionResult {
    run_criterion(4, "density normalization and secant closed form", || {
        let mut worst_mass = 0.0f64;
        for t in [0.1, 0.25, 0.5] {
            let cutoff = 30.0 + 4.0 * t;
            let (mass, _) = integrate_real(
                |x| density_meixner(t, x).unwrap_or(0.0),
                -cutoff,
                cutoff,
                1e-11,
                2_000_000,
            )?;
            worst_mass = worst_mass.max((mass - 1.0).abs());
        }
        let mut worst_sech = 0.0f64;
        for k in 0..=800 {
            let x = -5.0 + 10.0 * k as f64 / 800.0;
            let sech = 1.0 / (std::f64::consts::PI * x).cosh();
            worst_sech = worst_sech.max((density_meixner(0.5, x)? - sech).abs());
        }
        let ok = worst_mass < 1e-8 && worst_sech < 1e-12;
        Ok((
            ok,
            format!(
                "max |mass - 1| = {worst_mass:.3e} (tol 1e-8), max sech deviation {worst_sech:.3e} (tol 1e-12)"
            ),
        ))
    })
}

pub fn criterion_05_half_shift_recursion() -> CriterionResult {
    run_criterion(5, "half-shift recursion residual", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0515);
        let mut worst = 0.0f64;
        for t in [0.1, 0.3, 0.5] {
            for _ in 0..50 {
                let x = rng.gen_range(-5.0..5.0);
                let y = rng.gen_range(t + 0.05..5.0);
                let res = recursion_residual(t, Complex64::new(x, y))?;
                worst = worst.max(res);
            }
        }
        Ok((
            ok_tol(worst, 1e-8),
            format!("max residual {worst:.3e} over 150 points (tol 1e-8)"),
        ))
    })
}

fn ok_tol(value: f64, tol: f64) -> bool {
    value.is_finite() && value < tol
}

pub fn criterion_06_logistic_boundary_curve() -> CriterionResult {
    run_criterion(6, "logistic boundary curve closed form", || {
        let mut worst_partial = 0.0f64;
        let mut worst_transform = 0.0f64;
        for k in 0..=60 {
            let x = 0.1 * (20.0f64 / 0.1).powf(k as f64 / 60.0);
            let closed = 0.5
                * (1.0 / (x * x)
                    + (std::f64::consts::PI / (std::f64::consts::PI * x).sinh()).powi(2));
            let partial = logistic_curve_im_partial(x, 200);
            worst_partial = worst_partial.max((partial - closed).abs());
            let via = g_logistic_curve_im(x)?;
            worst_transform = worst_transform.max((via - closed).abs());
        }
        let ok = ok_tol(worst_partial, 1e-8) && ok_tol(worst_transform, 1e-10);
        Ok((
            ok,
            format!(
                "partial-sum deviation {worst_partial:.3e} (tol 1e-8), transform-route deviation {worst_transform:.3e} (tol 1e-10)"
            ),
        ))
    })
}

pub fn criterion_07_curve_checks() -> CriterionResult {
    run_criterion(7, "full curve checks on the catalog", || {
        let config = RunConfig::default();
        let mut ok = true;
        let mut parts = Vec::new();
        for t in [0.1, 0.25, 0.5] {
            let measure = Measure::Meixner { t };
            let curve = CurveSpec::default_for(&measure, config.grid_xmax);
            let report = run_full_check(&measure, &curve, &config)?;
            ok &= report.overall_pass;
            parts.push(format!(
                "meixner t={t}: {}",
                if report.overall_pass { "pass" } else { "FAIL" }
            ));
        }
        let logistic = Measure::Logistic;
        let curve = CurveSpec::default_for(&logistic, config.grid_xmax);
        let report = run_full_check(&logistic, &curve, &config)?;
        ok &= report.overall_pass;
        parts.push(format!(
            "logistic: {}",
            if report.overall_pass { "pass" } else { "FAIL" }
        ));
        let control = Measure::TwoPointSymmetric;
        let curve = CurveSpec::at_depth(&control, 0.5, config.grid_xmax);
        let report = run_full_check(&control, &curve, &config)?;
        ok &= !report.overall_pass;
        parts.push(format!(
            "two-point control: {} (zero count {})",
            if report.overall_pass {
                "FAIL (should not pass)"
            } else {
                "fails as required"
            },
            report.condition_d.zero_count
        ));
        Ok((ok, parts.join("; ")))
    })
}

pub fn criterion_08_inversion_against_closed_forms() -> CriterionResult {
    run_criterion(8, "numeric inversion against closed forms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0F1F);
        let mut worst = 0.0f64;
        for measure in [Measure::Semicircle, Measure::FreePoisson, Measure::Cauchy] {
            let cone = ConeSpec::default_for(&measure);
            for _ in 0..20 {
                let y = rng.gen_range(cone.m + 1.0..cone.m + 40.0);
                let x = rng.gen_range(-0.9 * y..0.9 * y);
                let z = Complex64::new(x, y);
                let numeric = f_inverse_numeric(&measure, z, &cone)?;
                let closed = closed_form_f_inverse(&measure, z)?;
                worst = worst.max((numeric - closed).norm());
            }
        }
        let cone = ConeSpec::default_for(&Measure::Cauchy);
        let mut worst_phi = 0.0f64;
        for z in [Complex64::new(0.0, 12.0), Complex64::new(3.0, 15.0)] {
            let phi = voiculescu_phi(&Measure::Cauchy, z, &cone)?;
            worst_phi = worst_phi.max((phi - Complex64::new(0.0, -1.0)).norm());
        }
        let ok = ok_tol(worst, 1e-10) && ok_tol(worst_phi, 1e-10);
        Ok((
            ok,
            format!(
                "max inversion deviation {worst:.3e} over 60 cone points (tol 1e-10), |phi_cauchy + i| <= {worst_phi:.3e}"
            ),
        ))
    })
}

pub fn criterion_09_characteristic_function() -> CriterionResult {
    run_criterion(9, "characteristic function closed form", || {
        let mut worst = 0.0f64;
        for t in [0.25, 0.5] {
            for zeta in [0.5, 1.0, 2.0] {
                let numeric = char_function_meixner(t, zeta)?;
                let closed = char_function_meixner_closed(t, zeta);
                worst = worst.max((numeric - Complex64::new(closed, 0.0)).norm());
            }
        }
        Ok((
            ok_tol(worst, 1e-6),
            format!("max deviation {worst:.3e} at 6 (t, zeta) pairs (tol 1e-6)"),
        ))
    })
}

pub fn criterion_10_partition_oracle() -> CriterionResult {
    run_criterion(10, "non-crossing partition oracle", || {
        let tables = noncrossing_partitions_up_to(8);
        let mut rng = ChaCha8Rng::seed_from_u64(0x0A0A);
        let mut checked = 0usize;
        for _ in 0..100 {
            let n = rng.gen_range(1..=8usize);
            let r = CumulantSequence::from_values(
                (0..n)
                    .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9)))
                    .collect(),
            );
            let produced = free_cumulants_to_moments(&r, n);
            for k in 1..=n {
                let enumerated = moment_from_partitions(&r, &tables[k]);
                if produced.get(k) != Some(&enumerated) {
                    return Ok((
                        false,
                        format!("mismatch at order {k} for cumulants {:?}", r.values()),
                    ));
                }
                checked += 1;
            }
        }
        Ok((
            true,
            format!("{checked} moment values agree exactly across 100 random sequences"),
        ))
    })
}

pub fn criterion_11_semicircle_self_convolution() -> CriterionResult {
    run_criterion(11, "semicircle self-convolution", || {
        let sc = reference_moments("semicircle", 6)?;
        let conv = free_convolve_moments(&sc, &sc, 6)?;
        let targets = [(2usize, 2i64), (4, 8), (6, 40)];
        let ok = targets
            .iter()
            .all(|&(n, v)| conv.get(n) == Some(&rat_int(v)));
        Ok((
            ok,
            format!(
                "(m2, m4, m6) = ({}, {}, {}) vs (2, 8, 40)",
                conv.get(2).unwrap(),
                conv.get(4).unwrap(),
                conv.get(6).unwrap()
            ),
        ))
    })
}

// ---------------------------------------------------------------------------
// Non-crossing partition enumeration
// ---------------------------------------------------------------------------

/// All non-crossing partitions of {0, ..., s-1} for every s <= n, built by
/// interval decomposition: the block containing 0 splits the rest into
/// independent gaps. `table[s]` lists each partition as sorted blocks.
/// Exponential; intended as an oracle for small s only.
pub fn noncrossing_partitions_up_to(n: usize) -> Vec<Vec<Vec<Vec<usize>>>> {
    assert!(n <= 16, "partition enumeration is for small orders");
    let mut table: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(n + 1);
    table.push(vec![Vec::new()]);
    for s in 1..=n {
        let mut parts = Vec::new();
        for mask in 0u32..(1 << (s - 1)) {
            let mut block = vec![0usize];
            for i in 0..s - 1 {
                if mask & (1 << i) != 0 {
                    block.push(i + 1);
                }
            }
            let mut gaps = Vec::new();
            for w in block.windows(2) {
                gaps.push((w[0] + 1, w[1]));
            }
            gaps.push((*block.last().unwrap() + 1, s));
            let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![block.clone()]];
            for &(lo, hi) in &gaps {
                if lo == hi {
                    continue;
                }
                let mut next = Vec::new();
                for partial in &combos {
                    for sub in &table[hi - lo] {
                        let mut p = partial.clone();
                        for blk in sub {
                            p.push(blk.iter().map(|&e| e + lo).collect());
                        }
                        next.push(p);
                    }
                }
                combos = next;
            }
            parts.extend(combos);
        }
        table.push(parts);
    }
    table
}

/// Moment of the given order as the sum over non-crossing partitions of
/// the product of block cumulants.
pub fn moment_from_partitions(r: &CumulantSequence, partitions: &[Vec<Vec<usize>>]) -> Rat {
    let mut total = Rat::zero();
    for p in partitions {
        let mut prod = Rat::one();
        for block in p {
            prod *= r.get(block.len()).expect("cumulant order too low");
        }
        total += prod;
    }
    total
}
