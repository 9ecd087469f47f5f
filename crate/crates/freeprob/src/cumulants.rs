//! Exact free cumulant machinery: moment/cumulant conversion in both
//! directions, an independent series-reversion route, free convolution of
//! moment sequences, and the conditional positive-definiteness check on the
//! shifted cumulant Hankel matrix.
//!
//! The conversions use the recursion
//! m_n = sum_{k=1}^{n} r_k [x^{n-k}] M(x)^k, M(x) = 1 + m_1 x + m_2 x^2 + ...
//! which is triangular in both directions.

use crate::error::{Error, Result};
use crate::exact::{rat_to_f64, series_mul, series_recip, series_revert, Rat};
use crate::measures::MomentSequence;
use num_traits::{One, Zero};

/// Free cumulants r_1..r_N, 1-indexed via `get`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantSequence {
    values: Vec<Rat>,
}

impl CumulantSequence {
    pub fn from_values(values: Vec<Rat>) -> Self {
        CumulantSequence { values }
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    /// r_n for 1 <= n <= order.
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
}

/// Converts moments m_1..m_N to free cumulants r_1..r_N, exactly.
pub fn moments_to_free_cumulants(m: &MomentSequence) -> CumulantSequence {
    let n = m.order();
    // M(x) coefficients m_0..m_N
    let mut mcoef = Vec::with_capacity(n + 1);
    mcoef.push(Rat::one());
    mcoef.extend(m.values().iter().cloned());
    // powers[k] = coefficients of M(x)^{k+1} up to degree N
    let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut cur = mcoef.clone();
    for _ in 0..n {
        powers.push(cur.clone());
        cur = series_mul(&cur, &mcoef, n);
    }
    let mut r: Vec<Rat> = Vec::with_capacity(n);
    for nn in 1..=n {
        // [x^0] M^nn = 1, so r_nn appears with unit coefficient
        let mut acc = m.get(nn).unwrap().clone();
        for k in 1..nn {
            let coef = &powers[k - 1][nn - k];
            acc -= &r[k - 1] * coef;
        }
        r.push(acc);
    }
    CumulantSequence::from_values(r)
}

/// Converts free cumulants r_1..r_K to moments m_1..m_N, exactly.
/// Cumulants beyond the given order are treated as zero.
pub fn free_cumulants_to_moments(r: &CumulantSequence, order: usize) -> MomentSequence {
    let mut mcoef = vec![Rat::one()];
    for nn in 1..=order {
        // [x^{nn-k}] M^k depends only on m_1..m_{nn-1}, all known
        let mut pow = mcoef.clone();
        let mut acc = Rat::zero();
        let kmax = nn.min(r.order());
        for k in 1..=nn {
            if k <= kmax {
                if let Some(coef) = pow.get(nn - k) {
                    acc += r.get(k).unwrap() * coef;
                }
            }
            if k < nn {
                pow = series_mul(&pow, &mcoef, nn - k - 1);
            }
        }
        mcoef.push(acc);
    }
    MomentSequence::from_values(mcoef[1..].to_vec())
}

/// Independent route to the free cumulants via formal series reversion.
///
/// With g(w) = w M(w) (so G(z) = g(1/z)), the compositional inverse
/// psi = g^{-1} satisfies K(u) = 1/psi(u), and r_n is the coefficient of
/// u^n in the reciprocal of psi(u)/u.
pub fn cumulants_via_reversion(m: &MomentSequence) -> CumulantSequence {
    let n = m.order();
    // g(w) = w + m_1 w^2 + ... + m_N w^{N+1}
    let mut g = vec![Rat::zero(), Rat::one()];
    g.extend(m.values().iter().cloned());
    let psi = series_revert(&g, n + 1).expect("g has unit linear coefficient");
    // psi(u)/u = 1 + psi_2 u + ... ; its reciprocal carries the cumulants
    let shifted: Vec<Rat> = psi[1..].to_vec();
    let rec = series_recip(&shifted, n).expect("psi(u)/u has unit constant term");
    CumulantSequence::from_values(rec[1..=n].to_vec())
}

/// Moments of the free convolution of two measures, from their moments.
pub fn free_convolve_moments(
    a: &MomentSequence,
    b: &MomentSequence,
    order: usize,
) -> Result<MomentSequence> {
    if a.order() < order || b.order() < order {
        return Err(Error::InsufficientOrder {
            needed: order,
            have: a.order().min(b.order()),
        });
    }
    let ra = moments_to_free_cumulants(&truncate(a, order));
    let rb = moments_to_free_cumulants(&truncate(b, order));
    let sum: Vec<Rat> = ra
        .values()
        .iter()
        .zip(rb.values())
        .map(|(x, y)| x + y)
        .collect();
    Ok(free_cumulants_to_moments(
        &CumulantSequence::from_values(sum),
        order,
    ))
}

fn truncate(m: &MomentSequence, order: usize) -> MomentSequence {
    MomentSequence::from_values(m.values()[..order].to_vec())
}

/// Result of the conditional positive-definiteness check.
#[derive(Clone, Debug)]
pub struct PsdReport {
    pub pass: bool,
    pub min_eigenvalue: f64,
    pub scale: f64,
}

/// Checks positive semidefiniteness of the shifted cumulant matrix
/// (r_{i+j})_{i,j=1..N} in floating point, with tolerance relative to the
/// largest entry. Failure certifies that the sequence cannot be the free
/// cumulant sequence of a freely infinitely divisible law.
pub fn cond_psd_check(r: &CumulantSequence, n: usize, rel_tol: f64) -> Result<PsdReport> {
    if r.order() < 2 * n {
        return Err(Error::InsufficientOrder {
            needed: 2 * n,
            have: r.order(),
        });
    }
    let mat = nalgebra::DMatrix::from_fn(n, n, |i, j| rat_to_f64(r.get(i + j + 2).unwrap()));
    let scale = mat.iter().fold(0f64, |acc, v| acc.max(v.abs()));
    let eig = mat.symmetric_eigen();
    let min_eigenvalue = eig.eigenvalues.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    Ok(PsdReport {
        pass: min_eigenvalue >= -rel_tol * scale.max(1e-300),
        min_eigenvalue,
        scale,
    })
}
