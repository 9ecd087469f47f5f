//! Exact integer and rational sequences plus truncated power-series
//! arithmetic over `BigRational`. Everything here is allocation-heavy but
//! exact; callers convert to `f64` only at the boundary.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Rat = BigRational;

/// `Rat` from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `Rat` p/q.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Secant numbers 1, 1, 5, 61, 1385, 50521, ... (`k`-th entry is the number
/// of alternating permutations of even length 2k), computed with the
/// Entringer triangle. Returns `count` entries starting at index 0.
pub fn secant_numbers(count: usize) -> Vec<BigInt> {
    zigzag_numbers(2 * count).into_iter().step_by(2).collect()
}

/// Tangent numbers 1, 2, 16, 272, 7936, ... (alternating permutations of odd
/// length 2k+1).
pub fn tangent_numbers(count: usize) -> Vec<BigInt> {
    zigzag_numbers(2 * count + 1)
        .into_iter()
        .skip(1)
        .step_by(2)
        .collect()
}

/// Zigzag (Euler up/down) numbers 1, 1, 1, 2, 5, 16, 61, 272, 1385, ...
/// via the Entringer recursion E(n,k) = E(n,k-1) + E(n-1,n-k).
pub fn zigzag_numbers(count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    out.push(BigInt::one());
    for n in 1..count {
        let mut next: Vec<BigInt> = Vec::with_capacity(n + 1);
        next.push(BigInt::zero());
        for k in 1..=n {
            let v = &next[k - 1] + &row[n - k];
            next.push(v);
        }
        out.push(next[n].clone());
        row = next;
    }
    out
}

/// Bernoulli numbers B_0..B_n (inclusive) by the Akiyama-Tanigawa algorithm,
/// with the B_1 = +1/2 convention. Only even indices are nonzero past B_1.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let mut a: Vec<Rat> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(rat(1, (m + 1) as i64));
        for j in (1..=m).rev() {
            a[j - 1] = rat_int(j as i64) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

/// Catalan numbers C_0..C_n.
pub fn catalan_numbers(n: usize) -> Vec<BigInt> {
    let mut c = Vec::with_capacity(n + 1);
    c.push(BigInt::one());
    for k in 0..n {
        // C_{k+1} = C_k * 2(2k+1)/(k+2), always an exact division
        let next = (&c[k] * BigInt::from(2 * (2 * k + 1))) / BigInt::from(k + 2);
        c.push(next);
    }
    c
}

/// Parses an exact rational from `p/q`, an integer, or a finite decimal
/// such as `-0.25`.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let den: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let int_digits = int_part.trim_start_matches(['+', '-']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
            || frac_part.is_empty()
        {
            return Err(Error::Parse(format!("bad decimal `{s}`")));
        }
        let digits = format!("{int_digits}{frac_part}");
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let num: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(Rat::from_integer(num))
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts to `f64` (nearest double).
pub fn rat_to_f64(r: &Rat) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Truncated power series over Rat. A series is a Vec<Rat> of coefficients,
// index = power, and every operation takes the truncation degree explicitly.
// ---------------------------------------------------------------------------

/// c = a * b truncated at degree `deg` (inclusive).
pub fn series_mul(a: &[Rat], b: &[Rat], deg: usize) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); deg + 1];
    for (i, ai) in a.iter().enumerate().take(deg + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(deg + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            c[i + j] += ai * bj;
        }
    }
    c
}

/// Multiplicative inverse of a series with nonzero constant term, truncated
/// at degree `deg`.
pub fn series_recip(a: &[Rat], deg: usize) -> Result<Vec<Rat>> {
    if a.is_empty() || a[0].is_zero() {
        return Err(Error::Domain(
            "series reciprocal needs a nonzero constant term".into(),
        ));
    }
    let inv0 = Rat::one() / &a[0];
    let mut b = vec![Rat::zero(); deg + 1];
    b[0] = inv0.clone();
    for k in 1..=deg {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if j < a.len() && !a[j].is_zero() {
                acc += &a[j] * &b[k - j];
            }
        }
        b[k] = -acc * &inv0;
    }
    Ok(b)
}

/// Composition a(b(v)) truncated at degree `deg`; requires b[0] = 0.
pub fn series_compose(a: &[Rat], b: &[Rat], deg: usize) -> Result<Vec<Rat>> {
    if !b.is_empty() && !b[0].is_zero() {
        return Err(Error::Domain(
            "series composition needs a vanishing constant term".into(),
        ));
    }
    // Horner in b; coefficients of a beyond `deg` only feed powers past the
    // truncation and are dropped up front.
    let top = a.len().min(deg + 1);
    let mut acc = vec![Rat::zero(); deg + 1];
    for k in (0..top).rev() {
        acc = series_mul(&acc, b, deg);
        acc[0] += &a[k];
    }
    Ok(acc)
}

/// Compositional inverse of phi (phi[0] = 0, phi[1] = 1): returns psi with
/// phi(psi(v)) = v, truncated at degree `deg`.
pub fn series_revert(phi: &[Rat], deg: usize) -> Result<Vec<Rat>> {
    if phi.len() < 2 || !phi[0].is_zero() || !phi[1].is_one() {
        return Err(Error::Domain(
            "series reversion expects phi = v + O(v^2)".into(),
        ));
    }
    let mut psi = vec![Rat::zero(); deg + 1];
    if deg >= 1 {
        psi[1] = Rat::one();
    }
    for n in 2..=deg {
        // With psi known through degree n-1 and psi[n] provisionally zero,
        // the degree-n coefficient of phi(psi) equals the defect; the
        // correction enters linearly through the leading phi coefficient.
        let comp = series_compose(phi, &psi, n)?;
        psi[n] = -comp[n].clone();
    }
    Ok(psi)
}

/// Exact positive-semidefinite test for a symmetric rational matrix, by
/// fraction-free symmetric elimination. A zero pivot is admissible only when
/// its entire row of the Schur complement vanishes.
pub fn symmetric_psd_exact(mat: &[Vec<Rat>]) -> bool {
    let n = mat.len();
    let mut a: Vec<Vec<Rat>> = mat.to_vec();
    for i in 0..n {
        if a[i][i].is_negative() {
            return false;
        }
        if a[i][i].is_zero() {
            if (i + 1..n).any(|j| !a[i][j].is_zero()) {
                return false;
            }
            continue;
        }
        let pivot = a[i][i].clone();
        for r in (i + 1)..n {
            let factor = &a[r][i] / &pivot;
            for c in i..n {
                let sub = &factor * &a[i][c];
                a[r][c] -= sub;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn secant_numbers_match_known_values() {
        let s = secant_numbers(6);
        let expect: Vec<BigInt> = [1i64, 1, 5, 61, 1385, 50521]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn tangent_numbers_match_known_values() {
        let t = tangent_numbers(5);
        let expect: Vec<BigInt> = [1i64, 2, 16, 272, 7936]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(t, expect);
    }

    #[test]
    fn bernoulli_numbers_match_known_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], rat_int(1));
        assert_eq!(b[1], rat(1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], Rat::zero());
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[6], rat(1, 42));
        assert_eq!(b[8], rat(-1, 30));
        assert_eq!(b[10], rat(5, 66));
        assert_eq!(b[12], rat(-691, 2730));
    }

    #[test]
    fn catalan_numbers_match_known_values() {
        let c = catalan_numbers(7);
        let expect: Vec<BigInt> = [1i64, 1, 2, 5, 14, 42, 132, 429]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(c, expect);
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-0.3").unwrap(), rat(-3, 10));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn series_recip_inverts() {
        // (1 + x)^-1 = 1 - x + x^2 - ...
        let a = vec![rat_int(1), rat_int(1)];
        let b = series_recip(&a, 4).unwrap();
        assert_eq!(
            b,
            vec![rat_int(1), rat_int(-1), rat_int(1), rat_int(-1), rat_int(1)]
        );
        let prod = series_mul(&a, &b, 4);
        assert_eq!(prod[0], rat_int(1));
        assert!(prod[1..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn series_revert_round_trips() {
        // phi = v + 2v^2 - v^3
        let phi = vec![Rat::zero(), rat_int(1), rat_int(2), rat_int(-1)];
        let psi = series_revert(&phi, 6).unwrap();
        let comp = series_compose(&phi, &psi, 6).unwrap();
        assert_eq!(comp[1], rat_int(1));
        assert!(comp[0].is_zero());
        assert!(comp[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn psd_exact_accepts_and_rejects() {
        let id = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert!(symmetric_psd_exact(&id));
        let neg = vec![
            vec![rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(-1)],
        ];
        assert!(!symmetric_psd_exact(&neg));
        // zero pivot with nonzero off-diagonal cannot be PSD
        let bad = vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        assert!(!symmetric_psd_exact(&bad));
        // Hankel of a genuine moment sequence (semicircle): [[1,0,1],[0,1,0],[1,0,2]]
        let hank = vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(2)],
        ];
        assert!(symmetric_psd_exact(&hank));
    }
}
