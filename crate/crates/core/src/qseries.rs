//! Integer q-expansions of eta products, Hecke identities and Euler factors.
//!
//! `η(q) = q^{1/24} ∏(1 - qⁿ)`, and the infinite product is expanded with
//! Euler's pentagonal number theorem
//! `∏(1 - qⁿ) = Σ_k (-1)^k q^{k(3k-1)/2}`, `k ∈ Z`.
//! All arithmetic is checked 64-bit; overflow is an error, never a wrap.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// The eta-product data `[(1,2), (2,2), (3,2), (6,2)]` of
/// `f = (η(q)η(q²)η(q³)η(q⁶))²`.
pub const F_SPEC: [(u32, u32); 4] = [(1, 2), (2, 2), (3, 2), (6, 2)];

/// Truncated q-expansion `Σ_{n≥1} a_n qⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QExpansion {
    /// `coeffs[n] = a_n`; `coeffs[0]` is the constant term (zero for cusp forms).
    pub coeffs: Vec<i64>,
    pub level: u64,
    pub weight: u32,
    pub label: String,
}

impl QExpansion {
    /// Largest `n` with `a_n` available.
    pub fn len(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).copied()
    }

    pub fn a(&self, n: usize) -> Result<i64> {
        self.get(n).ok_or(Error::CoefficientUnavailable {
            index: n,
            available: self.len(),
        })
    }

    /// `a_1..a_N`.
    pub fn as_slice(&self) -> &[i64] {
        &self.coeffs[1.min(self.coeffs.len())..]
    }
}

/// Sparse series of `∏_{n≥1}(1 - q^{scale·n})` up to `q^max_deg`, as
/// `(degree, ±1)` pairs in increasing degree.
pub fn pentagonal_terms(scale: u64, max_deg: u64) -> Vec<(u64, i64)> {
    let mut terms = vec![(0, 1)];
    let mut k: u64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let g1 = scale * (k * (3 * k - 1) / 2);
        let g2 = scale * (k * (3 * k + 1) / 2);
        if g1 > max_deg {
            break;
        }
        terms.push((g1, sign));
        if g2 <= max_deg {
            terms.push((g2, sign));
        }
        k += 1;
    }
    terms
}

/// Multiplies a dense series by a sparse one, truncating at `dense.len()`.
fn mul_sparse(dense: &[i64], sparse: &[(u64, i64)]) -> Result<Vec<i64>> {
    let len = dense.len();
    let mut out = vec![0i64; len];
    for &(deg, c) in sparse {
        let deg = deg as usize;
        if deg >= len {
            break;
        }
        for i in 0..len - deg {
            let term = dense[i].checked_mul(c).ok_or(Error::Overflow(i + deg))?;
            out[i + deg] = out[i + deg]
                .checked_add(term)
                .ok_or(Error::Overflow(i + deg))?;
        }
    }
    Ok(out)
}

/// Product of two dense truncated series (same length).
pub fn mul_truncated(a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
    let len = a.len().min(b.len());
    let mut out = vec![0i64; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            let term = ai.checked_mul(bj).ok_or(Error::Overflow(i + j))?;
            out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow(i + j))?;
        }
    }
    Ok(out)
}

/// Dense `∏_{n≥1} (1 - q^{scale·n})^exponent` with `len` coefficients.
pub fn eta_factor_series(scale: u32, exponent: u32, len: usize) -> Result<Vec<i64>> {
    let sparse = pentagonal_terms(scale as u64, len.saturating_sub(1) as u64);
    let mut acc = vec![0i64; len];
    if len > 0 {
        acc[0] = 1;
    }
    for _ in 0..exponent {
        acc = mul_sparse(&acc, &sparse)?;
    }
    Ok(acc)
}

/// Expands `∏ η(q^d)^e` through `q^n_max`.
///
/// The leading power `Σ d·e / 24` must be a positive integer.
pub fn eta_product_coeffs(spec: &[(u32, u32)], n_max: usize) -> Result<QExpansion> {
    if n_max == 0 {
        return Err(Error::EmptyTruncation);
    }
    if spec.is_empty() || spec.iter().any(|&(d, e)| d == 0 || e == 0) {
        return Err(Error::InvalidEtaSpec(
            "scales and exponents must be positive".into(),
        ));
    }
    let weight_sum: u64 = spec.iter().map(|&(d, e)| d as u64 * e as u64).sum();
    if weight_sum % 24 != 0 {
        return Err(Error::NonIntegralLeadingPower(weight_sum));
    }
    let lead = (weight_sum / 24) as usize;

    let mut coeffs = vec![0i64; n_max + 1];
    if lead <= n_max {
        // product part only needs degrees 0..=n_max - lead
        let len = n_max - lead + 1;
        let mut series = vec![0i64; len];
        series[0] = 1;
        for &(d, e) in spec {
            let sparse = pentagonal_terms(d as u64, (len - 1) as u64);
            for _ in 0..e {
                series = mul_sparse(&series, &sparse)?;
            }
        }
        coeffs[lead..].copy_from_slice(&series);
    }

    let level = spec.iter().map(|&(d, _)| d as u64).max().unwrap_or(1);
    let total_exp: u32 = spec.iter().map(|&(_, e)| e).sum();
    Ok(QExpansion {
        coeffs,
        level,
        weight: total_exp / 2,
        label: spec
            .iter()
            .map(|(d, e)| format!("eta({d})^{e}"))
            .collect::<Vec<_>>()
            .join("*"),
    })
}

/// Coefficients of the level-6 weight-4 newform `f` through `a_N`.
pub fn f_coefficients(n_max: usize) -> Result<QExpansion> {
    let mut q = eta_product_coeffs(&F_SPEC, n_max)?;
    q.label = "f = (eta(q)eta(q^2)eta(q^3)eta(q^6))^2".into();
    Ok(q)
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// One failed coefficient identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeViolation {
    pub identity: String,
    pub expected: i128,
    pub found: i128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeReport {
    pub range: usize,
    pub multiplicative_checks: u64,
    pub prime_power_checks: u64,
    pub violations: Vec<HeckeViolation>,
}

impl HeckeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the eigenform identities of a weight-4 level-6 newform on
/// `1..=n_max`:
///
/// - `a_mn = a_m a_n` for coprime `m, n`;
/// - `a_{p^{r+1}} = a_p a_{p^r} - p³ a_{p^{r-1}}` for `p ≥ 5`;
/// - `a_{p^r} = a_p^r` for `p ∈ {2, 3}`.
pub fn hecke_check(q: &QExpansion, n_max: usize) -> HeckeReport {
    let n_max = n_max.min(q.len());
    let a = |n: usize| q.coeffs[n] as i128;
    let mut report = HeckeReport {
        range: n_max,
        ..Default::default()
    };

    if n_max >= 1 && a(1) != 1 {
        report.violations.push(HeckeViolation {
            identity: "a_1 = 1".into(),
            expected: 1,
            found: a(1),
        });
    }

    for m in 2..=n_max {
        for n in m + 1..=n_max / m {
            if gcd(m, n) != 1 {
                continue;
            }
            report.multiplicative_checks += 1;
            let expected = a(m) * a(n);
            if a(m * n) != expected {
                report.violations.push(HeckeViolation {
                    identity: format!("a_{} = a_{m} a_{n}", m * n),
                    expected,
                    found: a(m * n),
                });
            }
        }
    }

    for p in (2..=n_max).filter(|&p| is_prime(p as u64)) {
        let p3 = (p as i128).pow(3);
        let mut prev = 1usize; // p^{r-1}
        let mut cur = p; // p^r
        while let Some(next) = cur.checked_mul(p).filter(|&v| v <= n_max) {
            report.prime_power_checks += 1;
            let expected = if p < 5 {
                a(p) * a(cur)
            } else {
                a(p) * a(cur) - p3 * a(prev)
            };
            if a(next) != expected {
                report.violations.push(HeckeViolation {
                    identity: format!("a_{next} from a_{p} and a_{cur}"),
                    expected,
                    found: a(next),
                });
            }
            prev = cur;
            cur = next;
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerKind {
    Good,
    Bad,
}

/// Local factor `1 / P(p^{-s})`, stored as the coefficients of `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerFactor {
    pub p: u64,
    pub kind: EulerKind,
    /// `[1, -a_p, p³]` for good `p`, `[1, p]` for `p ∈ {2, 3}`.
    pub coeffs: Vec<i64>,
}

pub fn euler_factor(p: u64, q: &QExpansion) -> Result<EulerFactor> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Ok(EulerFactor {
            p,
            kind: EulerKind::Bad,
            coeffs: vec![1, p as i64],
        });
    }
    let ap = q.a(p as usize)?;
    Ok(EulerFactor {
        p,
        kind: EulerKind::Good,
        coeffs: vec![1, -ap, (p * p * p) as i64],
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeligneReport {
    pub primes_checked: u64,
    /// `(p, a_p)` with `a_p² > 4p³`.
    pub violations: Vec<(u64, i64)>,
}

impl DeligneReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `|a_p| ≤ 2 p^{3/2}`, checked as `a_p² ≤ 4p³`, for every prime `5 ≤ p ≤ N`.
pub fn deligne_bound_check(q: &QExpansion) -> DeligneReport {
    let mut report = DeligneReport::default();
    for p in (5..=q.len()).filter(|&p| is_prime(p as u64)) {
        report.primes_checked += 1;
        let ap = q.coeffs[p] as i128;
        if ap * ap > 4 * (p as i128).pow(3) {
            report.violations.push((p as u64, q.coeffs[p]));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_expansion() {
        let f = f_coefficients(13).unwrap();
        assert_eq!(
            f.as_slice(),
            &[1, -2, -3, 4, 6, 6, -16, -8, 9, -12, 12, -12, 38]
        );
        assert_eq!(f.coeffs[0], 0);
        assert_eq!((f.level, f.weight), (6, 4));
    }

    /// Direct product of `(1 - q^k)^24` for `k = 1..N`, no pentagonal shortcut.
    fn delta_oracle(n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n];
        s[0] = 1;
        for k in 1..n {
            for _ in 0..24 {
                for i in (k..n).rev() {
                    s[i] -= s[i - k];
                }
            }
        }
        s
    }

    #[test]
    fn ramanujan_delta() {
        let d = eta_product_coeffs(&[(1, 24)], 11).unwrap();
        let oracle = delta_oracle(11);
        assert_eq!(&d.coeffs[1..], &oracle[..]);
        assert_eq!(d.coeffs[1], 1);
        assert_eq!(d.coeffs[2], -24);
        assert_eq!(d.coeffs[3], 252);
    }

    #[test]
    fn eta_spec_errors() {
        assert_eq!(
            eta_product_coeffs(&[(1, 1)], 10).unwrap_err(),
            Error::NonIntegralLeadingPower(1)
        );
        assert_eq!(f_coefficients(0).unwrap_err(), Error::EmptyTruncation);
        assert!(eta_product_coeffs(&[], 5).is_err());
        assert!(eta_product_coeffs(&[(0, 24)], 5).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        // η(q)^240 has coefficients far beyond 2^63 within a few dozen terms
        let err = eta_product_coeffs(&[(1, 240)], 200).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn pentagonal_series_matches_direct_product() {
        let n = 60;
        let direct = {
            let mut s = vec![0i64; n];
            s[0] = 1;
            for k in 1..n {
                for i in (k..n).rev() {
                    s[i] -= s[i - k];
                }
            }
            s
        };
        assert_eq!(eta_factor_series(1, 1, n).unwrap(), direct);
    }

    #[test]
    fn specific_coefficients() {
        let f = f_coefficients(100).unwrap();
        assert_eq!(f.a(7).unwrap(), -16);
        assert_eq!(f.a(73).unwrap(), 218);
        assert_eq!(f.a(25).unwrap(), -89);
        assert_eq!(f.a(5).unwrap().pow(2) - 125, -89);
        assert!(f.a(101).is_err());
    }

    #[test]
    fn hecke_examples() {
        let f = f_coefficients(13).unwrap();
        assert_eq!(f.coeffs[6], f.coeffs[2] * f.coeffs[3]);
        assert_eq!(f.coeffs[4], f.coeffs[2].pow(2));
        assert_eq!(f.coeffs[8], f.coeffs[2].pow(3));
        assert_eq!(f.coeffs[10], f.coeffs[2] * f.coeffs[5]);
        assert!(hecke_check(&f, 13).passed());
    }

    #[test]
    fn hecke_flags_corruption() {
        let mut f = f_coefficients(100).unwrap();
        f.coeffs[35] += 1;
        let r = hecke_check(&f, 100);
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| v.identity == "a_35 = a_5 a_7"));
    }

    #[test]
    fn euler_factors() {
        let f = f_coefficients(20).unwrap();
        assert_eq!(euler_factor(5, &f).unwrap().coeffs, vec![1, -6, 125]);
        let e2 = euler_factor(2, &f).unwrap();
        assert_eq!((e2.kind, e2.coeffs), (EulerKind::Bad, vec![1, 2]));
        assert_eq!(euler_factor(13, &f).unwrap().coeffs, vec![1, -38, 2197]);
        assert!(euler_factor(23, &f).is_err());
        assert!(euler_factor(9, &f).is_err());
    }

    #[test]
    fn deligne_examples() {
        let f = f_coefficients(20).unwrap();
        let r = deligne_bound_check(&f);
        assert!(r.passed());
        assert_eq!(r.primes_checked, 6);
        assert_eq!(f.coeffs[17], -126);
        assert!(126 * 126 <= 4 * 17i64.pow(3));
    }
}
