//! Finite-prime modularity check and Weil-bound solvers.
//!
//! By Livné's criterion it is enough to compare `t3(p)` with `a_p(f)` on a set
//! `T` of primes whose Frobenius elements cover `Gal(Q_S/Q)`, where `Q_S` is
//! the compositum of quadratic fields unramified outside `S`, together with a
//! determinant check (`t3 ≠ 0`) and a parity check (`t3` even).
//!
//! All inequalities involving `p^{3/2}` are decided on squares in `i128`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, PrimeField};
use crate::error::{Error, Result};
use crate::qseries::{f_coefficients, QExpansion};
use crate::varieties::{CountRecord, YTildeSource};
use crate::TOOL_VERSION;

/// Supplies per-prime counts to the pipeline, either by enumeration or from a
/// cache.
pub trait CountSource {
    fn record(&mut self, p: u64) -> Result<CountRecord>;
}

/// Computes every record by direct enumeration.
#[derive(Debug, Default, Clone, Copy)]
pub struct Enumerator;

impl CountSource for Enumerator {
    fn record(&mut self, p: u64) -> Result<CountRecord> {
        CountRecord::compute(&PrimeField::new(p)?)
    }
}

impl<F: FnMut(u64) -> Result<CountRecord>> CountSource for F {
    fn record(&mut self, p: u64) -> Result<CountRecord> {
        self(p)
    }
}

/// Primes whose Frobenius classes cover `Gal(Q_S/Q) ≅ (Z/m)^*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LivneSet {
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub m: u64,
    #[serde(rename = "T")]
    pub t: Vec<u64>,
    /// Residue class mod `m` → smallest prime outside `S` representing it.
    pub classes: BTreeMap<u64, u64>,
    pub extended_s: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Builds `T` for a ramification set `S` containing 2.
///
/// The modulus is `m = 8 · ∏_{odd q ∈ S} q`, and each unit class mod `m`
/// gets the smallest prime outside `S` lying in it.
pub fn livne_prime_set(s: &[u64]) -> Result<LivneSet> {
    let mut s: Vec<u64> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::NotPrime(bad));
    }
    if !s.contains(&2) {
        return Err(Error::Precondition(
            "the ramification set must contain 2".into(),
        ));
    }
    let m: u64 = 8 * s.iter().filter(|&&q| q != 2).product::<u64>();
    let units: Vec<u64> = (1..m).filter(|&r| gcd(r, m) == 1).collect();

    let mut classes = BTreeMap::new();
    let mut candidate = 2;
    while classes.len() < units.len() {
        if is_prime(candidate) && !s.contains(&candidate) {
            classes.entry(candidate % m).or_insert(candidate);
        }
        candidate += 1;
    }
    let mut t: Vec<u64> = classes.values().copied().collect();
    t.sort_unstable();
    Ok(LivneSet {
        extended_s: s != [2, 3],
        s,
        m,
        t,
        classes,
    })
}

impl LivneSet {
    /// Unit residues mod `m` not represented by any prime in `primes`.
    pub fn uncovered(&self, primes: &[u64]) -> Vec<u64> {
        self.classes
            .keys()
            .copied()
            .filter(|&r| {
                !primes
                    .iter()
                    .any(|&p| p % self.m == r && !self.s.contains(&p))
            })
            .collect()
    }
}

/// One row of the trace comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRow {
    pub p: u64,
    #[serde(rename = "n_U")]
    pub n_u: u64,
    #[serde(rename = "n_Y")]
    pub n_y: u64,
    pub t3: i64,
    pub a_p: i64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Compares `t3(p)` with `a_p(f)` for each prime.
pub fn compare_traces(
    primes: &[u64],
    source: &mut dyn CountSource,
    f: &QExpansion,
) -> Result<Vec<TraceRow>> {
    primes
        .iter()
        .map(|&p| {
            let rec = source.record(p)?;
            let a_p = f.a(p as usize)?;
            Ok(TraceRow {
                p,
                n_u: rec.n_u,
                n_y: rec.n_y,
                t3: rec.t3,
                a_p,
                matches: rec.t3 == a_p,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantFlag {
    pub p: u64,
    pub t3: i64,
    /// `t3 ≠ 0`, which rules out eigenvalues `±p^{3/2}` and forces `det = p³`.
    pub det_is_p_cubed: bool,
}

pub fn determinant_check(rows: &[TraceRow]) -> Vec<DeterminantFlag> {
    rows.iter()
        .map(|r| DeterminantFlag {
            p: r.p,
            t3: r.t3,
            det_is_p_cubed: r.t3 != 0,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFlag {
    pub p: u64,
    pub t3_even: bool,
    pub n_u_even: bool,
    pub p_cubed_minus_19_even: bool,
}

impl ParityFlag {
    pub fn passed(&self) -> bool {
        self.t3_even && self.n_u_even && self.p_cubed_minus_19_even
    }
}

/// `t3` is even because `#U` is (the Cremona involution has exactly the ten
/// Segre points as fixed points) and `p³ - 19` is.
pub fn parity_check(primes: &[u64], source: &mut dyn CountSource) -> Result<Vec<ParityFlag>> {
    primes
        .iter()
        .map(|&p| {
            let rec = source.record(p)?;
            Ok(ParityFlag {
                p,
                t3_even: rec.t3 % 2 == 0,
                n_u_even: rec.n_u % 2 == 0,
                p_cubed_minus_19_even: (p * p * p - 19) % 2 == 0,
            })
        })
        .collect()
}

/// Which smooth model a Hodge computation concerns; the value is `b₂` of the
/// rigid model, i.e. the coefficient of `p + p²` in the trace formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HodgeBase {
    Y,
    YTilde,
}

impl HodgeBase {
    pub fn value(self) -> u64 {
        match self {
            HodgeBase::Y => 50,
            HodgeBase::YTilde => 60,
        }
    }

    pub fn from_value(v: u64) -> Result<Self> {
        match v {
            50 => Ok(HodgeBase::Y),
            60 => Ok(HodgeBase::YTilde),
            _ => Err(Error::Precondition(format!(
                "base must be 50 or 60, got {v}"
            ))),
        }
    }
}

/// Hodge numbers of a rigid Calabi-Yau threefold, given by `h^{1,1}` and `h^{2,1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    /// `"Y"` or `"Z"` (the Calabi-Yau model birational to `Ỹ`).
    pub variety: String,
    pub h11: u64,
    pub h21: u64,
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeSolution {
    pub p: u64,
    pub base: u64,
    pub count: u64,
    pub admissible: Vec<u64>,
    /// Present when the admissible set is `{0}`.
    pub diamond: Option<HodgeDiamond>,
}

/// Exact test of `|1 + (a + base)(p + p²) + p³ - n| ≤ (2a + 2) p^{3/2}`.
pub fn weil_admissible(p: u64, n: u64, base: u64, a: u64) -> bool {
    let (p, n, base, a) = (p as i128, n as i128, base as i128, a as i128);
    let lhs = 1 + (a + base) * (p + p * p) + p * p * p - n;
    let rhs = 2 * a + 2;
    lhs * lhs <= rhs * rhs * p * p * p
}

/// The same test in floating point, for cross-checking only.
pub fn weil_admissible_f64(p: u64, n: u64, base: u64, a: u64) -> bool {
    let (p, n, base, a) = (p as f64, n as f64, base as f64, a as f64);
    (1.0 + (a + base) * (p + p * p) + p.powi(3) - n).abs() <= (2.0 * a + 2.0) * p.powf(1.5)
}

const HODGE_SCAN_CAP: u64 = 1_000_000;

/// Admissible `a` by linear scan, stopping once the left side has overtaken
/// the right (their difference grows with `a` since `p + p² > 2p^{3/2}`).
pub fn hodge_scan(p: u64, n: u64, base: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for a in 0..=HODGE_SCAN_CAP {
        if weil_admissible(p, n, base, a) {
            out.push(a);
        } else {
            let lhs =
                1 + (a as i128 + base as i128) * (p as i128 + (p * p) as i128) + (p as i128).pow(3)
                    - n as i128;
            if lhs > 0 {
                break;
            }
        }
    }
    out
}

/// Interval of admissible `a` from the two linear inequalities, with the
/// endpoints settled by the exact predicate.
fn hodge_closed_form(p: u64, n: u64, base: u64) -> Vec<u64> {
    let pf = p as f64;
    let s = pf.powf(1.5);
    let k = pf + pf * pf;
    let c = 1.0 + base as f64 * k + pf.powi(3) - n as f64;
    let lo = ((-2.0 * s - c) / (k + 2.0 * s)).floor() - 2.0;
    let hi = ((2.0 * s - c) / (k - 2.0 * s)).ceil() + 2.0;
    if hi < 0.0 {
        return Vec::new();
    }
    let lo = lo.max(0.0) as u64;
    let hi = hi.min(HODGE_SCAN_CAP as f64) as u64;
    (lo..=hi)
        .filter(|&a| weil_admissible(p, n, base, a))
        .collect()
}

/// Solves the Weil inequality for `a = h^{2,1}`.
///
/// `base = 50` treats `n` as `#Y(F_p)` (valid for every `p ≥ 5`);
/// `base = 60` treats `n` as `#Ỹ(F_p)` and needs `p ≡ 1 mod 4`, the case
/// where Frobenius acts on `H²(Ỹ)` as multiplication by `p`.
pub fn hodge_solver(p: u64, n: u64, base: HodgeBase) -> Result<HodgeSolution> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::BadPrime(p));
    }
    if base == HodgeBase::YTilde && p % 4 != 1 {
        return Err(Error::Precondition(format!(
            "the double-cover inequality needs p ≡ 1 mod 4, got {p}"
        )));
    }
    let b = base.value();
    let admissible = hodge_closed_form(p, n, b);
    let scanned = hodge_scan(p, n, b);
    if admissible != scanned {
        return Err(Error::Inconsistent(format!(
            "closed-form {admissible:?} and scanned {scanned:?} admissible sets differ"
        )));
    }
    if admissible.is_empty() {
        return Err(Error::Inconsistent(format!(
            "no h^(2,1) satisfies the Weil bound for n = {n} at p = {p}"
        )));
    }
    let diamond = (admissible == [0]).then(|| match base {
        HodgeBase::Y => HodgeDiamond {
            variety: "Y".into(),
            h11: 50,
            h21: 0,
            euler: 100,
        },
        // h^{1,1}(Ỹ) = b + 60 while h^{1,1}(Z) = b + 40
        HodgeBase::YTilde => HodgeDiamond {
            variety: "Z".into(),
            h11: 40,
            h21: 0,
            euler: 80,
        },
    });
    Ok(HodgeSolution {
        p,
        base: b,
        count: n,
        admissible,
        diamond,
    })
}

impl HodgeDiamond {
    /// `e = 2(h^{1,1} - h^{2,1})` for a Calabi-Yau threefold.
    pub fn euler_from_hodge(&self) -> i64 {
        2 * (self.h11 as i64 - self.h21 as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KValue {
    pub p: u64,
    pub k: i64,
}

/// For `p ≡ 3 mod 4`, the eigenvalues of Frobenius on `H²(Ỹ)` are `±p`, so
/// `(t2, t4) = k(p, p²)`. Returns the unique integer `k` with
/// `|1 + k(p + p²) + p³ - #Ỹ| < 2p^{3/2}`.
///
/// Consecutive `k` move the left side by `p + p²`, which exceeds the window
/// width `4p^{3/2}` only for `p ≥ 14`. For `p = 7, 11` two neighbours could in
/// principle fit, so all candidates are tested and ambiguity is an error.
pub fn h2_eigenvalue_k_solver(p: u64, n_ytilde: u64) -> Result<i64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 || p < 7 {
        return Err(Error::Precondition(format!(
            "the k-solver needs a prime p ≡ 3 mod 4 with p >= 7, got {p}"
        )));
    }
    let (pi, n) = (p as i128, n_ytilde as i128);
    let step = pi + pi * pi;
    let target = n - 1 - pi * pi * pi;
    // nearest integer to target / step
    let k = (2 * target + step).div_euclid(2 * step);
    let fits = |k: i128| {
        let l = 1 + k * step + pi * pi * pi - n;
        l * l < 4 * pi * pi * pi
    };
    let hits: Vec<i128> = [k - 1, k, k + 1].into_iter().filter(|&c| fits(c)).collect();
    match hits.as_slice() {
        [k] => Ok(*k as i64),
        [] => Err(Error::Inconsistent(format!(
            "no integer k fits #Ỹ = {n_ytilde} at p = {p}"
        ))),
        _ => Err(Error::Inconsistent(format!("several k fit at p = {p}"))),
    }
}

/// `p + p² > 4p^{3/2}`, i.e. `(1 + p)² > 16p`: at most one `k` can fit.
pub fn k_uniqueness_holds(p: u64) -> bool {
    (1 + p) * (1 + p) > 16 * p
}

/// Trace check through the double cover: for `p ≡ 1 mod 4`,
/// `a_p = 1 + 60p + 60p² + p³ - #Ỹ(F_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverTrace {
    pub p: u64,
    pub n_ytilde: u64,
    pub t3: i64,
    pub a_p: i64,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn ytilde_trace(rec: &CountRecord) -> Option<i64> {
    (rec.ytilde_source == YTildeSource::Proven).then(|| {
        let p = rec.p as i64;
        1 + 60 * p + 60 * p * p + p * p * p - rec.n_ytilde as i64
    })
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Failed(String),
    Incomplete(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => f.write_str("verified"),
            Verdict::Failed(r) => write!(f, "failed: {r}"),
            Verdict::Incomplete(r) => write!(f, "incomplete: {r}"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "verified" {
            Ok(Verdict::Verified)
        } else if let Some(r) = s.strip_prefix("failed: ") {
            Ok(Verdict::Failed(r.to_string()))
        } else if let Some(r) = s.strip_prefix("incomplete: ") {
            Ok(Verdict::Incomplete(r.to_string()))
        } else {
            Err(Error::Precondition(format!("unknown verdict {s:?}")))
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationConfig {
    pub s: Vec<u64>,
    /// Primes to compare; defaults to the Livné set.
    pub primes: Option<Vec<u64>>,
    pub hodge_prime: u64,
    /// Inclusive range scanned by the k-solver (primes ≡ 3 mod 4 only).
    pub k_range: Option<(u64, u64)>,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            s: vec![2, 3],
            primes: None,
            hodge_prime: 13,
            k_range: Some((7, 59)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadFactor {
    pub p: u64,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub primes: Vec<u64>,
    pub rows: Vec<TraceRow>,
    pub determinant: Vec<DeterminantFlag>,
    pub parity: Vec<ParityFlag>,
    pub cover_traces: Vec<CoverTrace>,
    pub livne: LivneSet,
    pub hodge: Vec<HodgeSolution>,
    pub k_values: Vec<KValue>,
    /// Euler factors of `H³(Y)` at the primes of `S` are not computed.
    pub bad_euler_factors: Vec<BadFactor>,
    pub scope: String,
    pub verdict: Verdict,
}

/// Runs the whole pipeline. Sub-step failures end up in the verdict; only
/// invalid configuration (e.g. `S` without 2) is returned as an error.
pub fn full_verification(
    config: &VerificationConfig,
    source: &mut dyn CountSource,
) -> Result<VerificationReport> {
    let livne = livne_prime_set(&config.s)?;
    let primes = config.primes.clone().unwrap_or_else(|| livne.t.clone());
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(bad));
    }
    if let Some(&bad) = primes.iter().find(|&&p| p < 5) {
        return Err(Error::BadPrime(bad));
    }

    let mut failures: Vec<String> = Vec::new();
    let max_p = primes.iter().copied().max().unwrap_or(5) as usize;
    let f = f_coefficients(max_p)?;

    let rows = match compare_traces(&primes, source, &f) {
        Ok(rows) => rows,
        Err(e) => {
            failures.push(format!("counting error: {e}"));
            Vec::new()
        }
    };
    if let Some(r) = rows.iter().find(|r| !r.matches) {
        failures.push(format!("trace mismatch at {}", r.p));
    }

    let determinant = determinant_check(&rows);
    if let Some(d) = determinant.iter().find(|d| !d.det_is_p_cubed) {
        failures.push(format!("determinant undecided at {} (t3 = 0)", d.p));
    }

    let parity = parity_check(&primes, source).unwrap_or_else(|e| {
        failures.push(format!("counting error: {e}"));
        Vec::new()
    });
    if let Some(fl) = parity.iter().find(|fl| !fl.passed()) {
        failures.push(format!("parity violated at {}", fl.p));
    }

    let mut cover_traces = Vec::new();
    for &p in primes.iter().filter(|&&p| p % 4 == 1) {
        match source.record(p) {
            Ok(rec) => {
                if let Some(t3) = ytilde_trace(&rec) {
                    let a_p = f.coeffs[p as usize];
                    if t3 != a_p {
                        failures.push(format!("double-cover trace mismatch at {p}"));
                    }
                    cover_traces.push(CoverTrace {
                        p,
                        n_ytilde: rec.n_ytilde,
                        t3,
                        a_p,
                        matches: t3 == a_p,
                    });
                }
            }
            Err(e) => failures.push(format!("counting error: {e}")),
        }
    }

    let mut hodge = Vec::new();
    let hp = config.hodge_prime;
    match source.record(hp) {
        Ok(rec) => {
            for (base, n) in [(HodgeBase::Y, rec.n_y), (HodgeBase::YTilde, rec.n_ytilde)] {
                match hodge_solver(hp, n, base) {
                    Ok(sol) => {
                        if sol.admissible != [0] {
                            failures.push(format!(
                                "h^(2,1) not determined at p = {hp} (admissible {:?})",
                                sol.admissible
                            ));
                        }
                        hodge.push(sol);
                    }
                    Err(e) => failures.push(format!("hodge solver at {hp}: {e}")),
                }
            }
        }
        Err(e) => failures.push(format!("counting error: {e}")),
    }

    let mut k_values = Vec::new();
    if let Some((lo, hi)) = config.k_range {
        for p in (lo.max(7)..=hi).filter(|&p| is_prime(p) && p % 4 == 3) {
            match source
                .record(p)
                .and_then(|rec| h2_eigenvalue_k_solver(p, rec.n_ytilde))
            {
                Ok(k) => {
                    if k != 40 {
                        failures.push(format!("k = {k} at {p}"));
                    }
                    k_values.push(KValue { p, k });
                }
                Err(e) => failures.push(format!("k-solver at {p}: {e}")),
            }
        }
    }

    let uncovered = livne.uncovered(&primes);
    let verdict = if let Some(first) = failures.into_iter().next() {
        Verdict::Failed(first)
    } else if !uncovered.is_empty() {
        let list = uncovered
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        Verdict::Incomplete(format!("residue {list} mod {} uncovered", livne.m))
    } else {
        Verdict::Verified
    };

    Ok(VerificationReport {
        tool_version: TOOL_VERSION.to_string(),
        primes,
        rows,
        determinant,
        parity,
        cover_traces,
        bad_euler_factors: livne
            .s
            .iter()
            .map(|&p| BadFactor {
                p,
                status: "undetermined".into(),
            })
            .collect(),
        scope: if livne.extended_s {
            "S extends {2, 3}".into()
        } else {
            "S = {2, 3}".into()
        },
        livne,
        hodge,
        k_values,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn livne_for_2_3() {
        let l = livne_prime_set(&[2, 3]).unwrap();
        assert_eq!(l.m, 24);
        assert_eq!(l.t, vec![5, 7, 11, 13, 17, 19, 23, 73]);
        assert_eq!(l.classes[&1], 73);
        assert!(!l.extended_s);
        assert!(l.uncovered(&l.t).is_empty());
        assert_eq!(l.uncovered(&[5, 7, 11, 13, 17, 19, 23]), vec![1]);
    }

    #[test]
    fn livne_generalized() {
        let l = livne_prime_set(&[2, 3, 5]).unwrap();
        assert_eq!(l.m, 120);
        assert_eq!(l.classes.len(), 32);
        assert!(l.extended_s);
        // brute force: for each unit residue the first prime > 5 in that class
        for (&r, &q) in &l.classes {
            let first = (7..).find(|&n| is_prime(n) && n % 120 == r).unwrap();
            assert_eq!(q, first);
        }
        assert!(livne_prime_set(&[3]).is_err());
        assert!(livne_prime_set(&[2, 4]).is_err());
    }

    #[test]
    fn hodge_at_13() {
        let y = hodge_solver(13, 11260, HodgeBase::Y).unwrap();
        assert_eq!(y.admissible, vec![0]);
        let d = y.diamond.unwrap();
        assert_eq!((d.h11, d.h21, d.euler), (50, 0, 100));
        assert_eq!(d.euler_from_hodge(), 100);
        let z = hodge_solver(13, 13080, HodgeBase::YTilde).unwrap();
        assert_eq!(z.admissible, vec![0]);
        let d = z.diamond.unwrap();
        assert_eq!((d.h11, d.euler), (40, 80));
        assert_eq!(d.euler_from_hodge(), 80);
    }

    #[test]
    fn hodge_small_prime_is_not_decisive() {
        // L(a) = 30a + 6 against (2a + 2)·5^{3/2}: a = 0, 1, 2 fit, a = 3 does not
        let s = hodge_solver(5, 1620, HodgeBase::Y).unwrap();
        assert_eq!(s.admissible, vec![0, 1, 2]);
        assert!(s.diamond.is_none());
    }

    #[test]
    fn hodge_preconditions() {
        assert!(matches!(
            hodge_solver(7, 3160, HodgeBase::YTilde),
            Err(Error::Precondition(_))
        ));
        assert!(hodge_solver(3, 10, HodgeBase::Y).is_err());
        // wildly wrong count: no admissible a
        assert!(matches!(
            hodge_solver(13, 5, HodgeBase::Y),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn exact_and_float_agree() {
        for p in [5u64, 7, 11, 13, 17, 29, 73] {
            for n in (0..3 * p * p * p).step_by(97) {
                for a in 0..6 {
                    assert_eq!(
                        weil_admissible(p, n, 50, a),
                        weil_admissible_f64(p, n, 50, a),
                        "p={p} n={n} a={a}"
                    );
                }
            }
        }
    }

    #[test]
    fn k_solver_uniqueness_and_errors() {
        // (1 + p)² > 16p exactly when p ≥ 14
        for p in 14..2000 {
            assert!(k_uniqueness_holds(p));
        }
        for p in [5, 7, 11, 13] {
            assert!(!k_uniqueness_holds(p));
        }
        assert!(h2_eigenvalue_k_solver(13, 1000).is_err());
        assert!(h2_eigenvalue_k_solver(3, 10).is_err());
        // 7: 1 + 40·56 + 343 - a_7 with a_7 = -16
        assert_eq!(h2_eigenvalue_k_solver(7, 2600).unwrap(), 40);
        // p = 7 window 2·7^{3/2} ≈ 37 exceeds half the step 56: L = ±28 both fit
        let ambiguous = 1 + 40 * 56 + 343 + 28;
        assert!(matches!(
            h2_eigenvalue_k_solver(7, ambiguous),
            Err(Error::Inconsistent(m)) if m.contains("several")
        ));
        // p = 19: step 380, window ≈ 165.6; L = ±190 leaves no k
        let gap = 1 + 40 * 380 + 6859 + 190;
        assert!(matches!(
            h2_eigenvalue_k_solver(19, gap),
            Err(Error::Inconsistent(m)) if m.contains("no integer")
        ));
    }

    #[test]
    fn verdict_strings_round_trip() {
        for v in [
            Verdict::Verified,
            Verdict::Failed("trace mismatch at 13".into()),
            Verdict::Incomplete("residue 1 mod 24 uncovered".into()),
        ] {
            assert_eq!(v.to_string().parse::<Verdict>().unwrap(), v);
        }
    }

    #[test]
    fn determinant_flags() {
        let row = |p, t3| TraceRow {
            p,
            n_u: 0,
            n_y: 0,
            t3,
            a_p: t3,
            matches: true,
        };
        let rows = vec![row(5, 6), row(7, 0), row(11, 12)];
        let flags = determinant_check(&rows);
        assert_eq!(
            flags.iter().map(|f| f.det_is_p_cubed).collect::<Vec<_>>(),
            vec![true, false, true]
        );
        let mut rev = rows.clone();
        rev.reverse();
        let mut flags_rev = determinant_check(&rev);
        flags_rev.reverse();
        assert_eq!(flags, flags_rev);
    }
}
