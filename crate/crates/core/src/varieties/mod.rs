//! The Barth-Nieto quintic, its open part `U`, the double cover `Ũ`, and the
//! point counts of the smooth models `Y` and `Ỹ`.
//!
//! Only `U = N ∖ {x0⋯x5 = 0}` is enumerated. Everything over the boundary
//! (the planes `F_kl`, lines `L_klm`, points `P_klmn` and the Segre nodes)
//! contributes a closed-form polynomial in `p`, collected in
//! [`StratumBreakdown`].

mod cayley;
mod points;

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::PrimeField;
use crate::error::Result;

pub use cayley::{
    cayley_cover_formula, count_c2, count_c2_from_c1, count_cayley_c1, count_cayley_open,
    count_cayley_open_cover, count_cayley_resolved_cover, CAYLEY_NODES,
};
pub use points::{
    for_each_u_point, involution_fixpoints, points_u, sample_points_u, segre_points,
    segre_points_mod,
};

/// A point of `P5` on the hyperplane `x0 + ... + x5 = 0`, stored as residues.
///
/// Coordinates are only meaningful up to a common nonzero scalar; use
/// [`NPoint::normalized`] or [`NPoint::projectively_eq`] to compare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NPoint {
    pub coords: [u32; 6],
}

impl NPoint {
    pub fn new(coords: [u32; 6]) -> Self {
        Self { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Representative whose first nonzero coordinate is 1.
    pub fn normalized(&self, fld: &PrimeField) -> Self {
        match self.coords.iter().find(|&&c| c != 0) {
            None => *self,
            Some(&lead) => {
                let s = fld.inv_nonzero(lead);
                Self::new(self.coords.map(|c| fld.mul(c, s)))
            }
        }
    }

    pub fn projectively_eq(&self, other: &Self, fld: &PrimeField) -> bool {
        !self.is_zero() && !other.is_zero() && self.normalized(fld) == other.normalized(fld)
    }

    pub fn coordinate_sum(&self, fld: &PrimeField) -> u32 {
        self.coords.iter().fold(0, |acc, &c| fld.add(acc, c))
    }

    /// `σ5(x) = Σ_i ∏_{j≠i} x_j`.
    pub fn sigma5(&self, fld: &PrimeField) -> u32 {
        (0..6).fold(0, |acc, i| {
            let term = (0..6)
                .filter(|&j| j != i)
                .fold(1, |t, j| fld.mul(t, self.coords[j]));
            fld.add(acc, term)
        })
    }

    pub fn on_n(&self, fld: &PrimeField) -> bool {
        !self.is_zero() && self.coordinate_sum(fld) == 0 && self.sigma5(fld) == 0
    }

    pub fn on_u(&self, fld: &PrimeField) -> bool {
        self.coords.iter().all(|&c| c != 0) && self.on_n(fld)
    }

    pub fn coordinate_product(&self, fld: &PrimeField) -> u32 {
        self.coords.iter().fold(1, |acc, &c| fld.mul(acc, c))
    }
}

/// Raw tallies from one enumeration of `U(F_p)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UCounts {
    pub total: u64,
    /// Points with `x0⋯x5` a nonzero square.
    pub square: u64,
    /// Points with `x0⋯x5` a nonsquare.
    pub nonsquare: u64,
}

impl std::ops::Add for UCounts {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            total: self.total + rhs.total,
            square: self.square + rhs.square,
            nonsquare: self.nonsquare + rhs.nonsquare,
        }
    }
}

impl std::iter::Sum for UCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), |a, b| a + b)
    }
}

/// Counts the points of `U` whose (normalized, `x5 = 1`) first coordinate
/// lies in `x0_range`.
///
/// With `x0, x1, x2` fixed, put `S = -(1 + x0 + x1 + x2)` and
/// `R = -(1 + 1/x0 + 1/x1 + 1/x2)`. The pair `(x3, x4)` must satisfy
/// `x3 + x4 = S` and `1/x3 + 1/x4 = R`:
///
/// - `S = R = 0`: any `x3 ≠ 0` with `x4 = -x3`, so `p - 1` ordered pairs;
/// - exactly one of `S`, `R` zero: no pairs;
/// - otherwise `x3 x4 = S/R`, and the ordered roots of `T² - ST + S/R`
///   number `1 + χ(S² - 4S/R)`.
///
/// Every residue in `x0_range` must lie in `1..p`.
pub fn count_u_slice(fld: &PrimeField, x0_range: Range<u32>) -> UCounts {
    let p = fld.p();
    let mut out = UCounts::default();
    let tally = |out: &mut UCounts, class: i8, mult: u64| {
        out.total += mult;
        match class {
            1 => out.square += mult,
            -1 => out.nonsquare += mult,
            _ => unreachable!("coordinates of U are nonzero"),
        }
    };
    for x0 in x0_range {
        let i0 = fld.inv_nonzero(x0);
        for x1 in 1..p {
            let i1 = fld.inv_nonzero(x1);
            let x01 = fld.mul(x0, x1);
            let s01 = fld.add(fld.add(1, x0), x1);
            let r01 = fld.add(fld.add(1, i0), i1);
            for x2 in 1..p {
                let i2 = fld.inv_nonzero(x2);
                let s = fld.neg(fld.add(s01, x2));
                let r = fld.neg(fld.add(r01, i2));
                let x012 = fld.mul(x01, x2);
                match (s == 0, r == 0) {
                    (true, true) => {
                        // x3 x4 = -x3², so the class is that of -x0 x1 x2
                        tally(&mut out, fld.chi(fld.neg(x012)), (p - 1) as u64);
                    }
                    (false, false) => {
                        let prod = fld.mul(s, fld.inv_nonzero(r));
                        let disc = fld.sub(fld.mul(s, s), fld.mul(4, prod));
                        let roots = (1 + fld.chi(disc)) as u64;
                        if roots > 0 {
                            tally(&mut out, fld.chi(fld.mul(x012, prod)), roots);
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    out
}

/// Full `U(F_p)` tallies, parallelised over `x0` on the current rayon pool.
pub fn count_u_counts(fld: &PrimeField) -> Result<UCounts> {
    fld.require_good()?;
    Ok((1..fld.p())
        .into_par_iter()
        .map(|x0| count_u_slice(fld, x0..x0 + 1))
        .sum())
}

/// Same totals as [`count_u_counts`], computed over `slices` contiguous
/// blocks of `x0`. Any positive slice count gives identical results.
pub fn count_u_partitioned(fld: &PrimeField, slices: usize) -> Result<UCounts> {
    fld.require_good()?;
    let n = fld.p() - 1;
    let slices = slices.clamp(1, n as usize) as u32;
    let bounds: Vec<Range<u32>> = (0..slices)
        .map(|k| (1 + k * n / slices)..(1 + (k + 1) * n / slices))
        .collect();
    Ok(bounds.into_par_iter().map(|r| count_u_slice(fld, r)).sum())
}

/// `#U(F_p)`.
pub fn count_u(fld: &PrimeField) -> Result<u64> {
    Ok(count_u_counts(fld)?.total)
}

/// `#{x ∈ U(F_p) : x0⋯x5 is a square}`; `#Ũ(F_p)` is twice this.
pub fn count_u_square(fld: &PrimeField) -> Result<u64> {
    Ok(count_u_counts(fld)?.square)
}

/// Independent `O(p⁴)` count of `U(F_p)`: loop over `x0..x3 ∈ F_p^*` with
/// `x5 = 1`, solve `x4` from the linear equation and test the reciprocal sum.
pub fn count_u_bruteforce(fld: &PrimeField) -> Result<UCounts> {
    fld.require_good()?;
    let p = fld.p();
    let mut out = UCounts::default();
    for x0 in 1..p {
        for x1 in 1..p {
            for x2 in 1..p {
                for x3 in 1..p {
                    let lin = [1, x0, x1, x2, x3].iter().fold(0, |a, &c| fld.add(a, c));
                    let x4 = fld.neg(lin);
                    if x4 == 0 {
                        continue;
                    }
                    let recip = [1, x0, x1, x2, x3, x4]
                        .iter()
                        .fold(0, |a, &c| fld.add(a, fld.inv_nonzero(c)));
                    if recip != 0 {
                        continue;
                    }
                    let prod = [x0, x1, x2, x3, x4].iter().fold(1, |a, &c| fld.mul(a, c));
                    out.total += 1;
                    if fld.chi(prod) == 1 {
                        out.square += 1;
                    } else {
                        out.nonsquare += 1;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Polynomial correction `50p² + 50p + 20` from `#U` to `#Y`.
pub fn y_correction(p: u64) -> u64 {
    50 * p * p + 50 * p + 20
}

/// Which closed formula produced a `#Ỹ` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YTildeSource {
    /// `p ≡ 1 mod 4`: `#Ũ + 50p² + 90p + 20`, with proof.
    Proven,
    /// `p ≡ 3 mod 4`: `#Ũ + 50p² + 10p + 20`, stated without proof.
    Unproven,
}

/// Correction from `#Ũ` to `#Ỹ` and the provenance of the formula used.
pub fn ytilde_correction(p: u64) -> (u64, YTildeSource) {
    if p % 4 == 1 {
        (50 * p * p + 90 * p + 20, YTildeSource::Proven)
    } else {
        (50 * p * p + 10 * p + 20, YTildeSource::Unproven)
    }
}

/// `#Y(F_p) = #U(F_p) + 50p² + 50p + 20`.
pub fn count_y(fld: &PrimeField) -> Result<u64> {
    Ok(count_u(fld)? + y_correction(fld.modulus()))
}

/// `#Ỹ(F_p)`, branching on `p mod 4`.
pub fn count_ytilde(fld: &PrimeField) -> Result<u64> {
    let n_ut = 2 * count_u_square(fld)?;
    Ok(n_ut + ytilde_correction(fld.modulus()).0)
}

/// Trace of Frobenius on `H³(Y)`: `t3 = p³ - 19 - #U(F_p)`.
pub fn trace_t3(fld: &PrimeField) -> Result<i64> {
    Ok(t3_from_u(fld.modulus(), count_u(fld)?))
}

pub fn t3_from_u(p: u64, n_u: u64) -> i64 {
    (p * p * p) as i64 - 19 - n_u as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    Fast,
    Cached,
}

/// All per-prime counts, derived consistently from one enumeration of `U`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub p: u64,
    pub n_u: u64,
    pub n_u_square: u64,
    pub n_utilde: u64,
    pub n_y: u64,
    pub n_ytilde: u64,
    pub t3: i64,
    pub method: CountMethod,
    pub ytilde_source: YTildeSource,
}

impl CountRecord {
    pub fn from_counts(p: u64, n_u: u64, n_u_square: u64, method: CountMethod) -> Self {
        let (corr, ytilde_source) = ytilde_correction(p);
        let n_utilde = 2 * n_u_square;
        Self {
            p,
            n_u,
            n_u_square,
            n_utilde,
            n_y: n_u + y_correction(p),
            n_ytilde: n_utilde + corr,
            t3: t3_from_u(p, n_u),
            method,
            ytilde_source,
        }
    }

    pub fn compute(fld: &PrimeField) -> Result<Self> {
        let c = count_u_counts(fld)?;
        Ok(Self::from_counts(
            fld.modulus(),
            c.total,
            c.square,
            CountMethod::Fast,
        ))
    }

    pub fn compute_bruteforce(fld: &PrimeField) -> Result<Self> {
        let c = count_u_bruteforce(fld)?;
        Ok(Self::from_counts(
            fld.modulus(),
            c.total,
            c.square,
            CountMethod::Brute,
        ))
    }
}

/// Contributions to `#Y(F_p)` from each stratum of `Y → N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumBreakdown {
    /// Ten lines replacing the Segre nodes: `10p` new points.
    pub segre: u64,
    /// `R⁰ = ∪F_kl ∖ ∪L_klm`: 15 copies of `P2` minus four lines.
    pub r0: u64,
    /// `L⁰ × P1`: 20 copies of `P1` minus three points, times `P1`.
    pub l0: u64,
    /// Resolved Cayley cubics over the 15 points `P_klmn`.
    pub cubics: u64,
    /// The open part `U`.
    pub u: u64,
}

impl StratumBreakdown {
    pub fn boundary(&self) -> u64 {
        self.segre + self.r0 + self.l0 + self.cubics
    }

    pub fn total(&self) -> u64 {
        self.boundary() + self.u
    }
}

/// Closed-form strata for a given `p` and open count.
pub fn strata_for(p: u64, n_u: u64) -> StratumBreakdown {
    StratumBreakdown {
        segre: 10 * p,
        r0: 15 * (p * p - 3 * p + 3),
        l0: 20 * (p - 2) * (p + 1),
        cubics: 15 * (p * p + 7 * p + 1),
        u: n_u,
    }
}

pub fn strata_breakdown(fld: &PrimeField) -> Result<StratumBreakdown> {
    Ok(strata_for(fld.modulus(), count_u(fld)?))
}
