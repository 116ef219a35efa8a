//! Birational maps from the Barth-Nieto quintic to its relatives.
//!
//! - `N ⇢ W`, the fibred square of the universal elliptic curve over
//!   `X1(6)`, modelled by Beauville's pencil `(X+Y)(Y+Z)(Z+X) + tXYZ = 0`:
//!   split `x` into `(x0:x1:x2)` and `(x3:x4:x5)`; both lie on the fibre with
//!   `t = 1 - (x0+x1+x2)(1/x0+1/x1+1/x2)`.
//! - `N ⇢ V`, Verrill's `(1+x+xy+xyz)(1+z+yz+xyz) = ((t+1)²/t) xyz`: cut `N`
//!   by `x0 = t x1` and apply `(x2:x3:x4:x5) = (1 : x : xy : xyz)`.
//!
//! The maps are generic over [`FieldOps`] so they run over `F_p` and over
//! `Q`. Points where a map is undefined come back as
//! [`MapError::Indeterminate`], which is distinct from a wrong answer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{FieldOps, PrimeField, Rationals};
use crate::error::{Error, Result};
use crate::varieties::{points_u, sample_points_u, NPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("indeterminate: {0}")]
    Indeterminate(&'static str),
    #[error("not on the variety: {0}")]
    Invalid(&'static str),
}

pub type MapResult<T> = std::result::Result<T, MapError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeauvillePoint<E> {
    pub p: [E; 3],
    pub t: E,
    pub q: [E; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerrillPoint<E> {
    pub x: E,
    pub y: E,
    pub z: E,
    pub t: E,
}

/// `e_j(vals)`, the `j`-th elementary symmetric function.
pub fn elementary_symmetric<K: FieldOps>(k: &K, vals: &[K::Elem], j: usize) -> Result<K::Elem> {
    if j > vals.len() {
        return Err(Error::IndexOutOfRange {
            index: j,
            len: vals.len(),
        });
    }
    // e[i] after processing a prefix of vals
    let mut e = vec![k.zero(); j + 1];
    e[0] = k.one();
    for v in vals {
        for i in (1..=j).rev() {
            e[i] = k.add(&e[i], &k.mul(&e[i - 1], v));
        }
    }
    Ok(e.swap_remove(j))
}

fn e_j<K: FieldOps>(k: &K, vals: &[K::Elem], j: usize) -> K::Elem {
    elementary_symmetric(k, vals, j).expect("index within range")
}

/// `σ5(x) = e5(x0, …, x5)`.
pub fn sigma5<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> K::Elem {
    e_j(k, x, 5)
}

/// Both defining equations of `N` hold (and `x ≠ 0`).
pub fn on_quintic<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> bool {
    !x.iter().all(|c| k.is_zero(c)) && k.is_zero(&k.sum(x)) && k.is_zero(&sigma5(k, x))
}

/// `a_i b_j = a_j b_i` for all `i, j`, and neither vector is zero.
pub fn projectively_eq<K: FieldOps>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> bool {
    if a.len() != b.len() || a.iter().all(|c| k.is_zero(c)) || b.iter().all(|c| k.is_zero(c)) {
        return false;
    }
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| k.mul(&a[i], &b[j]) == k.mul(&a[j], &b[i])))
}

/// `(X+Y)(Y+Z)(Z+X) + tXYZ` at `P = (X:Y:Z)`.
pub fn beauville_residual<K: FieldOps>(k: &K, pt: &[K::Elem; 3], t: &K::Elem) -> K::Elem {
    let [a, b, c] = pt;
    let cubic = k.mul(&k.mul(&k.add(a, b), &k.add(b, c)), &k.add(c, a));
    k.add(&cubic, &k.mul(t, &k.mul(&k.mul(a, b), c)))
}

/// `t = 1 - (a+b+c)(1/a+1/b+1/c)`; `None` if a coordinate vanishes.
pub fn pencil_parameter<K: FieldOps>(k: &K, pt: &[K::Elem; 3]) -> Option<K::Elem> {
    let mut recip = k.zero();
    for c in pt {
        recip = k.add(&recip, &k.inv(c)?);
    }
    let t_prime = k.mul(&k.sum(pt), &recip);
    Some(k.sub(&k.one(), &t_prime))
}

/// `(x0:⋯:x5) ↦ ((x0:x1:x2), t, (x3:x4:x5))`.
pub fn to_beauville<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> MapResult<BeauvillePoint<K::Elem>> {
    let p = [x[0].clone(), x[1].clone(), x[2].clone()];
    let q = [x[3].clone(), x[4].clone(), x[5].clone()];
    let (Some(tp), Some(tq)) = (pencil_parameter(k, &p), pencil_parameter(k, &q)) else {
        return Err(MapError::Indeterminate("a coordinate vanishes"));
    };
    if tp != tq {
        return Err(MapError::Invalid(
            "pencil parameters of the two halves differ",
        ));
    }
    if !k.is_zero(&beauville_residual(k, &p, &tp)) || !k.is_zero(&beauville_residual(k, &q, &tp)) {
        return Err(MapError::Invalid("image off the Beauville fibre"));
    }
    Ok(BeauvillePoint { p, t: tp, q })
}

/// Inverse of [`to_beauville`]: rescale `Q` by `-(ΣP)/(ΣQ)` so all six
/// coordinates sum to zero.
pub fn from_beauville<K: FieldOps>(k: &K, b: &BeauvillePoint<K::Elem>) -> MapResult<[K::Elem; 6]> {
    if b.p.iter().all(|c| k.is_zero(c)) || b.q.iter().all(|c| k.is_zero(c)) {
        return Err(MapError::Invalid("zero coordinate vector"));
    }
    if !k.is_zero(&beauville_residual(k, &b.p, &b.t))
        || !k.is_zero(&beauville_residual(k, &b.q, &b.t))
    {
        return Err(MapError::Invalid("points not on the same Beauville fibre"));
    }
    let sp = k.sum(&b.p);
    let sq = k.sum(&b.q);
    if k.is_zero(&sp) || k.is_zero(&sq) {
        return Err(MapError::Indeterminate("a coordinate sum vanishes"));
    }
    let lambda = k.neg(&k.div(&sp, &sq).expect("nonzero sum"));
    let x = [
        b.p[0].clone(),
        b.p[1].clone(),
        b.p[2].clone(),
        k.mul(&lambda, &b.q[0]),
        k.mul(&lambda, &b.q[1]),
        k.mul(&lambda, &b.q[2]),
    ];
    if !on_quintic(k, &x) {
        return Err(MapError::Invalid("preimage fails σ5 = 0"));
    }
    Ok(x)
}

/// `t·(1+x+xy+xyz)(1+z+yz+xyz) - (t+1)² xyz`: Verrill's equation cleared of
/// the denominator `t`.
pub fn verrill_residual<K: FieldOps>(k: &K, v: &VerrillPoint<K::Elem>) -> K::Elem {
    let one = k.one();
    let xy = k.mul(&v.x, &v.y);
    let yz = k.mul(&v.y, &v.z);
    let xyz = k.mul(&xy, &v.z);
    let left = k.add(&k.add(&one, &v.x), &k.add(&xy, &xyz));
    let right = k.add(&k.add(&one, &v.z), &k.add(&yz, &xyz));
    let t1 = k.add(&v.t, &one);
    k.sub(
        &k.mul(&v.t, &k.mul(&left, &right)),
        &k.mul(&k.mul(&t1, &t1), &xyz),
    )
}

/// `e1 e3 - ((t+1)²/t) e4` at `(x2, x3, x4, x5)` with `t = x0/x1`: the
/// residual quartic `X_t` of `H_t ∩ N = F01 ∪ X_t`.
pub fn residual_quartic<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> Option<K::Elem> {
    let t = k.div(&x[0], &x[1])?;
    let t1 = k.add(&t, &k.one());
    let coef = k.div(&k.mul(&t1, &t1), &t)?;
    let rest = &x[2..];
    let e1 = e_j(k, rest, 1);
    let e3 = e_j(k, rest, 3);
    let e4 = e_j(k, rest, 4);
    Some(k.sub(&k.mul(&e1, &e3), &k.mul(&coef, &e4)))
}

/// `x ↦ (x3/x2, x4/x3, x5/x4)` with `t = x0/x1`.
pub fn to_verrill<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> MapResult<VerrillPoint<K::Elem>> {
    let Some(t) = k.div(&x[0], &x[1]) else {
        return Err(MapError::Indeterminate("x1 = 0"));
    };
    if k.is_zero(&t) || k.is_zero(&k.add(&t, &k.one())) {
        return Err(MapError::Indeterminate("t ∈ {0, -1}"));
    }
    let (Some(vx), Some(vy), Some(vz)) = (
        k.div(&x[3], &x[2]),
        k.div(&x[4], &x[3]),
        k.div(&x[5], &x[4]),
    ) else {
        return Err(MapError::Indeterminate(
            "outside the affine chart x2 x3 x4 ≠ 0",
        ));
    };
    let v = VerrillPoint {
        x: vx,
        y: vy,
        z: vz,
        t,
    };
    if !k.is_zero(&verrill_residual(k, &v)) {
        return Err(MapError::Invalid("image off Verrill's threefold"));
    }
    Ok(v)
}

/// Inverse of [`to_verrill`]: `(x2..x5) = (1, x, xy, xyz)`,
/// `x1 = -Σ4/(t+1)`, `x0 = t x1`.
pub fn from_verrill<K: FieldOps>(k: &K, v: &VerrillPoint<K::Elem>) -> MapResult<[K::Elem; 6]> {
    let t1 = k.add(&v.t, &k.one());
    if k.is_zero(&v.t) || k.is_zero(&t1) {
        return Err(MapError::Indeterminate("t ∈ {0, -1}"));
    }
    if k.is_zero(&v.x) || k.is_zero(&v.y) || k.is_zero(&v.z) {
        return Err(MapError::Indeterminate("x y z = 0"));
    }
    if !k.is_zero(&verrill_residual(k, v)) {
        return Err(MapError::Invalid("point off Verrill's threefold"));
    }
    let x2 = k.one();
    let x3 = v.x.clone();
    let x4 = k.mul(&v.x, &v.y);
    let x5 = k.mul(&x4, &v.z);
    let s4 = k.add(&k.add(&x2, &x3), &k.add(&x4, &x5));
    if k.is_zero(&s4) {
        return Err(MapError::Indeterminate("x2 + x3 + x4 + x5 = 0"));
    }
    let x1 = k.neg(&k.div(&s4, &t1).expect("t + 1 ≠ 0"));
    let x0 = k.mul(&v.t, &x1);
    let x = [x0, x1, x2, x3, x4, x5];
    if !on_quintic(k, &x) {
        return Err(MapError::Invalid("preimage fails σ5 = 0"));
    }
    Ok(x)
}

/// Tally for one direction pair of a round trip.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairTally {
    pub success: u64,
    pub indeterminate: u64,
    pub failure: u64,
    pub indeterminate_reasons: BTreeMap<String, u64>,
    pub indeterminate_points: Vec<NPoint>,
    pub failure_points: Vec<NPoint>,
}

impl PairTally {
    fn record(&mut self, x: NPoint, outcome: MapResult<()>) {
        match outcome {
            Ok(()) => self.success += 1,
            Err(MapError::Indeterminate(why)) => {
                self.indeterminate += 1;
                *self
                    .indeterminate_reasons
                    .entry(why.to_string())
                    .or_default() += 1;
                self.indeterminate_points.push(x);
            }
            Err(MapError::Invalid(_)) => {
                self.failure += 1;
                self.failure_points.push(x);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub p: u64,
    pub samples: u64,
    pub seed: Option<u64>,
    pub exhaustive: bool,
    pub beauville: PairTally,
    pub verrill: PairTally,
}

impl RoundtripReport {
    pub fn failures(&self) -> u64 {
        self.beauville.failure + self.verrill.failure
    }
}

fn beauville_roundtrip(fld: &PrimeField, x: &NPoint) -> MapResult<()> {
    let b = to_beauville(fld, &x.coords)?;
    let back = from_beauville(fld, &b)?;
    if projectively_eq(fld, &back, &x.coords) {
        Ok(())
    } else {
        Err(MapError::Invalid("round trip changed the point"))
    }
}

fn verrill_roundtrip(fld: &PrimeField, x: &NPoint) -> MapResult<()> {
    let v = to_verrill(fld, &x.coords)?;
    let back = from_verrill(fld, &v)?;
    if projectively_eq(fld, &back, &x.coords) {
        Ok(())
    } else {
        Err(MapError::Invalid("round trip changed the point"))
    }
}

/// Runs both round trips on the given points of `U(F_p)`.
pub fn roundtrip_points(fld: &PrimeField, pts: &[NPoint]) -> RoundtripReport {
    let outcomes: Vec<_> = pts
        .par_iter()
        .map(|x| (beauville_roundtrip(fld, x), verrill_roundtrip(fld, x)))
        .collect();
    let mut report = RoundtripReport {
        p: fld.modulus(),
        samples: pts.len() as u64,
        seed: None,
        exhaustive: false,
        beauville: PairTally::default(),
        verrill: PairTally::default(),
    };
    for (x, (b, v)) in pts.iter().zip(outcomes) {
        report.beauville.record(*x, b);
        report.verrill.record(*x, v);
    }
    report
}

/// Round trips on `n` seeded samples of `U(F_p)`.
pub fn roundtrip_check(fld: &PrimeField, n: usize, seed: u64) -> Result<RoundtripReport> {
    let pts = sample_points_u(fld, n, seed)?;
    let mut r = roundtrip_points(fld, &pts);
    r.seed = Some(seed);
    Ok(r)
}

/// Round trips on every point of `U(F_p)`.
pub fn roundtrip_exhaustive(fld: &PrimeField) -> Result<RoundtripReport> {
    let pts = points_u(fld)?;
    let mut r = roundtrip_points(fld, &pts);
    r.exhaustive = true;
    Ok(r)
}

/// Reduces a rational point modulo `p`, after clearing denominators.
/// `None` when the reduction is zero.
pub fn reduce_rational_point(fld: &PrimeField, x: &[BigRational; 6]) -> Option<NPoint> {
    let denom_lcm = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = x
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    // remove the content so the reduction is not identically zero
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return None;
    }
    let pm = BigInt::from(fld.modulus());
    let mut coords = [0u32; 6];
    for (slot, c) in coords.iter_mut().zip(&ints) {
        let r = ((c / &content) % &pm + &pm) % &pm;
        *slot = u32::try_from(r).expect("residue fits");
    }
    let pt = NPoint::new(coords);
    (!pt.is_zero()).then_some(pt)
}

fn small_rationals(height: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for num in -height..=height {
        for den in 1..=height {
            if num != 0 && num.gcd(&den) == 1 {
                out.push(BigRational::new(num.into(), den.into()));
            }
        }
    }
    out
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    Some(BigRational::new(
        exact_sqrt(q.numer())?,
        exact_sqrt(q.denom())?,
    ))
}

/// Whether `x_i + x_j = 0` for some pair: such points lie on one of the
/// planes `x_i + x_j = x_k + x_l = x_m + x_n = 0` contained in `N`.
pub fn on_pair_plane<K: FieldOps>(k: &K, x: &[K::Elem; 6]) -> bool {
    (0..6).any(|i| (i + 1..6).any(|j| k.is_zero(&k.add(&x[i], &x[j]))))
}

/// Rational points of `U` off the pair planes, found by solving Verrill's
/// equation for `t` over triples `(x, y, z)` with numerators and
/// denominators bounded by `height`, then mapping back to `N`.
pub fn rational_points_u(height: i64, limit: usize) -> Vec<[BigRational; 6]> {
    let q = Rationals;
    let vals = small_rationals(height);
    let two = BigRational::from_integer(2.into());
    let four = BigRational::from_integer(4.into());
    let mut out = Vec::new();
    for x in &vals {
        for y in &vals {
            for z in &vals {
                let xyz = x * y * z;
                let left = BigRational::one() + x + x * y + &xyz;
                let right = BigRational::one() + z + y * z + &xyz;
                // (t + 1)²/t = c  ⇔  t² + (2 - c)t + 1 = 0
                let c = left * right / &xyz;
                let Some(root) = rational_sqrt(&(&c * (&c - &four))) else {
                    continue;
                };
                for t in [(&c - &two + &root) / &two, (&c - &two - &root) / &two] {
                    let v = VerrillPoint {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                        t,
                    };
                    if let Ok(pt) = from_verrill(&q, &v) {
                        if pt.iter().all(|c| !c.is_zero())
                            && !on_pair_plane(&q, &pt)
                            && !out
                                .iter()
                                .any(|o: &[BigRational; 6]| projectively_eq(&q, o, &pt))
                        {
                            out.push(pt);
                            if out.len() >= limit {
                                return out;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> PrimeField {
        PrimeField::new(13).unwrap()
    }

    fn segre(fld: &PrimeField) -> [u32; 6] {
        [1, 1, 1, fld.neg(1), fld.neg(1), fld.neg(1)]
    }

    #[test]
    fn elementary_symmetric_examples() {
        let q = Rationals;
        let v: Vec<BigRational> = [1, -1, -1, -1].iter().map(|&c| q.from_i64(c)).collect();
        assert_eq!(elementary_symmetric(&q, &v, 1).unwrap(), q.from_i64(-2));
        assert_eq!(elementary_symmetric(&q, &v, 3).unwrap(), q.from_i64(2));
        assert_eq!(elementary_symmetric(&q, &v, 4).unwrap(), q.from_i64(-1));
        assert_eq!(elementary_symmetric(&q, &v, 0).unwrap(), q.one());
        assert!(elementary_symmetric(&q, &v, 5).is_err());
        let ab = [q.from_i64(3), q.from_i64(7)];
        assert_eq!(elementary_symmetric(&q, &ab, 2).unwrap(), q.from_i64(21));
    }

    #[test]
    fn beauville_residual_examples() {
        let fld = f13();
        assert_eq!(beauville_residual(&fld, &[1, 1, 1], &fld.reduce(-8)), 0);
        for t in 0..13 {
            assert_eq!(beauville_residual(&fld, &[1, 0, 0], &t), 0);
        }
        assert_eq!(beauville_residual(&fld, &[1, 1, 0], &0), 2);
    }

    #[test]
    fn segre_through_beauville() {
        let fld = f13();
        let x = segre(&fld);
        let b = to_beauville(&fld, &x).unwrap();
        assert_eq!(b.t, fld.reduce(-8));
        assert!(projectively_eq(&fld, &b.p, &[1, 1, 1]));
        assert!(projectively_eq(&fld, &b.q, &[1, 1, 1]));
        let back = from_beauville(&fld, &b).unwrap();
        assert!(projectively_eq(&fld, &back, &x));
        // scaling Q does not change the preimage
        let scaled = BeauvillePoint {
            q: b.q.map(|c| fld.mul(2, c)),
            ..b.clone()
        };
        assert!(projectively_eq(
            &fld,
            &from_beauville(&fld, &scaled).unwrap(),
            &x
        ));
    }

    #[test]
    fn segre_through_verrill() {
        let q = Rationals;
        let x = [1, 1, 1, -1, -1, -1].map(|c| q.from_i64(c));
        assert_eq!(residual_quartic(&q, &x).unwrap(), q.zero());
        let v = to_verrill(&q, &x).unwrap();
        assert_eq!(
            (v.x.clone(), v.y.clone(), v.z.clone(), v.t.clone()),
            (q.from_i64(-1), q.one(), q.one(), q.one())
        );
        let back = from_verrill(&q, &v).unwrap();
        assert!(projectively_eq(&q, &back, &x));
        assert_eq!(back[0], q.one());
        assert_eq!(back[1], q.one());
    }

    #[test]
    fn verrill_rejects_bad_input() {
        let fld = f13();
        let v = VerrillPoint {
            x: 2,
            y: 3,
            z: 4,
            t: 5,
        };
        assert_ne!(verrill_residual(&fld, &v), 0);
        assert_eq!(
            from_verrill(&fld, &v).unwrap_err(),
            MapError::Invalid("point off Verrill's threefold")
        );
        let degenerate = VerrillPoint {
            x: 2,
            y: 3,
            z: 4,
            t: 12,
        };
        assert!(matches!(
            from_verrill(&fld, &degenerate),
            Err(MapError::Indeterminate(_))
        ));
    }

    #[test]
    fn beauville_indeterminacy() {
        let fld = f13();
        // P = (1 : -1 : 0) on every fibre but sums to zero
        let b = BeauvillePoint {
            p: [1, 12, 0],
            t: 3,
            q: [1, 0, 0],
        };
        assert!(matches!(
            from_beauville(&fld, &b),
            Err(MapError::Indeterminate(_))
        ));
        let off = BeauvillePoint {
            p: [1, 1, 1],
            t: 0,
            q: [1, 1, 1],
        };
        assert!(matches!(
            from_beauville(&fld, &off),
            Err(MapError::Invalid(_))
        ));
    }

    #[test]
    fn empty_sample_report() {
        let r = roundtrip_check(&f13(), 0, 9).unwrap();
        assert_eq!(r.samples, 0);
        assert_eq!(r.beauville, PairTally::default());
        assert_eq!(r.verrill, PairTally::default());
        assert_eq!(r.seed, Some(9));
    }

    #[test]
    fn roundtrip_small() {
        let r = roundtrip_check(&f13(), 300, 1).unwrap();
        assert_eq!(r.failures(), 0);
        assert_eq!(r.beauville.success + r.beauville.indeterminate, 300);
    }

    fn verrill_degenerate(fld: &PrimeField, x: &NPoint) -> bool {
        fld.add(x.coords[0], x.coords[1]) == 0
    }

    fn beauville_degenerate(fld: &PrimeField, x: &NPoint) -> bool {
        fld.add(fld.add(x.coords[0], x.coords[1]), x.coords[2]) == 0
    }

    #[test]
    fn exhaustive_indeterminacy_loci() {
        for p in [5u64, 7] {
            let fld = PrimeField::new(p).unwrap();
            let r = roundtrip_exhaustive(&fld).unwrap();
            assert_eq!(r.failures(), 0);
            let all = points_u(&fld).unwrap();
            let expect_v: Vec<NPoint> = all
                .iter()
                .copied()
                .filter(|x| verrill_degenerate(&fld, x))
                .collect();
            let expect_b: Vec<NPoint> = all
                .iter()
                .copied()
                .filter(|x| beauville_degenerate(&fld, x))
                .collect();
            assert_eq!(r.verrill.indeterminate_points, expect_v);
            assert_eq!(r.beauville.indeterminate_points, expect_b);
            assert_eq!(
                r.verrill.success + r.verrill.indeterminate,
                all.len() as u64
            );
        }
    }

    #[test]
    fn residual_quartic_on_samples() {
        let fld = f13();
        for x in sample_points_u(&fld, 500, 3).unwrap() {
            if verrill_degenerate(&fld, &x) {
                continue;
            }
            assert_eq!(residual_quartic(&fld, &x.coords), Some(0));
        }
    }

    #[test]
    fn rational_points_commute_with_reduction() {
        let q = Rationals;
        let pts = rational_points_u(3, 8);
        assert_eq!(pts.len(), 8);
        let mut compared = 0;
        for x in &pts {
            assert!(on_quintic(&q, x) && !on_pair_plane(&q, x));
            let b = to_beauville(&q, x).unwrap();
            if !q.is_zero(&q.sum(&b.p)) {
                assert!(projectively_eq(&q, &from_beauville(&q, &b).unwrap(), x));
            }
            let v = to_verrill(&q, x).unwrap();
            assert!(projectively_eq(&q, &from_verrill(&q, &v).unwrap(), x));
            for p in [13u64, 29] {
                let fld = PrimeField::new(p).unwrap();
                let red = |c: &BigRational| -> Option<u32> {
                    let pm = BigInt::from(p);
                    let d = u32::try_from(((c.denom() % &pm) + &pm) % &pm).unwrap();
                    let n = u32::try_from(((c.numer() % &pm) + &pm) % &pm).unwrap();
                    Some(fld.mul(n, fld.inv(d)?))
                };
                let xr = reduce_rational_point(&fld, x).unwrap();
                if !xr.on_u(&fld) {
                    continue;
                }
                let (Ok(br), Ok(vr)) =
                    (to_beauville(&fld, &xr.coords), to_verrill(&fld, &xr.coords))
                else {
                    continue;
                };
                let (Some(bt), Some(vt), Some(vx), Some(vy), Some(vz)) =
                    (red(&b.t), red(&v.t), red(&v.x), red(&v.y), red(&v.z))
                else {
                    continue;
                };
                assert_eq!(br.t, bt);
                assert_eq!((vr.x, vr.y, vr.z, vr.t), (vx, vy, vz, vt));
                compared += 1;
            }
        }
        assert!(compared >= 8, "only {compared} reductions compared");
    }
}
