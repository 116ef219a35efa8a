use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::NPoint;
use crate::arith::PrimeField;
use crate::error::Result;

/// The ten Segre nodes `(1:1:1:-1:-1:-1)` and permutations, as sign patterns
/// with first entry `+1`.
pub fn segre_points() -> Vec<[i8; 6]> {
    let mut out = Vec::with_capacity(10);
    // three +1 entries including position 0 pick a unique representative
    for a in 1..6 {
        for b in a + 1..6 {
            let mut v = [-1i8; 6];
            v[0] = 1;
            v[a] = 1;
            v[b] = 1;
            out.push(v);
        }
    }
    out
}

/// Segre nodes reduced modulo `p`, normalized.
pub fn segre_points_mod(fld: &PrimeField) -> Vec<NPoint> {
    segre_points()
        .into_iter()
        .map(|s| NPoint::new(s.map(|c| fld.reduce(c as i64))).normalized(fld))
        .collect()
}

/// Calls `visit` once for every point of `U(F_p)`, in the chart `x5 = 1`.
pub fn for_each_u_point<F: FnMut(NPoint)>(fld: &PrimeField, mut visit: F) -> Result<()> {
    fld.require_good()?;
    let p = fld.p();
    let half = fld.inv_nonzero(2);
    for x0 in 1..p {
        for x1 in 1..p {
            for x2 in 1..p {
                let (s, r) = open_sums(fld, x0, x1, x2);
                match (s == 0, r == 0) {
                    (true, true) => {
                        for x3 in 1..p {
                            visit(NPoint::new([x0, x1, x2, x3, fld.neg(x3), 1]));
                        }
                    }
                    (false, false) => {
                        let prod = fld.mul(s, fld.inv_nonzero(r));
                        let disc = fld.sub(fld.mul(s, s), fld.mul(4, prod));
                        if let Some(root) = fld.sqrt(disc) {
                            let x3 = fld.mul(fld.add(s, root), half);
                            visit(NPoint::new([x0, x1, x2, x3, fld.sub(s, x3), 1]));
                            if root != 0 {
                                let x3 = fld.mul(fld.sub(s, root), half);
                                visit(NPoint::new([x0, x1, x2, x3, fld.sub(s, x3), 1]));
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

fn open_sums(fld: &PrimeField, x0: u32, x1: u32, x2: u32) -> (u32, u32) {
    let s = fld.neg(fld.add(fld.add(fld.add(1, x0), x1), x2));
    let r = [x0, x1, x2]
        .iter()
        .fold(1, |a, &c| fld.add(a, fld.inv_nonzero(c)));
    (s, fld.neg(r))
}

/// Every point of `U(F_p)`, normalized with `x5 = 1`.
pub fn points_u(fld: &PrimeField) -> Result<Vec<NPoint>> {
    let mut out = Vec::new();
    for_each_u_point(fld, |x| out.push(x))?;
    Ok(out)
}

/// Points of `U(F_p)` fixed by the Cremona involution `x ↦ (1/x0 : ⋯ : 1/x5)`.
pub fn involution_fixpoints(fld: &PrimeField) -> Result<Vec<NPoint>> {
    let mut out = Vec::new();
    for_each_u_point(fld, |x| {
        let image = NPoint::new(x.coords.map(|c| fld.inv_nonzero(c)));
        if image.projectively_eq(&x, fld) {
            out.push(x.normalized(fld));
        }
    })?;
    out.sort();
    Ok(out)
}

/// `n` points of `U(F_p)`, reproducible from `seed`.
///
/// Draws `(x0, x1, x2)` uniformly from `(F_p^*)³` and rejects triples with no
/// completion; a random completion is chosen when there are several.
pub fn sample_points_u(fld: &PrimeField, n: usize, seed: u64) -> Result<Vec<NPoint>> {
    fld.require_good()?;
    let p = fld.p();
    let half = fld.inv_nonzero(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let x0 = rng.gen_range(1..p);
        let x1 = rng.gen_range(1..p);
        let x2 = rng.gen_range(1..p);
        let (s, r) = open_sums(fld, x0, x1, x2);
        let x3 = match (s == 0, r == 0) {
            (true, true) => rng.gen_range(1..p),
            (false, false) => {
                let prod = fld.mul(s, fld.inv_nonzero(r));
                let disc = fld.sub(fld.mul(s, s), fld.mul(4, prod));
                let Some(root) = fld.sqrt(disc) else {
                    continue;
                };
                let root = if rng.gen_bool(0.5) {
                    root
                } else {
                    fld.neg(root)
                };
                fld.mul(fld.add(s, root), half)
            }
            _ => continue,
        };
        out.push(NPoint::new([x0, x1, x2, x3, fld.sub(s, x3), 1]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::count_u;

    #[test]
    fn segre_list() {
        let s = segre_points();
        assert_eq!(s.len(), 10);
        assert!(s.contains(&[1, 1, 1, -1, -1, -1]));
        for v in &s {
            assert_eq!(v.iter().map(|&c| c as i32).sum::<i32>(), 0);
            // 1/±1 = ±1, so the reciprocal sum is the same sum
        }
        let mut sorted = s.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 10);
    }

    #[test]
    fn enumeration_agrees_with_count() {
        for p in [5u64, 7, 11, 13] {
            let fld = PrimeField::new(p).unwrap();
            let pts = points_u(&fld).unwrap();
            assert_eq!(pts.len() as u64, count_u(&fld).unwrap());
            assert!(pts.iter().all(|x| x.on_u(&fld)));
            let mut dedup = pts.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), pts.len());
        }
    }

    #[test]
    fn fixpoints_are_segre() {
        let fld = PrimeField::new(13).unwrap();
        let mut expected = segre_points_mod(&fld);
        expected.sort();
        assert_eq!(involution_fixpoints(&fld).unwrap(), expected);
    }

    #[test]
    fn sampling() {
        let fld = PrimeField::new(13).unwrap();
        let a = sample_points_u(&fld, 200, 42).unwrap();
        let b = sample_points_u(&fld, 200, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|x| x.on_u(&fld)));
        assert_ne!(a, sample_points_u(&fld, 200, 43).unwrap());
        assert!(sample_points_u(&fld, 0, 1).unwrap().is_empty());
    }
}
