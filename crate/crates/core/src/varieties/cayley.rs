//! The Cayley cubic `C⁽¹⁾ = {e3(y0, y1, y2, y3) = 0} ⊂ P3`, the exceptional
//! fibre of `N⁽¹⁾ → N` over each point `P_klmn`, and its double cover
//! `w² = -y0 y1 y2 y3`.
//!
//! The boundary `{y0 y1 y2 y3 = 0}` of `C⁽¹⁾` is the six edges of the
//! tetrahedron spanned by the four nodes. After blowing up the nodes
//! (`C⁽²⁾`) and normalizing the cover (`C̃⁽³⁾`), the cover is branched
//! exactly over the four exceptional curves, and each edge lifts to a
//! rational curve mapping 2:1 onto it.

use crate::arith::PrimeField;
use crate::error::Result;

/// Coordinate points of `P3`: the nodes of the Cayley cubic.
pub const CAYLEY_NODES: [[u32; 4]; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

fn e3(fld: &PrimeField, y: [u32; 4]) -> u32 {
    let [a, b, c, d] = y;
    let ab = fld.mul(a, b);
    let cd = fld.mul(c, d);
    fld.add(fld.mul(ab, fld.add(c, d)), fld.mul(cd, fld.add(a, b)))
}

/// Calls `visit` on every point of `P3(F_p)`, normalized so the first
/// nonzero coordinate is 1.
fn for_each_p3(fld: &PrimeField, mut visit: impl FnMut([u32; 4])) {
    let p = fld.p();
    for lead in 0..4 {
        let free = 3 - lead;
        let total = (p as u64).pow(free as u32);
        for idx in 0..total {
            let mut y = [0u32; 4];
            y[lead] = 1;
            let mut rest = idx;
            for slot in y.iter_mut().skip(lead + 1) {
                *slot = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            visit(y);
        }
    }
}

/// `#C⁽¹⁾(F_p)` by scanning all of `P3(F_p)`.
pub fn count_cayley_c1(fld: &PrimeField) -> Result<u64> {
    fld.require_good()?;
    let mut n = 0;
    for_each_p3(fld, |y| {
        if e3(fld, y) == 0 {
            n += 1;
        }
    });
    Ok(n)
}

/// Visits the points of `C⁽¹⁾` with all coordinates nonzero, as `(y1, y2, y3)`
/// in the chart `y0 = 1`.
///
/// There `e3 = y1y2 + y3(y1 + y2 + y1y2)`, so for each `(y1, y2)` the
/// coordinate `y3` is unique when the bracket is nonzero, and absent
/// otherwise.
fn for_each_open(fld: &PrimeField, mut visit: impl FnMut(u32, u32, u32)) {
    let p = fld.p();
    for y1 in 1..p {
        for y2 in 1..p {
            let y12 = fld.mul(y1, y2);
            let c = fld.add(fld.add(y1, y2), y12);
            if let Some(ci) = fld.inv(c) {
                visit(y1, y2, fld.neg(fld.mul(y12, ci)));
            }
        }
    }
}

/// Points of `C⁽¹⁾` off the six edges.
pub fn count_cayley_open(fld: &PrimeField) -> Result<u64> {
    fld.require_good()?;
    let mut n = 0;
    for_each_open(fld, |_, _, _| n += 1);
    Ok(n)
}

/// Points of the unramified double cover `w² = -y0y1y2y3` over the open part:
/// `1 + χ(-y0y1y2y3)` per base point.
pub fn count_cayley_open_cover(fld: &PrimeField) -> Result<u64> {
    fld.require_good()?;
    let mut n: i64 = 0;
    for_each_open(fld, |y1, y2, y3| {
        let prod = fld.mul(fld.mul(y1, y2), y3);
        n += 1 + fld.chi(fld.neg(prod)) as i64;
    });
    Ok(n as u64)
}

/// `#C̃⁽³⁾(F_p)`: the enumerated open cover plus the boundary.
///
/// The boundary consists of four exceptional curves (branch locus, one
/// preimage each, `p + 1` points) and six edge lifts (rational, `p + 1`
/// points each); every edge lift meets two exceptional curves.
pub fn count_cayley_resolved_cover(fld: &PrimeField) -> Result<u64> {
    let open = count_cayley_open_cover(fld)?;
    let p = fld.modulus();
    let exceptional = 4 * (p + 1);
    let edges = 6 * (p + 1);
    let shared = 12;
    Ok(open + exceptional + edges - shared)
}

/// Closed form of `#C̃⁽³⁾(F_p)` from the fibration by lines through a node:
/// `(p - 2)(p + 1)` points on smooth fibres plus three special fibres. Each
/// special fibre is a tree of three lines (`3p + 1` points), except that for
/// `p ≡ 3 mod 4` the two lines over `x3 + x4 = 0` are conjugate and only the
/// middle line (`p + 1` points) is rational.
pub fn cayley_cover_formula(p: u64) -> u64 {
    let smooth = (p - 2) * (p + 1);
    let tree = 3 * p + 1;
    if p % 4 == 1 {
        smooth + 3 * tree
    } else {
        smooth + 2 * tree + (p + 1)
    }
}

/// `#C⁽²⁾(F_p) = 1 + 7p + p²`, from `C⁽²⁾ ≅ P2` blown up in six rational points.
pub fn count_c2(fld: &PrimeField) -> Result<u64> {
    fld.require_good()?;
    let p = fld.modulus();
    Ok(1 + 7 * p + p * p)
}

/// `#C⁽²⁾` via the nodes: each of the four rational nodes becomes a `P1`.
pub fn count_c2_from_c1(fld: &PrimeField) -> Result<u64> {
    Ok(count_cayley_c1(fld)? + 4 * fld.modulus())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn c1_counts() {
        assert_eq!(count_cayley_c1(&f(5)).unwrap(), 41);
        assert_eq!(count_cayley_c1(&f(7)).unwrap(), 71);
    }

    #[test]
    fn nodes_are_singular() {
        let fld = f(11);
        for node in CAYLEY_NODES {
            assert_eq!(e3(&fld, node), 0);
            // ∂e3/∂y_i = e2 of the other three coordinates; at a coordinate
            // point at most one coordinate is nonzero, so every e2 vanishes
            for i in 0..4 {
                let others: Vec<u32> = (0..4).filter(|&j| j != i).map(|j| node[j]).collect();
                let e2 = fld.add(
                    fld.add(fld.mul(others[0], others[1]), fld.mul(others[0], others[2])),
                    fld.mul(others[1], others[2]),
                );
                assert_eq!(e2, 0);
            }
        }
    }

    #[test]
    fn cover_formula_examples() {
        assert_eq!(cayley_cover_formula(5), 66);
        assert_eq!(cayley_cover_formula(13), 274);
        assert_eq!(cayley_cover_formula(7), 92);
        assert_eq!(count_cayley_resolved_cover(&f(5)).unwrap(), 66);
        assert_eq!(count_cayley_resolved_cover(&f(13)).unwrap(), 274);
        assert_eq!(count_cayley_resolved_cover(&f(7)).unwrap(), 92);
    }

    #[test]
    fn open_part_is_plane_minus_four_lines() {
        for p in [5u64, 7, 11, 13, 17] {
            assert_eq!(count_cayley_open(&f(p)).unwrap(), p * p - 3 * p + 3);
        }
    }

    #[test]
    fn open_cover_matches_unramified_plane_count() {
        // p² - 2p + 3 for p ≡ 1 mod 4 and p² - 4p + 3 for p ≡ 3 mod 4
        assert_eq!(count_cayley_open_cover(&f(13)).unwrap(), 169 - 26 + 3);
        assert_eq!(count_cayley_open_cover(&f(7)).unwrap(), 49 - 28 + 3);
    }

    #[test]
    fn c2_two_ways() {
        assert_eq!(count_c2(&f(5)).unwrap(), 61);
        assert_eq!(
            count_c2(&f(5)).unwrap() - count_cayley_c1(&f(5)).unwrap(),
            20
        );
        assert_eq!(count_c2(&f(73)).unwrap(), 5841);
        for p in [5u64, 7, 11, 13] {
            assert_eq!(count_c2(&f(p)).unwrap(), count_c2_from_c1(&f(p)).unwrap());
        }
    }
}
