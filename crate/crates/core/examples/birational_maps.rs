//! Round trips through the maps to Beauville's fibred square and to
//! Verrill's threefold, over F_p and over Q.

use barth_nieto::arith::Rationals;
use barth_nieto::maps::{
    rational_points_u, roundtrip_check, roundtrip_exhaustive, to_beauville, to_verrill,
};
use barth_nieto::PrimeField;

fn main() -> barth_nieto::Result<()> {
    for p in [5u64, 7] {
        let r = roundtrip_exhaustive(&PrimeField::new(p)?)?;
        println!(
            "F_{p} exhaustive ({} points): beauville {}/{}/{}  verrill {}/{}/{}  (ok/indet/fail)",
            r.samples,
            r.beauville.success,
            r.beauville.indeterminate,
            r.beauville.failure,
            r.verrill.success,
            r.verrill.indeterminate,
            r.verrill.failure
        );
    }
    for p in [13u64, 17, 29] {
        let r = roundtrip_check(&PrimeField::new(p)?, 1000, 1)?;
        println!(
            "F_{p} 1000 samples: {} failures, indeterminacy {:?}",
            r.failures(),
            r.verrill.indeterminate_reasons
        );
    }

    let q = Rationals;
    for x in rational_points_u(3, 4) {
        let coords: Vec<String> = x.iter().map(|c| c.to_string()).collect();
        println!("({})", coords.join(" : "));
        if let Ok(b) = to_beauville(&q, &x) {
            println!("  beauville t = {}", b.t);
        }
        if let Ok(v) = to_verrill(&q, &x) {
            println!(
                "  verrill (x, y, z, t) = ({}, {}, {}, {})",
                v.x, v.y, v.z, v.t
            );
        }
    }
    Ok(())
}
