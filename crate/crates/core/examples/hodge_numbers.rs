//! h^{2,1} from a single point count via the Weil bound.

use barth_nieto::modularity::{hodge_solver, HodgeBase};
use barth_nieto::varieties::CountRecord;
use barth_nieto::PrimeField;

fn main() -> barth_nieto::Result<()> {
    let p = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(13);
    let rec = CountRecord::compute(&PrimeField::new(p)?)?;
    let mut bases = vec![(HodgeBase::Y, rec.n_y)];
    if p % 4 == 1 {
        bases.push((HodgeBase::YTilde, rec.n_ytilde));
    }
    for (base, n) in bases {
        let sol = hodge_solver(p, n, base)?;
        print!(
            "p = {p}, #{base:?} = {n}: admissible h21 in {:?}",
            sol.admissible
        );
        match sol.diamond {
            Some(d) => println!(
                "  -> {}: h11 = {}, h21 = {}, e = {}",
                d.variety, d.h11, d.h21, d.euler
            ),
            None => println!(),
        }
    }
    Ok(())
}
