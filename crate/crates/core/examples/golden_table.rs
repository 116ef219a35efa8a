//! Point counts of the Barth-Nieto quintic at the primes of the Livné set.
//!
//!     cargo run --release --example golden_table [p ...]

use barth_nieto::varieties::{strata_for, CountRecord};
use barth_nieto::PrimeField;

fn main() -> barth_nieto::Result<()> {
    let mut primes: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if primes.is_empty() {
        primes = vec![5, 7, 11, 13, 17, 19, 23, 73];
    }
    println!("{:>4} {:>9} {:>9} {:>6}", "p", "#U", "#Y", "t3");
    for p in primes {
        let rec = CountRecord::compute(&PrimeField::new(p)?)?;
        println!("{:>4} {:>9} {:>9} {:>6}", p, rec.n_u, rec.n_y, rec.t3);
        let s = strata_for(p, rec.n_u);
        println!(
            "     segre {} + R0 {} + L0 {} + cubics {} + U {}",
            s.segre, s.r0, s.l0, s.cubics, s.u
        );
    }
    Ok(())
}
