//! Counts on the double cover, and the integer k with (t2, t4) = k(p, p²)
//! at primes p ≡ 3 mod 4.

use barth_nieto::arith::primes_in;
use barth_nieto::modularity::{h2_eigenvalue_k_solver, k_uniqueness_holds, ytilde_trace};
use barth_nieto::varieties::CountRecord;
use barth_nieto::PrimeField;

fn main() -> barth_nieto::Result<()> {
    for p in primes_in(5, 59) {
        let rec = CountRecord::compute(&PrimeField::new(p)?)?;
        if p % 4 == 1 {
            println!(
                "p = {p:>2}  #U~ = {:>7}  #Y~ = {:>7}  t3 via cover = {}",
                rec.n_utilde,
                rec.n_ytilde,
                ytilde_trace(&rec).unwrap()
            );
        } else if p >= 7 {
            let k = h2_eigenvalue_k_solver(p, rec.n_ytilde)?;
            let note = if k_uniqueness_holds(p) {
                ""
            } else {
                "  (uniqueness not forced)"
            };
            println!("p = {p:>2}  #Y~ = {:>7}  k = {k}{note}", rec.n_ytilde);
        }
    }
    Ok(())
}
