//! The Cayley cubic and its double cover, enumerated against closed forms.

use barth_nieto::arith::primes_in;
use barth_nieto::varieties::{
    cayley_cover_formula, count_c2, count_cayley_c1, count_cayley_open_cover,
    count_cayley_resolved_cover,
};
use barth_nieto::PrimeField;

fn main() -> barth_nieto::Result<()> {
    println!("   p  C1  C2  open  cover  formula");
    for p in primes_in(5, 41) {
        let fld = PrimeField::new(p)?;
        println!(
            "{:>4} {:>4} {:>4} {:>5} {:>6} {:>8}",
            p,
            count_cayley_c1(&fld)?,
            count_c2(&fld)?,
            count_cayley_open_cover(&fld)?,
            count_cayley_resolved_cover(&fld)?,
            cayley_cover_formula(p)
        );
    }
    Ok(())
}
