//! q-expansion of (η(q)η(q²)η(q³)η(q⁶))² with its Hecke and Deligne checks.

use barth_nieto::qseries::{deligne_bound_check, euler_factor, f_coefficients, hecke_check};

fn main() -> barth_nieto::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1000);
    let f = f_coefficients(n)?;
    let head: Vec<String> = f.coeffs[1..=13.min(n)]
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("f = {} ...", head.join(", "));

    let h = hecke_check(&f, n);
    println!(
        "hecke up to {}: {} multiplicative, {} prime-power, {} violations",
        h.range,
        h.multiplicative_checks,
        h.prime_power_checks,
        h.violations.len()
    );
    let d = deligne_bound_check(&f);
    println!(
        "deligne: {} primes, {} violations",
        d.primes_checked,
        d.violations.len()
    );

    for p in [2, 3, 5, 7, 73] {
        if p <= n as u64 {
            println!("euler factor at {p}: {:?}", euler_factor(p, &f)?.coeffs);
        }
    }
    Ok(())
}
