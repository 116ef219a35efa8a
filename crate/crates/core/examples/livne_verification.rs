//! Full modularity check. Pass bad primes as arguments (default 2 3).

use barth_nieto::modularity::{full_verification, Enumerator, VerificationConfig};

fn main() -> barth_nieto::Result<()> {
    let s: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut config = VerificationConfig::default();
    if !s.is_empty() {
        config.s = s;
        config.k_range = None;
    }
    let report = full_verification(&config, &mut Enumerator)?;
    println!(
        "S = {:?}, m = {}, T = {:?}",
        report.livne.s, report.livne.m, report.livne.t
    );
    for r in &report.rows {
        let mark = if r.matches { "ok" } else { "MISMATCH" };
        println!("{:>5} {:>10} {:>8} {:>8}  {mark}", r.p, r.n_u, r.t3, r.a_p);
    }
    println!("verdict: {}", report.verdict);
    Ok(())
}
