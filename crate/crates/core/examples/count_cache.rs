//! Serving pipeline counts from a JSON cache.
//!
//!     cargo run --example count_cache -- /tmp/bnq-counts.json

use barth_nieto::cache::{CachedSource, CountCache};
use barth_nieto::modularity::CountSource;

fn main() -> barth_nieto::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "bnq-counts.json".into());
    let mut cache = CountCache::open(&path)?;
    {
        let mut src = CachedSource::new(&mut cache, false);
        for p in [5, 7, 11, 13] {
            let rec = src.record(p)?;
            println!("p = {p}: #U = {} ({:?})", rec.n_u, rec.method);
        }
        println!("{} hits, {} misses", src.hits, src.misses);
    }
    cache.save()?;
    println!("{} entries in {path}", cache.entries().len());
    Ok(())
}
