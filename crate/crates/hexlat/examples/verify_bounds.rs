//! Run a handful of numerical bound checks and list the error terms.

use hexlat::verification::{bound_terms, verify_only, VerifyConfig};

fn main() -> hexlat::Result<()> {
    let cfg = VerifyConfig::default();
    let ids: Vec<String> = ["HHH", "bn_limit", "sigma1", "sigma3", "duality", "ld_positive"].iter().map(|s| s.to_string()).collect();
    for r in verify_only(&ids, &cfg)? {
        println!(
            "{:<5} {:<14} computed {:.6e} {} claimed {:.6e}",
            if r.pass { "pass" } else { "FAIL" },
            r.lemma_id,
            r.computed,
            r.comparison.symbol(),
            r.claimed
        );
        if let Some(n) = r.note {
            println!("      {n}");
        }
    }
    println!();
    for t in bound_terms(&cfg)? {
        println!("{:<10} {:.6e}", t.name, t.value);
    }
    Ok(())
}
