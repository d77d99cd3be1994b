//! Greedy shift covers and k-complements in Z_q.
//!
//! cargo run --example complement_cover

use hbasis::cover::{complement_size_bound, greedy_shift_cover, k_complement};
use hbasis::ResidueSet;

fn main() -> hbasis::Result<()> {
    let q = 1024;
    let a = ResidueSet::new(q, (0..32).map(|i| i * i % q))?;
    let full = ResidueSet::full(q)?;

    let run = greedy_shift_cover(&a, &full, 16)?;
    println!(
        "|A| = {}, 16 greedy shifts leave {} uncovered",
        a.len(),
        run.remainder.len()
    );
    println!("uncovered after each pick: {:?}", run.trace);

    for k in 1..=3 {
        let fam = k_complement(&a, k)?;
        println!(
            "k = {k}: family sizes {:?}, total {} (bound {}), complete {}, over budget {}",
            fam.family_sizes(),
            fam.total_shifts(),
            complement_size_bound(q, a.len() as u64, k),
            fam.complete,
            fam.over_budget,
        );
    }
    Ok(())
}
