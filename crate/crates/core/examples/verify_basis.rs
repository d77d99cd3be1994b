//! Checks a handful of sets for the h-basis property and prints witnesses.
//!
//! cargo run --example verify_basis

use hbasis::sumset::{h_fold_coverage, n_of, verify_basis, witness};
use hbasis::BasisSet;

fn main() -> hbasis::Result<()> {
    let set = BasisSet::new([0, 1, 3, 4])?;
    let cov = h_fold_coverage(&set, 2, 12)?;
    println!("2A ∩ [0, 12] = {:?}", cov.iter().collect::<Vec<_>>());
    println!("n(2, A) = {:?}", n_of(&set, 2)?);

    for n in [8, 9] {
        let cert = verify_basis(&set, 2, n)?;
        println!(
            "[0, {n}] ⊆ 2A: {} (first gap {:?})",
            cert.ok, cert.first_gap
        );
    }
    for z in [5, 7, 8] {
        println!("{z} = sum of {:?}", witness(&set, 2, z)?);
    }
    Ok(())
}
