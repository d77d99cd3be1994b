//! Exact postage-stamp values n(h, k) and minimal basis sizes.
//!
//! cargo run --release --example exact_search

use hbasis::search::{extremal_n, zeta_exact};

fn main() -> hbasis::Result<()> {
    for h in 2..=4 {
        for k in 2..=6 {
            let res = extremal_n(h, k, 100_000_000)?;
            println!(
                "n({h}, {k}) = {:>4}  {:?}  nodes {}{}",
                res.value,
                res.witness.elements(),
                res.nodes_explored,
                if res.proof_of_optimality {
                    ""
                } else {
                    "  (budget hit)"
                }
            );
        }
    }
    for (h, n) in [(2, 20), (3, 50)] {
        let (k, basis) = zeta_exact(h, n, 100_000_000)?;
        println!(
            "fewest elements for a {h}-basis of [0, {n}]: {k}, e.g. {:?}",
            basis.elements()
        );
    }
    Ok(())
}
