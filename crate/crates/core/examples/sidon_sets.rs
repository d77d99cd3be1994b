//! Builds B_k sets over finite fields and compares them with exact optima.
//!
//! cargo run --example sidon_sets

use hbasis::sidon::{bose_chowla, is_bk, phi_exact};

fn main() -> hbasis::Result<()> {
    for (p, k) in [(5, 2), (7, 2), (5, 3), (13, 3)] {
        let set = bose_chowla(p, k)?;
        println!(
            "GF({p}^{k}) modulus {:?}: {:?}  B_{k} mod {}: {}  over Z: {}",
            set.field.modulus,
            set.elements,
            set.order_modulus,
            is_bk(&set.elements, k, Some(set.order_modulus)),
            is_bk(&set.elements, k, None),
        );
    }
    for n in [10, 25, 40] {
        let (size, best) = phi_exact(n, 2)?;
        println!("largest Sidon set in [0, {n}]: {size} elements, e.g. {best:?}");
    }
    Ok(())
}
