//! Prints the closed-form bounds for a few parameter choices as CSV.
//!
//! cargo run --example bounds_table

use hbasis::bounds::{reports_for_hk, reports_for_hn};

fn main() {
    println!("h,input,bound,direction,value,dropped");
    for (h, k) in [(2, 4), (2, 10), (3, 6)] {
        for r in reports_for_hk(h, k) {
            println!(
                "{h},k={k},{},{},{},{}",
                r.name,
                r.direction.as_str(),
                r.value,
                r.asymptotic_terms_dropped.unwrap_or("")
            );
        }
    }
    for (h, n) in [(3, 1_000), (3, 8_103), (5, 1_000_000)] {
        for r in reports_for_hn(h, n) {
            println!(
                "{h},n={n},{},{},{},{}",
                r.name,
                r.direction.as_str(),
                r.value,
                r.asymptotic_terms_dropped.unwrap_or("")
            );
        }
    }
}
