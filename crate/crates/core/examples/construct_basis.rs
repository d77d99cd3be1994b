//! Builds the composite basis for a few (h, n), then decomposes targets.
//!
//! cargo run --release --example construct_basis

use hbasis::construct::{build_theorem1, decompose, plan_params};

fn main() -> hbasis::Result<()> {
    for (h, n) in [(3, 10_000), (4, 100_000), (5, 1_000_000)] {
        let plan = plan_params(n, h, None)?;
        let result = build_theorem1(&plan)?;
        let sizes = result.sizes();
        println!(
            "h = {h}, n = {n}: p = {} k = {} a = {} q = {} ({})",
            plan.p,
            plan.k,
            plan.a,
            plan.q,
            plan.feasibility.as_str()
        );
        println!(
            "  |A| = {} |B| = {} |C| = {} |D| = {} |G| = {} ratio {:.3} verified {}",
            sizes.a,
            sizes.b,
            sizes.c,
            sizes.d,
            sizes.total,
            result.ratio(),
            result.verified()
        );
        let dec = decompose(n, &result)?;
        let parts: Vec<String> = dec
            .parts
            .iter()
            .map(|(c, v)| format!("{v}[{}]", c.as_str()))
            .collect();
        println!("  {n} = {}", parts.join(" + "));
    }
    Ok(())
}
