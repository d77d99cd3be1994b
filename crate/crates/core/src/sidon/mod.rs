//! `B_k` sequences: sets whose `k`-element multiset sums are pairwise distinct.
//!
//! [`bose_chowla`] builds a `p`-element `B_k` set modulo `p^k − 1` from a
//! primitive element `θ` of `GF(p^k)`: the set of exponents `d` with
//! `θ^d = θ + a`, one for each `a ∈ F_p`. Two `k`-multisets with equal
//! exponent sums would give two factorisations of the same field element into
//! linear factors `θ + a`, which the degree of the minimal polynomial rules out.

pub mod field;

use std::collections::HashSet;

use crate::error::{Error, Result};
pub use field::{build_field, DlogMethod, FieldSpec};

/// A `B_k` set produced by the finite-field construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidonSet {
    /// Ascending, in `[0, p^k − 2]`.
    pub elements: Vec<u64>,
    /// `p^k − 1`.
    pub order_modulus: u64,
    pub k: u32,
    pub field: FieldSpec,
}

pub fn bose_chowla(p: u64, k: u32) -> Result<SidonSet> {
    let field = build_field(p, k)?;
    Ok(bose_chowla_in(field, DlogMethod::Auto))
}

/// Runs the construction over an explicit field.
pub fn bose_chowla_in(field: FieldSpec, method: DlogMethod) -> SidonSet {
    let mut elements = field::logs_of_shifted_generator(&field, method);
    elements.sort_unstable();
    SidonSet {
        elements,
        order_modulus: field.group_order(),
        k: field.k,
        field,
    }
}

/// Calls `visit` with the sum of every `k`-element multiset drawn from
/// `values`. Stops early when `visit` returns `false`.
fn for_each_multiset_sum(values: &[u128], k: u32, mut visit: impl FnMut(u128) -> bool) {
    fn rec(
        values: &[u128],
        start: usize,
        left: u32,
        acc: u128,
        visit: &mut dyn FnMut(u128) -> bool,
    ) -> bool {
        if left == 0 {
            return visit(acc);
        }
        for i in start..values.len() {
            if !rec(values, i, left - 1, acc + values[i], visit) {
                return false;
            }
        }
        true
    }
    rec(values, 0, k, 0, &mut visit);
}

/// Whether every `k`-multiset of `set` has a distinct sum, optionally reduced
/// modulo `modulus`. Checks all `C(|S| + k − 1, k)` multisets.
pub fn is_bk(set: &[u64], k: u32, modulus: Option<u64>) -> bool {
    let mut distinct: Vec<u64> = set.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let values: Vec<u128> = distinct
        .iter()
        .map(|&x| match modulus {
            Some(m) => (x % m) as u128,
            None => x as u128,
        })
        .collect();
    let mut seen = HashSet::new();
    let mut ok = true;
    for_each_multiset_sum(&values, k, |s| {
        let s = match modulus {
            Some(m) => s % m as u128,
            None => s,
        };
        ok = seen.insert(s);
        ok
    });
    ok
}

/// Largest `n` accepted by [`phi_exact`] for a given `k`.
pub fn phi_exact_limit(k: u32) -> u64 {
    match k {
        1 => 4096,
        2 => 64,
        3 => 40,
        _ => 24,
    }
}

/// Maximum-size `B_k` subset of `[0, n]` by exhaustive backtracking; the
/// witness is the lexicographically smallest maximiser.
pub fn phi_exact(n: u64, k: u32) -> Result<(usize, Vec<u64>)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if n > phi_exact_limit(k) {
        return Err(Error::TooLarge(format!(
            "phi_exact supports n ≤ {} for k = {k}",
            phi_exact_limit(k)
        )));
    }
    if k == 1 {
        return Ok(((n + 1) as usize, (0..=n).collect()));
    }
    let mut search = PhiSearch::new(n, k);
    search.run(0);
    Ok((search.best.len(), search.best))
}

struct PhiSearch {
    n: u64,
    k: usize,
    chosen: Vec<u64>,
    /// `sums[r][s]`: `s` is an `r`-multiset sum of `chosen`.
    sums: Vec<Vec<bool>>,
    best: Vec<u64>,
    /// No `B_k` set in `[0, n]` can be larger: its `k`-sums are distinct
    /// values in `[0, k·n]`.
    size_cap: usize,
}

impl PhiSearch {
    fn new(n: u64, k: u32) -> Self {
        let k = k as usize;
        let span = k * n as usize + 1;
        let mut sums = vec![vec![false; span]; k + 1];
        sums[0][0] = true;
        let mut size_cap = 1;
        while binomial(size_cap + k, k) <= span as u128 {
            size_cap += 1;
        }
        PhiSearch {
            n,
            k,
            chosen: Vec::new(),
            sums,
            best: Vec::new(),
            size_cap,
        }
    }

    fn run(&mut self, from: u64) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.best.len() == self.size_cap {
            return;
        }
        for e in from..=self.n {
            let remaining = (self.n - e + 1) as usize;
            if self.chosen.len() + remaining <= self.best.len() {
                return;
            }
            if let Some(added) = self.try_add(e) {
                self.chosen.push(e);
                self.run(e + 1);
                self.chosen.pop();
                for (r, s) in added {
                    self.sums[r][s] = false;
                }
                if self.best.len() == self.size_cap {
                    return;
                }
            }
        }
    }

    /// Adds the new `r`-sums created by `e` for every `r ≤ k`, provided the
    /// `k`-sums stay distinct. Returns the marks to undo.
    fn try_add(&mut self, e: u64) -> Option<Vec<(usize, usize)>> {
        let e = e as usize;
        let k = self.k;
        let mut fresh: Vec<Vec<usize>> = vec![Vec::new(); k + 1];
        for (r, bucket) in fresh.iter_mut().enumerate().skip(1) {
            for j in 1..=r {
                for (s, _) in self.sums[r - j].iter().enumerate().filter(|(_, &b)| b) {
                    bucket.push(j * e + s);
                }
            }
        }
        let top = &mut fresh[k];
        top.sort_unstable();
        if top.windows(2).any(|w| w[0] == w[1]) || top.iter().any(|&s| self.sums[k][s]) {
            return None;
        }
        // B_k implies B_r for r < k, so lower buckets are collision-free too.
        let mut added = Vec::new();
        for (r, bucket) in fresh.into_iter().enumerate().skip(1) {
            for s in bucket {
                debug_assert!(!self.sums[r][s]);
                self.sums[r][s] = true;
                added.push((r, s));
            }
        }
        Some(added)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    /// Maximum `B_k` subset by enumerating every subset, largest first.
    fn brute_phi(n: u64, k: u32) -> (usize, Vec<u64>) {
        for size in (1..=(n + 1) as usize).rev() {
            if let Some(c) = (0..=n).combinations(size).find(|c| is_bk(c, k, None)) {
                return (size, c);
            }
        }
        unreachable!()
    }

    #[test]
    fn bk_examples() {
        assert!(is_bk(&[0, 1, 3], 2, None));
        assert!(!is_bk(&[0, 1, 2], 2, None));
        assert!(is_bk(&[1, 6, 7], 2, Some(8)));
        assert!(is_bk(&[5], 3, None));
        // distinct as integers but not modulo 5
        assert!(is_bk(&[0, 1, 3], 2, None));
        assert!(!is_bk(&[0, 1, 3], 2, Some(5)));
    }

    #[test]
    fn bose_chowla_gf9() {
        let s = bose_chowla(3, 2).unwrap();
        assert_eq!(s.field.modulus, vec![2, 1, 1]);
        assert_eq!(s.elements, vec![1, 6, 7]);
        assert_eq!(s.order_modulus, 8);
    }

    #[test]
    fn bose_chowla_properties() {
        for (p, k) in [(2, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 4)] {
            let s = bose_chowla(p, k).unwrap();
            assert_eq!(s.elements.len() as u64, p);
            assert!(s.elements.contains(&1));
            assert!(s.elements.iter().all(|&e| e < s.order_modulus));
            assert!(is_bk(&s.elements, k, Some(s.order_modulus)), "p={p} k={k}");
            assert!(is_bk(&s.elements, k, None), "p={p} k={k}");
        }
    }

    #[test]
    fn subsets_of_bk_sets_are_bk() {
        let s = bose_chowla(7, 3).unwrap();
        for size in 1..s.elements.len() {
            for sub in s.elements.iter().copied().combinations(size) {
                assert!(is_bk(&sub, 3, None));
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_exact(3, 2).unwrap(), (3, vec![0, 1, 3]));
        assert_eq!(phi_exact(6, 2).unwrap(), (4, vec![0, 1, 4, 6]));
        assert_eq!(phi_exact(0, 2).unwrap(), (1, vec![0]));
        assert_eq!(phi_exact(4, 1).unwrap(), (5, vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn phi_matches_brute_force() {
        for n in 0..=12 {
            assert_eq!(phi_exact(n, 2).unwrap(), brute_phi(n, 2), "n={n} k=2");
        }
        for n in 0..=10 {
            assert_eq!(phi_exact(n, 3).unwrap(), brute_phi(n, 3), "n={n} k=3");
        }
    }

    #[test]
    fn phi_is_monotone() {
        let sizes: Vec<usize> = (0..=30).map(|n| phi_exact(n, 2).unwrap().0).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
        // Golomb-ruler lengths: 6 marks need length 17, 7 marks need 25.
        assert_eq!(sizes[16], 5);
        assert_eq!(sizes[17], 6);
        assert_eq!(sizes[25], 7);
    }

    #[test]
    fn phi_guards() {
        assert!(matches!(phi_exact(65, 2), Err(Error::TooLarge(_))));
        assert!(phi_exact(3, 0).is_err());
    }
}
