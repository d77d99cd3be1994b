//! Exact postage-stamp values on small instances.
//!
//! Sets always contain `0` and it counts towards `k`: with exactly-`h` sums,
//! `0 ∈ hA` forces `0 ∈ A`. Classical tables count denominations without the
//! zero and are therefore shifted by one in `k`.
//!
//! [`extremal_n`] is a depth-first branch and bound over ascending element
//! lists. If the prefix `P` covers `[0, c]` but not `c + 1`, the next element
//! must be at most `c + 1`: every later element is larger, so a bigger choice
//! could never produce `c + 1`.

use num_traits::ToPrimitive;

use crate::bounds::{binomial, rohrbach};
use crate::error::{Error, Result};
use crate::sumset::{n_of, BasisSet};

/// Largest count of `h`-multisets we will allocate reach tables for.
pub const MAX_MULTISETS: u64 = 1 << 24;
/// Largest number of candidate sets [`oracle_exhaustive`] will enumerate.
pub const MAX_ORACLE_SETS: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub h: u32,
    pub k: usize,
    /// `n(h, k)` when `proof_of_optimality`, otherwise the best value found.
    pub value: u64,
    pub witness: BasisSet,
    pub nodes_explored: u64,
    /// False when the node budget ran out before the tree was exhausted.
    pub proof_of_optimality: bool,
}

impl SearchResult {
    /// `(k/h)^h ≤ value ≤ C(k + h, h)` with `k = |A|` including the zero.
    pub fn within_rohrbach_bracket(&self) -> bool {
        let (lower, upper) = rohrbach(self.h, self.k as u64);
        let v = num_rational::BigRational::from_integer(self.value.into());
        lower <= v && num_bigint::BigUint::from(self.value) <= upper
    }

    /// The same bracket with `k` read as the number of non-zero elements,
    /// the convention under which Rohrbach's inequality is a theorem.
    pub fn within_rohrbach_bracket_nonzero(&self) -> bool {
        let nonzero = self.k as u64 - 1;
        let (lower, upper) = rohrbach(self.h, nonzero);
        let v = num_rational::BigRational::from_integer(self.value.into());
        lower <= v && num_bigint::BigUint::from(self.value) <= upper
    }
}

fn check_hk(h: u32, k: usize) -> Result<u64> {
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    // k elements give at most C(k + h − 1, h) distinct h-fold sums.
    let multisets = binomial(k as u64 + h as u64 - 1, h as u64)
        .to_u64()
        .filter(|&m| m <= MAX_MULTISETS)
        .ok_or_else(|| Error::TooLarge(format!("n({h}, {k}) is out of reach")))?;
    Ok(multisets)
}

struct Dfs {
    h: u32,
    k: usize,
    /// Largest value any k-set can reach.
    cap: u64,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    stop_at: Option<u64>,
    prefix: Vec<u64>,
    /// `reach[d][v]`: fewest elements of the depth-`d` prefix summing to `v`.
    reach: Vec<Vec<u8>>,
    best: Option<(u64, Vec<u64>)>,
}

impl Dfs {
    fn new(h: u32, k: usize, multisets: u64, budget: u64, stop_at: Option<u64>) -> Self {
        let cap = multisets - 1;
        let width = multisets as usize + 1;
        let mut root = vec![u8::MAX; width];
        root[0] = 0;
        let mut reach = vec![vec![u8::MAX; width]; k];
        reach[0] = root;
        Dfs {
            h,
            k,
            cap,
            budget,
            nodes: 0,
            exhausted: false,
            stop_at,
            prefix: vec![0],
            reach,
            best: None,
        }
    }

    fn covered(&self, depth: usize) -> u64 {
        let h = self.h.min(u8::MAX as u32 - 1) as u8;
        self.reach[depth]
            .iter()
            .position(|&r| r > h)
            .map_or(self.reach[depth].len() as u64 - 1, |gap| gap as u64 - 1)
    }

    /// Admissible ceiling on the final value given the current prefix value
    /// and the number of elements still to add: each new element is at most
    /// one past the current cover, and a set cannot cover beyond `h·max`.
    fn optimistic(&self, covered: u64, remaining: usize) -> u64 {
        let mut ub = covered;
        for _ in 0..remaining {
            ub = (self.h as u64).saturating_mul(ub + 1);
            if ub >= self.cap {
                return self.cap;
            }
        }
        ub.min(self.cap)
    }

    fn done(&self) -> bool {
        if self.exhausted {
            return true;
        }
        match (&self.best, self.stop_at) {
            (Some((v, _)), Some(target)) => *v >= target,
            (Some((v, _)), None) => *v >= self.cap,
            _ => false,
        }
    }

    fn visit(&mut self, depth: usize) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let covered = self.covered(depth);
        if depth + 1 == self.k {
            if self.best.as_ref().is_none_or(|(v, _)| covered > *v) {
                self.best = Some((covered, self.prefix.clone()));
            }
            return;
        }
        if let Some((v, _)) = &self.best {
            if self.optimistic(covered, self.k - depth - 1) <= *v {
                return;
            }
        }
        let last = *self.prefix.last().expect("prefix holds 0");
        let h = self.h.min(u8::MAX as u32 - 1) as u8;
        for e in last + 1..=covered + 1 {
            let (lo, hi) = self.reach.split_at_mut(depth + 1);
            let (src, dst) = (&lo[depth], &mut hi[0]);
            dst.copy_from_slice(src);
            let e_us = e as usize;
            for v in e_us..dst.len() {
                let via = dst[v - e_us].saturating_add(1);
                if via < dst[v] && via <= h {
                    dst[v] = via;
                }
            }
            self.prefix.push(e);
            self.visit(depth + 1);
            self.prefix.pop();
            if self.done() {
                return;
            }
        }
    }

    fn into_result(self) -> Result<SearchResult> {
        let (value, witness) = self.best.expect("the root always reaches a leaf");
        Ok(SearchResult {
            h: self.h,
            k: self.k,
            value,
            witness: BasisSet::from_sorted(&witness)?,
            nodes_explored: self.nodes,
            proof_of_optimality: !self.exhausted,
        })
    }
}

/// `n(h, k)` with the lexicographically smallest extremal set.
pub fn extremal_n(h: u32, k: usize, node_budget: u64) -> Result<SearchResult> {
    let multisets = check_hk(h, k)?;
    run(h, k, multisets, node_budget, None)
}

fn run(
    h: u32,
    k: usize,
    multisets: u64,
    budget: u64,
    stop_at: Option<u64>,
) -> Result<SearchResult> {
    let mut dfs = Dfs::new(h, k, multisets, budget.max(1), stop_at);
    dfs.visit(0);
    if dfs.best.is_none() {
        return Err(Error::TooLarge(format!(
            "node budget {budget} exhausted before any {k}-set was completed"
        )));
    }
    dfs.into_result()
}

/// `ζ(h, n)`: fewest elements of an h-basis of `[0, n]`, with such a basis.
pub fn zeta_exact(h: u32, n: u64, node_budget: u64) -> Result<(usize, BasisSet)> {
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    // {0, 1, …, n} always works, so k never exceeds n + 1.
    for k in 1..=(n as usize + 1) {
        let multisets = check_hk(h, k)?;
        if multisets <= n {
            continue;
        }
        let res = run(h, k, multisets, node_budget, Some(n))?;
        if res.value >= n {
            return Ok((k, res.witness));
        }
        if !res.proof_of_optimality {
            return Err(Error::TooLarge(format!(
                "node budget exhausted while ruling out k = {k}"
            )));
        }
    }
    unreachable!("k = n + 1 always reaches n")
}

/// Plain enumeration of every `k`-set `{0} ∪ S`, `S ⊆ [1, max_element]`, with
/// no pruning. `max_element` defaults to the Rohrbach upper bound.
pub fn oracle_exhaustive(h: u32, k: usize, max_element: Option<u64>) -> Result<SearchResult> {
    if h == 0 || k == 0 {
        return Err(Error::InvalidParameter("h and k must be at least 1".into()));
    }
    let max_element = match max_element {
        Some(m) => m,
        None => rohrbach(h, k as u64)
            .1
            .to_u64()
            .ok_or(Error::Overflow("Rohrbach upper bound"))?,
    };
    let pick = k - 1;
    let count = binomial(max_element, pick as u64);
    if count > MAX_ORACLE_SETS.into() || (pick as u64) > max_element {
        return Err(Error::TooLarge(format!(
            "C({max_element}, {pick}) candidate sets exceed the oracle limit"
        )));
    }
    let mut best: Option<(u64, Vec<u64>)> = None;
    let mut examined = 0u64;
    let mut combo: Vec<u64> = (1..=pick as u64).collect();
    loop {
        examined += 1;
        let set: Vec<u64> = std::iter::once(0).chain(combo.iter().copied()).collect();
        let value = n_of(&BasisSet::from_sorted(&set)?, h)?.expect("0 is in the set");
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, set));
        }
        if !next_combination(&mut combo, max_element) {
            break;
        }
    }
    let (value, witness) = best.expect("at least one set");
    Ok(SearchResult {
        h,
        k,
        value,
        witness: BasisSet::from_sorted(&witness)?,
        nodes_explored: examined,
        proof_of_optimality: true,
    })
}

/// Advances an ascending combination of `[1, max]` in lexicographic order.
fn next_combination(c: &mut [u64], max: u64) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < max - (r - 1 - i) as u64 {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn single_fold_needs_every_integer() {
        for k in 1..8 {
            let r = extremal_n(1, k, BUDGET).unwrap();
            assert_eq!(r.value, k as u64 - 1);
            assert_eq!(r.witness.elements(), (0..k as u64).collect::<Vec<_>>());
        }
    }

    #[test]
    fn known_values() {
        let r = extremal_n(2, 3, BUDGET).unwrap();
        assert_eq!((r.value, r.witness.elements()), (4, &[0, 1, 2][..]));
        let r = extremal_n(2, 4, BUDGET).unwrap();
        assert_eq!((r.value, r.witness.elements()), (8, &[0, 1, 3, 4][..]));
        assert!(r.proof_of_optimality);
        // also frozen from an independent enumeration
        assert_eq!(extremal_n(2, 5, BUDGET).unwrap().value, 12);
        assert_eq!(extremal_n(2, 6, BUDGET).unwrap().value, 16);
        let h3: Vec<u64> = (1..=5)
            .map(|k| extremal_n(3, k, BUDGET).unwrap().value)
            .collect();
        assert_eq!(h3, vec![0, 3, 7, 15, 24]);
    }

    #[test]
    fn matches_oracle() {
        for h in 1..=3 {
            for k in 1..=5 {
                let fast = extremal_n(h, k, BUDGET).unwrap();
                let slow = oracle_exhaustive(h, k, None).unwrap();
                assert_eq!(fast.value, slow.value, "h={h} k={k}");
                assert_eq!(fast.witness, slow.witness, "h={h} k={k}");
                assert!(fast.proof_of_optimality);
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let r = oracle_exhaustive(2, 2, Some(10)).unwrap();
        assert_eq!((r.value, r.witness.elements()), (2, &[0, 1][..]));
        assert_eq!(oracle_exhaustive(2, 3, Some(10)).unwrap().value, 4);
        assert!(matches!(
            oracle_exhaustive(3, 9, None),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn witness_is_certified() {
        for (h, k) in [(2, 5), (3, 4), (4, 4)] {
            let r = extremal_n(h, k, BUDGET).unwrap();
            assert_eq!(n_of(&r.witness, h).unwrap(), Some(r.value));
            assert_eq!(r.witness.len(), k);
        }
    }

    #[test]
    fn monotone_in_k() {
        for h in 1..=4 {
            let vals: Vec<u64> = (1..=5)
                .map(|k| extremal_n(h, k, BUDGET).unwrap().value)
                .collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "h={h} {vals:?}");
        }
    }

    #[test]
    fn successor_rule_is_sound() {
        // Elements beyond first_gap never fill the gap.
        let prefix = [0u64, 1, 3];
        let h = 2;
        let c = n_of(&BasisSet::from_sorted(&prefix).unwrap(), h)
            .unwrap()
            .unwrap();
        for e in c + 2..c + 8 {
            for tail in [vec![], vec![e + 1], vec![e + 2, e + 5]] {
                let mut set = prefix.to_vec();
                set.push(e);
                set.extend(tail);
                assert_eq!(
                    n_of(&BasisSet::from_sorted(&set).unwrap(), h).unwrap(),
                    Some(c)
                );
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let r = extremal_n(3, 6, 20).unwrap();
        assert!(!r.proof_of_optimality);
        assert_eq!(r.nodes_explored, 20);
        assert!(n_of(&r.witness, 3).unwrap().unwrap() >= r.value);
    }

    #[test]
    fn zeta_examples() {
        let (k, w) = zeta_exact(2, 8, BUDGET).unwrap();
        assert_eq!(k, 4);
        assert!(n_of(&w, 2).unwrap().unwrap() >= 8);
        assert_eq!(
            zeta_exact(3, 0, BUDGET).unwrap(),
            (1, BasisSet::new([0]).unwrap())
        );
        for n in 0..12 {
            assert_eq!(zeta_exact(1, n, BUDGET).unwrap().0, n as usize + 1);
        }
        assert_eq!(zeta_exact(2, 9, BUDGET).unwrap().0, 5);
        assert_eq!(zeta_exact(3, 15, BUDGET).unwrap().0, 4);
        assert_eq!(zeta_exact(3, 16, BUDGET).unwrap().0, 5);
    }

    #[test]
    fn invalid_inputs() {
        assert!(extremal_n(2, 0, BUDGET).is_err());
        assert!(extremal_n(0, 2, BUDGET).is_err());
        assert!(matches!(
            extremal_n(10, 40, BUDGET),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn rohrbach_bracket_conventions() {
        // Literal bracket (k counts the zero) fails on degenerate rows.
        let one = extremal_n(1, 3, BUDGET).unwrap();
        assert!(!one.within_rohrbach_bracket());
        assert!(one.within_rohrbach_bracket_nonzero());
        let single = extremal_n(2, 1, BUDGET).unwrap();
        assert!(!single.within_rohrbach_bracket());
        let r = extremal_n(2, 4, BUDGET).unwrap();
        assert!(r.within_rohrbach_bracket() && r.within_rohrbach_bracket_nonzero());
    }
}
