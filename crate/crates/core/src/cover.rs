//! Greedy complements in the cyclic group `Z_q`.
//!
//! [`greedy_shift_cover`] repeatedly picks the translate `A + x` that covers the
//! most still-uncovered elements of a target `B`. Averaging over all `q`
//! shifts, some translate covers at least `|A|/q` of what is left, so the
//! greedy choice shrinks the uncovered part by a factor `(1 − |A|/q)` or
//! better on every step.
//!
//! [`k_complement`] chains `k` such rounds: the first `k − 1` grow the base
//! against all of `Z_q` with budget `t = ⌈(q ln q / |A|)^{1/k}⌉`, and the last
//! round gets `t + ⌈ln q⌉` shifts to finish the cover.

use crate::error::{Error, Result};
use crate::sumset::{residue_sumset, ResidueSet};

/// Result of one greedy run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftCover {
    /// Shifts in the order they were picked.
    pub picks: Vec<u64>,
    /// `B \ (A ⊕ X)`.
    pub remainder: ResidueSet,
    /// `trace[j]` is the number of uncovered elements of `B` after `j` picks;
    /// `trace[0] = |B|`.
    pub trace: Vec<usize>,
}

impl ShiftCover {
    pub fn shift_set(&self) -> ResidueSet {
        ResidueSet::new(self.remainder.modulus(), self.picks.iter().copied())
            .expect("picks are residues")
    }
}

fn same_modulus(a: &ResidueSet, b: &ResidueSet) -> Result<u64> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch {
            expected: a.modulus(),
            found: b.modulus(),
        });
    }
    Ok(a.modulus())
}

/// Picks at most `budget` shifts `X` greedily so that `A ⊕ X` covers as much
/// of `B` as possible. Ties go to the smallest shift; the run stops early once
/// `B` is covered.
pub fn greedy_shift_cover(a: &ResidueSet, b: &ResidueSet, budget: u64) -> Result<ShiftCover> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let q = same_modulus(a, b)? as usize;
    let sub = |x: usize, y: usize| if x >= y { x - y } else { x + q - y };
    let members: Vec<usize> = a.members().iter().map(|&x| x as usize).collect();

    let mut uncovered = vec![false; q];
    for &x in b.members() {
        uncovered[x as usize] = true;
    }
    let mut left = b.len();

    // gain[x] = |(A + x) ∩ uncovered|
    let mut gain: Vec<u32> = if b.is_full() {
        vec![members.len() as u32; q]
    } else {
        let mut g = vec![0u32; q];
        for &y in b.members() {
            for &m in &members {
                g[sub(y as usize, m)] += 1;
            }
        }
        g
    };

    let mut picks = Vec::new();
    let mut trace = vec![left];
    while left > 0 && (picks.len() as u64) < budget {
        let (best, _) =
            gain.iter().enumerate().fold(
                (0usize, 0u32),
                |acc, (x, &g)| if g > acc.1 { (x, g) } else { acc },
            );
        for &m in &members {
            let v = (m + best) % q;
            if uncovered[v] {
                uncovered[v] = false;
                left -= 1;
                for &m2 in &members {
                    gain[sub(v, m2)] -= 1;
                }
            }
        }
        picks.push(best as u64);
        trace.push(left);
    }

    let remainder = ResidueSet::new(
        q as u64,
        uncovered
            .iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| i as u64),
    )?;
    Ok(ShiftCover {
        picks,
        remainder,
        trace,
    })
}

/// Per-round shift budget `⌈(q ln q / α)^{1/k}⌉`.
pub fn round_budget(q: u64, alpha: u64, k: u32) -> u64 {
    let q = q as f64;
    ((q * q.ln() / alpha as f64).powf(1.0 / k as f64)).ceil() as u64
}

/// `k·⌈(q ln q / α)^{1/k}⌉ + ⌈ln q⌉`.
pub fn complement_size_bound(q: u64, alpha: u64, k: u32) -> u64 {
    k as u64 * round_budget(q, alpha, k) + (q as f64).ln().ceil() as u64
}

/// `k` shift families whose iterated sum with `base` is `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementFamily {
    pub q: u64,
    pub base: ResidueSet,
    pub families: Vec<ResidueSet>,
    /// Budget `t` for rounds `1..k`.
    pub round_budget: u64,
    /// Budget `t + ⌈ln q⌉` for the last round.
    pub final_budget: u64,
    /// `base ⊕ X₁ ⊕ … ⊕ X_k = Z_q`, as checked by [`residue_sumset`].
    pub complete: bool,
    /// The last round needed more than `final_budget` shifts.
    pub over_budget: bool,
}

impl ComplementFamily {
    pub fn family_sizes(&self) -> Vec<usize> {
        self.families.iter().map(ResidueSet::len).collect()
    }

    pub fn total_shifts(&self) -> usize {
        self.families.iter().map(ResidueSet::len).sum()
    }

    /// `X₁ ∪ … ∪ X_k`.
    pub fn union(&self) -> ResidueSet {
        ResidueSet::new(
            self.q,
            self.families
                .iter()
                .flat_map(|f| f.members().iter().copied()),
        )
        .expect("family members are residues")
    }

    pub fn union_size(&self) -> usize {
        self.union().len()
    }
}

pub fn k_complement(a: &ResidueSet, k: u32) -> Result<ComplementFamily> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let q = a.modulus();
    if q == 1 {
        return Ok(ComplementFamily {
            q,
            base: a.clone(),
            families: Vec::new(),
            round_budget: 0,
            final_budget: 0,
            complete: true,
            over_budget: false,
        });
    }
    let full = ResidueSet::full(q)?;
    let t = round_budget(q, a.len() as u64, k);
    let t_final = t + (q as f64).ln().ceil() as u64;

    let mut grown = a.clone();
    let mut families = Vec::with_capacity(k as usize);
    for _ in 1..k {
        let run = greedy_shift_cover(&grown, &full, t)?;
        // An already complete base still needs a non-empty family.
        let family = if run.picks.is_empty() {
            ResidueSet::new(q, [0])?
        } else {
            run.shift_set()
        };
        grown = complement_of(&run.remainder);
        families.push(family);
    }
    // Unlimited budget: the first t_final picks are what a budgeted run
    // would have chosen, and anything beyond is the over-budget tail.
    let last = greedy_shift_cover(&grown, &full, q)?;
    let over_budget = last.picks.len() as u64 > t_final;
    families.push(if last.picks.is_empty() {
        ResidueSet::new(q, [0])?
    } else {
        last.shift_set()
    });

    let complete = residue_sumset(a, &families)?.is_full();
    Ok(ComplementFamily {
        q,
        base: a.clone(),
        families,
        round_budget: t,
        final_budget: t_final,
        complete,
        over_budget,
    })
}

fn complement_of(set: &ResidueSet) -> ResidueSet {
    let q = set.modulus();
    let mut missing = vec![true; q as usize];
    for &m in set.members() {
        missing[m as usize] = false;
    }
    ResidueSet::new(
        q,
        missing
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64),
    )
    .expect("indices below q")
}
