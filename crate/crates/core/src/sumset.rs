//! Exact h-fold sumsets over `[0, limit]` and over `Z_q`.
//!
//! Everything here counts sums of *exactly* `h` elements with repetition. When
//! `0` belongs to the set this coincides with "at most `h`" sums, which is the
//! usual postage-stamp reading.
//!
//! The integer sumset is a layered dynamic program: layer `i + 1` is the union
//! of layer `i` shifted by every element, truncated at `limit`. Truncation is
//! exact because all elements are non-negative, so a partial sum that already
//! exceeds `limit` can never come back into range.

use crate::bits::BitSet;
use crate::error::{Error, Result};

/// Largest coverage map we are willing to allocate (in bits).
pub const MAX_LIMIT: u64 = 1 << 34;

/// Sorted, distinct, non-empty set of non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisSet(Vec<u64>);

impl BasisSet {
    /// Builds a set from arbitrary elements; input order and duplicates are
    /// normalised away.
    pub fn new(elements: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = elements.into_iter().collect();
        if v.is_empty() {
            return Err(Error::EmptySet);
        }
        v.sort_unstable();
        v.dedup();
        Ok(BasisSet(v))
    }

    /// Accepts a slice that must already be strictly increasing.
    pub fn from_sorted(elements: &[u64]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "elements must be strictly increasing".into(),
            ));
        }
        Ok(BasisSet(elements.to_vec()))
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("non-empty")
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn union(&self, other: &BasisSet) -> BasisSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BasisSet::new(v).expect("union of non-empty sets")
    }
}

/// Membership map of `hA ∩ [0, limit]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageMap {
    h: u32,
    bits: BitSet,
}

impl CoverageMap {
    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn limit(&self) -> u64 {
        self.bits.len() as u64 - 1
    }

    pub fn contains(&self, x: u64) -> bool {
        x <= self.limit() && self.bits.get(x as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64)
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones()
    }

    /// Least integer in `[0, limit]` that is not an h-fold sum.
    pub fn first_gap(&self) -> Option<u64> {
        self.bits.first_zero().map(|i| i as u64)
    }

    pub fn is_subset_of(&self, other: &CoverageMap) -> bool {
        self.bits.is_subset_of(&other.bits)
    }
}

fn check_h(h: u32) -> Result<()> {
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    Ok(())
}

fn check_limit(limit: u64) -> Result<usize> {
    if limit >= MAX_LIMIT {
        return Err(Error::TooLarge(format!(
            "coverage limit {limit} exceeds {MAX_LIMIT}"
        )));
    }
    Ok(limit as usize + 1)
}

/// All `h` layers `1A, 2A, …, hA` truncated at a common limit. Kept around so
/// that many witnesses can be extracted without recomputing the DP.
#[derive(Clone, Debug)]
pub struct SumsetLayers {
    elements: Vec<u64>,
    layers: Vec<BitSet>,
}

impl SumsetLayers {
    pub fn build(a: &BasisSet, h: u32, limit: u64) -> Result<Self> {
        check_h(h)?;
        let len = check_limit(limit)?;
        let mut first = BitSet::new(len);
        for &x in a.elements().iter().take_while(|&&x| x <= limit) {
            first.set(x as usize);
        }
        let mut layers = Vec::with_capacity(h as usize);
        layers.push(first);
        for _ in 1..h {
            let next = BitSet::union_of_shifts(layers.last().expect("one layer"), a.elements());
            layers.push(next);
        }
        Ok(SumsetLayers {
            elements: a.elements().to_vec(),
            layers,
        })
    }

    pub fn h(&self) -> u32 {
        self.layers.len() as u32
    }

    pub fn limit(&self) -> u64 {
        self.layers[0].len() as u64 - 1
    }

    pub fn contains(&self, z: u64) -> bool {
        z <= self.limit() && self.layers[self.layers.len() - 1].get(z as usize)
    }

    /// An ascending multiset of exactly `h` elements summing to `z`, chosen by
    /// walking the layers downward and always taking the largest feasible
    /// element.
    pub fn witness(&self, z: u64) -> Option<Vec<u64>> {
        if !self.contains(z) {
            return None;
        }
        let mut rest = z;
        let mut parts = Vec::with_capacity(self.layers.len());
        for level in (1..=self.layers.len()).rev() {
            let pick = self
                .elements
                .iter()
                .rev()
                .copied()
                .filter(|&e| e <= rest)
                .find(|&e| {
                    if level == 1 {
                        e == rest
                    } else {
                        self.layers[level - 2].get((rest - e) as usize)
                    }
                })
                .expect("layer membership guarantees a predecessor");
            parts.push(pick);
            rest -= pick;
        }
        parts.reverse();
        Some(parts)
    }

    pub fn into_coverage(mut self) -> CoverageMap {
        let h = self.h();
        CoverageMap {
            h,
            bits: self.layers.pop().expect("at least one layer"),
        }
    }
}

/// `hA ∩ [0, limit]`.
pub fn h_fold_coverage(a: &BasisSet, h: u32, limit: u64) -> Result<CoverageMap> {
    Ok(SumsetLayers::build(a, h, limit)?.into_coverage())
}

/// Largest `n` with `[0, n] ⊆ hA`, or `None` when `0 ∉ A`.
///
/// The scan grows geometrically up to `h·max(A)`; coverage of a prefix does not
/// depend on how far the DP is truncated, so the first gap found in a short
/// window is final.
pub fn n_of(a: &BasisSet, h: u32) -> Result<Option<u64>> {
    check_h(h)?;
    if !a.contains(0) {
        return Ok(None);
    }
    let ceiling = a
        .max()
        .checked_mul(h as u64)
        .ok_or(Error::Overflow("h·max(A)"))?;
    let mut window = 1024u64.min(ceiling);
    loop {
        let cov = h_fold_coverage(a, h, window)?;
        if let Some(gap) = cov.first_gap() {
            return Ok(Some(gap - 1));
        }
        if window == ceiling {
            return Ok(Some(ceiling));
        }
        window = window.saturating_mul(4).min(ceiling);
    }
}

/// Outcome of checking `[0, n] ⊆ hA`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub ok: bool,
    pub first_gap: Option<u64>,
}

pub fn verify_basis(a: &BasisSet, h: u32, n: u64) -> Result<Certificate> {
    let cov = h_fold_coverage(a, h, n)?;
    let first_gap = cov.first_gap();
    Ok(Certificate {
        ok: first_gap.is_none(),
        first_gap,
    })
}

/// Ascending multiset of `h` elements of `A` summing to `z`, if one exists.
pub fn witness(a: &BasisSet, h: u32, z: u64) -> Result<Option<Vec<u64>>> {
    Ok(SumsetLayers::build(a, h, z)?.witness(z))
}

/// A subset of `Z_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u64,
    members: Vec<u64>,
}

impl ResidueSet {
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        let mut v: Vec<u64> = members.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&x| x >= modulus) {
            return Err(Error::ResidueOutOfRange {
                value: bad,
                modulus,
            });
        }
        v.sort_unstable();
        v.dedup();
        Ok(ResidueSet {
            modulus,
            members: v,
        })
    }

    /// Reduces arbitrary integers modulo `modulus`.
    pub fn reduce(modulus: u64, values: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be at least 1".into()));
        }
        ResidueSet::new(modulus, values.into_iter().map(|v| v % modulus))
    }

    pub fn full(modulus: u64) -> Result<Self> {
        ResidueSet::new(modulus, 0..modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() as u64 == self.modulus
    }

    pub fn contains(&self, x: u64) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub(crate) fn to_bitset(&self) -> BitSet {
        let mut b = BitSet::new(self.modulus as usize);
        for &m in &self.members {
            b.set(m as usize);
        }
        b
    }

    pub(crate) fn from_bitset(modulus: u64, bits: &BitSet) -> Self {
        ResidueSet {
            modulus,
            members: bits.iter_ones().map(|i| i as u64).collect(),
        }
    }
}

/// `base ⊕ X₁ ⊕ … ⊕ X_k` in `Z_q`.
pub fn residue_sumset(base: &ResidueSet, families: &[ResidueSet]) -> Result<ResidueSet> {
    let q = base.modulus;
    if let Some(f) = families.iter().find(|f| f.modulus != q) {
        return Err(Error::ModulusMismatch {
            expected: q,
            found: f.modulus,
        });
    }
    let mut acc = base.to_bitset();
    for family in families {
        acc = cyclic_sumset(&acc, family.members());
    }
    Ok(ResidueSet::from_bitset(q, &acc))
}

/// `S ⊕ X` on a bit set of length `q`.
pub(crate) fn cyclic_sumset(set: &BitSet, shifts: &[u64]) -> BitSet {
    let q = set.len();
    let mut out = BitSet::new(q);
    for &x in shifts {
        let x = x as usize;
        out.or_shifted_up(set, x);
        if x > 0 {
            out.or_shifted_down(set, q - x);
        }
    }
    out
}
