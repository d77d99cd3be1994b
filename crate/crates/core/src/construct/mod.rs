//! The composite four-part h-basis `G = A ∪ B ∪ C ∪ D`.
//!
//! With `p = ⌈n^{1/h}⌉` and `q = p^{h−a+k}`:
//!
//! * `A` is a digit basis covering `[0, hq]` on its own;
//! * `B` is a `B_{h−a}` set whose `(h−a)`-fold sums `H` are all distinct;
//! * `C` holds `k` shift families with `H̄ ⊕ X₁ ⊕ … ⊕ X_k = Z_q`, where `H̄` is
//!   `H` reduced mod `q`;
//! * `D = { j·p^i : 0 ≤ j < p, h−a+k ≤ i < h }` supplies the high digits.
//!
//! A target `z = sq + r ≥ hq` is written as `x + y + (s − t)q`, where `x ∈ H`,
//! `y` takes one element from each `X_i`, `x + y = r + tq`, and `s − t` is
//! spelled out in base `p` with `a − k` elements of `D`.

mod plan;

pub use plan::{
    loglog_coefficient, plan_params, tau, ConstructionPlan, Feasibility, PredictedSizes,
    MAX_MODULUS, MAX_SIDON_SUMS,
};

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::cover::{k_complement, ComplementFamily};
use crate::error::{Error, Result};
use crate::sidon::bose_chowla;
use crate::sumset::{verify_basis, BasisSet, Certificate, ResidueSet, SumsetLayers};

/// Most tuples `decompose` will try across the shift families.
pub const MAX_DECOMPOSE_TUPLES: u64 = 100_000_000;

/// `{ j·b^i : 0 ≤ j < b, 0 ≤ i < h }`, an h-basis of `[0, b^h − 1]`.
pub fn digit_basis(b: u64, h: u32) -> Result<BasisSet> {
    if b < 2 {
        return Err(Error::InvalidParameter(
            "digit base must be at least 2".into(),
        ));
    }
    if h == 0 {
        return Err(Error::InvalidParameter("h must be at least 1".into()));
    }
    b.checked_pow(h - 1)
        .and_then(|v| v.checked_mul(b - 1))
        .ok_or(Error::Overflow("digit basis element"))?;
    let mut elements = Vec::with_capacity(1 + h as usize * (b as usize - 1));
    let mut power = 1u64;
    for i in 0..h {
        if i > 0 {
            power *= b;
        }
        elements.extend((0..b).map(|j| j * power));
    }
    BasisSet::new(elements)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    A,
    B,
    C,
    D,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::A => "A",
            Component::B => "B",
            Component::C => "C",
            Component::D => "D",
        }
    }
}

/// Realised component sizes. `overlap = a + b + c + d − total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComponentSizes {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub total: usize,
}

impl ComponentSizes {
    pub fn overlap(&self) -> usize {
        self.a + self.b + self.c + self.d - self.total
    }
}

#[derive(Debug)]
pub struct ConstructionResult {
    pub plan: ConstructionPlan,
    pub basis: BasisSet,
    pub a: BasisSet,
    /// The `B_{h−a}` set, ascending.
    pub b: Vec<u64>,
    /// `X₁ ∪ … ∪ X_k` as integers in `[0, q)`.
    pub c: Vec<u64>,
    pub d: Vec<u64>,
    pub complement: ComplementFamily,
    /// Number of distinct residues in `H̄`.
    pub residues_of_h: usize,
    pub certificate: Certificate,
    /// Smallest element of `H` in each residue class mod `q`.
    min_rep: HashMap<u64, u64>,
    low_layers: OnceLock<SumsetLayers>,
}

impl ConstructionResult {
    pub fn verified(&self) -> bool {
        self.certificate.ok
    }

    pub fn sizes(&self) -> ComponentSizes {
        ComponentSizes {
            a: self.a.len(),
            b: self.b.len(),
            c: self.c.len(),
            d: self.d.len(),
            total: self.basis.len(),
        }
    }

    /// `|G| / n^{1/h}`.
    pub fn ratio(&self) -> f64 {
        self.basis.len() as f64 / (self.plan.n as f64).powf(1.0 / self.plan.h as f64)
    }

    fn low_layers(&self) -> Result<&SumsetLayers> {
        if let Some(layers) = self.low_layers.get() {
            return Ok(layers);
        }
        let layers = SumsetLayers::build(&self.a, self.plan.h, self.plan.low_range() - 1)?;
        Ok(self.low_layers.get_or_init(|| layers))
    }
}

/// Calls `visit(sum)` for every `order`-multiset of `values`.
fn for_each_multiset_sum(values: &[u64], order: u32, visit: &mut impl FnMut(u64)) {
    fn rec(values: &[u64], start: usize, left: u32, acc: u64, visit: &mut impl FnMut(u64)) {
        if left == 0 {
            visit(acc);
            return;
        }
        for i in start..values.len() {
            rec(values, i, left - 1, acc + values[i], visit);
        }
    }
    rec(values, 0, order, 0, visit);
}

/// Some `order`-multiset of the ascending `values` summing to `x`.
fn multiset_with_sum(values: &[u64], order: u32, x: u64) -> Option<Vec<u64>> {
    fn rec(values: &[u64], end: usize, left: u32, rest: u64, out: &mut Vec<u64>) -> bool {
        if left == 0 {
            return rest == 0;
        }
        for i in (0..end).rev() {
            let v = values[i];
            if v > rest || v.saturating_mul(left as u64) < rest {
                continue;
            }
            out.push(v);
            if rec(values, i + 1, left - 1, rest - v, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut out = Vec::with_capacity(order as usize);
    rec(values, values.len(), order, x, &mut out).then(|| {
        out.reverse();
        out
    })
}

/// Builds `G` for `plan` and checks `[0, n] ⊆ hG`.
pub fn build_theorem1(plan: &ConstructionPlan) -> Result<ConstructionResult> {
    let (h, p, q) = (plan.h, plan.p, plan.q);
    let order = plan.sidon_order();

    let b: Vec<u64> = if order == 1 {
        (0..plan.sidon_prime).collect()
    } else {
        bose_chowla(plan.sidon_prime, order)?.elements
    };
    b.iter()
        .last()
        .and_then(|&m| m.checked_mul(order as u64))
        .ok_or(Error::Overflow("(h−a)·max(B)"))?;

    let mut min_rep: HashMap<u64, u64> = HashMap::new();
    for_each_multiset_sum(&b, order, &mut |x| {
        min_rep
            .entry(x % q)
            .and_modify(|best| *best = (*best).min(x))
            .or_insert(x);
    });
    let h_bar = ResidueSet::new(q, min_rep.keys().copied())?;
    let complement = k_complement(&h_bar, plan.k)?;
    let c: Vec<u64> = complement.union().members().to_vec();

    let mut d = Vec::new();
    for i in (h - plan.a + plan.k)..h {
        let power = p.checked_pow(i).ok_or(Error::Overflow("p^i"))?;
        for j in 0..p {
            d.push(j.checked_mul(power).ok_or(Error::Overflow("j·p^i"))?);
        }
    }
    d.sort_unstable();
    d.dedup();

    let a = digit_basis(plan.predicted.digit_base, h)?;
    let basis = BasisSet::new(a.elements().iter().chain(&b).chain(&c).chain(&d).copied())?;
    let certificate = verify_basis(&basis, h, plan.n)?;

    Ok(ConstructionResult {
        plan: plan.clone(),
        basis,
        a,
        b,
        c,
        d,
        complement,
        residues_of_h: h_bar.len(),
        certificate,
        min_rep,
        low_layers: OnceLock::new(),
    })
}

/// `z` as a sum of exactly `h` elements of `G`, each tagged with its part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub z: u64,
    pub parts: Vec<(Component, u64)>,
}

impl Decomposition {
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&(_, v)| v).sum()
    }
}

/// Explicit representation of `z ∈ [0, n]` through the four components.
pub fn decompose(z: u64, result: &ConstructionResult) -> Result<Decomposition> {
    let plan = &result.plan;
    if !result.verified() {
        return Err(Error::InvalidParameter(
            "construction did not verify".into(),
        ));
    }
    if z > plan.n {
        return Err(Error::InvalidParameter(format!(
            "{z} lies outside [0, {}]",
            plan.n
        )));
    }
    let (h, q, p) = (plan.h as u64, plan.q, plan.p);

    if z < plan.low_range() {
        let parts = result
            .low_layers()?
            .witness(z)
            .ok_or_else(|| Error::Counterexample {
                z,
                reason: "no witness in the digit basis".into(),
            })?;
        return Ok(Decomposition {
            z,
            parts: parts.into_iter().map(|v| (Component::A, v)).collect(),
        });
    }

    let (s, r) = (z / q, z % q);
    let families = &result.complement.families;
    let tuples = families
        .iter()
        .try_fold(1u64, |acc, f| acc.checked_mul(f.len() as u64))
        .filter(|&t| t <= MAX_DECOMPOSE_TUPLES)
        .ok_or_else(|| Error::TooLarge("too many shift tuples".into()))?;

    // Odometer over X₁ × … × X_k, keeping the smallest x + y.
    let mut idx = vec![0usize; families.len()];
    let mut best: Option<(u64, Vec<u64>, u64)> = None;
    for _ in 0..tuples {
        let ys: Vec<u64> = idx
            .iter()
            .zip(families)
            .map(|(&i, f)| f.members()[i])
            .collect();
        let y: u64 = ys.iter().sum();
        let want = (r + q - y % q) % q;
        if let Some(&x) = result.min_rep.get(&want) {
            if best.as_ref().is_none_or(|(total, _, _)| x + y < *total) {
                best = Some((x + y, ys, x));
            }
        }
        for (slot, f) in idx.iter_mut().zip(families).rev() {
            *slot += 1;
            if *slot < f.len() {
                break;
            }
            *slot = 0;
        }
    }
    let (total, ys, x) = best.ok_or_else(|| Error::Counterexample {
        z,
        reason: "residue not reached by the complement".into(),
    })?;

    let t = (total - r) / q;
    if t >= h {
        return Err(Error::Counterexample {
            z,
            reason: format!("carry t = {t} is not below h = {h}"),
        });
    }
    if s < t {
        return Err(Error::Counterexample {
            z,
            reason: format!("s = {s} is smaller than the carry t = {t}"),
        });
    }
    let digits_len = plan.a - plan.k;
    let mut rest = s - t;
    let span = p
        .checked_pow(digits_len)
        .ok_or(Error::Overflow("p^(a−k)"))?;
    if rest >= span {
        return Err(Error::Counterexample {
            z,
            reason: format!("s − t = {rest} needs more than {digits_len} base-{p} digits"),
        });
    }

    let mut parts = Vec::with_capacity(h as usize);
    let xs =
        multiset_with_sum(&result.b, plan.sidon_order(), x).expect("min_rep only stores sums of B");
    parts.extend(xs.into_iter().map(|v| (Component::B, v)));
    parts.extend(ys.into_iter().map(|v| (Component::C, v)));
    let base_exp = (plan.h - plan.a + plan.k) as u64;
    for j in 0..digits_len as u64 {
        let digit = rest % p;
        rest /= p;
        parts.push((Component::D, digit * p.pow((base_exp + j) as u32)));
    }

    let dec = Decomposition { z, parts };
    let in_part = |c: Component, v: u64| match c {
        Component::A => result.a.contains(v),
        Component::B => result.b.binary_search(&v).is_ok(),
        Component::C => result.c.binary_search(&v).is_ok(),
        Component::D => result.d.binary_search(&v).is_ok(),
    };
    if dec.parts.len() as u64 != h
        || dec.sum() != z
        || !dec.parts.iter().all(|&(c, v)| in_part(c, v))
    {
        return Err(Error::Counterexample {
            z,
            reason: "assembled parts do not form a valid representation".into(),
        });
    }
    Ok(dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidon::is_bk;
    use crate::sumset::{n_of, residue_sumset};
    use proptest::prelude::*;

    #[test]
    fn digit_basis_examples() {
        let a = digit_basis(3, 2).unwrap();
        assert_eq!(a.elements(), &[0, 1, 2, 3, 6]);
        assert_eq!(n_of(&a, 2).unwrap(), Some(9));
        assert_eq!(digit_basis(10, 3).unwrap().len(), 28);
        assert!(digit_basis(1, 3).is_err());
    }

    #[test]
    fn digit_basis_reaches_b_pow_h_minus_one() {
        for b in 2..6u64 {
            for h in 1..5u32 {
                let a = digit_basis(b, h).unwrap();
                assert_eq!(a.len() as u64, 1 + h as u64 * (b - 1));
                assert!(n_of(&a, h).unwrap().unwrap() >= b.pow(h) - 1);
            }
        }
    }

    fn check_components(res: &ConstructionResult) {
        let plan = &res.plan;
        assert!(res.verified(), "{:?}", res.certificate);
        assert!(is_bk(&res.b, plan.sidon_order(), None));
        assert_eq!(res.b.len() as u64, plan.sidon_prime);
        assert!(res.complement.complete);
        let h_bar = ResidueSet::new(plan.q, res.min_rep.keys().copied()).unwrap();
        assert!(residue_sumset(&h_bar, &res.complement.families)
            .unwrap()
            .is_full());
        if plan.a > plan.k {
            assert_eq!(
                res.d.len() as u64,
                1 + (plan.p - 1) * (plan.a - plan.k) as u64
            );
        }
        assert!(n_of(&res.a, plan.h).unwrap().unwrap() >= plan.low_range());
        for part in [res.a.elements(), &res.b, &res.c, &res.d] {
            assert!(part.iter().all(|&v| res.basis.contains(v)));
        }
    }

    #[test]
    fn small_override_builds_and_decomposes() {
        let plan = plan_params(10_000, 3, Some((1, 2))).unwrap();
        let res = build_theorem1(&plan).unwrap();
        check_components(&res);
        assert_eq!(res.b, (0..23).collect::<Vec<_>>());
        for z in 0..=plan.n {
            let dec = decompose(z, &res).unwrap();
            assert_eq!(dec.parts.len(), 3);
            assert_eq!(dec.sum(), z);
        }
        assert!(decompose(plan.n + 1, &res).is_err());
    }

    #[test]
    fn two_step_sidon_component() {
        let plan = plan_params(100_000, 4, Some((1, 2))).unwrap();
        assert_eq!(plan.sidon_order(), 2);
        let res = build_theorem1(&plan).unwrap();
        check_components(&res);
        let high = res.plan.low_range();
        for z in (high..=plan.n).step_by(37).chain([plan.n]) {
            let dec = decompose(z, &res).unwrap();
            assert!(dec.parts.iter().any(|&(c, _)| c == Component::B));
        }
    }

    #[test]
    fn grid_plan_builds() {
        let plan = plan_params(100_000, 4, None).unwrap();
        let res = build_theorem1(&plan).unwrap();
        check_components(&res);
        assert_eq!(res.sizes().total, res.basis.len());
    }

    #[test]
    fn low_targets_use_only_a() {
        let plan = plan_params(10_000, 3, Some((1, 2))).unwrap();
        let res = build_theorem1(&plan).unwrap();
        let dec = decompose(plan.low_range() - 1, &res).unwrap();
        assert!(dec.parts.iter().all(|&(c, _)| c == Component::A));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn decomposition_is_valid(n in 2_000u64..40_000, h in 3u32..5) {
            let plan = plan_params(n, h, None).unwrap();
            let res = build_theorem1(&plan).unwrap();
            prop_assert!(res.verified());
            for z in (0..=n).step_by(97).chain([n]) {
                let dec = decompose(z, &res).unwrap();
                prop_assert_eq!(dec.sum(), z);
                prop_assert_eq!(dec.parts.len(), h as usize);
            }
        }
    }
}
