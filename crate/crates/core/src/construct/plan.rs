//! Parameter planning for the composite construction.

use crate::bounds::binomial;
use crate::cover::complement_size_bound;
use crate::error::{Error, Result};
use crate::primes::{ceil_root, next_prime};
use crate::sidon::field::MAX_FIELD_ORDER;
use num_traits::ToPrimitive;

/// Largest cyclic modulus the complement stage will work in.
pub const MAX_MODULUS: u64 = 1 << 27;
/// Largest number of `(h − a)`-multisets of the Sidon set we enumerate.
pub const MAX_SIDON_SUMS: u64 = 20_000_000;

/// Root in `(0, 1)` of `e^t (1 − t) = e^{−1}`, by bisection.
pub fn tau() -> f64 {
    let f = |t: f64| t.exp() * (1.0 - t) - (-1.0f64).exp();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `(e^τ − e^{−1}) / τ`, the coefficient of `ln ln n` in the size bound.
pub fn loglog_coefficient() -> f64 {
    let t = tau();
    (t.exp() - (-1.0f64).exp()) / t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// `k = ⌈ln ln n / τ⌉`, `a = k + ⌈2 ln h⌉`.
    Formula,
    /// Best `(k, a)` on the grid `1 ≤ k ≤ a ≤ h − 2` by predicted size.
    GridFallback,
    /// Caller-supplied `(k, a)`.
    Override,
}

impl Feasibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Feasibility::Formula => "formula",
            Feasibility::GridFallback => "grid-fallback",
            Feasibility::Override => "override",
        }
    }
}

/// Size estimates for each component, used to rank grid candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictedSizes {
    /// Base of the digit basis standing in for the `[0, hq]` basis.
    pub digit_base: u64,
    pub a: u64,
    pub b: u64,
    /// Upper estimate from the complement size bound.
    pub c: u64,
    pub d: u64,
}

impl PredictedSizes {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionPlan {
    pub n: u64,
    pub h: u32,
    /// `⌈n^{1/h}⌉`.
    pub p: u64,
    /// Complement rounds.
    pub k: u32,
    pub a: u32,
    /// `p^{h−a} · (h−a)!`.
    pub m: u64,
    /// `p^{h−a+k}`.
    pub q: u64,
    /// Smallest prime `≥ ⌈m^{1/(h−a)}⌉`; the Sidon set has this many elements.
    pub sidon_prime: u64,
    pub tau: f64,
    pub feasibility: Feasibility,
    pub predicted: PredictedSizes,
}

impl ConstructionPlan {
    /// Order of the Sidon condition, `h − a`.
    pub fn sidon_order(&self) -> u32 {
        self.h - self.a
    }

    /// Below `h·q` the digit basis alone covers everything.
    pub fn low_range(&self) -> u64 {
        self.h as u64 * self.q
    }
}

fn factorial(n: u32) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i))
}

/// Builds and sizes the plan for fixed `(k, a)`.
fn plan_for(
    n: u64,
    h: u32,
    p: u64,
    k: u32,
    a: u32,
    feasibility: Feasibility,
) -> Result<ConstructionPlan> {
    let order = h - a;
    let m = p
        .checked_pow(order)
        .and_then(|v| v.checked_mul(factorial(order)?))
        .ok_or(Error::Overflow("m = p^(h-a)·(h-a)!"))?;
    let q = p
        .checked_pow(h - a + k)
        .ok_or(Error::Overflow("q = p^(h-a+k)"))?;
    if q > MAX_MODULUS {
        return Err(Error::TooLarge(format!(
            "modulus q = {q} exceeds {MAX_MODULUS}"
        )));
    }
    let sidon_prime = next_prime(ceil_root(m, order)).ok_or(Error::Overflow("Sidon prime"))?;
    if order >= 2 {
        let field_ok = sidon_prime
            .checked_pow(order)
            .is_some_and(|s| s - 1 <= MAX_FIELD_ORDER);
        if !field_ok {
            return Err(Error::TooLarge(format!(
                "GF({sidon_prime}^{order}) is too large"
            )));
        }
    }
    let sums = binomial(sidon_prime + order as u64 - 1, order as u64)
        .to_u64()
        .filter(|&s| s <= MAX_SIDON_SUMS)
        .ok_or_else(|| Error::TooLarge("too many Sidon sums".into()))?;
    let hq = (h as u64).checked_mul(q).ok_or(Error::Overflow("h·q"))?;
    let digit_base = ceil_root(hq.checked_add(1).ok_or(Error::Overflow("h·q + 1"))?, h).max(2);
    let predicted = PredictedSizes {
        digit_base,
        a: 1 + h as u64 * (digit_base - 1),
        b: sidon_prime,
        c: complement_size_bound(q, sums.min(q), k),
        d: if a > k {
            1 + (p - 1) * (a - k) as u64
        } else {
            0
        },
    };
    Ok(ConstructionPlan {
        n,
        h,
        p,
        k,
        a,
        m,
        q,
        sidon_prime,
        tau: tau(),
        feasibility,
        predicted,
    })
}

/// Chooses `p`, `k`, `a` and the derived sizes for an h-basis of `[0, n]`.
pub fn plan_params(n: u64, h: u32, overrides: Option<(u32, u32)>) -> Result<ConstructionPlan> {
    if h <= 2 {
        return Err(Error::Infeasible(format!(
            "h = {h}: the composite construction needs h ≥ 3"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let p = ceil_root(n, h);

    if let Some((k, a)) = overrides {
        if !(1 <= k && k <= a && a < h) {
            return Err(Error::Infeasible(format!(
                "need 1 ≤ k ≤ a < h, got k = {k}, a = {a}, h = {h}"
            )));
        }
        return plan_for(n, h, p, k, a, Feasibility::Override);
    }

    let t = tau();
    let k_formula = ((n as f64).ln().ln() / t).ceil();
    let a_formula = k_formula + (2.0 * (h as f64).ln()).ceil();
    if k_formula >= 1.0 && a_formula < h as f64 {
        return plan_for(
            n,
            h,
            p,
            k_formula as u32,
            a_formula as u32,
            Feasibility::Formula,
        );
    }

    let mut best: Option<ConstructionPlan> = None;
    for k in 1..=h - 2 {
        for a in k..=h - 2 {
            let Ok(plan) = plan_for(n, h, p, k, a, Feasibility::GridFallback) else {
                continue;
            };
            if best
                .as_ref()
                .is_none_or(|b| plan.predicted.total() < b.predicted.total())
            {
                best = Some(plan);
            }
        }
    }
    best.ok_or_else(|| {
        Error::Infeasible(format!(
            "no (k, a) on the grid is workable for n = {n}, h = {h}"
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `e^t (1 − t) − e^{−1}` evaluated independently of the bisection.
    fn residual(t: f64) -> f64 {
        t.exp() * (1.0 - t) - (-1.0f64).exp()
    }

    #[test]
    fn tau_solves_its_equation() {
        let t = tau();
        assert!(residual(t).abs() <= 1e-12);
        // reference root from an independent high-precision solve
        assert!((t - 0.841_405_660_436_96).abs() < 1e-12);
        assert!((loglog_coefficient() - 2.319_625_291_703_52).abs() < 1e-9);
        assert!((loglog_coefficient() - 2.32).abs() <= 0.01);
    }

    #[test]
    fn formula_infeasible_at_desk_scale() {
        let plan = plan_params(1_000_000, 4, None).unwrap();
        assert_eq!(plan.feasibility, Feasibility::GridFallback);
        assert_eq!(plan.p, 32);
        assert!(1 <= plan.k && plan.k <= plan.a && plan.a <= 2);
    }

    #[test]
    fn overrides() {
        let plan = plan_params(1_000_000, 4, Some((1, 2))).unwrap();
        assert_eq!((plan.p, plan.m, plan.q), (32, 2048, 32768));
        assert_eq!(plan.feasibility, Feasibility::Override);
        assert_eq!(plan.sidon_prime, 47); // ⌈√2048⌉ = 46
        let plan = plan_params(10_000, 3, Some((1, 2))).unwrap();
        assert_eq!(
            (plan.p, plan.q, plan.m, plan.sidon_prime),
            (22, 484, 22, 23)
        );
        assert!(matches!(
            plan_params(1000, 4, Some((2, 1))),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            plan_params(1000, 4, Some((1, 4))),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            plan_params(1000, 4, Some((0, 1))),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn formula_path_for_large_h() {
        // ln ln 10^6 / τ ≈ 3.12 → k = 4, a = 4 + ⌈2 ln 20⌉ = 10 < 20
        let plan = plan_params(1_000_000, 20, None).unwrap();
        assert_eq!(plan.feasibility, Feasibility::Formula);
        assert_eq!((plan.k, plan.a, plan.p), (4, 10, 2));
        assert_eq!(plan.q, 1 << 14);
    }

    #[test]
    fn rejects_small_h_and_n() {
        assert!(matches!(
            plan_params(100, 2, None),
            Err(Error::Infeasible(_))
        ));
        assert!(plan_params(1, 3, None).is_err());
    }

    #[test]
    fn grid_plans_are_valid() {
        for h in 3..=8 {
            for n in [100u64, 5_000, 1_000_000, 50_000_000] {
                let plan = plan_params(n, h, None).unwrap();
                assert!(1 <= plan.k && plan.k <= plan.a && plan.a < h, "{plan:?}");
                assert_eq!(Some(plan.q), plan.p.checked_pow(h - plan.a + plan.k));
            }
        }
    }
}
