//! Closed-form bounds on `n(h, k)` and `ζ(h, n)`.
//!
//! Rational formulas are evaluated exactly; anything with a fractional power or
//! a logarithm is `f64`. Several published bounds carry `o(·)`/`O(·)` error
//! terms that cannot be evaluated. Only their main terms are returned, and each
//! [`BoundReport`] says which term was dropped.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::format::fmt_real;

/// Coefficient of `ln ln n` in the composite-construction size bound.
pub const THEOREM1_LOGLOG_COEFF: f64 = 2.32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Lower,
    Upper,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Lower => "lower",
            Direction::Upper => "upper",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Real(f64),
}

impl BoundValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            BoundValue::Exact(r) => ratio_to_f64(r),
            BoundValue::Real(x) => *x,
        }
    }

    /// `p/q` or an integer for exact values, 12 significant digits otherwise.
    pub fn exact_text(&self) -> Option<String> {
        match self {
            BoundValue::Exact(r) if r.is_integer() => Some(r.numer().to_string()),
            BoundValue::Exact(r) => Some(format!("{}/{}", r.numer(), r.denom())),
            BoundValue::Real(_) => None,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.exact_text() {
            Some(t) => f.write_str(&t),
            None => f.write_str(&fmt_real(self.to_f64())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, u64)>,
    pub value: BoundValue,
    pub direction: Direction,
    /// Which asymptotic term was dropped, if any.
    pub asymptotic_terms_dropped: Option<&'static str>,
    /// Holds for bounds that only apply above a threshold.
    pub precondition_met: Option<bool>,
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rat(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_pow(r: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * r)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Rohrbach's bracket `(k/h)^h ≤ n(h, k) ≤ C(k + h, h)`.
pub fn rohrbach(h: u32, k: u64) -> (BigRational, BigUint) {
    let lower = rat_pow(&rat(k, h as u64), h);
    let upper = binomial(k + h as u64, h as u64);
    (lower, upper)
}

/// `k²/4 + 2k`; the additive `δ ≤ 1` correction is not included.
pub fn rohrbach_quadratic(k: u64) -> BigRational {
    rat(k * k, 4) + rat(2 * k, 1)
}

/// `(10/9)·k²/4`.
pub fn hammerer_hofmeister(k: u64) -> BigRational {
    rat(10, 9) * rat(k * k, 4)
}

/// `(2/7)·k²`.
pub fn improved_quadratic(k: u64) -> BigRational {
    rat(2, 7) * rat(k * k, 1)
}

/// Main term `(4/3)^{⌊h/3⌋} (8/7)^{⌊(h mod 3)/2⌋} (k/h)^h`.
pub fn hofmeister_lower(h: u32, k: u64) -> BigRational {
    let threes = h / 3;
    let twos = (h - 3 * threes) / 2;
    rat_pow(&rat(4, 3), threes) * rat_pow(&rat(8, 7), twos) * rat_pow(&rat(k, h as u64), h)
}

/// Main term `n^{1/h} · h / (4/3)^{1/3}`.
pub fn zeta_upper_hofmeister(h: u32, n: f64) -> f64 {
    n.powf(1.0 / h as f64) * h as f64 / (4.0f64 / 3.0).cbrt()
}

/// Main term `n^{1/h} (h/e + 2.32 ln ln n)` and whether `n ≥ e^{h²}`.
pub fn zeta_upper_theorem1(h: u32, n: f64) -> (f64, bool) {
    let hf = h as f64;
    let value = n.powf(1.0 / hf) * (hf / std::f64::consts::E + THEOREM1_LOGLOG_COEFF * n.ln().ln());
    let threshold = hf * hf;
    let met = n.ln() >= threshold * (1.0 - 1e-12);
    (value, met)
}

/// Main term `n^{1/k}` of the lower bound on the largest `B_k` set in `[0, n]`.
pub fn bose_chowla_lower(n: f64, k: u32) -> f64 {
    n.powf(1.0 / k as f64)
}

/// All bounds that take `(h, k)`.
pub fn reports_for_hk(h: u32, k: u64) -> Vec<BoundReport> {
    let inputs = vec![("h", h as u64), ("k", k)];
    let exact = |name, value, direction, dropped| BoundReport {
        name,
        inputs: inputs.clone(),
        value: BoundValue::Exact(value),
        direction,
        asymptotic_terms_dropped: dropped,
        precondition_met: None,
    };
    let (lower, upper) = rohrbach(h, k);
    let mut out = vec![
        exact("rohrbach_lower", lower, Direction::Lower, None),
        exact(
            "rohrbach_upper",
            BigRational::from_integer(BigInt::from(upper)),
            Direction::Upper,
            None,
        ),
        exact(
            "hofmeister_lower",
            hofmeister_lower(h, k),
            Direction::Lower,
            Some("-O(k^(h-1))"),
        ),
    ];
    if h == 2 {
        out.push(exact(
            "rohrbach_quadratic",
            rohrbach_quadratic(k),
            Direction::Lower,
            Some("+delta (delta <= 1)"),
        ));
        out.push(exact(
            "hammerer_hofmeister",
            hammerer_hofmeister(k),
            Direction::Lower,
            None,
        ));
        out.push(exact(
            "improved_quadratic",
            improved_quadratic(k),
            Direction::Lower,
            None,
        ));
    }
    out
}

/// All bounds that take `(h, n)`.
pub fn reports_for_hn(h: u32, n: u64) -> Vec<BoundReport> {
    let inputs = vec![("h", h as u64), ("n", n)];
    let nf = n as f64;
    let (thm1, met) = zeta_upper_theorem1(h, nf);
    vec![
        BoundReport {
            name: "zeta_upper_hofmeister",
            inputs: inputs.clone(),
            value: BoundValue::Real(zeta_upper_hofmeister(h, nf)),
            direction: Direction::Upper,
            asymptotic_terms_dropped: Some("o(h)"),
            precondition_met: None,
        },
        BoundReport {
            name: "zeta_upper_theorem1",
            inputs: inputs.clone(),
            value: BoundValue::Real(thm1),
            direction: Direction::Upper,
            asymptotic_terms_dropped: Some("o(h)"),
            precondition_met: Some(met),
        },
        BoundReport {
            name: "bose_chowla_lower",
            inputs: vec![("n", n), ("k", h as u64)],
            value: BoundValue::Real(bose_chowla_lower(nf, h)),
            direction: Direction::Lower,
            asymptotic_terms_dropped: Some("o(n^(1/k))"),
            precondition_met: None,
        },
    ]
}
