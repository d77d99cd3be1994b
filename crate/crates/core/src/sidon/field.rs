//! Arithmetic in `GF(p^k) = F_p[x]/(f)` for a monic primitive `f`.
//!
//! Field elements are coefficient vectors of length `k`, constant term first.
//! The field is only ever used to take discrete logarithms of `x + a`, so the
//! implementation favours plain schoolbook arithmetic over speed.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_factors};

/// Upper bound on `p^k − 1` accepted by [`build_field`].
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

/// Multiplicative groups up to this size are walked in full; larger ones use
/// baby-step/giant-step.
pub const WALK_THRESHOLD: u64 = 1 << 22;

/// `GF(p^k)` described by its defining polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    /// Monic modulus, constant term first; length `k + 1`.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// `p^k − 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.p.pow(self.k) - 1
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k as usize];
        v[0] = 1;
        v
    }

    /// The residue class of `x`.
    pub fn generator(&self) -> Vec<u64> {
        let mut v = vec![0; self.k as usize];
        v[1 % self.k as usize] = 1;
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.k as usize;
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // x^d = x^{d-k} · x^k and x^k ≡ −(f_0 + … + f_{k−1} x^{k−1}).
            for (i, &fi) in self.modulus[..k].iter().enumerate() {
                let t = c * fi as u128 % p;
                prod[d - k + i] = (prod[d - k + i] + p - t) % p;
            }
            prod[d] = 0;
        }
        prod[..k].iter().map(|&c| c as u64).collect()
    }

    pub fn pow(&self, base: &[u64], mut e: u64) -> Vec<u64> {
        let mut result = self.one();
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        result
    }

    /// Integer code `Σ c_i p^i`, used as a hash key.
    pub fn encode(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }
}

/// Polynomial arithmetic over `F_p` on trimmed coefficient vectors.
mod poly {
    use crate::primes::mod_inverse;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = mod_inverse(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
            for (i, &mi) in m.iter().enumerate() {
                let t = (c as u128 * mi as u128 % p as u128) as u64;
                let idx = dr - dm + i;
                r[idx] = (r[idx] + p - t) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(v)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }
}

/// Ben-Or test: a monic `f` of degree `k` is irreducible iff
/// `gcd(x^{p^i} − x, f) = 1` for every `1 ≤ i ≤ k/2`.
pub fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let k = modulus.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut frob = x.clone();
    for _ in 0..k / 2 {
        frob = poly::pow_mod(&frob, p, modulus, p);
        let g = poly::gcd(modulus, &poly::sub(&frob, &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// True when `x` has multiplicative order exactly `p^k − 1` modulo `f`.
pub fn is_primitive(field: &FieldSpec) -> bool {
    let order = field.group_order();
    let x = field.generator();
    let one = field.one();
    if field.pow(&x, order) != one {
        return false;
    }
    prime_factors(order)
        .into_iter()
        .all(|r| field.pow(&x, order / r) != one)
}

fn field_order(p: u64, k: u32) -> Result<u64> {
    let size = p
        .checked_pow(k)
        .filter(|&s| s - 1 <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("GF({p}^{k}) exceeds the supported field size")))?;
    Ok(size - 1)
}

/// The lexicographically smallest (by constant-first coefficient list) monic
/// degree-`k` polynomial over `F_p` that is irreducible and has `x` as a
/// primitive element.
pub fn build_field(p: u64, k: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(
            "field degree must be at least 2".into(),
        ));
    }
    let size = field_order(p, k)? + 1;
    let ku = k as usize;
    for code in 0..size {
        // Most significant base-p digit is the constant term.
        let mut coeffs = vec![0u64; ku + 1];
        let mut c = code;
        for slot in coeffs[..ku].iter_mut().rev() {
            *slot = c % p;
            c /= p;
        }
        coeffs[ku] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if !is_irreducible(p, &coeffs) {
            continue;
        }
        let spec = FieldSpec {
            p,
            k,
            modulus: coeffs,
        };
        if is_primitive(&spec) {
            return Ok(spec);
        }
    }
    Err(Error::NoPrimitivePolynomial { p, k })
}

/// How discrete logarithms are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlogMethod {
    /// Pick by group size.
    Auto,
    /// Enumerate every power of the generator once.
    Walk,
    BabyStepGiantStep,
}

/// Discrete logs of `x + a` for `a = 0, 1, …, p − 1`.
pub fn logs_of_shifted_generator(field: &FieldSpec, method: DlogMethod) -> Vec<u64> {
    let order = field.group_order();
    let method = match method {
        DlogMethod::Auto if order <= WALK_THRESHOLD => DlogMethod::Walk,
        DlogMethod::Auto => DlogMethod::BabyStepGiantStep,
        m => m,
    };
    match method {
        DlogMethod::Walk => walk_logs(field),
        _ => bsgs_logs(field),
    }
}

fn target(field: &FieldSpec, a: u64) -> Vec<u64> {
    let mut t = field.generator();
    t[0] = (t[0] + a) % field.p;
    t
}

fn walk_logs(field: &FieldSpec) -> Vec<u64> {
    let p = field.p as usize;
    let k = field.k as usize;
    let x = field.generator();
    let mut logs = vec![u64::MAX; p];
    let mut found = 0;
    let mut cur = field.one();
    for i in 0..field.group_order() {
        let is_shifted_x = if k == 2 {
            cur[1] == 1
        } else {
            cur[1] == 1 && cur[2..].iter().all(|&c| c == 0)
        };
        if is_shifted_x {
            let a = cur[0] as usize;
            if logs[a] == u64::MAX {
                logs[a] = i;
                found += 1;
                if found == p {
                    break;
                }
            }
        }
        cur = field.mul(&cur, &x);
    }
    debug_assert_eq!(found, p, "primitive generator must reach every x + a");
    logs
}

fn bsgs_logs(field: &FieldSpec) -> Vec<u64> {
    let order = field.group_order();
    let m = (order as f64).sqrt().ceil() as u64;
    let x = field.generator();
    let mut baby: HashMap<u64, u64> = HashMap::with_capacity(m as usize);
    let mut cur = field.one();
    for j in 0..m {
        baby.entry(field.encode(&cur)).or_insert(j);
        cur = field.mul(&cur, &x);
    }
    // x^{-m} = x^{order - m mod order}
    let giant = field.pow(&x, (order - m % order) % order);
    (0..field.p)
        .map(|a| {
            let mut gamma = target(field, a);
            for i in 0..=m {
                if let Some(&j) = baby.get(&field.encode(&gamma)) {
                    return (i * m + j) % order;
                }
                gamma = field.mul(&gamma, &giant);
            }
            unreachable!("x is primitive, so every non-zero element has a log")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Order of `x` by repeated multiplication.
    fn brute_order(f: &FieldSpec) -> u64 {
        let x = f.generator();
        let mut cur = x.clone();
        let mut i = 1;
        while cur != f.one() {
            cur = f.mul(&cur, &x);
            i += 1;
            assert!(i <= f.group_order() + 1);
        }
        i
    }

    /// Irreducible iff no monic factor of degree ≤ k/2, by trial division.
    fn brute_irreducible(p: u64, f: &[u64]) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            for code in 0..p.pow(d as u32) {
                let mut g = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    g.push(c % p);
                    c /= p;
                }
                g.push(1);
                if poly::rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn known_moduli() {
        assert_eq!(build_field(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(build_field(3, 2).unwrap().modulus, vec![2, 1, 1]);
        assert_eq!(build_field(5, 2).unwrap().modulus, vec![2, 1, 1]);
        assert_eq!(build_field(7, 2).unwrap().modulus, vec![3, 1, 1]);
        assert_eq!(build_field(2, 3).unwrap().modulus, vec![1, 0, 1, 1]);
        assert_eq!(build_field(3, 3).unwrap().modulus, vec![1, 0, 2, 1]);
    }

    #[test]
    fn x_squared_plus_one_is_irreducible_but_not_primitive_over_f3() {
        let f = FieldSpec {
            p: 3,
            k: 2,
            modulus: vec![1, 0, 1],
        };
        assert!(is_irreducible(3, &f.modulus));
        assert!(!is_primitive(&f));
        assert_eq!(brute_order(&f), 4);
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for (p, k) in [
            (2u64, 2usize),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (3, 4),
        ] {
            for code in 0..p.pow(k as u32) {
                let mut f = Vec::with_capacity(k + 1);
                let mut c = code;
                for _ in 0..k {
                    f.push(c % p);
                    c /= p;
                }
                f.push(1);
                assert_eq!(
                    is_irreducible(p, &f),
                    brute_irreducible(p, &f),
                    "p={p} f={f:?}"
                );
            }
        }
    }

    #[test]
    fn built_fields_have_full_order() {
        for (p, k) in [
            (2, 2),
            (2, 5),
            (3, 2),
            (3, 3),
            (5, 2),
            (5, 3),
            (7, 2),
            (11, 2),
        ] {
            let f = build_field(p, k).unwrap();
            assert_eq!(brute_order(&f), f.group_order(), "GF({p}^{k})");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(build_field(4, 2), Err(Error::NotPrime(4)));
        assert_eq!(build_field(1, 2), Err(Error::NotPrime(1)));
        assert!(matches!(build_field(3, 1), Err(Error::InvalidParameter(_))));
        assert!(matches!(build_field(1_000_003, 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn walk_and_bsgs_agree() {
        for (p, k) in [(3, 2), (5, 3), (7, 3), (13, 2), (2, 7)] {
            let f = build_field(p, k).unwrap();
            let walk = logs_of_shifted_generator(&f, DlogMethod::Walk);
            let bsgs = logs_of_shifted_generator(&f, DlogMethod::BabyStepGiantStep);
            assert_eq!(walk, bsgs, "GF({p}^{k})");
            for (a, &l) in walk.iter().enumerate() {
                assert_eq!(f.pow(&f.generator(), l), target(&f, a as u64));
            }
        }
    }
}
