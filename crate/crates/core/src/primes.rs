//! Small number-theoretic helpers.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo a prime `p`.
pub fn mod_inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `≥ n`.
pub fn next_prime(n: u64) -> Option<u64> {
    (n.max(2)..=u64::MAX).find(|&c| is_prime(c))
}

/// Distinct prime factors in ascending order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest `r` with `r^e ≥ n`, i.e. `⌈n^{1/e}⌉` computed exactly.
pub fn ceil_root(n: u64, e: u32) -> u64 {
    assert!(e >= 1);
    if n <= 1 {
        return n;
    }
    let ge = |r: u64| r.checked_pow(e).is_none_or(|v| v >= n);
    let guess = (n as f64).powf(1.0 / e as f64).round() as u64;
    let mut r = guess.saturating_sub(2).max(1);
    while !ge(r) {
        r += 1;
    }
    while r > 1 && ge(r - 1) {
        r -= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        assert_eq!(next_prime(24), Some(29));
        assert_eq!(next_prime(23), Some(23));
        assert_eq!(next_prime(0), Some(2));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(8), vec![2]);
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert_eq!(prime_factors(4912), vec![2, 307]);
        assert_eq!(prime_factors(97), vec![97]);
    }

    #[test]
    fn roots() {
        assert_eq!(ceil_root(1_000_000, 4), 32);
        assert_eq!(ceil_root(10_000, 3), 22);
        assert_eq!(ceil_root(10_000_000, 6), 15);
        assert_eq!(ceil_root(1 << 20, 4), 32);
        assert_eq!(ceil_root(27, 3), 3);
        assert_eq!(ceil_root(28, 3), 4);
        assert_eq!(ceil_root(u64::MAX, 2), 1 << 32);
        for n in 1..2000u64 {
            for e in 1..5 {
                let r = ceil_root(n, e);
                assert!(r.pow(e) >= n && (r == 1 || (r - 1).pow(e) < n));
            }
        }
    }
}
