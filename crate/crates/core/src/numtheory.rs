//! Small exact integer helpers: gcd/lcm, valuations, trial-division
//! factorization, primality, and big-integer factor search.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub use num_integer::{gcd, lcm};

/// Prime factorization of a positive integer, prime -> exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Factorization(pub BTreeMap<u64, u32>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn num_primes(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.0.get(&p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the prime powers; `None` on overflow.
    pub fn value(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1u64, |acc, (&p, &e)| acc.checked_mul(p.checked_pow(e)?))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (p, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorization of `n > 0`: trial division by small primes, then
/// Pollard-Brent on whatever composite part remains.
pub fn factor_u64(mut n: u64) -> Factorization {
    assert!(n > 0, "factor_u64 of zero");
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d < 1 << 12 && d * d <= n {
        while n.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let f = rho_u64(m);
        stack.push(f);
        stack.push(m / f);
    }
    Factorization(out)
}

/// Nontrivial factor of an odd composite `n` with no prime factor below 2^12.
fn rho_u64(n: u64) -> u64 {
    if let Some(r) = exact_sqrt(n) {
        return r;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = gcd(x.abs_diff(y), n);
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s.checked_mul(s) == Some(n))
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).primes().collect()
}

/// The `p`-part of `n`, i.e. the largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n != 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    miller_rabin_u64(n, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

fn miller_rabin_u64(n: u64, bases: &[u64]) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in bases {
        let mut x = pow_mod(a % n, d, n);
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

/// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factor_u64(n);
    if f.num_primes() == 1 {
        f.0.into_iter().next()
    } else {
        None
    }
}

/// The `k`-th smallest prime (1-based: `nth_prime(1) == 2`).
pub fn nth_prime(k: usize) -> u64 {
    assert!(k >= 1);
    (2u64..).filter(|&n| is_prime(n)).nth(k - 1).unwrap()
}

pub fn is_power_of_two(n: u128) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Multiplicative order of `q` modulo the prime `t` (with `t` not dividing `q`).
pub fn multiplicative_order(q: u64, t: u64) -> u64 {
    let phi = t - 1;
    let mut ord = phi;
    for p in prime_divisors(phi) {
        while ord.is_multiple_of(p) && pow_mod(q, ord / p, t) == 1 {
            ord /= p;
        }
    }
    ord
}

// ---------------------------------------------------------------------------
// Big integers

pub fn big_is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard-Brent search for a nontrivial factor of the odd composite `n`.
/// Returns `None` when the iteration budget runs out; a new constant is
/// tried only when a cycle collapses to `n` itself.
fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut spent = 0u64;
        let m = 128u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
            spent += r;
            if g == one && spent > budget {
                return None;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != one && g != *n {
            return Some(g);
        }
    }
    None
}

/// Outcome of a bounded factor search on a big integer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BigFactors {
    pub primes: BTreeMap<BigUint, u32>,
    /// Composite part the search could not split within its budget.
    pub residual: Option<BigUint>,
}

/// Factors `n` using trial division by `candidates` (an increasing stream
/// of trial divisors), then probable-prime tests and Pollard-Brent.
pub fn big_factor<I>(mut n: BigUint, candidates: I, trial_limit: u64, rho_budget: u64) -> BigFactors
where
    I: IntoIterator<Item = u64>,
{
    let mut out = BigFactors::default();
    for d in candidates {
        if d > trial_limit || n.is_one() {
            break;
        }
        if d < 2 {
            continue;
        }
        let bd = BigUint::from(d);
        if &bd * &bd > n {
            break;
        }
        while (&n % &bd).is_zero() {
            *out.primes.entry(bd.clone()).or_insert(0) += 1;
            n /= &bd;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() || m.is_zero() {
            continue;
        }
        if big_is_probable_prime(&m) {
            *out.primes.entry(m).or_insert(0) += 1;
            continue;
        }
        if let Some(small) = m.to_u64() {
            if small < 1 << 40 {
                for (p, e) in factor_u64(small).0 {
                    *out.primes.entry(BigUint::from(p)).or_insert(0) += e;
                }
                continue;
            }
        }
        match pollard_brent(&m, rho_budget) {
            Some(f) => {
                let other = &m / &f;
                stack.push(f);
                stack.push(other);
            }
            None => {
                out.residual = Some(match out.residual.take() {
                    Some(r) => r * m,
                    None => m,
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert_eq!(factor_u64(972).to_string(), "2^2*3^5");
        assert_eq!(factor_u64(1).to_string(), "1");
        assert_eq!(factor_u64(1 << 25).0, BTreeMap::from([(2, 25)]));
        let big = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factor_u64(big).0, BTreeMap::from([(4_294_967_279, 1), (4_294_967_291, 1)]));
        assert_eq!(factor_u64(65_537u64 * 65_537).0, BTreeMap::from([(65_537, 2)]));
    }

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(524287));
        assert!(!is_prime(524289));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(nth_prime(1), 2);
        assert_eq!(nth_prime(5), 11);
        assert_eq!(multiplicative_order(2, 7), 3);
    }

    #[test]
    fn big_factor_splits_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = big_factor(n, 2..1000, 1000, 1 << 22);
        assert!(f.residual.is_none());
        assert_eq!(f.primes.len(), 2);
    }
}
