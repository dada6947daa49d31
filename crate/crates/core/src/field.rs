//! Finite fields GF(p^k) with `p^k <= 2^20`, `k <= 6`.
//!
//! Elements are packed integers: the coefficient vector `(c_0, ..., c_{k-1})`
//! of `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is stored as `sum c_i p^i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::{is_prime, prime_divisors};

pub const MAX_FIELD_ORDER: u64 = 1 << 20;
pub const MAX_DEGREE: u32 = 6;

pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low coefficient first, length `k + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:?}", self.q, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

/// A checked field element: carries the order of its field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    q: u32,
    value: u32,
}

impl Elem {
    pub fn value(self) -> u32 {
        self.value
    }
    pub fn field_order(self) -> u32 {
        self.q
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add(Elem),
    Mul(Elem),
    Inv,
    Pow(u64),
    Frobenius,
}

impl FiniteField {
    /// Builds GF(p^k). The modulus is the least monic irreducible polynomial
    /// of degree `k` in the order of its packed lower coefficients, so every
    /// run picks the same one.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::UnsupportedField { p, k });
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::UnsupportedField { p, k })?;
        let p = p as u32;
        let q = q as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..q)
                .map(|low| {
                    let mut m = digits(low, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        let n = q - 1;
        let order_divisors: Vec<u32> = prime_divisors(n as u64).into_iter().map(|r| r as u32).collect();
        let primitive = (1..q)
            .find(|&g| {
                n == 1
                    || order_divisors
                        .iter()
                        .all(|&r| self.slow_pow(g, (n / r) as u64) != 1)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i as usize] = x;
            log[x as usize] = i;
            x = self.slow_mul(x, primitive);
        }
        debug_assert_eq!(x, 1);
        self.primitive = primitive;
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, k) = (self.p as u64, self.k as usize);
        if k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        let da = digits(a, self.p, self.k);
        let db = digits(b, self.p, self.k);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[d] = 0;
        }
        pack(&prod[..k].iter().map(|&c| c as u32).collect::<Vec<_>>(), self.p)
    }

    fn slow_pow(&self, mut b: u32, mut e: u64) -> u32 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(r, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value >= self.q as u64 {
            return Err(Error::NotInField { value, q: self.q });
        }
        Ok(Elem {
            q: self.q,
            value: value as u32,
        })
    }

    fn check(&self, a: Elem) -> Result<u32> {
        if a.q != self.q {
            return Err(Error::MixedFields(self.q, a.q));
        }
        Ok(a.value)
    }

    /// Checked arithmetic on elements of this field.
    pub fn apply(&self, a: Elem, op: FieldOp) -> Result<Elem> {
        let x = self.check(a)?;
        let value = match op {
            FieldOp::Add(b) => self.add(x, self.check(b)?),
            FieldOp::Mul(b) => self.mul(x, self.check(b)?),
            FieldOp::Inv => {
                if x == 0 {
                    return Err(Error::ZeroInverse);
                }
                self.inv(x)
            }
            FieldOp::Pow(e) => self.pow(x, e),
            FieldOp::Frobenius => self.frobenius(x),
        };
        Ok(Elem { q: self.q, value })
    }

    // Raw arithmetic on packed values; callers guarantee membership.

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (p, mut a, mut b) = (self.p, a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (p, mut a) = (self.p, a);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Panics on zero; use [`FiniteField::apply`] for the checked form.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.q - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `a -> a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn elem_order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let n = (self.q - 1) as u64;
        n / crate::numtheory::gcd(n, self.log[a as usize] as u64)
    }

    /// The packed value of the integer `c` (reduced mod p) in the prime field.
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m` over GF(p); both low-first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p64 = p as u64;
    while r.len() > dm {
        let c = r.pop().unwrap() % p64;
        if c != 0 {
            let top = r.len();
            for (ri, &mi) in r[top - dm..].iter_mut().zip(&m[..dm]) {
                *ri = (*ri + (p64 - c) * mi as u64) % p64;
            }
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Exhaustive factor search: `m` is irreducible iff no monic polynomial of
/// degree `1..=deg/2` divides it.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_modulus_and_product() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        // x = 2, x^2 = 4, x^3 = x + 1 = 3
        let x = f.elem(2).unwrap();
        let x2 = f.elem(4).unwrap();
        assert_eq!(f.apply(x, FieldOp::Mul(x2)).unwrap().value(), 3);
    }

    #[test]
    fn gf9_modulus_and_frobenius() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for a in f.elements() {
            assert_eq!(f.frobenius(f.frobenius(a)), a);
        }
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(FiniteField::new(2, 7).is_err());
        assert!(FiniteField::new(1031, 2).is_err());
    }

    #[test]
    fn gf7_inverse() {
        let f = FiniteField::new(7, 1).unwrap();
        let three = f.elem(3).unwrap();
        assert_eq!(f.apply(three, FieldOp::Inv).unwrap().value(), 5);
        let zero = f.elem(0).unwrap();
        assert_eq!(f.apply(zero, FieldOp::Inv), Err(Error::ZeroInverse));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f5 = FiniteField::new(5, 1).unwrap();
        let f7 = FiniteField::new(7, 1).unwrap();
        let a = f5.elem(2).unwrap();
        let b = f7.elem(2).unwrap();
        assert_eq!(f5.apply(a, FieldOp::Add(b)), Err(Error::MixedFields(5, 7)));
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for (p, k) in [(2, 1), (2, 4), (3, 3), (5, 2), (7, 2), (2, 6), (3, 4), (11, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let n = (f.order() - 1) as u64;
            assert_eq!(f.elem_order(f.primitive_element()), n);
            for a in 1..f.order() {
                assert_eq!(n % f.elem_order(a), 0);
                assert_eq!(f.slow_pow(a, f.elem_order(a)), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_automorphism_exhaustive() {
        for (p, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (3, 4)] {
            let f = FiniteField::new(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let fa = f.frobenius(a);
                    let fb = f.frobenius(b);
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(fa, fb));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(fa, fb));
                }
            }
        }
    }

    #[test]
    fn log_tables_agree_with_polynomial_product() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                assert_eq!(f.add(f.sub(a, b), b), a);
            }
        }
    }
}
