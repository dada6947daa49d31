//! Cyclotomic values, primitive prime divisors and the Catalan test.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{big_factor, is_prime, prime_divisors, prime_power};

/// `Phi_i(q)`, from `q^i - 1 = prod_{d | i} Phi_d(q)`.
pub fn cyclotomic_eval(i: u32, q: u64) -> BigUint {
    assert!(i >= 1 && q >= 2, "cyclotomic_eval needs i >= 1 and q >= 2");
    let mut memo = BTreeMap::new();
    phi(i, &BigUint::from(q), &mut memo)
}

fn phi(i: u32, q: &BigUint, memo: &mut BTreeMap<u32, BigUint>) -> BigUint {
    if let Some(v) = memo.get(&i) {
        return v.clone();
    }
    let mut v = q.pow(i) - 1u32;
    for d in (1..i).filter(|d| i.is_multiple_of(*d)) {
        v /= phi(d, q, memo);
    }
    memo.insert(i, v.clone());
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ZsigmondyException {
    /// `2^6 - 1 = 63 = 3^2 * 7`.
    SixTwo,
    /// `q + 1` is a power of two.
    Mersenne,
    /// `q - 1 = 1`.
    OneTwo,
}

impl fmt::Display for ZsigmondyException {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZsigmondyException::SixTwo => "(a,q)=(6,2)",
            ZsigmondyException::Mersenne => "q=2^b-1",
            ZsigmondyException::OneTwo => "(a,q)=(1,2)",
        })
    }
}

/// Primitive prime divisors of `q^a - 1`, i.e. the primes dividing
/// `Phi_a(q)` that divide no `q^i - 1` with `i < a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PpdCertificate {
    pub q: u64,
    pub a: u32,
    /// Sorted; each is `1 mod a`.
    #[serde(serialize_with = "ser_big_vec")]
    pub primes: Vec<BigUint>,
    pub exception: Option<ZsigmondyException>,
    /// False when a composite cofactor could not be split; its primes are
    /// primitive but unnamed.
    pub complete: bool,
    #[serde(serialize_with = "ser_big_opt")]
    pub residual: Option<BigUint>,
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

fn ser_big_opt<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

impl PpdCertificate {
    /// Whether some primitive prime divisor exists, named or not.
    pub fn exists(&self) -> bool {
        !self.primes.is_empty() || self.residual.is_some()
    }

    pub fn smallest(&self) -> Option<u64> {
        self.primes.first().and_then(|p| p.to_u64())
    }
}

const TRIAL_LIMIT: u64 = 1 << 18;
const RHO_BUDGET: u64 = 1 << 15;

pub fn primitive_prime_divisors(q: u64, a: u32) -> PpdCertificate {
    assert!(q >= 2 && a >= 1, "primitive_prime_divisors needs q >= 2, a >= 1");
    // A prime dividing both Phi_a(q) and a is never primitive, and every
    // non-primitive prime of Phi_a(q) divides a.
    let mut rest = cyclotomic_eval(a, q);
    for t in prime_divisors(a as u64) {
        let bt = BigUint::from(t);
        while rest.is_multiple_of(&bt) {
            rest /= &bt;
        }
    }
    let step = a as u64;
    let candidates = (1..).map(move |k| k * step + 1).filter(|&t| is_prime(t));
    let found = big_factor(rest, candidates, TRIAL_LIMIT, RHO_BUDGET);
    let primes: Vec<BigUint> = found.primes.into_keys().collect();
    let exception = if !primes.is_empty() || found.residual.is_some() {
        None
    } else if a == 6 && q == 2 {
        Some(ZsigmondyException::SixTwo)
    } else if a == 2 && (q + 1).is_power_of_two() {
        Some(ZsigmondyException::Mersenne)
    } else if a == 1 && q == 2 {
        Some(ZsigmondyException::OneTwo)
    } else {
        panic!("no primitive prime divisor for ({q},{a}) outside the exception list");
    };
    PpdCertificate {
        q,
        a,
        primes,
        exception,
        complete: found.residual.is_none(),
        residual: found.residual,
    }
}

/// Resolved `r_a`: the least primitive prime divisor, if one exists.
pub fn r(q: u64, a: u32) -> Result<Option<u64>> {
    let c = primitive_prime_divisors(q, a);
    match (c.smallest(), c.exists()) {
        (Some(t), _) => Ok(Some(t)),
        (None, false) => Ok(None),
        (None, true) => Err(Error::Witness(format!("could not name a primitive prime divisor of {q}^{a}-1"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CatalanClass {
    /// `q` is prime and equals `2^c + sign`.
    PrimeForm { c: u32, sign: i8 },
    /// `q = 9 = 2^3 + 1`.
    ExceptionNine,
    /// Neither `q - 1` nor `q + 1` is a power of two.
    NotOfForm,
}

pub fn catalan_check(q: u64) -> Result<CatalanClass> {
    let (_, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
    let form = if (q - 1).is_power_of_two() {
        Some(((q - 1).trailing_zeros(), 1))
    } else if (q + 1).is_power_of_two() {
        Some(((q + 1).trailing_zeros(), -1))
    } else {
        None
    };
    match form {
        None => Ok(CatalanClass::NotOfForm),
        Some((c, sign)) if k == 1 => Ok(CatalanClass::PrimeForm { c, sign }),
        Some(_) if q == 9 => Ok(CatalanClass::ExceptionNine),
        Some(_) => Err(Error::InvariantViolated(format!("{q} is a proper prime power adjacent to a power of two"))),
    }
}
