//! Euler characteristics of (2,m,n)-groups and the divisibility facts
//! relating them to the group order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::numtheory::{factor_u64, gcd, is_prime, lcm, p_part, prime_divisors, Factorization};

/// `chi = V - E + F` for a map with `V = |G|/m` vertices, `E = |G|/2`
/// edges and `F = |G|/n` faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerResult {
    pub order: u64,
    pub m: u64,
    pub n: u64,
    pub chi: i64,
    /// Factorization of `|chi|`; absent when `chi = 0`.
    pub factorization: Option<Factorization>,
    pub sign: i8,
    /// Number of distinct primes dividing `chi`.
    pub x: usize,
    pub v: u64,
    pub e: u64,
    pub f: u64,
}

impl EulerResult {
    /// `-(2^5*3)` style rendering of chi.
    pub fn factored(&self) -> String {
        match &self.factorization {
            None => "0".into(),
            Some(f) if self.sign < 0 => format!("-({f})"),
            Some(f) => f.to_string(),
        }
    }
}

pub fn euler_characteristic(order: u64, m: u64, n: u64) -> Result<EulerResult> {
    for v in [order, m, n] {
        if v == 0 {
            return Err(Error::NonPositive(0));
        }
    }
    for d in [m, n] {
        if !order.is_multiple_of(d) {
            return Err(Error::NotDivisor(d, order));
        }
    }
    if order % 2 == 1 {
        return Err(Error::OddOrder(order));
    }
    // chi = order (2n + 2m - mn) / (2mn)
    let num = order as i128 * (2 * n as i128 + 2 * m as i128 - m as i128 * n as i128);
    let den = 2 * m as i128 * n as i128;
    if num % den != 0 {
        return Err(Error::NonIntegralChi { num, den });
    }
    let (v, e, f) = (order / m, order / 2, order / n);
    let chi = v as i128 - e as i128 + f as i128;
    debug_assert_eq!(chi, num / den);
    let chi = i64::try_from(chi).map_err(|_| Error::InvariantViolated("chi outside 64-bit range".into()))?;
    let factorization = (chi != 0).then(|| factor_u64(chi.unsigned_abs()));
    Ok(EulerResult {
        order,
        m,
        n,
        chi,
        x: factorization.as_ref().map_or(0, |f| f.num_primes()),
        factorization,
        sign: chi.signum() as i8,
        v,
        e,
        f,
    })
}

pub fn factorize(v: i64) -> Result<Factorization> {
    if v == 0 {
        return Err(Error::FactorZero);
    }
    Ok(factor_u64(v.unsigned_abs()))
}

/// A validated generating pair with `o(gh) = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrianglePair {
    pub g: ElemId,
    pub h: ElemId,
    pub m: u64,
    pub n: u64,
    pub euler: EulerResult,
}

impl TrianglePair {
    /// `(min(m,n), max(m,n))`, the signature up to duality.
    pub fn canonical(&self) -> (u64, u64) {
        (self.m.min(self.n), self.m.max(self.n))
    }

    /// Whether the canonical form swaps the two generators.
    pub fn swapped(&self) -> bool {
        self.m > self.n
    }
}

pub fn validate_triple(group: &FiniteGroup, g: ElemId, h: ElemId) -> Result<TrianglePair> {
    let gh = group.mul(g, h);
    if gh == group.identity() {
        return Err(Error::IdentityProduct);
    }
    let o = group.elem_order(gh);
    if o != 2 {
        return Err(Error::ProductNotInvolution(o));
    }
    if !group.generates(&[g, h]) {
        return Err(Error::DoesNotGenerate {
            sub: group.subgroup_order(&[g, h]),
            order: group.order(),
        });
    }
    let (m, n) = (group.elem_order(g), group.elem_order(h));
    Ok(TrianglePair {
        g,
        h,
        m,
        n,
        euler: euler_characteristic(group.order(), m, n)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddPrimeValuation {
    pub t: u64,
    pub order_part: u64,
    pub lcm_part: u64,
    /// `|G|_t > [m,n]_t`, in which case `t` divides chi.
    pub exceeds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisibilityReport {
    pub order: u64,
    pub m: u64,
    pub n: u64,
    pub lcm: u64,
    pub gcd: u64,
    /// `|G| / [m,n]`.
    pub quotient: u64,
    /// `(mn - 2m - 2n) / (m,n)`.
    pub cofactor: i64,
    pub chi: i64,
    pub odd_primes: Vec<OddPrimeValuation>,
    /// `2 chi = -quotient * cofactor`, so `quotient` always divides `2 chi`.
    pub quotient_divides_2chi: bool,
    /// The stronger reading "`quotient` divides `chi`", which can fail by a
    /// factor of 2 (e.g. order 60 with `{m,n} = {3,5}`).
    pub quotient_divides_chi: bool,
    pub odd_part_divides_chi: bool,
}

pub fn lcm_divisibility(order: u64, m: u64, n: u64) -> Result<DivisibilityReport> {
    let e = euler_characteristic(order, m, n)?;
    let (l, g) = (lcm(m, n), gcd(m, n));
    let quotient = order / l;
    let cofactor = (m as i64 * n as i64 - 2 * m as i64 - 2 * n as i64) / g as i64;
    if 2 * e.chi as i128 != -(quotient as i128) * cofactor as i128 {
        return Err(Error::InvariantViolated(format!("2*chi != -(|G|/[m,n])*cofactor for ({order},{m},{n})")));
    }
    let chi = e.chi;
    let divides = |d: u64| chi as i128 % d as i128 == 0;
    let odd_quotient = quotient >> quotient.trailing_zeros();
    let odd_primes: Vec<OddPrimeValuation> = prime_divisors(order)
        .into_iter()
        .filter(|&t| t != 2)
        .map(|t| {
            let (op, lp) = (p_part(order, t), p_part(l, t));
            OddPrimeValuation {
                t,
                order_part: op,
                lcm_part: lp,
                exceeds: op > lp,
            }
        })
        .collect();
    for v in &odd_primes {
        if v.exceeds && !divides(v.t) {
            return Err(Error::InvariantViolated(format!("{} exceeds but does not divide chi", v.t)));
        }
    }
    Ok(DivisibilityReport {
        order,
        m,
        n,
        lcm: l,
        gcd: g,
        quotient,
        cofactor,
        chi,
        odd_primes,
        quotient_divides_2chi: (2 * chi as i128) % quotient as i128 == 0,
        quotient_divides_chi: divides(quotient),
        odd_part_divides_chi: divides(odd_quotient),
    })
}

/// The valuation test on a quotient `G/N` of order `order` with image
/// orders `m_n`, `n_n`: true iff `|G/N|_t > [m_N, n_N]_t`.
pub fn quotient_divisibility(order: u64, m_n: u64, n_n: u64, t: u64) -> Result<bool> {
    if t == 2 || !is_prime(t) {
        return Err(Error::NotOddPrime(t));
    }
    for d in [m_n, n_n] {
        if d == 0 {
            return Err(Error::NonPositive(0));
        }
        if !order.is_multiple_of(d) {
            return Err(Error::NotDivisor(d, order));
        }
    }
    Ok(p_part(order, t) > p_part(lcm(m_n, n_n), t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_examples() {
        assert_eq!(euler_characteristic(60, 3, 5).unwrap().chi, 2);
        assert_eq!(euler_characteristic(336, 6, 7).unwrap().chi, -64);
        let r = euler_characteristic(5616, 4, 13).unwrap();
        assert_eq!(r.chi, -972);
        assert_eq!(r.factored(), "-(2^2*3^5)");
        assert_eq!(r.x, 2);
        assert_eq!((r.v, r.e, r.f), (1404, 2808, 432));
    }

    #[test]
    fn chi_errors() {
        assert_eq!(euler_characteristic(60, 7, 5).unwrap_err(), Error::NotDivisor(7, 60));
        assert_eq!(euler_characteristic(15, 3, 5).unwrap_err(), Error::OddOrder(15));
        assert_eq!(euler_characteristic(0, 3, 5).unwrap_err(), Error::NonPositive(0));
    }

    #[test]
    fn zero_chi_has_no_factorization() {
        let r = euler_characteristic(24, 4, 4).unwrap();
        assert_eq!(r.chi, 0);
        assert_eq!(r.factorization, None);
        assert_eq!(r.factored(), "0");
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(-972).unwrap().to_string(), "2^2*3^5");
        assert_eq!(factorize(-(1 << 25)).unwrap().to_string(), "2^25");
        assert!(factorize(1).unwrap().is_empty());
        assert_eq!(factorize(0).unwrap_err(), Error::FactorZero);
    }

    #[test]
    fn lcm_report_psl27() {
        let r = lcm_divisibility(168, 3, 7).unwrap();
        assert_eq!(r.quotient, 8);
        assert_eq!(r.chi, -4);
        assert!(r.odd_primes.iter().all(|v| !v.exceeds));
        assert!(r.quotient_divides_2chi);
    }

    #[test]
    fn lcm_report_psl25_needs_factor_two() {
        let r = lcm_divisibility(60, 3, 5).unwrap();
        assert_eq!((r.quotient, r.cofactor, r.chi), (4, -1, 2));
        assert!(r.quotient_divides_2chi);
        assert!(!r.quotient_divides_chi);
        assert!(r.odd_part_divides_chi);
    }

    #[test]
    fn lcm_report_degenerate() {
        let r = lcm_divisibility(12, 12, 12).unwrap();
        assert_eq!(r.quotient, 1);
        assert!(r.odd_primes.iter().all(|v| !v.exceeds));
    }

    #[test]
    fn quotient_valuations() {
        assert_eq!(quotient_divisibility(60, 3, 5, 2).unwrap_err(), Error::NotOddPrime(2));
        assert!(!quotient_divisibility(168, 3, 7, 3).unwrap());
        assert!(!quotient_divisibility(504, 7, 9, 3).unwrap());
        assert!(quotient_divisibility(504, 7, 2, 3).unwrap());
    }
}
