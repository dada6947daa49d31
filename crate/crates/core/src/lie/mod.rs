//! Orders and prime data of finite simple groups of Lie type.

mod bounds;
mod zsigmondy;

pub use bounds::{
    alternating_bound, exceptional_bound, f_bound_check, independence_set, pnc_lower_set, rank_bound_check,
    Descriptor, ExceptionalRow, FBoundCheck,
};
pub use zsigmondy::{
    catalan_check, cyclotomic_eval, primitive_prime_divisors, r, CatalanClass, PpdCertificate, ZsigmondyException,
};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, prime_power};

const ORDER_TABLE: &str = include_str!("../../data/lie_orders.txt");

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieFamily {
    A,
    TwoA,
    B,
    C,
    D,
    TwoD,
    TwoB2,
    G2,
    /// Exceptional family whose order comes from the embedded table.
    Data(String),
}

impl LieFamily {
    pub fn tag(&self) -> &str {
        match self {
            LieFamily::A => "A",
            LieFamily::TwoA => "2A",
            LieFamily::B => "B",
            LieFamily::C => "C",
            LieFamily::D => "D",
            LieFamily::TwoD => "2D",
            LieFamily::TwoB2 => "2B2",
            LieFamily::G2 => "G2",
            LieFamily::Data(s) => s,
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(
            self,
            LieFamily::A | LieFamily::TwoA | LieFamily::B | LieFamily::C | LieFamily::D | LieFamily::TwoD
        )
    }
}

/// `T_n(q)` with `q = p^f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LieSpec {
    pub family: LieFamily,
    pub n: u32,
    pub q: u64,
    pub p: u64,
    pub f: u32,
}

struct OrderRow {
    family: &'static str,
    rank: u32,
    q_form: &'static str,
    d_rule: &'static str,
    big_n: u32,
    exps: BTreeMap<u32, u32>,
}

fn order_rows() -> Vec<OrderRow> {
    ORDER_TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            let exps = t[5..]
                .iter()
                .map(|e| {
                    let (i, k) = e.split_once(':').expect("exponent entry");
                    (i.parse().unwrap(), k.parse().unwrap())
                })
                .collect();
            OrderRow {
                family: t[0],
                rank: t[1].parse().unwrap(),
                q_form: t[2],
                d_rule: t[3],
                big_n: t[4].parse().unwrap(),
                exps,
            }
        })
        .collect()
}

fn data_row(name: &str) -> Option<OrderRow> {
    order_rows().into_iter().find(|r| r.family == name)
}

/// Names of the table-driven exceptional families.
pub fn data_families() -> Vec<&'static str> {
    order_rows().into_iter().map(|r| r.family).collect()
}

fn odd_power_of(p: u64, f: u32, base: u64) -> bool {
    p == base && f % 2 == 1
}

impl LieSpec {
    pub fn new(family: LieFamily, n: u32, q: u64) -> Result<LieSpec> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let bad = |why: &str| Err(Error::UnsupportedFamily(format!("{}{n}({q}): {why}", family.tag())));
        let min_rank = match family {
            LieFamily::A => 1,
            LieFamily::TwoA | LieFamily::B | LieFamily::C => 2,
            LieFamily::D | LieFamily::TwoD => 4,
            LieFamily::TwoB2 => 2,
            LieFamily::G2 => 2,
            LieFamily::Data(_) => 0,
        };
        if n < min_rank {
            return bad("rank too small");
        }
        match &family {
            LieFamily::TwoB2 if n != 2 || !odd_power_of(p, f, 2) => return bad("needs rank 2 and q an odd power of 2"),
            LieFamily::G2 if n != 2 => return bad("rank must be 2"),
            LieFamily::Data(name) => {
                let row = data_row(name).ok_or_else(|| Error::UnsupportedFamily(name.clone()))?;
                if n != row.rank {
                    return bad("rank does not match the family");
                }
                let ok = match row.q_form {
                    "2^odd" => odd_power_of(p, f, 2),
                    "3^odd" => odd_power_of(p, f, 3),
                    _ => true,
                };
                if !ok {
                    return bad(&format!("q must be {}", row.q_form));
                }
            }
            _ => {}
        }
        let spec = LieSpec { family, n, q, p, f };
        if spec.excluded() {
            return Err(Error::NotSimple(spec.to_string()));
        }
        Ok(spec)
    }

    fn excluded(&self) -> bool {
        match (&self.family, self.n, self.q) {
            (LieFamily::A, 1, 2 | 3) => true,
            (LieFamily::TwoA, 2, 2) => true,
            (LieFamily::TwoB2, _, 2) => true,
            (LieFamily::C | LieFamily::B, 2, 2) => true,
            (LieFamily::G2, _, 2) => true,
            (LieFamily::Data(s), _, 2) if s == "2F4" => true,
            (LieFamily::Data(s), _, 3) if s == "2G2" => true,
            _ => false,
        }
    }
}

impl fmt::Display for LieSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            LieFamily::TwoB2 | LieFamily::G2 | LieFamily::Data(_) => write!(f, "{}:{}", self.family.tag(), self.q),
            fam => write!(f, "{}{}:{}", fam.tag(), self.n, self.q),
        }
    }
}

impl FromStr for LieSpec {
    type Err = Error;

    /// `A1:7`, `2A2:3`, `C3:2`, `2D4:3`, `2B2:8`, `G2:4`, `E8:2`, `3D4:2`.
    fn from_str(s: &str) -> Result<LieSpec> {
        let err = || Error::GroupSpecParse(s.to_string(), "expected FAMILY[RANK]:Q".into());
        let (head, q) = s.trim().split_once(':').ok_or_else(err)?;
        let q: u64 = q.parse().map_err(|_| err())?;
        if head == "2B2" {
            return LieSpec::new(LieFamily::TwoB2, 2, q);
        }
        if head == "G2" {
            return LieSpec::new(LieFamily::G2, 2, q);
        }
        if let Some(row) = data_row(head) {
            return LieSpec::new(LieFamily::Data(head.to_string()), row.rank, q);
        }
        let (fam, rank) = [
            ("2A", LieFamily::TwoA),
            ("2D", LieFamily::TwoD),
            ("A", LieFamily::A),
            ("B", LieFamily::B),
            ("C", LieFamily::C),
            ("D", LieFamily::D),
        ]
        .into_iter()
        .find_map(|(p, fam)| head.strip_prefix(p).and_then(|r| r.parse::<u32>().ok()).map(|n| (fam, n)))
        .ok_or_else(err)?;
        LieSpec::new(fam, rank, q)
    }
}

/// `(1/d) q^N prod_i Phi_i(q)^{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredOrder {
    pub q: u64,
    pub d: u64,
    pub big_n: u32,
    pub exponents: BTreeMap<u32, u32>,
}

impl FactoredOrder {
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::from(self.q).pow(self.big_n);
        for (&i, &k) in &self.exponents {
            v *= cyclotomic_eval(i, self.q).pow(k);
        }
        assert!((&v % self.d) == BigUint::from(0u32), "d must divide the product");
        v / self.d
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    /// `n_i`, zero when absent.
    pub fn exponent(&self, i: u32) -> u32 {
        self.exponents.get(&i).copied().unwrap_or(0)
    }
}

impl fmt::Display for FactoredOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{}) q^{}", self.d, self.big_n)?;
        for (i, k) in &self.exponents {
            if *k == 1 {
                write!(f, " Phi{i}")?;
            } else {
                write!(f, " Phi{i}^{k}")?;
            }
        }
        Ok(())
    }
}

fn add_divisors(exps: &mut BTreeMap<u32, u32>, i: u32, map: impl Fn(u32) -> u32) {
    for d in (1..=i).filter(|d| i.is_multiple_of(*d)) {
        *exps.entry(map(d)).or_insert(0) += 1;
    }
}

/// `|Phi_d(-q)| = Phi_{mu(d)}(q)`.
fn twist(d: u32) -> u32 {
    match d % 4 {
        1 | 3 => 2 * d,
        2 => d / 2,
        _ => d,
    }
}

pub fn order_formula(spec: &LieSpec) -> Result<FactoredOrder> {
    let (n, q) = (spec.n, spec.q);
    let mut exps = BTreeMap::new();
    let id = |d| d;
    let (d, big_n) = match &spec.family {
        LieFamily::A => {
            (2..=n + 1).for_each(|i| add_divisors(&mut exps, i, id));
            (gcd(n as u64 + 1, q - 1), n * (n + 1) / 2)
        }
        LieFamily::TwoA => {
            (2..=n + 1).for_each(|i| add_divisors(&mut exps, i, twist));
            (gcd(n as u64 + 1, q + 1), n * (n + 1) / 2)
        }
        LieFamily::B | LieFamily::C => {
            (1..=n).for_each(|i| add_divisors(&mut exps, 2 * i, id));
            (gcd(2, q - 1), n * n)
        }
        LieFamily::D | LieFamily::TwoD => {
            (1..n).for_each(|i| add_divisors(&mut exps, 2 * i, id));
            let qn = BigUint::from(q).pow(n);
            if spec.family == LieFamily::D {
                add_divisors(&mut exps, n, id);
                (gcd(4, ((&qn - 1u32) % 4u32).to_u64().unwrap()), n * (n - 1))
            } else {
                // q^n + 1 = prod of Phi_d over d | 2n, d not dividing n
                for d in (1..=2 * n).filter(|d| (2 * n) % d == 0 && n % d != 0) {
                    *exps.entry(d).or_insert(0) += 1;
                }
                (gcd(4, ((&qn + 1u32) % 4u32).to_u64().unwrap()), n * (n - 1))
            }
        }
        LieFamily::TwoB2 => {
            exps.insert(1, 1);
            exps.insert(4, 1);
            (1, 2)
        }
        LieFamily::G2 => {
            add_divisors(&mut exps, 6, id);
            add_divisors(&mut exps, 2, id);
            (1, 6)
        }
        LieFamily::Data(name) => {
            let row = data_row(name).ok_or_else(|| Error::UnsupportedFamily(name.clone()))?;
            let d = match row.d_rule {
                "1" => 1,
                "(3,q-1)" => gcd(3, q - 1),
                "(3,q+1)" => gcd(3, q + 1),
                "(2,q-1)" => gcd(2, q - 1),
                other => return Err(Error::UnsupportedFamily(format!("{name}: order rule {other}"))),
            };
            exps = row.exps;
            (d, row.big_n)
        }
    };
    Ok(FactoredOrder {
        q,
        d,
        big_n,
        exponents: exps,
    })
}
