//! Non-cyclic prime sets, independence sets and the lower bounds built
//! from them.

use serde::Serialize;

use super::zsigmondy::r;
use super::{LieFamily, LieSpec};
use crate::error::{Error, Result};
use crate::numtheory::{nth_prime, prime_divisors};

const EXCEPTIONAL_TABLE: &str = include_str!("../../data/exceptional_bounds.txt");

/// A named prime such as `p`, `t1` or `r6`, resolved to a value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Descriptor {
    pub label: String,
    pub prime: u64,
}

#[derive(Default)]
struct Set(Vec<Descriptor>);

impl Set {
    fn push(&mut self, label: impl Into<String>, prime: Option<u64>) {
        if let Some(p) = prime {
            if !self.0.iter().any(|d| d.prime == p) {
                self.0.push(Descriptor {
                    label: label.into(),
                    prime: p,
                });
            }
        }
    }

    fn r(&mut self, q: u64, a: u32) -> Result<()> {
        self.push(format!("r{a}"), r(q, a)?);
        Ok(())
    }

    fn pt(&mut self, spec: &LieSpec) {
        self.push("p", Some(spec.p));
        let t = prime_divisors(spec.q * spec.q - 1);
        self.push("t1", t.first().copied());
        self.push("t2", t.get(1).copied());
    }
}

/// `2i` for odd `i`, `i/2` for `i = 2 mod 4`, `i` for `i = 0 mod 4`.
fn nu(i: u32) -> u32 {
    match i % 4 {
        1 | 3 => 2 * i,
        2 => i / 2,
        _ => i,
    }
}

fn computed_sets(spec: &LieSpec) -> Result<Option<(Set, Set)>> {
    let (n, q) = (spec.n, spec.q);
    let mut pnc = Set::default();
    let mut ind = Set::default();
    match &spec.family {
        LieFamily::A => {
            let h = n.div_ceil(2);
            match n {
                1 => pnc.push("2", Some(2)),
                2 => {
                    pnc.push("p", Some(spec.p));
                    pnc.r(q, 1)?;
                }
                _ => {
                    pnc.pt(spec);
                    for i in 3..=h {
                        pnc.r(q, i)?;
                    }
                    for i in h + 1..=n + 1 {
                        ind.r(q, i)?;
                    }
                }
            }
        }
        LieFamily::TwoA => {
            let h = n.div_ceil(2);
            if n == 2 {
                pnc.push("2", Some(2));
                if q % 2 == 1 {
                    pnc.push("p", Some(spec.p));
                } else {
                    pnc.r(q, 2)?;
                }
            } else {
                pnc.pt(spec);
                for i in 3..=h {
                    pnc.r(q, nu(i))?;
                }
                for i in h + 1..=n + 1 {
                    ind.r(q, nu(i))?;
                }
            }
        }
        LieFamily::B | LieFamily::C => {
            pnc.pt(spec);
            for i in 2..=n / 2 {
                pnc.r(q, 2 * i)?;
            }
            for i in n / 2 + 1..=n {
                ind.r(q, 2 * i)?;
            }
        }
        LieFamily::D => {
            pnc.pt(spec);
            for i in 2..=n / 2 {
                pnc.r(q, 2 * i)?;
            }
            for i in n.div_ceil(2) + 1..n {
                ind.r(q, 2 * i)?;
            }
            for i in (n / 2 + 1..=n).filter(|i| i % 2 == 1) {
                ind.r(q, i)?;
            }
        }
        LieFamily::TwoD => {
            pnc.pt(spec);
            for i in 2..=(n - 1) / 2 {
                pnc.r(q, 2 * i)?;
            }
            for i in n / 2 + 1..=n {
                ind.r(q, 2 * i)?;
            }
            for i in (n / 2 + 1..n).filter(|i| i % 2 == 1) {
                ind.r(q, i)?;
            }
        }
        LieFamily::TwoB2 => {
            pnc.push("p", Some(2));
            let s = 1u64 << spec.f.div_ceil(2);
            for (label, v) in [("q-1", q - 1), ("q+s+1", q + s + 1), ("q-s+1", q - s + 1)] {
                ind.push(label, prime_divisors(v).first().copied());
            }
        }
        LieFamily::G2 => {
            pnc.pt(spec);
            ind.r(q, 3)?;
            ind.r(q, 6)?;
        }
        LieFamily::Data(name) => match (name.as_str(), q) {
            ("3D4", q) if q > 2 => {
                pnc.pt(spec);
                for a in [12, 3, 6] {
                    ind.r(q, a)?;
                }
            }
            ("F4", _) => {
                pnc.pt(spec);
                for a in [3, 4, 6] {
                    pnc.r(q, a)?;
                }
            }
            ("E8", _) => {
                pnc.pt(spec);
                for a in [3, 4, 6, 8, 10, 12] {
                    pnc.r(q, a)?;
                }
                for a in [7, 9, 14, 15, 18, 20, 24, 30] {
                    ind.r(q, a)?;
                }
            }
            _ => return Ok(None),
        },
    }
    Ok(Some((pnc, ind)))
}

/// Explicit primes with non-cyclic Sylow subgroups.
pub fn pnc_lower_set(spec: &LieSpec) -> Result<Vec<Descriptor>> {
    computed_sets(spec)?
        .map(|(p, _)| p.0)
        .ok_or_else(|| Error::UnsupportedFamily(format!("{spec}: no explicit set embedded")))
}

/// Explicit pairwise non-adjacent primes with cyclic Sylow subgroups.
pub fn independence_set(spec: &LieSpec) -> Result<Vec<Descriptor>> {
    computed_sets(spec)?
        .map(|(_, i)| i.0)
        .ok_or_else(|| Error::UnsupportedFamily(format!("{spec}: no explicit set embedded")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalRow {
    pub family: String,
    /// Restricts the row to one field size.
    pub q: Option<u64>,
    pub bound: usize,
    pub footnote: bool,
}

fn exceptional_rows() -> Vec<ExceptionalRow> {
    EXCEPTIONAL_TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let t: Vec<&str> = l.split_whitespace().collect();
            let (family, q) = match t[0].split_once(':') {
                Some((f, q)) => (f.to_string(), Some(q.parse().unwrap())),
                None => (t[0].to_string(), None),
            };
            ExceptionalRow {
                family,
                q,
                bound: t[1].parse().unwrap(),
                footnote: t[2] == "yes",
            }
        })
        .collect()
}

/// The trusted table row for a non-classical family, preferring a row
/// pinned to this `q`.
pub fn exceptional_bound(family: &str, q: u64) -> Option<ExceptionalRow> {
    let rows = exceptional_rows();
    rows.iter()
        .find(|r| r.family == family && r.q == Some(q))
        .or_else(|| rows.iter().find(|r| r.family == family && r.q.is_none()))
        .cloned()
}

fn footnote(bound: usize, q: u64) -> usize {
    match q {
        2 => bound.saturating_sub(2),
        3 => bound.saturating_sub(1),
        _ => bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FBoundCheck {
    pub spec: String,
    pub claimed: usize,
    /// `|pnc| + max{0, |indep| - 2}`; absent for trusted rows.
    pub computed: Option<usize>,
    pub ok: bool,
    pub trusted: bool,
    pub pnc: Vec<Descriptor>,
    pub independent: Vec<Descriptor>,
}

pub fn f_bound_check(spec: &LieSpec) -> Result<FBoundCheck> {
    let claimed = if spec.family.is_classical() {
        footnote(spec.n as usize, spec.q)
    } else {
        let row = exceptional_bound(spec.family.tag(), spec.q)
            .ok_or_else(|| Error::UnsupportedFamily(spec.family.tag().to_string()))?;
        if row.footnote {
            footnote(row.bound, spec.q)
        } else {
            row.bound
        }
    };
    let sets = computed_sets(spec)?;
    let (pnc, independent) = sets.map(|(p, i)| (p.0, i.0)).unwrap_or_default();
    let trusted = computed_sets(spec)?.is_none();
    let computed = (!trusted).then(|| pnc.len() + independent.len().saturating_sub(2));
    Ok(FBoundCheck {
        spec: spec.to_string(),
        claimed,
        ok: computed.is_none_or(|c| c >= claimed),
        computed,
        trusted,
        pnc,
        independent,
    })
}

/// `n <= x`, or `n <= x + 2` with `q <= 3`.
pub fn rank_bound_check(x: u32, spec: &LieSpec) -> bool {
    spec.n <= x || (spec.n <= x + 2 && spec.q <= 3)
}

/// `2 p_{x+1}`, with `p_1 = 2`.
pub fn alternating_bound(x: u32) -> u64 {
    2 * nth_prime(x as usize + 1)
}
