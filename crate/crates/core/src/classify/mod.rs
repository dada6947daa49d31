//! Enumeration of (2,m,n) generating pairs, structure constants, rigidity
//! and the verification reports built on them.

mod family;
mod structure;
mod tables;
mod theorem;

pub use family::{infinite_family, FamilyCertificate, SurrogateCheck};
pub use structure::{check_structure_decomposition, QuotientShape, StructureCheck, StructureWitness};
pub use tables::{table_rows, verify_table_rows, ReadingResult, RowReport, TableRow, Tier};
pub use theorem::{numeric_scan, verify_theorem_12, ScanHit, ScanReport, Thm12Report, THM12_ROWS};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{euler_characteristic, lcm_divisibility, EulerResult, TrianglePair};
use crate::group::{AutAction, ElemId, FiniteGroup};
use crate::numtheory::{factor_u64, lcm, prime_divisors};
use crate::primegraph::chi_prime_bounds;

/// `|{x in gClass : x^-1 z in hClass}|`, i.e. the number of pairs
/// `(x, y)` in the two classes with `xy = z`.
pub fn structure_constant(g: &FiniteGroup, g_class: usize, h_class: usize, z: ElemId) -> u64 {
    g.class_members(g_class)
        .iter()
        .filter(|&&x| g.class_of(g.mul(g.inverse(x), z)) == h_class)
        .count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Signature {
    /// `chi = +-2^a`.
    Pm2Power,
    /// `chi = -2^a s^b` for one odd prime `s`, `b >= 1`.
    Minus2PowerTimesOddPrimePower,
    Any,
}

impl Signature {
    pub fn matches(self, chi: i64) -> bool {
        match self {
            Signature::Any => true,
            Signature::Pm2Power => chi != 0 && chi.unsigned_abs().is_power_of_two(),
            Signature::Minus2PowerTimesOddPrimePower => {
                if chi >= 0 {
                    return false;
                }
                let a = chi.unsigned_abs();
                let odd = a >> a.trailing_zeros();
                prime_divisors(odd).len() == 1
            }
        }
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm2power" => Ok(Signature::Pm2Power),
            "minus2powerTimesOddPrimePower" => Ok(Signature::Minus2PowerTimesOddPrimePower),
            "any" => Ok(Signature::Any),
            _ => Err(Error::GroupSpecParse(s.into(), "unknown signature".into())),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Pm2Power => "pm2power",
            Signature::Minus2PowerTimesOddPrimePower => "minus2powerTimesOddPrimePower",
            Signature::Any => "any",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub group: String,
    pub m: u64,
    pub n: u64,
    pub canonical: (u64, u64),
    pub euler: Option<EulerResult>,
    pub chi_factored: Option<String>,
    /// Valid ordered pairs `(g, h)` over all involutions `gh`.
    pub count: u64,
    pub orbits: Option<usize>,
    /// Least valid pair with `gh` an involution class representative.
    pub witness: Option<(ElemId, ElemId)>,
    /// `|G|/[m,n] = +-2^a`.
    pub quotient_pm2power: bool,
    pub status: Option<String>,
}

impl ClassificationRecord {
    fn new(g: &FiniteGroup, m: u64, n: u64, count: u64, witness: Option<(ElemId, ElemId)>) -> Self {
        let euler = euler_characteristic(g.order(), m, n).ok();
        let quotient = g.order() / lcm(m, n);
        ClassificationRecord {
            group: g.name().to_string(),
            m,
            n,
            canonical: (m.min(n), m.max(n)),
            chi_factored: euler.as_ref().map(EulerResult::factored),
            euler,
            count,
            orbits: None,
            witness,
            quotient_pm2power: g.order().is_multiple_of(lcm(m, n)) && quotient.is_power_of_two(),
            status: None,
        }
    }

    pub fn chi(&self) -> Option<i64> {
        self.euler.as_ref().map(|e| e.chi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    count: u64,
    witness: Option<(ElemId, ElemId)>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.count += other.count;
        self.witness = match (self.witness, other.witness) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

/// Elements of the given order, in id order.
pub fn elements_of_order(g: &FiniteGroup, order: u64) -> Vec<ElemId> {
    let mut v: Vec<ElemId> = g
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.order == order)
        .flat_map(|(i, _)| g.class_members(i).iter().copied())
        .collect();
    v.sort_unstable();
    v
}

fn involution_classes(g: &FiniteGroup) -> Vec<(ElemId, u64)> {
    g.classes().iter().filter(|c| c.order == 2).map(|c| (c.rep, c.size)).collect()
}

/// Counts generating pairs `(x, x^-1 z)` over involution class
/// representatives `z`, scaled by class size. The `xs` range is split into
/// `jobs` contiguous chunks; totals do not depend on the split.
fn sweep<F>(g: &FiniteGroup, xs: &[ElemId], keep: F, jobs: usize) -> BTreeMap<(u64, u64), Tally>
where
    F: Fn(u64, u64) -> bool + Sync,
{
    let invols = involution_classes(g);
    let run = |chunk: &[ElemId]| {
        let mut out: BTreeMap<(u64, u64), Tally> = BTreeMap::new();
        let mut buf = vec![0; g.degree()];
        for &(z, size) in &invols {
            for &x in chunk {
                let y = g.mul_buf(g.inverse(x), z, &mut buf);
                let (m, n) = (g.elem_order(x), g.elem_order(y));
                if m < 2 || n < 2 || !keep(m, n) || !g.generates(&[x, y]) {
                    continue;
                }
                out.entry((m, n)).or_default().merge(Tally {
                    count: size,
                    witness: Some((x, y)),
                });
            }
        }
        out
    };
    let jobs = jobs.max(1).min(xs.len().max(1));
    let parts: Vec<BTreeMap<(u64, u64), Tally>> = if jobs == 1 {
        vec![run(xs)]
    } else {
        let size = xs.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = xs.chunks(size).map(|c| s.spawn(move || run(c))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let mut total: BTreeMap<(u64, u64), Tally> = BTreeMap::new();
    for part in parts {
        for (k, t) in part {
            total.entry(k).or_default().merge(t);
        }
    }
    total
}

/// All `(2,m,n)` generating pairs for one ordered `(m, n)`.
pub fn enumerate_triangle_pairs(g: &FiniteGroup, m: u64, n: u64, jobs: usize) -> Result<ClassificationRecord> {
    let xs = elements_of_order(g, m);
    let t = sweep(g, &xs, |a, b| a == m && b == n, jobs)
        .remove(&(m, n))
        .unwrap_or_default();
    let rec = ClassificationRecord::new(g, m, n, t.count, t.witness);
    check_record(g, &rec)?;
    Ok(rec)
}

/// Every `(m, n)` with `m <= n`, a nonzero pair count and `chi` matching
/// the signature. Pairs whose `chi` is not an integer are skipped.
pub fn classify_signature(g: &FiniteGroup, sig: Signature, jobs: usize) -> Result<Vec<ClassificationRecord>> {
    classify_filtered(g, |e| sig.matches(e.chi), jobs)
}

/// Records for `m <= n` whose Euler data satisfies `pred`.
pub fn classify_filtered<P>(g: &FiniteGroup, pred: P, jobs: usize) -> Result<Vec<ClassificationRecord>>
where
    P: Fn(&EulerResult) -> bool,
{
    let spectrum: Vec<u64> = g.spectrum().iter().copied().collect();
    let mut allowed = BTreeSet::new();
    for &m in &spectrum {
        for &n in spectrum.iter().filter(|&&n| n >= m) {
            if let Ok(e) = euler_characteristic(g.order(), m, n) {
                if pred(&e) {
                    allowed.insert((m, n));
                }
            }
        }
    }
    if allowed.is_empty() {
        return Ok(Vec::new());
    }
    let xs: Vec<ElemId> = g.ids().collect();
    let found = sweep(g, &xs, |m, n| allowed.contains(&(m, n)), jobs);
    let mut out = Vec::new();
    for ((m, n), t) in found {
        let rec = ClassificationRecord::new(g, m, n, t.count, t.witness);
        check_record(g, &rec)?;
        out.push(rec);
    }
    Ok(out)
}

/// The properties every emitted record must satisfy: `chi` even and at
/// most 2, `|G|/[m,n]` divides `2 chi`, odd primes with non-cyclic Sylow
/// subgroups divide `chi`, and the prime-graph lower bounds.
pub fn check_record(g: &FiniteGroup, rec: &ClassificationRecord) -> Result<()> {
    if rec.count == 0 {
        return Ok(());
    }
    let bad = |why: String| Err(Error::InvariantViolated(format!("{} ({},{}): {why}", rec.group, rec.m, rec.n)));
    let Some(e) = &rec.euler else {
        return bad("valid pairs exist but chi is not defined".into());
    };
    if e.chi % 2 != 0 || e.chi > 2 {
        return bad(format!("chi = {} is odd or exceeds 2", e.chi));
    }
    if !lcm_divisibility(g.order(), rec.m, rec.n)?.quotient_divides_2chi {
        return bad("|G|/[m,n] does not divide 2 chi".into());
    }
    for t in factor_u64(g.order()).primes().filter(|&t| t != 2) {
        if !g.sylow_is_cyclic(t)? && e.chi % t as i64 != 0 {
            return bad(format!("Sylow {t}-subgroup is non-cyclic but {t} does not divide chi"));
        }
    }
    let (x, y) = rec.witness.expect("count > 0 has a witness");
    let pair = TrianglePair {
        g: x,
        h: y,
        m: rec.m,
        n: rec.n,
        euler: e.clone(),
    };
    chi_prime_bounds(g, &pair, None)?;
    Ok(())
}

/// Every valid ordered pair `(x, y)` with `o(x) = m`, `o(y) = n`,
/// `xy` an involution and `<x, y> = G`, sorted.
pub fn valid_pairs(g: &FiniteGroup, m: u64, n: u64) -> Vec<(ElemId, ElemId)> {
    let xs = elements_of_order(g, m);
    let mut out = Vec::new();
    for z in elements_of_order(g, 2) {
        for &x in &xs {
            let y = g.mul(g.inverse(x), z);
            if g.elem_order(y) == n && g.generates(&[x, y]) {
                out.push((x, y));
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub group: String,
    pub m: u64,
    pub n: u64,
    pub pairs: usize,
    pub orbits: usize,
    pub aut_order: u64,
}

/// Orbits of the automorphism action on valid ordered pairs.
pub fn rigidity_check(g: &FiniteGroup, m: u64, n: u64, autos: &AutAction) -> Result<RigidityReport> {
    let pairs = valid_pairs(g, m, n);
    let labels = autos.pair_orbits(&pairs)?;
    let orbits = labels.iter().copied().max().map_or(0, |k| k + 1);
    Ok(RigidityReport {
        group: g.name().to_string(),
        m,
        n,
        pairs: pairs.len(),
        orbits,
        aut_order: autos.group_order(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::GroupSpec;
    use crate::group::DEFAULT_CAP;

    fn build(s: &str) -> FiniteGroup {
        s.parse::<GroupSpec>().unwrap().build(DEFAULT_CAP).unwrap()
    }

    fn class_of_order(g: &FiniteGroup, o: u64) -> Vec<usize> {
        (0..g.classes().len()).filter(|&c| g.classes()[c].order == o).collect()
    }

    #[test]
    fn structure_constants_psl2() {
        for (name, p, expected) in [("PSL2:5", 5, 4), ("PSL2:7", 7, 8)] {
            let g = build(name);
            let z = g.classes()[class_of_order(&g, 2)[0]].rep;
            for gc in class_of_order(&g, 3) {
                for hc in class_of_order(&g, p) {
                    assert_eq!(structure_constant(&g, gc, hc, z), expected, "{name}");
                }
            }
        }
    }

    #[test]
    fn signature_predicates() {
        assert!(Signature::Pm2Power.matches(2));
        assert!(Signature::Pm2Power.matches(-64));
        assert!(!Signature::Pm2Power.matches(-96));
        assert!(Signature::Minus2PowerTimesOddPrimePower.matches(-96));
        assert!(Signature::Minus2PowerTimesOddPrimePower.matches(-1296));
        assert!(!Signature::Minus2PowerTimesOddPrimePower.matches(-2 * 3 * 5));
        assert!(!Signature::Minus2PowerTimesOddPrimePower.matches(-64));
    }

    #[test]
    fn psl25_pairs() {
        let g = build("PSL2:5");
        let r = enumerate_triangle_pairs(&g, 3, 5, 1).unwrap();
        assert!(r.count > 0);
        assert_eq!(r.chi(), Some(2));
        assert_eq!(enumerate_triangle_pairs(&g, 3, 3, 1).unwrap().count, 0);
        let recs = classify_signature(&g, Signature::Pm2Power, 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].canonical, (3, 5));
    }

    #[test]
    fn split_does_not_change_counts() {
        let g = build("PGL2:7");
        let one = classify_signature(&g, Signature::Any, 1).unwrap();
        let four = classify_signature(&g, Signature::Any, 4).unwrap();
        assert_eq!(one, four);
        assert!(!one.is_empty());
    }

    #[test]
    fn duality_of_counts() {
        let g = build("PSL2:7");
        let a = enumerate_triangle_pairs(&g, 3, 7, 1).unwrap();
        let b = enumerate_triangle_pairs(&g, 7, 3, 1).unwrap();
        assert_eq!(a.count, b.count);
        assert_eq!(valid_pairs(&g, 3, 7).len() as u64, a.count);
    }

    #[test]
    fn sl28_any_has_7_9() {
        let g = build("SL2:8");
        let recs = classify_signature(&g, Signature::Any, 2).unwrap();
        let r = recs.iter().find(|r| r.canonical == (7, 9)).unwrap();
        assert_eq!(r.chi(), Some(-124));
    }
}
