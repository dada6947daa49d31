//! Group specs and matrix generators for the classical families, turned
//! into faithful permutation actions on vectors or projective points.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::data;
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::FiniteGroup;
use crate::matrix::Matrix;
use crate::numtheory::{gcd, prime_power};
use crate::perm::{self, Point};
use crate::schreier::StabChain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    SL,
    GL,
    PSL,
    PGL,
    SU,
    GU,
    PSU,
    PGU,
}

impl Family {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "SL" => Family::SL,
            "GL" => Family::GL,
            "PSL" => Family::PSL,
            "PGL" => Family::PGL,
            "SU" => Family::SU,
            "GU" => Family::GU,
            "PSU" => Family::PSU,
            "PGU" => Family::PGU,
            _ => return None,
        })
    }

    pub fn is_unitary(self) -> bool {
        matches!(self, Family::SU | Family::GU | Family::PSU | Family::PGU)
    }

    pub fn is_projective(self) -> bool {
        matches!(self, Family::PSL | Family::PGL | Family::PSU | Family::PGU)
    }

    fn is_full_linear(self) -> bool {
        matches!(self, Family::GL | Family::PGL | Family::GU | Family::PGU)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A group named by the spec mini-language: `PSL2:7`, `SU3:3`, `C:12`,
/// `D:10` (dihedral of order 10), `S:7`, `A:9`, `data:Sp6_2`, and direct
/// products joined with `x` such as `SL2:8xD:10`. A classical name with an
/// extension suffix (`PSL2:25.2`) refers to the matching data file.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Classical { family: Family, dim: usize, q: u64 },
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Data(String),
    Product(Vec<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Classical { family, dim, q } => write!(f, "{family}{dim}:{q}"),
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Data(name) => write!(f, "data:{name}"),
            GroupSpec::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("x"))
            }
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts: Vec<&str> = s.split('x').collect();
        if parts.len() > 1 {
            return Ok(GroupSpec::Product(parts.iter().map(|p| parse_atom(s, p)).collect::<Result<_>>()?));
        }
        parse_atom(s, s)
    }
}

fn parse_atom(whole: &str, s: &str) -> Result<GroupSpec> {
    let bad = |why: &str| Error::GroupSpecParse(whole.to_string(), why.to_string());
    let (head, tail) = s.split_once(':').ok_or_else(|| bad("expected `NAME:parameter`"))?;
    if head == "data" {
        if tail.is_empty() {
            return Err(bad("empty data name"));
        }
        return Ok(GroupSpec::Data(tail.to_string()));
    }
    let num = |t: &str| -> Result<usize> {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(bad(&format!("`{t}` is not a positive integer"))),
        }
    };
    match head {
        "C" => return Ok(GroupSpec::Cyclic(num(tail)?)),
        "D" => return Ok(GroupSpec::Dihedral(num(tail)?)),
        "S" => return Ok(GroupSpec::Symmetric(num(tail)?)),
        "A" => return Ok(GroupSpec::Alternating(num(tail)?)),
        _ => {}
    }
    let split = head.find(|c: char| c.is_ascii_digit()).ok_or_else(|| bad("missing dimension"))?;
    let family = Family::parse(&head[..split]).ok_or_else(|| bad(&format!("unknown family `{}`", &head[..split])))?;
    let dim = num(&head[split..])?;
    if let Some((q, ext)) = tail.split_once('.') {
        num(q)?;
        return Ok(GroupSpec::Data(format!("{}{}_{}.{}", &head[..split], dim, q, ext)));
    }
    let q = num(tail)? as u64;
    if prime_power(q).is_none() {
        return Err(bad(&format!("{q} is not a prime power")));
    }
    Ok(GroupSpec::Classical { family, dim, q })
}

impl GroupSpec {
    /// The group order when it is known without enumeration.
    pub fn expected_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Classical { family, dim, q } => Some(classical_order(*family, *dim, *q)),
            GroupSpec::Cyclic(n) => Some(*n as u64),
            GroupSpec::Dihedral(n) => Some(*n as u64),
            GroupSpec::Symmetric(n) => (1..=*n as u64).try_fold(1u64, |a, k| a.checked_mul(k)),
            GroupSpec::Alternating(n) => {
                let f = (1..=*n as u64).try_fold(1u64, |a, k| a.checked_mul(k))?;
                Some(if *n >= 2 { f / 2 } else { 1 })
            }
            GroupSpec::Data(name) => data::recorded_order(name),
            GroupSpec::Product(parts) => parts.iter().try_fold(1u64, |a, p| a.checked_mul(p.expected_order()?)),
        }
    }

    /// Builds the group, refusing before enumeration when the known order
    /// exceeds `cap`.
    pub fn build(&self, cap: u64) -> Result<FiniteGroup> {
        if let Some(o) = self.expected_order() {
            if o > cap {
                return Err(Error::CapExceeded { cap });
            }
        }
        let g = match self {
            GroupSpec::Classical { .. } => {
                let c = classical_generators(self)?;
                FiniteGroup::generate(self.to_string(), c.action.len(), c.perms, cap)?
            }
            GroupSpec::Cyclic(n) => FiniteGroup::cyclic(*n)?,
            GroupSpec::Dihedral(n) => FiniteGroup::dihedral(*n)?,
            GroupSpec::Symmetric(n) => FiniteGroup::symmetric(*n)?,
            GroupSpec::Alternating(n) => FiniteGroup::alternating(*n)?,
            GroupSpec::Data(name) => data::load(name, cap)?,
            GroupSpec::Product(parts) => {
                let mut acc = parts[0].build(cap)?;
                for p in &parts[1..] {
                    acc = FiniteGroup::direct_product(&acc, &p.build(cap)?, cap)?;
                }
                acc
            }
        };
        if let Some(o) = self.expected_order() {
            if g.order() != o {
                return Err(Error::OrderMismatch {
                    name: self.to_string(),
                    expected: o,
                    got: g.order(),
                });
            }
        }
        Ok(g.with_name(self.to_string()))
    }
}

fn pow(q: u64, e: usize) -> u128 {
    (q as u128).pow(e as u32)
}

/// `|SL_n(q)|` or `|SU_n(q)|`.
fn special_order(unitary: bool, n: usize, q: u64) -> u128 {
    let mut o = pow(q, n * (n - 1) / 2);
    for i in 2..=n {
        let qi = pow(q, i);
        o *= if unitary && i % 2 == 1 { qi + 1 } else { qi - 1 };
    }
    o
}

pub fn classical_order(family: Family, n: usize, q: u64) -> u64 {
    let unitary = family.is_unitary();
    let s = special_order(unitary, n, q);
    let z = if unitary { q + 1 } else { q - 1 };
    let o = match family {
        Family::SL | Family::SU | Family::PGL | Family::PGU => s,
        Family::GL | Family::GU => s * z as u128,
        Family::PSL | Family::PSU => s / gcd(n as u64, z) as u128,
    };
    u64::try_from(o).expect("classical order exceeds 64 bits")
}

// ---------------------------------------------------------------------------
// Point actions

/// Nonzero row vectors (or projective points, normalized so the first
/// nonzero coordinate is 1) with matrices acting on the right.
#[derive(Clone, Debug)]
pub struct PointAction {
    field: Arc<FiniteField>,
    dim: usize,
    projective: bool,
    points: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PointAction {
    pub fn new(field: &Arc<FiniteField>, dim: usize, projective: bool) -> Self {
        let q = field.order() as u64;
        let total = q.pow(dim as u32);
        let mut points = Vec::new();
        for code in 1..total {
            let v: Vec<u32> = (0..dim).map(|i| ((code / q.pow((dim - 1 - i) as u32)) % q) as u32).collect();
            if !projective || v.iter().find(|&&c| c != 0) == Some(&1) {
                points.push(v);
            }
        }
        Self::from_points(field, dim, projective, points)
    }

    fn from_points(field: &Arc<FiniteField>, dim: usize, projective: bool, points: Vec<Vec<u32>>) -> Self {
        let index = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        PointAction {
            field: field.clone(),
            dim,
            projective,
            points,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    fn canon(&self, mut v: Vec<u32>) -> Vec<u32> {
        if self.projective {
            if let Some(&lead) = v.iter().find(|&&c| c != 0) {
                let s = self.field.inv(lead);
                for c in v.iter_mut() {
                    *c = self.field.mul(*c, s);
                }
            }
        }
        v
    }

    pub fn index_of(&self, v: &[u32]) -> Option<usize> {
        self.index.get(&self.canon(v.to_vec())).copied()
    }

    /// Permutation induced by an arbitrary map on vectors. Panics if the
    /// point set is not invariant.
    pub fn perm_by(&self, f: impl Fn(&[u32]) -> Vec<u32>) -> Vec<Point> {
        self.points
            .iter()
            .map(|v| {
                let w = self.canon(f(v));
                *self.index.get(&w).expect("point set is not invariant") as Point
            })
            .collect()
    }

    pub fn perm(&self, m: &Matrix) -> Vec<Point> {
        assert_eq!(m.dim(), self.dim);
        self.perm_by(|v| m.apply_row(v))
    }

    /// Entrywise `a -> a^(p^power)` on points.
    pub fn frobenius_perm(&self, power: u32) -> Vec<Point> {
        let e = (self.field.characteristic() as u64).pow(power);
        self.perm_by(|v| v.iter().map(|&c| self.field.pow(c, e)).collect())
    }

    /// Sub-action on a union of orbits, listed in ascending point order.
    pub fn restrict(&self, pts: &[usize]) -> Self {
        let mut pts = pts.to_vec();
        pts.sort_unstable();
        let points = pts.iter().map(|&i| self.points[i].clone()).collect();
        Self::from_points(&self.field, self.dim, self.projective, points)
    }
}

// ---------------------------------------------------------------------------
// Generators

/// Matrix generators of a classical group with their faithful action.
#[derive(Clone, Debug)]
pub struct ClassicalGenerators {
    pub family: Family,
    pub dim: usize,
    pub q: u64,
    pub field: Arc<FiniteField>,
    pub matrices: Vec<Matrix>,
    /// Scalar matrices of the linear group that the projective quotient
    /// identifies with the identity (just the identity otherwise).
    pub scalars: Vec<Matrix>,
    pub action: PointAction,
    pub perms: Vec<Vec<Point>>,
    pub expected_order: u64,
}

pub fn classical_generators(spec: &GroupSpec) -> Result<ClassicalGenerators> {
    let GroupSpec::Classical { family, dim, q } = *spec else {
        return Err(Error::UnsupportedGroup(spec.to_string()));
    };
    if !(2..=4).contains(&dim) {
        return Err(Error::UnsupportedGroup(format!("{spec}: dimension must be 2, 3 or 4")));
    }
    let (p, f) = prime_power(q).ok_or_else(|| Error::UnsupportedGroup(spec.to_string()))?;
    let k = if family.is_unitary() { 2 * f } else { f };
    let field = Arc::new(FiniteField::new(p, k).map_err(|_| Error::UnsupportedGroup(spec.to_string()))?);
    let expected = classical_order(family, dim, q);
    // Projective points are faithful whenever the linear group has no
    // nontrivial scalars.
    let projective = family.is_projective() || scalars_in(&field, family, dim, q).len() == 1;
    let full = PointAction::new(&field, dim, projective);

    let candidates: Box<dyn Iterator<Item = Vec<Matrix>>> = if family.is_unitary() {
        Box::new(unitary_candidates(&field, family, dim, q))
    } else {
        Box::new(std::iter::once(linear_generators(&field, family, dim, q)))
    };
    for mats in candidates {
        let perms: Vec<Vec<Point>> = mats.iter().map(|m| full.perm(m)).collect();
        if StabChain::new(full.len(), &perms).order() != expected as u128 {
            continue;
        }
        let action = faithful_orbit(&full, &perms, expected);
        let perms = mats.iter().map(|m| action.perm(m)).collect();
        let scalars = scalar_subgroup(&field, family, dim, q);
        return Ok(ClassicalGenerators {
            family,
            dim,
            q,
            field,
            matrices: mats,
            scalars,
            action,
            perms,
            expected_order: expected,
        });
    }
    Err(Error::UnsupportedGroup(format!("{spec}: no generating set found")))
}

/// Smallest orbit (ties broken by least point) on which the action stays
/// faithful, i.e. still has the full order.
fn faithful_orbit(action: &PointAction, perms: &[Vec<Point>], order: u64) -> PointAction {
    let mut orbs = perm::orbits(action.len(), perms);
    orbs.sort_by_key(|o| (o.len(), *o.iter().min().unwrap()));
    for orb in &orbs {
        let restricted: Vec<Vec<Point>> = {
            let mut sorted = orb.clone();
            sorted.sort_unstable();
            perms.iter().map(|p| perm::restrict(p, &sorted)).collect()
        };
        if StabChain::new(orb.len(), &restricted).order() == order as u128 {
            return action.restrict(orb);
        }
    }
    action.clone()
}

fn scalar(field: &Arc<FiniteField>, n: usize, s: u32) -> Matrix {
    Matrix::scalar(field, n, s)
}

/// Cyclic permutation matrix `e_i -> e_{i+1}`, one entry negated when
/// needed so the determinant is 1.
fn signed_cycle(field: &Arc<FiniteField>, n: usize) -> Matrix {
    let mut m = scalar(field, n, 0);
    for i in 0..n {
        m.set(i, (i + 1) % n, 1);
    }
    if n.is_multiple_of(2) {
        m.set(n - 1, 0, field.neg(1));
    }
    m
}

fn linear_generators(field: &Arc<FiniteField>, family: Family, n: usize, q: u64) -> Vec<Matrix> {
    let w = field.primitive_element();
    let mut t = Matrix::identity(field, n);
    t.set(0, 1, 1);
    let mut gens = vec![t, signed_cycle(field, n)];
    if prime_power(q).unwrap().1 > 1 {
        let mut d = vec![1; n];
        d[0] = w;
        d[1] = field.inv(w);
        gens.push(Matrix::diagonal(field, &d));
    }
    if family.is_full_linear() {
        let mut d = vec![1; n];
        d[0] = w;
        gens.push(Matrix::diagonal(field, &d));
    }
    gens
}

/// Candidate generating sets for unitary groups with the identity Gram
/// matrix: a unitary transvection `x -> x + a h(x,v) v` (with `v`
/// isotropic and `a + a^q = 0`), the signed cycle and a norm-one diagonal.
fn unitary_candidates(field: &Arc<FiniteField>, family: Family, n: usize, q: u64) -> impl Iterator<Item = Vec<Matrix>> {
    let field = field.clone();
    let conj = {
        let f = field.clone();
        move |a: u32| f.pow(a, q)
    };
    let lambda = field.pow(field.primitive_element(), q - 1);
    let a = field
        .elements()
        .find(|&a| a != 0 && field.add(a, conj(a)) == 0)
        .expect("trace-zero element");
    let isotropic: Vec<Vec<u32>> = PointAction::new(&field, n, true)
        .points()
        .iter()
        .filter(|v| v.iter().fold(0, |acc, &c| field.add(acc, field.mul(c, conj(c)))) == 0)
        .cloned()
        .collect();
    isotropic.into_iter().map(move |v| {
        let mut t = Matrix::identity(&field, n);
        for i in 0..n {
            for j in 0..n {
                let e = field.mul(a, field.mul(conj(v[i]), v[j]));
                t.set(i, j, field.add(t.get(i, j), e));
            }
        }
        let mut d = vec![1; n];
        d[0] = lambda;
        d[1] = field.inv(lambda);
        let mut gens = vec![t, signed_cycle(&field, n), Matrix::diagonal(&field, &d)];
        if family.is_full_linear() {
            let mut d = vec![1; n];
            d[0] = lambda;
            gens.push(Matrix::diagonal(&field, &d));
        }
        gens
    })
}

fn scalar_subgroup(field: &Arc<FiniteField>, family: Family, n: usize, q: u64) -> Vec<Matrix> {
    if !family.is_projective() {
        return vec![Matrix::identity(field, n)];
    }
    scalars_in(field, family, n, q)
}

/// Scalar matrices lying in the underlying linear group.
fn scalars_in(field: &Arc<FiniteField>, family: Family, n: usize, q: u64) -> Vec<Matrix> {
    field
        .elements()
        .filter(|&s| s != 0)
        .filter(|&s| {
            let unit = !family.is_unitary() || field.pow(s, q + 1) == 1;
            let det_one = family.is_full_linear() || field.pow(s, n as u64) == 1;
            unit && det_one
        })
        .map(|s| scalar(field, n, s))
        .collect()
}
