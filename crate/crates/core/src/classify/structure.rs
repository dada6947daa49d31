//! Witness checks for decompositions `O2 . (C x T) . E` with `E` of order
//! 1, 2 or 4 and exponent at most 2.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ElemId, FiniteGroup};
use crate::numtheory::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuotientShape {
    Trivial,
    C2,
    C2xC2,
}

impl QuotientShape {
    fn index(self) -> u64 {
        match self {
            QuotientShape::Trivial => 1,
            QuotientShape::C2 => 2,
            QuotientShape::C2xC2 => 4,
        }
    }
}

/// Generators of the candidate subgroups, as element ids of the group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureWitness {
    pub o2: Vec<ElemId>,
    /// Generator of the cyclic part; `None` for the trivial group.
    pub c: Option<ElemId>,
    pub t: Vec<ElemId>,
    pub shape: QuotientShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureCheck {
    pub holds: bool,
    /// First clause that failed.
    pub failed: Option<String>,
    pub o2_order: u64,
    pub c_order: u64,
    pub t_order: u64,
    pub index: u64,
}

struct Sub {
    member: Vec<bool>,
    order: u64,
}

fn subgroup(g: &FiniteGroup, gens: &[ElemId]) -> Sub {
    let elems = g.subgroup_elements(gens);
    let mut member = vec![false; g.order() as usize];
    for &e in &elems {
        member[e as usize] = true;
    }
    Sub {
        member,
        order: elems.len() as u64,
    }
}

/// Every conjugate of a subgroup generator by a group generator stays inside.
fn normalized(g: &FiniteGroup, sub: &Sub, gens: &[ElemId]) -> bool {
    g.generator_ids().iter().all(|&s| {
        let si = g.inverse(s);
        gens.iter().all(|&h| sub.member[g.mul(g.mul(si, h), s) as usize])
    })
}

pub fn check_structure_decomposition(g: &FiniteGroup, w: &StructureWitness) -> Result<StructureCheck> {
    let all: Vec<ElemId> = w.o2.iter().chain(w.c.iter()).chain(w.t.iter()).copied().collect();
    if let Some(&bad) = all.iter().find(|&&e| e as u64 >= g.order()) {
        return Err(Error::Witness(format!("element id {bad} is not in {}", g.name())));
    }
    let c_gens: Vec<ElemId> = w.c.into_iter().collect();
    let (o2, c, t) = (subgroup(g, &w.o2), subgroup(g, &c_gens), subgroup(g, &w.t));
    let n = subgroup(g, &all);
    let index = g.order() / n.order;
    let mut failed = None;
    let mut fail = |clause: &str| {
        if failed.is_none() {
            failed = Some(clause.to_string());
        }
    };
    if !o2.order.is_power_of_two() {
        fail("O2 is not a 2-group");
    }
    if !normalized(g, &o2, &w.o2) {
        fail("O2 is not normal");
    }
    if !normalized(g, &c, &c_gens) {
        fail("C is not normalized by G");
    }
    if c.order % 2 == 0 {
        fail("C has even order");
    }
    if gcd(c.order, t.order) != 1 {
        fail("|C| and |T| are not coprime");
    }
    if !normalized(g, &t, &w.t) {
        fail("T is not normal");
    }
    if index != w.shape.index() {
        fail(&format!("index of C.T.O2 is {index}, shape needs {}", w.shape.index()));
    } else {
        // Coset representatives: the first element of each new coset.
        let mut covered = n.member.clone();
        let mut reps = Vec::new();
        for x in g.ids() {
            if covered[x as usize] {
                continue;
            }
            reps.push(x);
            for y in g.ids().filter(|&y| n.member[y as usize]) {
                covered[g.mul(x, y) as usize] = true;
            }
        }
        if reps.iter().any(|&r| !n.member[g.mul(r, r) as usize]) {
            fail("quotient is not elementary abelian");
        }
    }
    Ok(StructureCheck {
        holds: failed.is_none(),
        failed,
        o2_order: o2.order,
        c_order: c.order,
        t_order: t.order,
        index,
    })
}
