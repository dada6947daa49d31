#![allow(dead_code)]

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use regmap_core::classical::GroupSpec;
use regmap_core::group::{FiniteGroup, DEFAULT_CAP};
use regmap_core::numtheory::p_part;

pub fn build(spec: &str) -> FiniteGroup {
    spec.parse::<GroupSpec>().unwrap().build(DEFAULT_CAP).unwrap()
}

/// Test-set groups of order at most 10^4.
pub const SMALL: &[&str] = &[
    "C:12", "D:20", "S:4", "A:5", "S:5", "A:6", "S:6", "SL2:3", "GL2:3", "SL2:5", "PSL2:7", "PGL2:7", "SL2:8",
    "PSL2:11", "PGL2:11", "PSL2:13", "PGL2:13", "PSL2:16", "PSL2:17", "PSL2:19", "PSL2:23", "SL3:3", "SU3:3",
    "S:7", "SL2:8xD:10",
];

/// Groups of order at most 200.
pub const TINY: &[&str] = &[
    "C:1", "C:2", "C:8", "C:30", "D:8", "D:12", "D:18", "D:30", "S:3", "S:4", "A:4", "A:5", "S:5", "SL2:3",
    "GL2:3", "SL2:5", "PSL2:7", "C:2xC:2xC:2", "C:4xC:2", "C:3xC:3", "C:3xS:3", "D:8xC:3", "C:9xC:3", "D:10xC:5",
    "S:3xS:3", "A:4xC:2", "C:5xC:5", "C:2xD:16",
];

pub fn is_clique(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).filter(|&i| s >> i & 1 == 1).all(|i| (s & !(1 << i)) & !adj[i] == 0)
}

pub fn exhaustive_independence(adj: &[u32]) -> usize {
    let n = adj.len();
    (0u32..1 << n)
        .filter(|&s| (0..n).filter(|&i| s >> i & 1 == 1).all(|i| adj[i] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

/// Fewest cliques partitioning the vertex set, by dynamic programming over
/// subsets (the lowest vertex of each remainder picks its clique).
pub fn exhaustive_cover(adj: &[u32]) -> usize {
    let n = adj.len();
    let full = (1u32 << n) - 1;
    let mut best = vec![usize::MAX; 1 << n];
    best[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut sub = rest;
        loop {
            let c = sub | low;
            if is_clique(adj, c) && best[(mask & !c) as usize] != usize::MAX {
                best[mask as usize] = best[mask as usize].min(best[(mask & !c) as usize] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    best[full as usize]
}

/// Grows a t-subgroup one t-element at a time, closing under
/// multiplication, until it reaches the full t-part of the order.
pub fn sylow_by_search(g: &FiniteGroup, t: u64) -> Vec<u32> {
    let full = p_part(g.order(), t);
    let mut gens: Vec<u32> = Vec::new();
    let mut cur = g.subgroup_elements(&gens);
    for x in g.ids() {
        if cur.len() as u64 == full {
            break;
        }
        if p_part(g.elem_order(x), t) != g.elem_order(x) || cur.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        let next = g.subgroup_elements(&gens);
        if p_part(next.len() as u64, t) == next.len() as u64 {
            cur = next;
        } else {
            gens.pop();
        }
    }
    assert_eq!(cur.len() as u64, full, "{}: no Sylow {t}-subgroup found", g.name());
    cur
}

pub fn sylow_cyclic_by_search(g: &FiniteGroup, t: u64) -> bool {
    let p = sylow_by_search(g, t);
    p.iter().any(|&x| g.elem_order(x) == p.len() as u64)
}

/// `q^a - 1` with every common factor of `q^i - 1` (`i < a`) divided out.
pub fn primitive_part(q: u64, a: u32) -> BigUint {
    let mut x = BigUint::from(q).pow(a) - 1u32;
    for i in 1..a {
        let y = BigUint::from(q).pow(i) - 1u32;
        loop {
            let g = x.gcd(&y);
            if g.is_one() {
                break;
            }
            x /= g;
        }
    }
    x
}
