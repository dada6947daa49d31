//! Gruenberg-Kegel prime graphs with exact independence and clique-cover
//! numbers.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::TrianglePair;
use crate::group::FiniteGroup;
use crate::numtheory::{factor_u64, gcd, lcm, p_part, prime_divisors};

const MAX_VERTICES: usize = 32;

/// Vertices are the primes dividing the order; `p -- q` iff some element
/// order is divisible by `pq`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    pub vertices: Vec<u64>,
    /// Adjacency bitmasks over vertex positions.
    pub adj: Vec<u32>,
    /// Whether the Sylow subgroup for each vertex is cyclic.
    pub cyclic: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub value: usize,
    /// Independent set for the independence number; cliques for a cover.
    pub witness: Vec<Vec<u64>>,
}

pub fn build_gk(spectrum: &BTreeSet<u64>, order: u64) -> Result<PrimeGraph> {
    for &s in spectrum {
        if s == 0 || !order.is_multiple_of(s) {
            return Err(Error::NotDivisor(s, order));
        }
    }
    let vertices = prime_divisors(order);
    if vertices.len() > MAX_VERTICES {
        return Err(Error::VertexBudget(vertices.len()));
    }
    let k = vertices.len();
    let mut adj = vec![0u32; k];
    for i in 0..k {
        for j in i + 1..k {
            let pq = vertices[i] * vertices[j];
            if spectrum.iter().any(|s| s % pq == 0) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let cyclic = vertices
        .iter()
        .map(|&p| {
            let full = p_part(order, p);
            spectrum.iter().any(|&s| p_part(s, p) == full)
        })
        .collect();
    Ok(PrimeGraph { vertices, adj, cyclic })
}

pub fn group_gk(g: &FiniteGroup) -> PrimeGraph {
    build_gk(g.spectrum(), g.order()).expect("a group spectrum divides the order")
}

impl PrimeGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, p: u64, q: u64) -> bool {
        match (self.position(p), self.position(q)) {
            (Some(i), Some(j)) => self.adj[i] >> j & 1 == 1,
            _ => false,
        }
    }

    fn position(&self, p: u64) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    pub fn edges(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i] >> j & 1 == 1 {
                    out.push((self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    /// Primes with non-cyclic Sylow subgroups.
    pub fn non_cyclic(&self) -> Vec<u64> {
        self.vertices
            .iter()
            .zip(&self.cyclic)
            .filter(|(_, &c)| !c)
            .map(|(&p, _)| p)
            .collect()
    }

    /// Induced subgraph on the vertices selected by `keep`.
    pub fn induced(&self, keep: &[bool]) -> PrimeGraph {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        let adj = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .enumerate()
                    .filter(|&(_, &j)| self.adj[i] >> j & 1 == 1)
                    .fold(0u32, |m, (b, _)| m | 1 << b)
            })
            .collect();
        PrimeGraph {
            vertices: idx.iter().map(|&i| self.vertices[i]).collect(),
            adj,
            cyclic: idx.iter().map(|&i| self.cyclic[i]).collect(),
        }
    }

    /// Edges must be witnessed by the spectrum and non-edges must not be.
    pub fn check_against(&self, spectrum: &BTreeSet<u64>) -> bool {
        (0..self.len()).all(|i| {
            (i + 1..self.len()).all(|j| {
                let pq = self.vertices[i] * self.vertices[j];
                let witnessed = spectrum.iter().any(|s| s % pq == 0);
                witnessed == (self.adj[i] >> j & 1 == 1)
            })
        })
    }

    /// One line per vertex, `p: n1 n2`, with `*` after non-cyclic vertices.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.len() {
            let star = if self.cyclic[i] { "" } else { "*" };
            let _ = write!(s, "{}{}:", self.vertices[i], star);
            for j in 0..self.len() {
                if self.adj[i] >> j & 1 == 1 {
                    let _ = write!(s, " {}", self.vertices[j]);
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_adjacency(text: &str) -> Result<PrimeGraph> {
        let bad = |why: String| Error::InvariantViolated(format!("adjacency text: {why}"));
        let mut rows = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (head, rest) = line.split_once(':').ok_or_else(|| bad(format!("missing `:` in `{line}`")))?;
            let head = head.trim();
            let (p, cyclic) = match head.strip_suffix('*') {
                Some(p) => (p, false),
                None => (head, true),
            };
            let p: u64 = p.parse().map_err(|_| bad(format!("bad vertex `{head}`")))?;
            let nbrs: Vec<u64> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(format!("bad neighbour `{t}`"))))
                .collect::<Result<_>>()?;
            rows.push((p, cyclic, nbrs));
        }
        if rows.len() > MAX_VERTICES {
            return Err(Error::VertexBudget(rows.len()));
        }
        let vertices: Vec<u64> = rows.iter().map(|r| r.0).collect();
        let mut adj = vec![0u32; rows.len()];
        for (i, (_, _, nbrs)) in rows.iter().enumerate() {
            for q in nbrs {
                let j = vertices.iter().position(|v| v == q).ok_or_else(|| bad(format!("unknown vertex {q}")))?;
                if i == j {
                    return Err(bad(format!("self-loop at {q}")));
                }
                adj[i] |= 1 << j;
            }
        }
        for i in 0..adj.len() {
            for j in 0..adj.len() {
                if (adj[i] >> j & 1) != (adj[j] >> i & 1) {
                    return Err(bad("adjacency is not symmetric".into()));
                }
            }
        }
        Ok(PrimeGraph {
            vertices,
            adj,
            cyclic: rows.iter().map(|r| r.1).collect(),
        })
    }

    fn masks_to_primes(&self, mask: u32) -> Vec<u64> {
        (0..self.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.vertices[i]).collect()
    }
}

pub fn restrict_cyclic(g: &PrimeGraph) -> PrimeGraph {
    g.induced(&g.cyclic)
}

/// Exact maximum independent set by branch and bound, branching on a
/// vertex of maximum remaining degree.
pub fn independence_number(g: &PrimeGraph) -> Result<GraphStats> {
    if g.len() > MAX_VERTICES {
        return Err(Error::VertexBudget(g.len()));
    }
    fn go(adj: &[u32], cand: u32, cur: u32, best: &mut u32) {
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        if cand == 0 {
            *best = cur;
            return;
        }
        let v = (0..adj.len())
            .filter(|&i| cand >> i & 1 == 1)
            .max_by_key(|&i| ((adj[i] & cand).count_ones(), std::cmp::Reverse(i)))
            .unwrap();
        if (adj[v] & cand) == 0 {
            go(adj, cand & !(1 << v), cur | 1 << v, best);
            return;
        }
        go(adj, cand & !(1 << v) & !adj[v], cur | 1 << v, best);
        go(adj, cand & !(1 << v), cur, best);
    }
    let all = if g.len() == 32 { u32::MAX } else { (1u32 << g.len()) - 1 };
    let mut best = 0u32;
    go(&g.adj, all, 0, &mut best);
    Ok(GraphStats {
        value: best.count_ones() as usize,
        witness: vec![g.masks_to_primes(best)],
    })
}

/// Minimum clique cover, as the chromatic number of the complement.
pub fn clique_cover_number(g: &PrimeGraph) -> Result<GraphStats> {
    let n = g.len();
    if n > MAX_VERTICES {
        return Err(Error::VertexBudget(n));
    }
    // Two vertices may share a colour iff they are adjacent in g.
    fn colour(g: &PrimeGraph, order: &[usize], k: usize, pos: usize, col: &mut [usize]) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let used = order[..pos].iter().map(|&u| col[u]).max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            let ok = order[..pos].iter().all(|&u| col[u] != c || g.adj[v] >> u & 1 == 1);
            if ok {
                col[v] = c;
                if colour(g, order, k, pos + 1, col) {
                    return true;
                }
            }
        }
        false
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (g.adj[i].count_ones(), i));
    let mut col = vec![0; n];
    let k = (1..=n.max(1)).find(|&k| n == 0 || colour(g, &order, k, 0, &mut col)).unwrap();
    let k = if n == 0 { 0 } else { k };
    let cover: Vec<Vec<u64>> = (0..k)
        .map(|c| (0..n).filter(|&v| col[v] == c).map(|v| g.vertices[v]).collect())
        .collect();
    let t = independence_number(g)?.value;
    if k < t {
        return Err(Error::InvariantViolated(format!("clique cover {k} below independence number {t}")));
    }
    Ok(GraphStats { value: k, witness: cover })
}

/// `max{0, m(GK_c) - 2} + |pi_nc|`.
pub fn f_value(g: &PrimeGraph) -> Result<usize> {
    let m = clique_cover_number(&restrict_cyclic(g))?.value;
    Ok(m.saturating_sub(2) + g.non_cyclic().len())
}

pub fn f_lower_bound(group: &FiniteGroup) -> Result<usize> {
    f_value(&group_gk(group))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiBounds {
    /// `max{0, m(GK_c) - 2} + |pi_nc|` for the group (or the normal subgroup).
    pub bound_c: usize,
    /// `m(GK) - 2`, floored at 0.
    pub bound_full: usize,
    /// Number of primes dividing the counted quantity: `(chi, |G|)`, or
    /// `|G|/[m,n]` when a normal subgroup is supplied.
    pub actual: usize,
}

/// Checks the prime-count lower bounds for a validated pair. With
/// `normal = Some((spectrum, order))` the bounds come from that normal
/// subgroup and count primes of `|G|/[m,n]`.
pub fn chi_prime_bounds(
    group: &FiniteGroup,
    pair: &TrianglePair,
    normal: Option<(&BTreeSet<u64>, u64)>,
) -> Result<ChiBounds> {
    let (gk, actual) = match normal {
        None => {
            let d = gcd(pair.euler.chi.unsigned_abs(), group.order());
            (group_gk(group), factor_u64(d).num_primes())
        }
        Some((spec, order)) => {
            if !group.order().is_multiple_of(order) {
                return Err(Error::NotDivisor(order, group.order()));
            }
            let q = group.order() / lcm(pair.m, pair.n);
            (build_gk(spec, order)?, factor_u64(q).num_primes())
        }
    };
    let bound_c = f_value(&gk)?;
    let bound_full = clique_cover_number(&gk)?.value.saturating_sub(2);
    let r = ChiBounds {
        bound_c,
        bound_full,
        actual,
    };
    if actual < bound_c || actual < bound_full {
        return Err(Error::BoundViolated(format!(
            "{} with (m,n)=({},{}): {actual} primes, bounds {bound_c} and {bound_full}",
            group.name(),
            pair.m,
            pair.n
        )));
    }
    Ok(r)
}
