//! Permutations as image arrays on points `0..d`, composed left to right:
//! `(x * y)[i] = y[x[i]]`.

use num_integer::Integer;

pub type Point = u16;

pub fn identity(d: usize) -> Vec<Point> {
    (0..d as Point).collect()
}

pub fn is_identity(x: &[Point]) -> bool {
    x.iter().enumerate().all(|(i, &v)| v as usize == i)
}

pub fn compose(x: &[Point], y: &[Point]) -> Vec<Point> {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn compose_into(x: &[Point], y: &[Point], out: &mut [Point]) {
    for (o, &i) in out.iter_mut().zip(x) {
        *o = y[i as usize];
    }
}

pub fn inverse(x: &[Point]) -> Vec<Point> {
    let mut inv = vec![0; x.len()];
    for (i, &v) in x.iter().enumerate() {
        inv[v as usize] = i as Point;
    }
    inv
}

/// `c^-1 x c`.
pub fn conjugate(x: &[Point], c: &[Point], c_inv: &[Point]) -> Vec<Point> {
    let mut out = vec![0; x.len()];
    conjugate_into(x, c, c_inv, &mut out);
    out
}

pub fn conjugate_into(x: &[Point], c: &[Point], c_inv: &[Point], out: &mut [Point]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = c[x[c_inv[i] as usize] as usize];
    }
}

pub fn power(x: &[Point], mut e: u64) -> Vec<Point> {
    let mut result = identity(x.len());
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = compose(&result, &base);
        }
        base = compose(&base, &base);
        e >>= 1;
    }
    result
}

pub fn cycle_lengths(x: &[Point]) -> Vec<usize> {
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for start in 0..x.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = x[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

pub fn order(x: &[Point]) -> u64 {
    cycle_lengths(x).into_iter().fold(1u64, |acc, l| acc.lcm(&(l as u64)))
}

pub fn from_cycles(d: usize, cycles: &[&[usize]]) -> Vec<Point> {
    let mut p = identity(d);
    for c in cycles {
        for (k, &a) in c.iter().enumerate() {
            p[a] = c[(k + 1) % c.len()] as Point;
        }
    }
    p
}

pub fn is_permutation(x: &[Point]) -> bool {
    let mut seen = vec![false; x.len()];
    for &v in x {
        let v = v as usize;
        if v >= x.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Orbits of the group generated by `gens`, each listed in discovery order,
/// sorted by least point.
pub fn orbits(d: usize, gens: &[Vec<Point>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orb = vec![start];
        let mut k = 0;
        while k < orb.len() {
            let a = orb[k];
            for g in gens {
                let b = g[a] as usize;
                if !seen[b] {
                    seen[b] = true;
                    orb.push(b);
                }
            }
            k += 1;
        }
        out.push(orb);
    }
    out
}

/// Restricts `x` to the invariant set `pts`, renumbered by position.
pub fn restrict(x: &[Point], pts: &[usize]) -> Vec<Point> {
    let mut pos = vec![Point::MAX; x.len()];
    for (k, &p) in pts.iter().enumerate() {
        pos[p] = k as Point;
    }
    pts.iter()
        .map(|&p| {
            let v = pos[x[p] as usize];
            assert!(v != Point::MAX, "point set is not invariant");
            v
        })
        .collect()
}

pub(crate) fn hash_points(x: &[Point]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for chunk in x.chunks(4) {
        let mut w = 0u64;
        for (k, &v) in chunk.iter().enumerate() {
            w |= (v as u64) << (16 * k);
        }
        h = (h ^ w).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        h ^= h >> 29;
    }
    h
}

/// Flat storage of equal-length permutations with an open-addressing
/// index from image array to insertion number.
#[derive(Clone, Debug)]
pub struct PermStore {
    degree: usize,
    data: Vec<Point>,
    slots: Vec<u32>,
    len: usize,
}

const EMPTY: u32 = u32::MAX;

impl PermStore {
    pub fn new(degree: usize) -> Self {
        PermStore {
            degree,
            data: Vec::new(),
            slots: vec![EMPTY; 16],
            len: 0,
        }
    }

    pub fn with_capacity(degree: usize, n: usize) -> Self {
        let mut s = Self::new(degree);
        s.data.reserve(n * degree);
        s.slots = vec![EMPTY; (2 * n).next_power_of_two().max(16)];
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, id: usize) -> &[Point] {
        &self.data[id * self.degree..(id + 1) * self.degree]
    }

    pub fn find(&self, x: &[Point]) -> Option<usize> {
        let mask = self.slots.len() - 1;
        let mut s = hash_points(x) as usize & mask;
        loop {
            match self.slots[s] {
                EMPTY => return None,
                id if self.get(id as usize) == x => return Some(id as usize),
                _ => s = (s + 1) & mask,
            }
        }
    }

    /// Returns `(id, newly_inserted)`.
    pub fn insert(&mut self, x: &[Point]) -> (usize, bool) {
        debug_assert_eq!(x.len(), self.degree);
        if let Some(id) = self.find(x) {
            return (id, false);
        }
        if 2 * (self.len + 1) > self.slots.len() {
            self.grow();
        }
        let id = self.len;
        self.data.extend_from_slice(x);
        self.len += 1;
        self.place(id);
        (id, true)
    }

    fn place(&mut self, id: usize) {
        let mask = self.slots.len() - 1;
        let mut s = hash_points(self.get(id)) as usize & mask;
        while self.slots[s] != EMPTY {
            s = (s + 1) & mask;
        }
        self.slots[s] = id as u32;
    }

    fn grow(&mut self) {
        self.slots = vec![EMPTY; self.slots.len() * 2];
        for id in 0..self.len {
            self.place(id);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_left_first() {
        let x = from_cycles(3, &[&[0, 1]]);
        let y = from_cycles(3, &[&[1, 2]]);
        // 0 -x-> 1 -y-> 2
        assert_eq!(compose(&x, &y)[0], 2);
        assert_eq!(compose(&x, &inverse(&x)), identity(3));
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let x = from_cycles(4, &[&[0, 1, 2]]);
        let c = from_cycles(4, &[&[2, 3]]);
        let y = conjugate(&x, &c, &inverse(&c));
        assert_eq!(y, from_cycles(4, &[&[0, 1, 3]]));
    }

    #[test]
    fn orders_and_powers() {
        let x = from_cycles(7, &[&[0, 1], &[2, 3, 4], &[5, 6]]);
        assert_eq!(order(&x), 6);
        assert!(is_identity(&power(&x, 6)));
        assert!(!is_identity(&power(&x, 3)));
    }

    #[test]
    fn store_roundtrip() {
        let mut s = PermStore::new(5);
        let mut p = identity(5);
        for k in 0..200 {
            p = compose(&p, &from_cycles(5, &[&[0, 1, 2, 3, 4]]));
            if k % 3 == 0 {
                p = compose(&p, &from_cycles(5, &[&[0, 1]]));
            }
            s.insert(&p);
        }
        assert!(s.len() <= 120);
        for id in 0..s.len() {
            assert_eq!(s.find(s.get(id)), Some(id));
        }
    }

    #[test]
    fn restrict_to_orbit() {
        let x = from_cycles(6, &[&[0, 1, 2], &[3, 4]]);
        let orbs = orbits(6, std::slice::from_ref(&x));
        assert_eq!(orbs, vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert_eq!(restrict(&x, &orbs[1]), vec![1, 0]);
    }
}
