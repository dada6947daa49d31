//! Deterministic Schreier-Sims. A new base point is always the least point
//! moved by the generator that needs it, so derived counts are reproducible.

use crate::perm::{self, Point};

#[derive(Clone, Debug)]
struct Level {
    base_point: Point,
    gens: Vec<Vec<Point>>,
    orbit: Vec<Point>,
    /// `trans[b]` indexes `reps` for orbit points `b`.
    trans: Vec<u32>,
    reps: Vec<Vec<Point>>,
    reps_inv: Vec<Vec<Point>>,
}

const NONE: u32 = u32::MAX;

impl Level {
    fn new(degree: usize, base_point: Point) -> Self {
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            trans: {
                let mut t = vec![NONE; degree];
                t[base_point as usize] = 0;
                t
            },
            reps: vec![perm::identity(degree)],
            reps_inv: vec![perm::identity(degree)],
        }
    }

    fn recompute_orbit(&mut self) {
        let d = self.trans.len();
        self.trans.iter_mut().for_each(|t| *t = NONE);
        self.orbit = vec![self.base_point];
        self.reps = vec![perm::identity(d)];
        self.reps_inv = vec![perm::identity(d)];
        self.trans[self.base_point as usize] = 0;
        let mut k = 0;
        while k < self.orbit.len() {
            let a = self.orbit[k];
            let ua = self.trans[a as usize] as usize;
            for s in &self.gens {
                let b = s[a as usize];
                if self.trans[b as usize] == NONE {
                    let ub = perm::compose(&self.reps[ua], s);
                    self.trans[b as usize] = self.reps.len() as u32;
                    self.reps_inv.push(perm::inverse(&ub));
                    self.reps.push(ub);
                    self.orbit.push(b);
                }
            }
            k += 1;
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Vec<Point>]) -> Self {
        Self::build(degree, gens, None).0
    }

    /// Whether the generated group has order at least `target`; stops as
    /// soon as the partial chain certifies it.
    pub fn order_reaches(degree: usize, gens: &[Vec<Point>], target: u64) -> bool {
        let (chain, reached) = Self::build(degree, gens, Some(target));
        reached || chain.order() >= target as u128
    }

    fn build(degree: usize, gens: &[Vec<Point>], target: Option<u64>) -> (Self, bool) {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            assert_eq!(g.len(), degree, "generator degree mismatch");
            if perm::is_identity(g) {
                continue;
            }
            if chain.levels.iter().all(|l| g[l.base_point as usize] == l.base_point) {
                let b = first_moved(g);
                chain.levels.push(Level::new(degree, b));
            }
            for l in 0..chain.levels.len() {
                chain.levels[l].gens.push(g.clone());
                let b = chain.levels[l].base_point;
                if g[b as usize] != b {
                    break;
                }
            }
        }
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            chain.levels[iu].recompute_orbit();
            if let Some(t) = target {
                if chain.order() >= t as u128 {
                    return (chain, true);
                }
            }
            match chain.find_new_strong_gen(iu) {
                Some((h, j)) => {
                    if j == chain.levels.len() {
                        chain.levels.push(Level::new(degree, first_moved(&h)));
                    }
                    for l in iu + 1..=j {
                        chain.levels[l].gens.push(h.clone());
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        (chain, false)
    }

    /// First Schreier generator at level `i` that does not sift through
    /// the levels below it, with the level where sifting stopped.
    fn find_new_strong_gen(&self, i: usize) -> Option<(Vec<Point>, usize)> {
        let lvl = &self.levels[i];
        let mut h = vec![0; self.degree];
        for &beta in &lvl.orbit {
            let ub = &lvl.reps[lvl.trans[beta as usize] as usize];
            for s in &lvl.gens {
                let gamma = s[beta as usize];
                let ug_inv = &lvl.reps_inv[lvl.trans[gamma as usize] as usize];
                for (k, hk) in h.iter_mut().enumerate() {
                    *hk = ug_inv[s[ub[k] as usize] as usize];
                }
                if perm::is_identity(&h) {
                    continue;
                }
                let (r, j) = self.strip(&h, i + 1);
                if j < self.levels.len() || !perm::is_identity(&r) {
                    return Some((r, j));
                }
            }
        }
        None
    }

    fn strip(&self, x: &[Point], from: usize) -> (Vec<Point>, usize) {
        let mut h = x.to_vec();
        for (l, lvl) in self.levels.iter().enumerate().skip(from) {
            let beta = h[lvl.base_point as usize];
            let t = lvl.trans[beta as usize];
            if t == NONE {
                return (h, l);
            }
            h = perm::compose(&h, &lvl.reps_inv[t as usize]);
        }
        (h, self.levels.len())
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<Point> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn contains(&self, x: &[Point]) -> bool {
        let (r, j) = self.strip(x, 0);
        j == self.levels.len() && perm::is_identity(&r)
    }
}

fn first_moved(g: &[Point]) -> Point {
    g.iter()
        .enumerate()
        .find(|(i, &v)| *i != v as usize)
        .map(|(i, _)| i as Point)
        .expect("identity has no moved point")
}
