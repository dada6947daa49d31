//! Finite permutation groups with every element enumerated.
//!
//! Elements are numbered in breadth-first discovery order from the
//! identity, multiplying on the right by generators in their given order.
//! Orders, inverses and conjugacy classes are materialized at construction.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::numtheory::{lcm, p_part};
use crate::perm::{self, PermStore, Point};
use crate::schreier::StabChain;

pub type ElemId = u32;

/// Default ceiling on the number of enumerated elements.
pub const DEFAULT_CAP: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub rep: ElemId,
    pub size: u64,
    pub order: u64,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    gens: Vec<Vec<Point>>,
    gen_ids: Vec<ElemId>,
    store: PermStore,
    parent: Vec<(ElemId, u8)>,
    orders: Vec<u32>,
    inverses: Vec<ElemId>,
    class_of: Vec<u32>,
    classes: Vec<Class>,
    class_start: Vec<usize>,
    class_members: Vec<ElemId>,
    spectrum: BTreeSet<u64>,
}

impl FiniteGroup {
    pub fn generate(name: impl Into<String>, degree: usize, gens: Vec<Vec<Point>>, cap: u64) -> Result<Self> {
        for g in &gens {
            if g.len() != degree {
                return Err(Error::DegreeMismatch(degree, g.len()));
            }
            if !perm::is_permutation(g) {
                return Err(Error::InvariantViolated("generator is not a permutation".into()));
            }
        }
        assert!(gens.len() < 256, "too many generators");
        let mut store = PermStore::new(degree);
        store.insert(&perm::identity(degree));
        let mut parent = vec![(0, u8::MAX)];
        let mut buf = vec![0; degree];
        let mut i = 0;
        while i < store.len() {
            for (k, g) in gens.iter().enumerate() {
                perm::compose_into(store.get(i), g, &mut buf);
                let (_, new) = store.insert(&buf);
                if new {
                    parent.push((i as ElemId, k as u8));
                    if store.len() as u64 > cap {
                        return Err(Error::CapExceeded { cap });
                    }
                }
            }
            i += 1;
        }
        let gen_ids = gens.iter().map(|g| store.find(g).unwrap() as ElemId).collect();
        let mut g = FiniteGroup {
            name: name.into(),
            gens,
            gen_ids,
            store,
            parent,
            orders: Vec::new(),
            inverses: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            class_start: Vec::new(),
            class_members: Vec::new(),
            spectrum: BTreeSet::new(),
        };
        g.materialize();
        Ok(g)
    }

    fn materialize(&mut self) {
        let n = self.store.len();
        let d = self.degree();
        self.orders = (0..n).map(|i| perm::order(self.store.get(i)) as u32).collect();
        self.spectrum = self.orders.iter().map(|&o| o as u64).collect();
        self.inverses = (0..n)
            .map(|i| self.store.find(&perm::inverse(self.store.get(i))).unwrap() as ElemId)
            .collect();
        let gens_inv: Vec<Vec<Point>> = self.gens.iter().map(|g| perm::inverse(g)).collect();
        const UNSEEN: u32 = u32::MAX;
        let mut class_of = vec![UNSEEN; n];
        let mut buf = vec![0; d];
        for start in 0..n {
            if class_of[start] != UNSEEN {
                continue;
            }
            let c = self.classes.len() as u32;
            let first = self.class_members.len();
            self.class_start.push(first);
            class_of[start] = c;
            self.class_members.push(start as ElemId);
            let mut k = first;
            while k < self.class_members.len() {
                let x = self.class_members[k] as usize;
                for (g, gi) in self.gens.iter().zip(&gens_inv) {
                    perm::conjugate_into(self.store.get(x), g, gi, &mut buf);
                    let y = self.store.find(&buf).unwrap();
                    if class_of[y] == UNSEEN {
                        class_of[y] = c;
                        self.class_members.push(y as ElemId);
                    }
                }
                k += 1;
            }
            self.class_members[first..].sort_unstable();
            self.classes.push(Class {
                rep: start as ElemId,
                size: (self.class_members.len() - first) as u64,
                order: self.orders[start] as u64,
            });
        }
        self.class_start.push(self.class_members.len());
        self.class_of = class_of;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.store.degree()
    }

    pub fn order(&self) -> u64 {
        self.store.len() as u64
    }

    pub fn generators(&self) -> &[Vec<Point>] {
        &self.gens
    }

    pub fn generator_ids(&self) -> &[ElemId] {
        &self.gen_ids
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn elem(&self, x: ElemId) -> &[Point] {
        self.store.get(x as usize)
    }

    pub fn id_of(&self, x: &[Point]) -> Option<ElemId> {
        if x.len() != self.degree() {
            return None;
        }
        self.store.find(x).map(|i| i as ElemId)
    }

    pub fn ids(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }

    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let p = perm::compose(self.elem(x), self.elem(y));
        self.store.find(&p).expect("group is closed") as ElemId
    }

    /// `x * y` using a caller-supplied scratch buffer.
    pub fn mul_buf(&self, x: ElemId, y: ElemId, buf: &mut [Point]) -> ElemId {
        perm::compose_into(self.elem(x), self.elem(y), buf);
        self.store.find(buf).expect("group is closed") as ElemId
    }

    pub fn inverse(&self, x: ElemId) -> ElemId {
        self.inverses[x as usize]
    }

    pub fn elem_order(&self, x: ElemId) -> u64 {
        self.orders[x as usize] as u64
    }

    /// Order of a permutation that must lie in the group.
    pub fn element_order(&self, x: &[Point]) -> Result<u64> {
        let id = self.id_of(x).ok_or(Error::NotInGroup)?;
        Ok(self.elem_order(id))
    }

    pub fn spectrum(&self) -> &BTreeSet<u64> {
        &self.spectrum
    }

    pub fn classes(&self) -> &[Class] {
        &self.classes
    }

    pub fn class_of(&self, x: ElemId) -> usize {
        self.class_of[x as usize] as usize
    }

    pub fn class_members(&self, c: usize) -> &[ElemId] {
        &self.class_members[self.class_start[c]..self.class_start[c + 1]]
    }

    pub fn centralizer_order(&self, x: ElemId) -> u64 {
        self.order() / self.classes[self.class_of(x)].size
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() as u64 == self.order()
    }

    /// A Sylow `t`-subgroup is cyclic iff some element order has full
    /// `t`-part.
    pub fn sylow_is_cyclic(&self, t: u64) -> Result<bool> {
        let order = self.order();
        if t < 2 || !order.is_multiple_of(t) {
            return Err(Error::PrimeNotDividing(t, order));
        }
        let full = p_part(order, t);
        Ok(self.spectrum.iter().any(|&o| p_part(o, t) == full))
    }

    pub fn subgroup_order(&self, elems: &[ElemId]) -> u64 {
        let gens: Vec<Vec<Point>> = elems.iter().map(|&e| self.elem(e).to_vec()).collect();
        StabChain::new(self.degree(), &gens).order() as u64
    }

    pub fn generates(&self, elems: &[ElemId]) -> bool {
        let gens: Vec<Vec<Point>> = elems.iter().map(|&e| self.elem(e).to_vec()).collect();
        StabChain::order_reaches(self.degree(), &gens, self.order())
    }

    /// Breadth-first tree edge into `x`: `x = parent * generator`.
    pub fn parent(&self, x: ElemId) -> Option<(ElemId, usize)> {
        let (p, k) = self.parent[x as usize];
        (x != 0).then_some((p, k as usize))
    }

    /// Elements of the subgroup generated by `elems`, by closure.
    pub fn subgroup_elements(&self, elems: &[ElemId]) -> Vec<ElemId> {
        let mut seen = vec![false; self.order() as usize];
        seen[0] = true;
        let mut out = vec![0];
        let mut buf = vec![0; self.degree()];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &s in elems {
                let y = self.mul_buf(x, s, &mut buf);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out.sort_unstable();
        out
    }

    // -----------------------------------------------------------------
    // Standard constructions

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositive(0));
        }
        let cyc: Vec<usize> = (0..n).collect();
        Self::generate(format!("C{n}"), n, vec![perm::from_cycles(n, &[&cyc])], DEFAULT_CAP)
    }

    /// Dihedral group of the given order (so `dihedral(10)` has a rotation
    /// of order 5).
    pub fn dihedral(order: usize) -> Result<Self> {
        if order == 0 || order % 2 == 1 {
            return Err(Error::InvariantViolated(format!("dihedral order {order} must be even and positive")));
        }
        let n = order / 2;
        let name = format!("D{order}");
        match n {
            1 => Self::generate(name, 2, vec![vec![1, 0]], DEFAULT_CAP),
            2 => Self::generate(name, 4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]], DEFAULT_CAP),
            _ => {
                let rot: Vec<Point> = (0..n).map(|i| ((i + 1) % n) as Point).collect();
                let refl: Vec<Point> = (0..n).map(|i| ((n - i) % n) as Point).collect();
                Self::generate(name, n, vec![rot, refl], DEFAULT_CAP)
            }
        }
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let name = format!("S{n}");
        if n < 2 {
            return Self::generate(name, 1, vec![], DEFAULT_CAP);
        }
        let cyc: Vec<usize> = (0..n).collect();
        let gens = vec![perm::from_cycles(n, &[&[0, 1]]), perm::from_cycles(n, &[&cyc])];
        Self::generate(name, n, gens, DEFAULT_CAP)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let name = format!("A{n}");
        if n < 3 {
            return Self::generate(name, n.max(1), vec![], DEFAULT_CAP);
        }
        let gens: Vec<Vec<Point>> = (0..n - 2).map(|i| perm::from_cycles(n, &[&[i, i + 1, i + 2]])).collect();
        Self::generate(name, n, gens, DEFAULT_CAP)
    }

    /// Acts on the disjoint union of the two domains.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, cap: u64) -> Result<Self> {
        let (da, db) = (a.degree(), b.degree());
        let mut gens = Vec::new();
        for g in a.generators() {
            let mut p = g.clone();
            p.extend((da..da + db).map(|i| i as Point));
            gens.push(p);
        }
        for g in b.generators() {
            let mut p = perm::identity(da);
            p.extend(g.iter().map(|&i| i + da as Point));
            gens.push(p);
        }
        let name = format!("{}x{}", a.name(), b.name());
        Self::generate(name, da + db, gens, cap)
    }

    // -----------------------------------------------------------------
    // Automorphisms

    /// Builds the action of the supplied automorphisms (together with the
    /// inner ones) on element ids, checking each map exhaustively.
    pub fn register_automorphisms(&self, maps: &[AutMap]) -> Result<AutAction> {
        let mut perms = Vec::new();
        for g in self.generators() {
            perms.push(self.conjugation_map(g)?);
        }
        let inner = perms.len();
        for m in maps {
            perms.push(match m {
                AutMap::Conjugation(c) => self.conjugation_map(c)?,
                AutMap::GeneratorImages(images) => self.extend_images(images)?,
            });
        }
        Ok(AutAction { perms, inner })
    }

    fn conjugation_map(&self, c: &[Point]) -> Result<Vec<ElemId>> {
        if c.len() != self.degree() || !perm::is_permutation(c) {
            return Err(Error::NotAnAutomorphism("conjugating element has the wrong degree".into()));
        }
        let ci = perm::inverse(c);
        for g in self.generators() {
            if self.id_of(&perm::conjugate(g, c, &ci)).is_none() {
                return Err(Error::NotAnAutomorphism("conjugation does not normalize the group".into()));
            }
        }
        let mut buf = vec![0; self.degree()];
        Ok(self
            .ids()
            .map(|x| {
                perm::conjugate_into(self.elem(x), c, &ci, &mut buf);
                self.id_of(&buf).unwrap()
            })
            .collect())
    }

    fn extend_images(&self, images: &[Vec<Point>]) -> Result<Vec<ElemId>> {
        if images.len() != self.gens.len() {
            return Err(Error::NotAnAutomorphism(format!(
                "{} images for {} generators",
                images.len(),
                self.gens.len()
            )));
        }
        let img: Vec<ElemId> = images
            .iter()
            .map(|p| self.id_of(p).ok_or_else(|| Error::NotAnAutomorphism("image outside the group".into())))
            .collect::<Result<_>>()?;
        let n = self.order() as usize;
        let mut phi = vec![0; n];
        let mut buf = vec![0; self.degree()];
        for x in 1..n {
            let (p, k) = self.parent[x];
            phi[x] = self.mul_buf(phi[p as usize], img[k as usize], &mut buf);
        }
        for x in 0..n {
            for (k, &s) in self.gen_ids.iter().enumerate() {
                let xs = self.mul_buf(x as ElemId, s, &mut buf);
                if phi[xs as usize] != self.mul_buf(phi[x], img[k], &mut buf) {
                    return Err(Error::NotAnAutomorphism("generator relation fails".into()));
                }
            }
        }
        let mut hit = vec![false; n];
        for &y in &phi {
            if std::mem::replace(&mut hit[y as usize], true) {
                return Err(Error::NotAnAutomorphism("map is not injective".into()));
            }
        }
        Ok(phi)
    }
}

/// An automorphism supplied by the caller.
#[derive(Clone, Debug)]
pub enum AutMap {
    /// Conjugation by a permutation of the same points normalizing the group.
    Conjugation(Vec<Point>),
    /// Images of the group's generators, in generator order.
    GeneratorImages(Vec<Vec<Point>>),
}

/// Automorphisms acting on element ids; the first `inner` maps are
/// conjugations by the group's generators.
#[derive(Clone, Debug)]
pub struct AutAction {
    perms: Vec<Vec<ElemId>>,
    inner: usize,
}

impl AutAction {
    pub fn maps(&self) -> &[Vec<ElemId>] {
        &self.perms
    }

    pub fn registered(&self) -> &[Vec<ElemId>] {
        &self.perms[self.inner..]
    }

    /// Order of one registered map as a permutation of the elements.
    pub fn map_order(&self, k: usize) -> u64 {
        let p = &self.registered()[k];
        let mut seen = vec![false; p.len()];
        let mut ord = 1u64;
        for s in 0..p.len() {
            let mut len = 0u64;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = p[i] as usize;
                len += 1;
            }
            if len > 0 {
                ord = lcm(ord, len);
            }
        }
        ord
    }

    /// Order of the generated automorphism group. An automorphism is fixed
    /// by its images of a generating tuple, so this is an orbit length.
    pub fn group_order(&self, g: &FiniteGroup) -> u64 {
        let start: Vec<ElemId> = g.generator_ids().to_vec();
        let mut seen: HashMap<Vec<ElemId>, ()> = HashMap::new();
        seen.insert(start.clone(), ());
        let mut queue = vec![start];
        let mut k = 0;
        while k < queue.len() {
            for p in &self.perms {
                let img: Vec<ElemId> = queue[k].iter().map(|&x| p[x as usize]).collect();
                if seen.insert(img.clone(), ()).is_none() {
                    queue.push(img);
                }
            }
            k += 1;
        }
        queue.len() as u64
    }

    /// Orbits on an invariant set of ordered pairs; returns the orbit index
    /// of every pair, numbered by first occurrence.
    pub fn pair_orbits(&self, pairs: &[(ElemId, ElemId)]) -> Result<Vec<usize>> {
        let index: HashMap<(ElemId, ElemId), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut uf: Vec<usize> = (0..pairs.len()).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for p in &self.perms {
                let img = (p[x as usize], p[y as usize]);
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::InvariantViolated("pair set is not closed under automorphisms".into()))?;
                let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                if a != b {
                    uf[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = HashMap::new();
        Ok((0..pairs.len())
            .map(|i| {
                let r = find(&mut uf, i);
                let n = label.len();
                *label.entry(r).or_insert(n)
            })
            .collect())
    }
}
