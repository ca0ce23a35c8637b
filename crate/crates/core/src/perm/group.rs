use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::Perm;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gen_ids: Vec<usize>,
    orbit: Vec<usize>,
    /// `trans[b]` maps the base point to `b`.
    trans: Vec<Option<Perm>>,
    checked: HashSet<(usize, usize)>,
}

/// A permutation group given by generators, with a base and strong
/// generating set built by deterministic Schreier–Sims.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut g = PermGroup { degree, gens, strong: Vec::new(), levels: Vec::new() };
        g.schreier_sims();
        Ok(g)
    }

    /// Builds the stabilizer chain directly from a known strong generating
    /// set, skipping the Schreier generator checks. `strong` must be a strong
    /// generating set for the base its first moved points produce.
    pub(crate) fn from_strong_generators(degree: usize, gens: Vec<Perm>, strong: Vec<Perm>) -> Self {
        let mut g = PermGroup { degree, gens, strong, levels: Vec::new() };
        for id in 0..g.strong.len() {
            let s = g.strong[id].clone();
            if !s.is_identity() && g.levels.iter().all(|l| s.apply(l.point) == l.point) {
                g.push_level(&s);
            }
        }
        g.refresh_levels();
        g
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    /// Fundamental orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(self.order()).ok()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_under(&self.gens, self.degree, point)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if !seen[p] {
                let o = self.orbit(p);
                for &q in &o {
                    seen[q] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for l in self.levels.iter().rev() {
            let b = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.mul(l.trans[b].as_ref().unwrap());
        }
        g
    }

    /// All elements, provided the order is at most `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Perm>> {
        match self.order_u64() {
            Some(o) if o <= limit => {}
            _ => return Err(Error::Budget(format!("group order {} above {limit}", self.order()))),
        }
        let mut out = vec![Perm::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * l.orbit.len());
            for g in &out {
                for &b in &l.orbit {
                    next.push(g.mul(l.trans[b].as_ref().unwrap()));
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Point stabilizer of `point`.
    pub fn stabilizer(&self, point: usize) -> PermGroup {
        let orb = self.orbit(point);
        let mut trans: Vec<Option<Perm>> = vec![None; self.degree];
        trans[point] = Some(Perm::identity(self.degree));
        for &b in &orb {
            if trans[b].is_none() {
                unreachable!("orbit order is breadth first");
            }
            for s in &self.gens {
                let c = s.apply(b);
                if trans[c].is_none() {
                    trans[c] = Some(trans[b].as_ref().unwrap().mul(s));
                }
            }
        }
        let mut gens = Vec::new();
        let mut seen = HashSet::new();
        for &b in &orb {
            for s in &self.gens {
                let c = s.apply(b);
                let h = trans[b].as_ref().unwrap().mul(s).mul(&trans[c].as_ref().unwrap().inverse());
                if !h.is_identity() && seen.insert(h.clone()) {
                    gens.push(h);
                }
            }
        }
        PermGroup::new(self.degree, gens).expect("same degree")
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: Vec<Perm>) -> PermGroup {
        let mut k = PermGroup::new(self.degree, gens).expect("same degree");
        loop {
            let mut added = None;
            'scan: for a in k.gens.clone() {
                for g in &self.gens {
                    let c = a.conjugate(g);
                    if !k.contains(&c) {
                        added = Some(c);
                        break 'scan;
                    }
                }
            }
            match added {
                Some(c) => {
                    let mut gs = k.gens.clone();
                    gs.push(c);
                    k = PermGroup::new(self.degree, gs).expect("same degree");
                }
                None => return k,
            }
        }
    }

    /// Kernel of a homomorphism onto the group of order two, given by
    /// `odd(g)` on generators. Returns the group itself if every generator
    /// maps to the identity.
    pub fn kernel_of_character<F: Fn(&Perm) -> bool>(&self, odd: F) -> PermGroup {
        let flags: Vec<bool> = self.gens.iter().map(odd).collect();
        self.kernel_by_flags(&flags)
    }

    /// As [`PermGroup::kernel_of_character`], with the character given by its
    /// values on the generators.
    pub fn kernel_by_flags(&self, flags: &[bool]) -> PermGroup {
        let Some(ti) = flags.iter().position(|&b| b) else {
            return self.clone();
        };
        let t = &self.gens[ti];
        let tinv = t.inverse();
        let mut out: Vec<Perm> = Vec::new();
        let mut seen = HashSet::new();
        let mut push = |p: Perm| {
            if !p.is_identity() && seen.insert(p.clone()) {
                out.push(p);
            }
        };
        for (g, &o) in self.gens.iter().zip(flags) {
            if o {
                push(g.mul(&tinv));
                push(t.mul(g));
            } else {
                push(g.clone());
                push(t.mul(g).mul(&tinv));
            }
        }
        PermGroup::new(self.degree, out).expect("same degree")
    }

    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (k, l) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(l.point);
            match &l.trans[b] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let mut seen = HashSet::new();
        for g in &self.gens {
            if !g.is_identity() && seen.insert(g.clone()) {
                self.strong.push(g.clone());
            }
        }
        for id in 0..self.strong.len() {
            let g = self.strong[id].clone();
            if self.levels.iter().all(|l| g.apply(l.point) == l.point) {
                self.push_level(&g);
            }
        }
        self.refresh_levels();
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            match self.check_level(i as usize) {
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        self.push_level(&residue);
                    }
                    self.strong.push(residue);
                    self.refresh_levels();
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn push_level(&mut self, g: &Perm) {
        let point = (0..self.degree).find(|&p| g.apply(p) != p).expect("non-identity");
        let mut trans = vec![None; self.degree];
        trans[point] = Some(Perm::identity(self.degree));
        self.levels.push(Level {
            point,
            gen_ids: Vec::new(),
            orbit: vec![point],
            trans,
            checked: HashSet::new(),
        });
    }

    /// Adds new strong generators to the levels whose base prefix they fix
    /// and extends orbits, keeping existing transversal elements.
    fn refresh_levels(&mut self) {
        let base = self.base();
        for k in 0..self.levels.len() {
            let level = &mut self.levels[k];
            for (id, s) in self.strong.iter().enumerate() {
                if !level.gen_ids.contains(&id) && base[..k].iter().all(|&p| s.apply(p) == p) {
                    level.gen_ids.push(id);
                }
            }
            let mut idx = 0;
            while idx < level.orbit.len() {
                let b = level.orbit[idx];
                for &id in &level.gen_ids {
                    let s = &self.strong[id];
                    let c = s.apply(b);
                    if level.trans[c].is_none() {
                        level.trans[c] = Some(level.trans[b].as_ref().unwrap().mul(s));
                        level.orbit.push(c);
                    }
                }
                idx += 1;
            }
        }
    }

    fn check_level(&mut self, i: usize) -> Option<(Perm, usize)> {
        let orbit = self.levels[i].orbit.clone();
        let ids = self.levels[i].gen_ids.clone();
        for &b in &orbit {
            for &id in &ids {
                if self.levels[i].checked.contains(&(b, id)) {
                    continue;
                }
                let l = &self.levels[i];
                let s = &self.strong[id];
                let c = s.apply(b);
                let h = l.trans[b].as_ref().unwrap().mul(s).mul(&l.trans[c].as_ref().unwrap().inverse());
                let (res, j) = self.sift(&h, i + 1);
                if !res.is_identity() {
                    return Some((res, j));
                }
                self.levels[i].checked.insert((b, id));
            }
        }
        None
    }
}

pub(crate) fn orbit_under(gens: &[Perm], n: usize, point: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut orb = vec![point];
    let mut idx = 0;
    while idx < orb.len() {
        let b = orb[idx];
        for g in gens {
            let c = g.apply(b);
            if !seen[c] {
                seen[c] = true;
                orb.push(c);
            }
        }
        idx += 1;
    }
    orb
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    #[test]
    fn orders() {
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(c4.order(), BigUint::from(4u32));
        let s5 = PermGroup::new(5, vec![cyc(5, &[&[1, 2]]), cyc(5, &[&[1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(s5.order(), BigUint::from(120u32));
        assert!(s5.contains(&cyc(5, &[&[1, 3], &[2, 5, 4]])));
        let a5 = s5.kernel_of_character(|g| !g.is_even());
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(!a5.contains(&cyc(5, &[&[1, 2]])));
        assert_eq!(PermGroup::trivial(3).order(), BigUint::one());
    }

    #[test]
    fn elements_and_random() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        let els = s4.elements(100).unwrap();
        assert_eq!(els.len(), 24);
        assert_eq!(els.iter().collect::<HashSet<_>>().len(), 24);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            assert!(s4.contains(&s4.random_element(&mut rng)));
        }
        assert!(s4.elements(10).is_err());
    }

    #[test]
    fn stabilizer_and_closure() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(s4.stabilizer(0).order(), BigUint::from(6u32));
        let v4 = s4.normal_closure(vec![cyc(4, &[&[1, 2], &[3, 4]])]);
        assert_eq!(v4.order(), BigUint::from(4u32));
    }
}
