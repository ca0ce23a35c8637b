use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

/// A partition of `{0, .., n-1}`. Blocks are numbered by their smallest
/// point, so equal partitions compare equal. Block systems of transitive
/// groups have blocks of equal size; joins of arbitrary partitions need not.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSystem {
    block_of: Vec<usize>,
}

impl BlockSystem {
    /// Builds from arbitrary labels, renumbering blocks by first occurrence.
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let mut map = HashMap::new();
        let block_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Ok(BlockSystem { block_of })
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (k, b) in blocks.iter().enumerate() {
            for &i in b {
                if i >= n || labels[i] != usize::MAX {
                    return Err(Error::Invalid(format!("blocks do not partition 0..{n}")));
                }
                labels[i] = k;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::Invalid(format!("blocks do not cover 0..{n}")));
        }
        BlockSystem::from_labels(&labels)
    }

    /// Same as [`BlockSystem::from_blocks`] with points written `1..=n`.
    pub fn from_blocks_one_based(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let b: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().map(|&i| i.wrapping_sub(1)).collect())
            .collect();
        BlockSystem::from_blocks(n, &b)
    }

    pub fn singletons(n: usize) -> Self {
        BlockSystem { block_of: (0..n).collect() }
    }

    pub fn one_block(n: usize) -> Self {
        BlockSystem { block_of: vec![0; n] }
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    /// All blocks have the same size.
    pub fn is_uniform(&self) -> bool {
        let mut sizes = vec![0usize; self.num_blocks()];
        for &b in &self.block_of {
            sizes[b] += 1;
        }
        sizes.iter().all(|&s| s == sizes[0])
    }

    pub fn block_size(&self) -> usize {
        self.degree() / self.num_blocks().max(1)
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn block_containing(&self, i: usize) -> Vec<usize> {
        let b = self.block_of[i];
        (0..self.degree()).filter(|&j| self.block_of[j] == b).collect()
    }

    /// Singletons or a single block.
    pub fn is_trivial(&self) -> bool {
        let m = self.num_blocks();
        m <= 1 || m == self.degree()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &BlockSystem) -> bool {
        let mut img = vec![usize::MAX; self.num_blocks()];
        for (i, &b) in self.block_of.iter().enumerate() {
            let o = other.block_of[i];
            if img[b] == usize::MAX {
                img[b] = o;
            } else if img[b] != o {
                return false;
            }
        }
        true
    }

    pub fn is_preserved_by(&self, g: &Perm) -> bool {
        let mut img = vec![usize::MAX; self.num_blocks()];
        for (i, &b) in self.block_of.iter().enumerate() {
            let t = self.block_of[g.apply(i)];
            if img[b] == usize::MAX {
                img[b] = t;
            } else if img[b] != t {
                return false;
            }
        }
        true
    }

    pub fn is_block_system_of(&self, g: &PermGroup) -> bool {
        g.generators().iter().all(|s| self.is_preserved_by(s))
    }

    /// The permutation induced on blocks, for a block-preserving `g`.
    pub fn block_action(&self, g: &Perm) -> Perm {
        let m = self.num_blocks();
        let mut img = vec![0; m];
        for (i, &b) in self.block_of.iter().enumerate() {
            img[b] = self.block_of[g.apply(i)];
        }
        Perm::from_images(img).expect("g preserves the system")
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &BlockSystem) -> Result<BlockSystem> {
        join_block_systems(&[self.clone(), other.clone()])
    }
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Blocks with points written `1..=n`, e.g. `{{1,3},{2,4}}`.
impl fmt::Display for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", pts.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if two classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|i| self.find(i)).collect()
    }
}

/// Finest block system of `gens` in which `a` and `b` share a block.
pub fn minimal_block_system(n: usize, gens: &[Perm], a: usize, b: usize) -> BlockSystem {
    let mut uf = UnionFind::new(n);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    BlockSystem::from_labels(&uf.labels()).expect("labels are total")
}

/// Finest block system whose block containing point 0 also contains `j`.
pub fn principal_block_system(g: &PermGroup, j: usize) -> Result<BlockSystem> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if j == 0 || j >= g.degree() {
        return Err(Error::Invalid(format!("point {j} out of range")));
    }
    Ok(minimal_block_system(g.degree(), g.generators(), 0, j))
}

/// Connected components of the union of the partitions.
pub fn join_block_systems(systems: &[BlockSystem]) -> Result<BlockSystem> {
    let n = systems.first().map_or(0, BlockSystem::degree);
    let mut uf = UnionFind::new(n);
    for s in systems {
        if s.degree() != n {
            return Err(Error::DegreeMismatch(n, s.degree()));
        }
        let mut first = vec![usize::MAX; s.num_blocks()];
        for (i, &b) in s.labels().iter().enumerate() {
            if first[b] == usize::MAX {
                first[b] = i;
            } else {
                uf.union(first[b], i);
            }
        }
    }
    BlockSystem::from_labels(&uf.labels())
}

/// All nontrivial block systems of a transitive group: principal systems
/// closed under joins.
pub fn all_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    let n = g.degree();
    let mut found: HashSet<BlockSystem> = HashSet::new();
    let mut list = Vec::new();
    for j in 1..n {
        let b = principal_block_system(g, j)?;
        if !b.is_trivial() && found.insert(b.clone()) {
            list.push(b);
        }
    }
    let mut idx = 0;
    while idx < list.len() {
        for k in 0..idx {
            let b = list[idx].join(&list[k])?;
            if !b.is_trivial() && found.insert(b.clone()) {
                list.push(b);
            }
        }
        idx += 1;
    }
    list.sort_by_key(|b| (b.num_blocks(), b.labels().to_vec()));
    Ok(list)
}

/// Groups indices with equal values into `m` classes of equal size.
pub fn blocks_from_values<T: Eq + Hash>(values: &[T], m: usize) -> Result<BlockSystem> {
    let mut map: HashMap<&T, usize> = HashMap::new();
    let labels: Vec<usize> = values
        .iter()
        .map(|v| {
            let next = map.len();
            *map.entry(v).or_insert(next)
        })
        .collect();
    if map.len() != m {
        return Err(Error::Indistinct(m));
    }
    let b = BlockSystem::from_labels(&labels)?;
    if !b.is_uniform() {
        return Err(Error::Indistinct(m));
    }
    Ok(b)
}

/// The subgroup of even permutations.
pub fn intersect_with_alternating(g: &PermGroup) -> PermGroup {
    g.kernel_of_character(|p| !p.is_even())
}

/// All transitive subgroups of index 2.
pub fn index2_transitive_subgroups(g: &PermGroup, budget: u64) -> Result<Vec<PermGroup>> {
    match g.order_u64() {
        Some(o) if o <= budget => {}
        _ => return Err(Error::Budget(format!("group order {} above {budget}", g.order()))),
    }
    let n = g.degree();
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        seeds.push(a.mul(a));
        for b in &gens[i + 1..] {
            seeds.push(a.inverse().mul(&b.inverse()).mul(a).mul(b));
        }
    }
    seeds.retain(|p| !p.is_identity());
    let k = g.normal_closure(seeds);
    // Basis of the elementary abelian quotient G/K, chosen among generators.
    let mut chain = vec![k];
    let mut basis: Vec<usize> = Vec::new();
    for (i, s) in gens.iter().enumerate() {
        let top = chain.last().unwrap();
        if !top.contains(s) {
            let mut gs = top.generators().to_vec();
            gs.push(s.clone());
            chain.push(PermGroup::new(n, gs)?);
            basis.push(i);
        }
    }
    let r = basis.len();
    if r > 20 {
        return Err(Error::Budget(format!("quotient rank {r}")));
    }
    // Coordinates of each generator in that basis.
    let coords: Vec<u32> = gens
        .iter()
        .map(|s| {
            let mut x = s.clone();
            let mut c = 0u32;
            for k in (0..r).rev() {
                if !chain[k].contains(&x) {
                    c |= 1 << k;
                    x = x.mul(&gens[basis[k]].inverse());
                }
            }
            c
        })
        .collect();
    let mut out = Vec::new();
    for phi in 1u32..(1 << r) {
        let flags: Vec<bool> = coords.iter().map(|c| (c & phi).count_ones() % 2 == 1).collect();
        let sub = g.kernel_by_flags(&flags);
        if sub.is_transitive() {
            out.push(sub);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cyc(n: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, c).unwrap()
    }

    fn bs(n: usize, b: &[&[usize]]) -> BlockSystem {
        BlockSystem::from_blocks_one_based(n, b).unwrap()
    }

    #[test]
    fn principal_examples() {
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(principal_block_system(&c4, 2).unwrap(), bs(4, &[&[1, 3], &[2, 4]]));
        assert_eq!(principal_block_system(&c4, 1).unwrap(), BlockSystem::one_block(4));
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(principal_block_system(&s4, 1).unwrap(), BlockSystem::one_block(4));
        let intrans = PermGroup::new(4, vec![cyc(4, &[&[1, 2]])]).unwrap();
        assert_eq!(principal_block_system(&intrans, 1), Err(Error::NotTransitive));
    }

    #[test]
    fn join_examples() {
        let a = bs(4, &[&[1, 2], &[3, 4]]);
        let b = bs(4, &[&[1, 3], &[2, 4]]);
        assert_eq!(a.join(&b).unwrap(), BlockSystem::one_block(4));
        assert_eq!(a.join(&a).unwrap(), a);
        let c = bs(6, &[&[1, 2], &[3, 4], &[5, 6]]);
        let d = bs(6, &[&[1, 2], &[3, 5], &[4, 6]]);
        let j = join_block_systems(&[c, d]).unwrap();
        assert_eq!(j.to_string(), "{{1,2},{3,4,5,6}}");
        assert!(!j.is_uniform());
        assert!(join_block_systems(&[a, BlockSystem::one_block(3)]).is_err());
    }

    #[test]
    fn values_examples() {
        assert_eq!(blocks_from_values(&[4, 13, 13, 4], 2).unwrap(), bs(4, &[&[1, 4], &[2, 3]]));
        assert_eq!(blocks_from_values(&[7, 7, 7], 1).unwrap(), BlockSystem::one_block(3));
        assert_eq!(blocks_from_values(&[1, 1, 2], 3), Err(Error::Indistinct(3)));
        assert_eq!(blocks_from_values(&[1, 1, 2], 2), Err(Error::Indistinct(2)));
    }

    #[test]
    fn alternating_examples() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert_eq!(intersect_with_alternating(&s4).order(), BigUint::from(12u32));
        let a4 = intersect_with_alternating(&s4);
        assert_eq!(intersect_with_alternating(&a4).order(), BigUint::from(12u32));
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        let e = intersect_with_alternating(&c4);
        assert_eq!(e.order(), BigUint::from(2u32));
        assert!(e.contains(&cyc(4, &[&[1, 3], &[2, 4]])));
    }

    #[test]
    fn index_two_examples() {
        let s3 = PermGroup::new(3, vec![cyc(3, &[&[1, 2]]), cyc(3, &[&[1, 2, 3]])]).unwrap();
        let subs = index2_transitive_subgroups(&s3, 1_000_000).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].order(), BigUint::from(3u32));
        let c4 = PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3, 4]])]).unwrap();
        assert!(index2_transitive_subgroups(&c4, 1_000_000).unwrap().is_empty());
    }
}
