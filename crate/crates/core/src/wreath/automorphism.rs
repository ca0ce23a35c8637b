//! Generators of the automorphism group of a colored graph by
//! individualization and refinement along a first path.

use super::graph::ColoredGraph;
use crate::error::{Error, Result};
use crate::perm::Perm;

type Partition = Vec<Vec<usize>>;

fn cell_index(p: &Partition, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (c, cell) in p.iter().enumerate() {
        for &v in cell {
            idx[v] = c;
        }
    }
    idx
}

/// Splits cells by the multiset of neighbouring cells until stable. Each
/// cell is replaced in place by its pieces sorted by signature, so the
/// result depends only on the graph and the input partition order.
fn refine(g: &ColoredGraph, mut p: Partition) -> Partition {
    let n = g.vertex_count();
    loop {
        let idx = cell_index(&p, n);
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in &p {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<usize> = g.neighbors(v).iter().map(|&u| idx[u]).collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|x| x.1).collect());
                    start = i;
                }
            }
        }
        let split = next.len() != p.len();
        p = next;
        if !split {
            return p;
        }
    }
}

fn individualize(g: &ColoredGraph, p: &Partition, cell: usize, v: usize) -> Partition {
    let mut q: Partition = Vec::with_capacity(p.len() + 1);
    for (c, cl) in p.iter().enumerate() {
        if c == cell {
            q.push(vec![v]);
            q.push(cl.iter().copied().filter(|&u| u != v).collect());
        } else {
            q.push(cl.clone());
        }
    }
    refine(g, q)
}

/// Cell sizes and, for each cell of the equitable partition, the sorted
/// cells of a representative's neighbours. Equal at nodes related by an
/// automorphism.
fn shape(g: &ColoredGraph, p: &Partition) -> Vec<Vec<usize>> {
    let idx = cell_index(p, g.vertex_count());
    p.iter()
        .map(|cell| {
            let mut sig: Vec<usize> = g.neighbors(cell[0]).iter().map(|&u| idx[u]).collect();
            sig.sort_unstable();
            sig.push(cell.len());
            sig
        })
        .collect()
}

fn target_cell(p: &Partition) -> Option<usize> {
    p.iter().position(|c| c.len() > 1)
}

struct Search<'a> {
    g: &'a ColoredGraph,
    /// Partitions along the first path; the last one is discrete.
    path: Vec<Partition>,
    shapes: Vec<Vec<Vec<usize>>>,
    leaf: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!("automorphism search exceeded {} nodes", self.budget)));
        }
        Ok(())
    }

    /// Returns `gamma` with `gamma(leaf[i]) = lab[i]` when it is an automorphism.
    fn leaf_map(&self, q: &Partition) -> Option<Vec<usize>> {
        let n = self.g.vertex_count();
        let mut gamma = vec![0; n];
        for (i, cell) in q.iter().enumerate() {
            gamma[self.leaf[i]] = cell[0];
        }
        for v in 0..n {
            if self.g.color(v) != self.g.color(gamma[v]) {
                return None;
            }
            for &u in self.g.neighbors(v) {
                if u > v && !self.g.has_edge(gamma[v], gamma[u]) {
                    return None;
                }
            }
        }
        Some(gamma)
    }

    /// Looks below the node `q` at `depth` for a leaf equivalent to the first.
    fn explore(&mut self, q: Partition, depth: usize) -> Result<Option<Vec<usize>>> {
        self.tick()?;
        if shape(self.g, &q) != self.shapes[depth] {
            return Ok(None);
        }
        let Some(c) = target_cell(&q) else {
            return Ok(self.leaf_map(&q));
        };
        for &w in &q[c].clone() {
            let child = individualize(self.g, &q, c, w);
            if let Some(gamma) = self.explore(child, depth + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }
}

fn orbit_of(gens: &[Vec<usize>], v: usize, n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g[x];
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Generators of the color-preserving automorphism group of `g`, as
/// permutations of its vertices. The search visits at most `budget` nodes.
pub fn colored_graph_automorphisms(g: &ColoredGraph, budget: u64) -> Result<Vec<Perm>> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let maxc = g.colors().iter().copied().max().unwrap_or(0);
    let mut init: Partition = vec![Vec::new(); maxc + 1];
    for v in 0..n {
        init[g.color(v)].push(v);
    }
    init.retain(|c| !c.is_empty());
    let mut path = vec![refine(g, init)];
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    while let Some(c) = target_cell(path.last().unwrap()) {
        let p = path.last().unwrap();
        let v = *p[c].iter().min().unwrap();
        chosen.push((c, v));
        let next = individualize(g, p, c, v);
        path.push(next);
    }
    let leaf: Vec<usize> = path.last().unwrap().iter().map(|c| c[0]).collect();
    let shapes = path.iter().map(|p| shape(g, p)).collect();
    let mut s = Search { g, path, shapes, leaf, nodes: 0, budget };
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for level in (0..chosen.len()).rev() {
        let (c, v) = chosen[level];
        let cell = s.path[level][c].clone();
        let mut orbit = orbit_of(&gens, v, n);
        for &w in &cell {
            if orbit[w] {
                continue;
            }
            let child = individualize(g, &s.path[level], c, w);
            if let Some(gamma) = s.explore(child, level + 1)? {
                gens.push(gamma);
                orbit = orbit_of(&gens, v, n);
            }
        }
    }
    gens.into_iter().map(Perm::from_images).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;
    use num_bigint::BigUint;

    fn order(g: &ColoredGraph) -> BigUint {
        let gens = colored_graph_automorphisms(g, 1_000_000).unwrap();
        PermGroup::new(g.vertex_count(), gens).unwrap().order()
    }

    #[test]
    fn cycle_graph_is_dihedral() {
        let mut g = ColoredGraph::new(vec![0; 6]);
        for i in 0..6 {
            g.add_edge(i, (i + 1) % 6);
        }
        assert_eq!(order(&g), BigUint::from(12u32));
    }

    #[test]
    fn petersen_graph() {
        let mut g = ColoredGraph::new(vec![0; 10]);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert_eq!(order(&g), BigUint::from(120u32));
    }

    #[test]
    fn colors_are_respected() {
        let mut g = ColoredGraph::new(vec![0, 0, 1, 1]);
        g.add_edge(0, 2);
        g.add_edge(1, 3);
        assert_eq!(order(&g), BigUint::from(2u32));
        let empty = ColoredGraph::new(vec![0, 1, 0, 0]);
        assert_eq!(order(&empty), BigUint::from(6u32));
        let mut path = ColoredGraph::new(vec![0, 1, 0]);
        path.add_edge(0, 1);
        path.add_edge(1, 2);
        assert_eq!(order(&path), BigUint::from(2u32));
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::new(vec![0; 8]);
        assert!(matches!(colored_graph_automorphisms(&g, 3), Err(Error::Budget(_))));
    }
}
