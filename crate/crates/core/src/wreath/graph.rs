use crate::perm::BlockSystem;

/// Undirected vertex-colored graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    adj: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<usize>) -> Self {
        ColoredGraph { adj: vec![Vec::new(); colors.len()], colors }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a == b || self.adj[a].binary_search(&b).is_ok() {
            return;
        }
        let i = self.adj[a].binary_search(&b).unwrap_err();
        self.adj[a].insert(i, b);
        let j = self.adj[b].binary_search(&a).unwrap_err();
        self.adj[b].insert(j, a);
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Vertices: one per system (colors `0..s`), one per block of each system
/// (color `s`), one per point (color `s+1`), in that order. Points are
/// joined to the blocks containing them and blocks to their system.
pub fn build_incidence_graph(systems: &[BlockSystem]) -> ColoredGraph {
    let s = systems.len();
    let n = systems.first().map_or(0, BlockSystem::degree);
    let nblocks: usize = systems.iter().map(BlockSystem::num_blocks).sum();
    let mut colors: Vec<usize> = (0..s).collect();
    colors.extend(std::iter::repeat_n(s, nblocks));
    colors.extend(std::iter::repeat_n(s + 1, n));
    let mut g = ColoredGraph::new(colors);
    let point0 = s + nblocks;
    let mut offset = s;
    for (k, sys) in systems.iter().enumerate() {
        for b in 0..sys.num_blocks() {
            g.add_edge(k, offset + b);
        }
        for i in 0..n {
            g.add_edge(point0 + i, offset + sys.block_of(i));
        }
        offset += sys.num_blocks();
    }
    g
}

/// Index of the first point vertex in [`build_incidence_graph`].
pub fn first_point_vertex(systems: &[BlockSystem]) -> usize {
    systems.len() + systems.iter().map(BlockSystem::num_blocks).sum::<usize>()
}
