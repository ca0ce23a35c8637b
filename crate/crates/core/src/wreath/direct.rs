use super::{common_degree, IntersectionStrategy};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::{BlockSystem, Perm, PermGroup};
use crate::registry::Named;

/// Backtrack over point images, keeping a partial block map per system.
/// Generators are collected along the point stabilizer chain of `1, 2, ..`.
pub struct DirectStrategy;

impl Named for DirectStrategy {
    fn name(&self) -> &'static str {
        "direct"
    }
}

struct State<'a> {
    systems: &'a [BlockSystem],
    sizes: Vec<Vec<usize>>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    fwd: Vec<Vec<Option<usize>>>,
    bwd: Vec<Vec<Option<usize>>>,
    refs: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

impl<'a> State<'a> {
    fn new(systems: &'a [BlockSystem], n: usize, budget: u64) -> Self {
        let sizes: Vec<Vec<usize>> = systems.iter().map(|s| s.blocks().iter().map(Vec::len).collect()).collect();
        let blank = |s: &BlockSystem| vec![None; s.num_blocks()];
        State {
            systems,
            image: vec![None; n],
            used: vec![false; n],
            fwd: systems.iter().map(blank).collect(),
            bwd: systems.iter().map(blank).collect(),
            refs: sizes.iter().map(|v| vec![0; v.len()]).collect(),
            sizes,
            nodes: 0,
            budget,
        }
    }

    fn assign(&mut self, x: usize, y: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(format!("direct intersection exceeded {} nodes", self.budget)));
        }
        if self.used[y] {
            return Ok(false);
        }
        for (k, s) in self.systems.iter().enumerate() {
            let (bx, by) = (s.block_of(x), s.block_of(y));
            let ok = match self.fwd[k][bx] {
                Some(c) => c == by,
                None => self.bwd[k][by].is_none() && self.sizes[k][bx] == self.sizes[k][by],
            };
            if !ok {
                return Ok(false);
            }
        }
        for (k, s) in self.systems.iter().enumerate() {
            let (bx, by) = (s.block_of(x), s.block_of(y));
            self.fwd[k][bx] = Some(by);
            self.bwd[k][by] = Some(bx);
            self.refs[k][bx] += 1;
        }
        self.image[x] = Some(y);
        self.used[y] = true;
        Ok(true)
    }

    fn unassign(&mut self, x: usize) {
        let y = self.image[x].take().expect("assigned");
        self.used[y] = false;
        for (k, s) in self.systems.iter().enumerate() {
            let bx = s.block_of(x);
            self.refs[k][bx] -= 1;
            if self.refs[k][bx] == 0 {
                let by = s.block_of(y);
                self.fwd[k][bx] = None;
                self.bwd[k][by] = None;
            }
        }
    }

    fn complete(&mut self, x: usize) -> Result<bool> {
        let n = self.image.len();
        if x == n {
            return Ok(true);
        }
        if self.image[x].is_some() {
            return self.complete(x + 1);
        }
        for y in 0..n {
            if self.assign(x, y)? {
                if self.complete(x + 1)? {
                    return Ok(true);
                }
                self.unassign(x);
            }
        }
        Ok(false)
    }

    fn clear(&mut self) {
        for x in 0..self.image.len() {
            if self.image[x].is_some() {
                self.unassign(x);
            }
        }
    }
}

impl IntersectionStrategy for DirectStrategy {
    fn intersect(&self, systems: &[BlockSystem], config: &Config) -> Result<PermGroup> {
        let n = common_degree(systems)?;
        let mut st = State::new(systems, n, config.node_budget);
        let mut gens: Vec<Perm> = Vec::new();
        for level in (0..n).rev() {
            let mut orbit = crate::perm::group::orbit_under(&gens, n, level);
            for w in level + 1..n {
                if orbit.contains(&w) {
                    continue;
                }
                st.clear();
                let mut ok = true;
                for x in 0..level {
                    ok &= st.assign(x, x)?;
                }
                if ok && st.assign(level, w)? && st.complete(level + 1)? {
                    let images = st.image.iter().map(|y| y.expect("complete")).collect();
                    gens.push(Perm::from_images(images)?);
                    orbit = crate::perm::group::orbit_under(&gens, n, level);
                }
            }
        }
        PermGroup::new(n, gens)
    }
}
