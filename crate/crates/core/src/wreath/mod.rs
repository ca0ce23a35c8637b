//! The group of all permutations preserving a list of block systems, i.e.
//! the intersection of the corresponding wreath products.

mod automorphism;
mod direct;
mod graph;

pub use automorphism::colored_graph_automorphisms;
pub use direct::DirectStrategy;
pub use graph::{build_incidence_graph, first_point_vertex, ColoredGraph};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::{BlockSystem, Perm, PermGroup};
use crate::registry::{Named, Registry};

pub trait IntersectionStrategy: Named + Send + Sync {
    /// `{s in Sym_n : s maps blocks of each system to blocks of that system}`.
    fn intersect(&self, systems: &[BlockSystem], config: &Config) -> Result<PermGroup>;
}

/// Automorphisms of the colored incidence graph, restricted to points.
pub struct GraphStrategy;

impl Named for GraphStrategy {
    fn name(&self) -> &'static str {
        "graph"
    }
}

impl IntersectionStrategy for GraphStrategy {
    fn intersect(&self, systems: &[BlockSystem], config: &Config) -> Result<PermGroup> {
        let n = common_degree(systems)?;
        let g = build_incidence_graph(systems);
        let off = first_point_vertex(systems);
        let gens = colored_graph_automorphisms(&g, config.node_budget)?
            .iter()
            .map(|a| Perm::from_images((0..n).map(|i| a.apply(off + i) - off).collect()))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(n, gens)
    }
}

pub(crate) fn common_degree(systems: &[BlockSystem]) -> Result<usize> {
    let first = systems.first().ok_or_else(|| Error::Invalid("no block systems given".into()))?;
    let n = first.degree();
    for s in systems {
        if s.degree() != n {
            return Err(Error::DegreeMismatch(n, s.degree()));
        }
    }
    Ok(n)
}

pub fn intersection_registry() -> Registry<dyn IntersectionStrategy> {
    let mut r: Registry<dyn IntersectionStrategy> = Registry::new();
    r.register(Box::new(GraphStrategy)).register(Box::new(DirectStrategy));
    r
}

/// Intersection of wreath products using the strategy named in `config`.
pub fn wreath_intersection(systems: &[BlockSystem], config: &Config) -> Result<PermGroup> {
    intersection_registry().get(&config.intersection)?.intersect(systems, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn sys(blocks: &[&[usize]]) -> BlockSystem {
        let n = blocks.iter().map(|b| b.len()).sum();
        BlockSystem::from_blocks_one_based(n, blocks).unwrap()
    }

    fn f18_systems() -> Vec<BlockSystem> {
        vec![
            sys(&[&[1, 2, 3, 4, 5, 6, 7, 8, 9], &[10, 11, 12, 13, 14, 15, 16, 17, 18]]),
            sys(&[&[1, 2, 3, 13, 14, 15], &[4, 5, 6, 16, 17, 18], &[7, 8, 9, 10, 11, 12]]),
            sys(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[10, 11, 12], &[13, 14, 15], &[16, 17, 18]]),
        ]
    }

    #[test]
    fn small_intersections() {
        for name in ["graph", "direct"] {
            let cfg = Config { intersection: name.into(), ..Config::default() };
            let a = sys(&[&[1, 2], &[3, 4]]);
            let b = sys(&[&[1, 3], &[2, 4]]);
            assert_eq!(wreath_intersection(std::slice::from_ref(&a), &cfg).unwrap().order(), BigUint::from(8u32));
            let g = wreath_intersection(&[a, b], &cfg).unwrap();
            assert_eq!(g.order(), BigUint::from(4u32));
            assert!(g.contains(&Perm::from_cycles(4, &[&[1, 4], &[2, 3]]).unwrap()));
        }
    }

    #[test]
    fn f18_systems_meet() {
        let s = f18_systems();
        assert_eq!(build_incidence_graph(&s).vertex_count(), 32);
        for name in ["graph", "direct"] {
            let cfg = Config { intersection: name.into(), ..Config::default() };
            let g = wreath_intersection(&s, &cfg).unwrap();
            assert_eq!(g.order(), BigUint::from(559872u32), "{name}");
            for x in g.generators() {
                assert!(s.iter().all(|b| b.is_preserved_by(x)));
            }
        }
    }

    #[test]
    fn unknown_strategy_and_bad_input() {
        let cfg = Config { intersection: "magic".into(), ..Config::default() };
        let a = sys(&[&[1, 2], &[3, 4]]);
        assert!(matches!(wreath_intersection(std::slice::from_ref(&a), &cfg), Err(Error::UnknownStrategy(_))));
        assert!(wreath_intersection(&[], &Config::default()).is_err());
        let b = sys(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(wreath_intersection(&[a, b], &Config::default()).unwrap_err(), Error::DegreeMismatch(4, 6));
    }
}
