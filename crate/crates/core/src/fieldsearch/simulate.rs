use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::driver::{adjust_with, AdjustReport, Backend, CallRecord, Driver, PrincipalCall};
use super::table::KnownSubfieldTable;
use crate::config::Config;
use crate::cyclescan::{order_divisor, pgroup_divisor, sieve_block_sizes};
use crate::error::{Error, Result};
use crate::perm::blocks::minimal_block_system;
use crate::perm::{all_block_systems, BlockSystem, Perm, PermGroup};

/// The search replayed on a known group: random elements stand in for
/// Frobenius elements and the true principal block systems answer the
/// calls that would run LLL.
#[derive(Clone, Debug)]
pub struct SimulationReport {
    pub degree: usize,
    /// Cycle types of the sampled elements.
    pub sampled_types: Vec<Vec<usize>>,
    pub possible_block_sizes: BTreeSet<usize>,
    pub order_divisor: BigUint,
    pub even: bool,
    /// The element playing the role of the Frobenius at the LLL prime.
    pub frobenius: Perm,
    pub table: Option<KnownSubfieldTable>,
    pub oracle_calls: usize,
    pub trace: Vec<CallRecord>,
    pub adjust: Option<AdjustReport>,
    /// The overgroup the search ends with.
    pub group: PermGroup,
    pub found_systems: Vec<BlockSystem>,
    pub true_systems: Vec<BlockSystem>,
}

impl SimulationReport {
    pub fn complete(&self) -> bool {
        self.found_systems == self.true_systems
    }
}

struct Simulated<'a> {
    group: &'a PermGroup,
    /// Cycles of the Frobenius, the fixed point `r_1` first.
    cycles: Vec<Vec<usize>>,
}

impl Backend for Simulated<'_> {
    fn degree(&self) -> usize {
        self.group.degree()
    }

    fn factor_degrees(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    fn principal(&mut self, j: usize) -> Result<PrincipalCall> {
        let b = minimal_block_system(self.group.degree(), self.group.generators(), self.cycles[0][0], self.cycles[j][0]);
        Ok(PrincipalCall { blocks: (b.num_blocks() > 1).then_some(b), precisions: Vec::new() })
    }

    fn realize(&mut self, _blocks: &BlockSystem) -> Result<()> {
        Ok(())
    }

    fn first_block(&mut self, blocks: &BlockSystem) -> Result<BTreeSet<usize>> {
        let home = blocks.block_of(self.cycles[0][0]);
        Ok((0..self.cycles.len()).filter(|&t| blocks.block_of(self.cycles[t][0]) == home).collect())
    }

    fn confirm(&mut self, blocks: &BlockSystem) -> Result<bool> {
        Ok(!blocks.is_trivial() && blocks.is_block_system_of(self.group))
    }
}

/// The index-2 descent of the search with confirmation answered by the
/// true group `truth`.
pub fn simulate_final_adjust(
    group: &PermGroup,
    known: &[(BlockSystem, bool)],
    truth: &PermGroup,
    config: &Config,
) -> Result<AdjustReport> {
    adjust_with(group, known, config, &mut |b| Ok(!b.is_trivial() && b.is_block_system_of(truth)))
}

/// [`simulate_with_config`] with default limits.
pub fn simulate_from_group(g: &PermGroup, seed: u64) -> Result<SimulationReport> {
    simulate_with_config(g, &Config { seed, ..Config::default() })
}

pub fn simulate_with_config(g: &PermGroup, config: &Config) -> Result<SimulationReport> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sample = config.prime_sample.unwrap_or((2 * n).max(25));
    let mut sizes: BTreeSet<usize> = (2..n).filter(|k| n % k == 0).collect();
    let mut elems: Vec<Perm> = Vec::new();
    while elems.len() < sample && !sizes.is_empty() {
        let s = g.random_element(&mut rng);
        sizes = sieve_block_sizes(std::slice::from_ref(&s.cycle_type()), n).intersection(&sizes).copied().collect();
        elems.push(s);
    }
    let types: Vec<Vec<usize>> = elems.iter().map(Perm::cycle_type).collect();
    let mut d = BigUint::from(n);
    for t in &types {
        d = d.lcm(&order_divisor(t, n));
    }
    if config.pgroup_rule {
        d = d.lcm(&pgroup_divisor(&types, n));
    }
    let even = elems.iter().all(Perm::is_even) && g.generators().iter().all(Perm::is_even);
    let true_systems = all_block_systems(g)?;
    let mut report = SimulationReport {
        degree: n,
        sampled_types: types,
        possible_block_sizes: sizes.clone(),
        order_divisor: d.clone(),
        even,
        frobenius: Perm::identity(n),
        table: None,
        oracle_calls: 0,
        trace: Vec::new(),
        adjust: None,
        group: g.clone(),
        found_systems: Vec::new(),
        true_systems,
    };
    if sizes.is_empty() {
        return Ok(report);
    }
    let largest = *sizes.iter().next_back().expect("nonempty");
    let frob = elems
        .iter()
        .filter(|s| s.fixed_points() > 0)
        .min_by_key(|s| s.cycle_type().iter().filter(|&&l| l < largest).count())
        .cloned()
        .unwrap_or_else(|| Perm::identity(n));
    let mut cycles = frob.cycles();
    let x = cycles.iter().position(|c| c.len() == 1).expect("a fixed point");
    let first = cycles.remove(x);
    cycles.sort_by_key(|c| (c.len(), c[0]));
    cycles.insert(0, first);
    let mut backend = Simulated { group: g, cycles };
    let out = Driver::new(&mut backend, sizes, d, even, config).run()?;
    report.frobenius = frob;
    report.found_systems = all_block_systems(&out.group)?;
    report.table = Some(out.table);
    report.oracle_calls = out.calls;
    report.trace = out.trace;
    report.adjust = out.adjust;
    report.group = out.group;
    Ok(report)
}
