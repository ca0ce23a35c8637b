use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::table::{lattice_test, KnownSubfieldTable, Verdict};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::blocks::minimal_block_system;
use crate::perm::catalog::{alternating, symmetric};
use crate::perm::{index2_transitive_subgroups, intersect_with_alternating, BlockSystem, PermGroup};
use crate::wreath::wreath_intersection;

/// Result of one principal-subfield computation for the pair `(r_1, f_j)`.
pub struct PrincipalCall {
    /// `None` when the principal subfield is `Q`.
    pub blocks: Option<BlockSystem>,
    pub precisions: Vec<u32>,
}

/// The number-field side of the search. The real implementation runs
/// LLL and `p`-adic arithmetic; the simulation reads answers off a
/// permutation group.
pub(crate) trait Backend {
    fn degree(&self) -> usize;
    /// Degrees of `f_1, ..., f_m`, with `f_1` linear.
    fn factor_degrees(&self) -> Vec<usize>;
    fn principal(&mut self, j: usize) -> Result<PrincipalCall>;
    /// Makes the subfield of a block system of an overgroup available.
    fn realize(&mut self, blocks: &BlockSystem) -> Result<()>;
    /// Factors whose roots share the block of `r_1`.
    fn first_block(&mut self, blocks: &BlockSystem) -> Result<BTreeSet<usize>>;
    /// Proves or disproves a conjectured block system.
    fn confirm(&mut self, blocks: &BlockSystem) -> Result<bool>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CallOutcome {
    Skipped,
    Rational,
    Known(BlockSystem),
    New(BlockSystem),
}

/// One factor visited by the driver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallRecord {
    /// Position in the factor table, `f_1` being 0.
    pub factor: usize,
    pub factor_degree: usize,
    pub verdict: Verdict,
    pub outcome: CallOutcome,
    pub precisions: Vec<u32>,
    /// Order of the overgroup after this step.
    pub group_order: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjustReport {
    pub subgroups: usize,
    pub survivors: usize,
    pub found: Option<BlockSystem>,
}

pub(crate) struct DriverOutcome {
    pub table: KnownSubfieldTable,
    pub group: PermGroup,
    pub calls: usize,
    pub trace: Vec<CallRecord>,
    pub adjust: Option<AdjustReport>,
}

/// Principal systems of a transitive group, in a fixed order.
pub fn principal_systems(g: &PermGroup) -> Vec<BlockSystem> {
    let mut out: Vec<BlockSystem> = Vec::new();
    for j in 1..g.degree() {
        let b = minimal_block_system(g.degree(), g.generators(), 0, j);
        if !b.is_trivial() && !out.contains(&b) {
            out.push(b);
        }
    }
    out.sort_by(|a, b| (a.num_blocks(), a.labels()).cmp(&(b.num_blocks(), b.labels())));
    out
}

pub(crate) struct Driver<'a, B: Backend> {
    backend: &'a mut B,
    config: &'a Config,
    even: bool,
    pub table: KnownSubfieldTable,
    pub systems: Vec<BlockSystem>,
    pub group: PermGroup,
}

impl<'a, B: Backend> Driver<'a, B> {
    pub fn new(
        backend: &'a mut B,
        sizes: BTreeSet<usize>,
        divisor: BigUint,
        even: bool,
        config: &'a Config,
    ) -> Self {
        let n = backend.degree();
        let table = KnownSubfieldTable::new(backend.factor_degrees(), sizes, divisor);
        let group = if even { alternating(n) } else { symmetric(n) };
        Driver { backend, config, even, table, systems: Vec::new(), group }
    }

    fn abort(&self, e: Error) -> Error {
        match e {
            Error::Aborted { .. } => e,
            cause => Error::Aborted { cause: Box::new(cause), table: self.table.to_string() },
        }
    }

    fn recompute_group(&mut self) -> Result<()> {
        let g = wreath_intersection(&self.systems, self.config)?;
        self.group = if self.even { intersect_with_alternating(&g) } else { g };
        Ok(())
    }

    fn add_system(&mut self, blocks: BlockSystem, principal: bool) -> Result<()> {
        let delta = self.backend.first_block(&blocks)?;
        if self.table.block_size(&delta) != blocks.block_size() {
            return Err(Error::MalformedTable(format!("first block of {blocks} has the wrong size")));
        }
        self.systems.push(blocks);
        self.table.push(delta, principal);
        Ok(())
    }

    /// Adds the principal systems of the current overgroup not yet known.
    fn harvest(&mut self) -> Result<()> {
        for b in principal_systems(&self.group) {
            if !self.systems.contains(&b) {
                self.backend.realize(&b)?;
                self.add_system(b, false)?;
            }
        }
        Ok(())
    }

    fn accept_new(&mut self, blocks: BlockSystem) -> Result<()> {
        self.add_system(blocks, true)?;
        self.recompute_group()?;
        self.harvest()
    }

    pub fn run(mut self) -> Result<DriverOutcome> {
        let mut trace = Vec::new();
        let mut calls = 0;
        let mut adjust = None;
        let res = self.search(&mut trace, &mut calls, &mut adjust);
        if let Err(e) = res {
            return Err(self.abort(e));
        }
        Ok(DriverOutcome {
            table: self.table,
            group: self.group,
            calls,
            trace,
            adjust,
        })
    }

    fn search(
        &mut self,
        trace: &mut Vec<CallRecord>,
        calls: &mut usize,
        adjust: &mut Option<AdjustReport>,
    ) -> Result<()> {
        let m = self.table.factor_degrees.len();
        let d = self.table.order_divisor.clone();
        if self.group.order() == d {
            return Ok(());
        }
        for j in 1..m {
            let verdict = lattice_test(&self.table, j)?;
            let mut rec = CallRecord {
                factor: j,
                factor_degree: self.table.factor_degrees[j],
                verdict,
                outcome: CallOutcome::Skipped,
                precisions: Vec::new(),
                group_order: BigUint::default(),
            };
            if verdict == Verdict::SkipFactor {
                rec.group_order = self.group.order();
                trace.push(rec);
                continue;
            }
            *calls += 1;
            let call = self.backend.principal(j)?;
            rec.precisions = call.precisions;
            let Some(blocks) = call.blocks else {
                self.table.whole_principal = true;
                rec.outcome = CallOutcome::Rational;
                rec.group_order = self.group.order();
                trace.push(rec);
                continue;
            };
            if let Some(i) = self.systems.iter().position(|b| *b == blocks) {
                self.table.principal_flags[i] = true;
                rec.outcome = CallOutcome::Known(blocks);
                rec.group_order = self.group.order();
                trace.push(rec);
                continue;
            }
            self.accept_new(blocks.clone())?;
            rec.outcome = CallOutcome::New(blocks);
            let order = self.group.order();
            rec.group_order = order.clone();
            trace.push(rec);
            if order == d {
                break;
            }
            if order == &d * 2u32 {
                let report = self.final_adjust()?;
                if let Some(b) = &report.found {
                    self.accept_new(b.clone())?;
                }
                *adjust = Some(report);
                break;
            }
        }
        Ok(())
    }

    fn final_adjust(&mut self) -> Result<AdjustReport> {
        let known: Vec<(BlockSystem, bool)> =
            self.systems.iter().cloned().zip(self.table.principal_flags.iter().copied()).collect();
        let backend = &mut *self.backend;
        adjust_with(&self.group, &known, self.config, &mut |b| backend.confirm(b))
    }
}

/// Index-2 descent: keeps the transitive index-2 subgroups whose principal
/// systems differ from those of `group` and keep every proven principal
/// system principal, then tries to confirm one new principal system per
/// survivor.
pub(crate) fn adjust_with(
    group: &PermGroup,
    known: &[(BlockSystem, bool)],
    config: &Config,
    confirm: &mut dyn FnMut(&BlockSystem) -> Result<bool>,
) -> Result<AdjustReport> {
    let subs = index2_transitive_subgroups(group, config.index2_budget)?;
    let ours = principal_systems(group);
    let mut report = AdjustReport { subgroups: subs.len(), survivors: 0, found: None };
    for u in &subs {
        let theirs = principal_systems(u);
        if theirs == ours {
            continue;
        }
        if known.iter().any(|(b, proven)| *proven && !theirs.contains(b)) {
            continue;
        }
        report.survivors += 1;
        let Some(candidate) = theirs.into_iter().find(|b| !ours.contains(b)) else {
            continue;
        };
        if confirm(&candidate)? {
            report.found = Some(candidate);
            break;
        }
    }
    Ok(report)
}
