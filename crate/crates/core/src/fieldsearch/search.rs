use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::driver::{adjust_with, AdjustReport, Backend, CallRecord, Driver, PrincipalCall};
use super::table::KnownSubfieldTable;
use crate::config::Config;
use crate::cyclescan::{prime_inspection, CycleTypeReport, GroupParity, Inspection, InspectionResult};
use crate::error::{Error, Result};
use crate::lll::{initial_lll_precision, principal_subfield_traced};
use crate::padic::{default_precision, SplittingContext};
use crate::perm::catalog::{alternating, symmetric};
use crate::perm::{all_block_systems, BlockSystem, PermGroup};
use crate::poly::bounds::is_square;
use crate::poly::modp::{hensel_lift, mod_factor, ModFactorization};
use crate::poly::resultant::discriminant;
use crate::poly::zfactor::has_rational_root;
use crate::poly::{IntPoly, QPoly};
use crate::subfield::{subfield_from_blocks, SubfieldRecord};

/// `lc^(n-1) f(x / lc)`: monic, defining the same field.
pub fn monic_transform(f: &IntPoly) -> IntPoly {
    let n = f.deg();
    let lc = f.lc();
    let c: Vec<BigInt> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| if k == n { BigInt::one() } else { a * num_traits::pow(lc.clone(), n - 1 - k) })
        .collect();
    IntPoly::new(c)
}

/// Rewrites an embedding `h(y)` of the monic transform in terms of `x = y / lc`.
fn pull_back(h: &QPoly, f: &IntPoly) -> QPoly {
    let lc = BigRational::from_integer(f.lc());
    let mut scale = BigRational::one();
    let c: Vec<BigRational> = h
        .coeffs()
        .iter()
        .map(|a| {
            let v = a * &scale;
            scale = &scale * &lc;
            v
        })
        .collect();
    QPoly::new(c).rem(&QPoly::from_int(f))
}

/// The LLL-backed side of the search.
struct NumberField<'a> {
    ctx: SplittingContext,
    fac: ModFactorization,
    /// Factor positions in `fac`, `f_1` first.
    order: Vec<usize>,
    records: Vec<SubfieldRecord>,
    config: &'a Config,
}

impl NumberField<'_> {
    fn record(&self, blocks: &BlockSystem) -> Option<&SubfieldRecord> {
        self.records.iter().find(|r| r.blocks == *blocks)
    }

    fn store(&mut self, rec: SubfieldRecord) {
        if let Some(old) = self.records.iter_mut().find(|r| r.blocks == rec.blocks) {
            old.principal_proven |= rec.principal_proven;
        } else {
            self.records.push(rec);
        }
    }
}

impl Backend for NumberField<'_> {
    fn degree(&self) -> usize {
        self.ctx.poly().deg()
    }

    fn factor_degrees(&self) -> Vec<usize> {
        self.order.iter().map(|&i| self.fac.factors[i].degree()).collect()
    }

    fn principal(&mut self, j: usize) -> Result<PrincipalCall> {
        let (rec, precisions) = principal_subfield_traced(&self.fac, self.order[0], self.order[j], &self.ctx, self.config)?;
        if rec.degree() <= 1 {
            return Ok(PrincipalCall { blocks: None, precisions });
        }
        let blocks = rec.blocks.clone();
        self.store(rec);
        Ok(PrincipalCall { blocks: Some(blocks), precisions })
    }

    fn realize(&mut self, blocks: &BlockSystem) -> Result<()> {
        if self.record(blocks).is_none() {
            let rec = subfield_from_blocks(&self.ctx, blocks, self.config)?;
            self.store(SubfieldRecord { principal_proven: false, ..rec });
        }
        Ok(())
    }

    fn first_block(&mut self, blocks: &BlockSystem) -> Result<BTreeSet<usize>> {
        let h = self
            .record(blocks)
            .ok_or_else(|| Error::Invalid(format!("no subfield recorded for {blocks}")))?
            .h
            .clone();
        let f = self.ctx.poly();
        let mut pr = initial_lll_precision(f, self.fac.prime);
        loop {
            let lifted = hensel_lift(&self.fac, pr)?;
            let delta: BTreeSet<usize> = (0..self.order.len())
                .filter(|&t| t == 0 || crate::lll::same_block(&h, &lifted, self.order[0], self.order[t]))
                .collect();
            let size: usize = delta.iter().map(|&t| self.fac.factors[self.order[t]].degree()).sum();
            if size == blocks.block_size() {
                return Ok(delta);
            }
            pr *= 2;
            crate::subfield::check_precision(pr, self.config)?;
        }
    }

    fn confirm(&mut self, blocks: &BlockSystem) -> Result<bool> {
        match subfield_from_blocks(&self.ctx, blocks, self.config) {
            Ok(rec) => {
                self.store(SubfieldRecord { principal_proven: true, ..rec });
                Ok(true)
            }
            Err(e @ Error::PrecisionCeiling(_)) => Err(e),
            Err(_) => Ok(false),
        }
    }
}

/// Everything the search learned about one polynomial.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// The input polynomial.
    pub poly: IntPoly,
    /// The monic polynomial all `p`-adic work used.
    pub working_poly: IntPoly,
    pub reports: Vec<CycleTypeReport>,
    /// `None` when cycle types alone excluded every block size.
    pub inspection: Option<InspectionResult>,
    pub ctx: Option<SplittingContext>,
    pub table: Option<KnownSubfieldTable>,
    /// Subfields of the principal block systems of `group`, with `h`
    /// expressed in the root of `poly`.
    pub subfields: Vec<SubfieldRecord>,
    /// Overgroup of the Galois group with exactly its block systems.
    pub group: PermGroup,
    pub lll_calls: usize,
    pub trace: Vec<CallRecord>,
    pub adjust: Option<AdjustReport>,
    pub timings: Vec<(&'static str, Duration)>,
}

impl SearchOutcome {
    pub fn has_subfields(&self) -> bool {
        !self.subfields.is_empty()
    }

    /// Subfields of every nontrivial block system of `group`, not only the
    /// principal ones.
    pub fn all_subfields(&self, config: &Config) -> Result<Vec<SubfieldRecord>> {
        let Some(ctx) = &self.ctx else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for b in all_block_systems(&self.group)? {
            let rec = match self.subfields.iter().find(|r| r.blocks == b) {
                Some(r) => r.clone(),
                None => {
                    let rec = subfield_from_blocks(ctx, &b, config)?;
                    let rec = SubfieldRecord { principal_proven: false, ..rec };
                    self.express(rec)
                }
            };
            out.push(rec);
        }
        Ok(out)
    }

    fn express(&self, rec: SubfieldRecord) -> SubfieldRecord {
        if self.poly == self.working_poly {
            rec
        } else {
            SubfieldRecord { h: pull_back(&rec.h, &self.poly), ..rec }
        }
    }
}

fn full_group(f: &IntPoly, reports: &[CycleTypeReport]) -> Result<PermGroup> {
    let n = f.deg();
    Ok(if reports.iter().all(CycleTypeReport::is_even) && is_square(&discriminant(f)?) {
        alternating(n)
    } else {
        symmetric(n)
    })
}

/// Galois-generating subfields of `Q[x]/f`, the overgroup of the Galois
/// group they determine, and the number of LLL calls spent.
pub fn field_search(f: &IntPoly, config: &Config) -> Result<SearchOutcome> {
    let n = f.deg();
    if n < 2 {
        return Err(Error::Invalid("degree must be at least 2".into()));
    }
    if has_rational_root(f) {
        return Err(Error::Reducible("rational root".into()));
    }
    let work = if f.is_monic() { f.clone() } else { monic_transform(f) };
    let mut timings = Vec::new();
    let t = Instant::now();
    let inspection = prime_inspection(&work, config)?;
    timings.push(("inspection", t.elapsed()));
    let res = match inspection {
        Inspection::NoSubfields { reports } => {
            let group = full_group(&work, &reports)?;
            return Ok(SearchOutcome {
                poly: f.clone(),
                working_poly: work,
                reports,
                inspection: None,
                ctx: None,
                table: None,
                subfields: Vec::new(),
                group,
                lll_calls: 0,
                trace: Vec::new(),
                adjust: None,
                timings,
            });
        }
        Inspection::Found(r) => r,
    };
    let t = Instant::now();
    let ctx = SplittingContext::new(&work, res.splitting_prime, default_precision(&work, res.splitting_prime))?;
    let fac = mod_factor(&work, res.lll_prime, config.seed)?;
    let i1 = fac
        .factors
        .iter()
        .position(|g| g.degree() == 1)
        .ok_or_else(|| Error::Invalid("LLL prime without a linear factor".into()))?;
    let mut order: Vec<usize> = (0..fac.factors.len()).filter(|&i| i != i1).collect();
    order.sort_by_key(|&i| (fac.factors[i].degree(), i));
    order.insert(0, i1);
    timings.push(("setup", t.elapsed()));

    let t = Instant::now();
    let mut nf = NumberField { ctx, fac, order, records: Vec::new(), config };
    let even = res.parity == GroupParity::Even;
    let out = Driver::new(&mut nf, res.possible_block_sizes.clone(), res.order_divisor.clone(), even, config).run()?;
    timings.push(("search", t.elapsed()));

    let t = Instant::now();
    let mut subfields = Vec::new();
    for b in super::driver::principal_systems(&out.group) {
        nf.realize(&b)?;
        let rec = nf.record(&b).expect("realized").clone();
        subfields.push(rec);
    }
    timings.push(("subfields", t.elapsed()));
    let mut outcome = SearchOutcome {
        poly: f.clone(),
        working_poly: work,
        reports: res.reports.clone(),
        inspection: Some(res),
        ctx: Some(nf.ctx),
        table: Some(out.table),
        subfields: Vec::new(),
        group: out.group,
        lll_calls: out.calls,
        trace: out.trace,
        adjust: out.adjust,
        timings,
    };
    outcome.subfields = subfields.into_iter().map(|r| outcome.express(r)).collect();
    Ok(outcome)
}

/// Index-2 descent on `group` with `|group| = 2 D`: returns the subfield of
/// the one confirmed new principal system, if any. `known` lists the known
/// block systems with their proven-principal flags.
pub fn final_adjust(
    group: &PermGroup,
    known: &[(BlockSystem, bool)],
    ctx: &SplittingContext,
    config: &Config,
) -> Result<Option<SubfieldRecord>> {
    let mut found = None;
    let report = adjust_with(group, known, config, &mut |b| match subfield_from_blocks(ctx, b, config) {
        Ok(rec) => {
            found = Some(SubfieldRecord { principal_proven: true, ..rec });
            Ok(true)
        }
        Err(e @ Error::PrecisionCeiling(_)) => Err(e),
        Err(_) => Ok(false),
    })?;
    Ok(report.found.and(found))
}

/// `g(h) = 0 mod f`, checked exactly.
pub fn record_is_valid(f: &IntPoly, rec: &SubfieldRecord) -> bool {
    let fq = QPoly::from_int(f);
    let mut acc = QPoly::zero();
    for c in rec.g.coeffs().iter().rev() {
        acc = acc.mul(&rec.h).add(&QPoly::constant(BigRational::from_integer(c.clone()))).rem(&fq);
    }
    acc.is_zero() && rec.g.deg() * rec.blocks.block_size() == f.deg()
}
