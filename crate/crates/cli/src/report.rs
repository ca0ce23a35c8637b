//! Structured output and its reader.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use subfields::cyclescan::{GroupParity, InspectionResult};
use subfields::fieldsearch::{
    record_is_valid, AdjustReport, CallOutcome, CallRecord, SearchOutcome, SimulationReport, StartingGroup,
};
use subfields::perm::{BlockSystem, PermGroup};
use subfields::poly::{IntPoly, QPoly};
use subfields::subfield::SubfieldRecord;
use subfields::{Error, Result};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub input: Input,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inspection: Option<InspectionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<TraceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_adjust: Option<AdjustJson>,
    #[serde(default)]
    pub subfields: Vec<RecordJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generating_set: Option<GeneratingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starting_group: Option<StartingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimulationJson>,
    /// Milliseconds per phase.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Input {
    pub mode: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    /// Constant term first.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coefficients: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_spec: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InspectionJson {
    pub possible_block_sizes: Vec<usize>,
    pub order_divisor: String,
    pub parity: String,
    pub primes_sampled: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lll_prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting_prime: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceJson {
    /// 1-based position in the factor table; `f_1` is the linear factor.
    pub factor: usize,
    pub factor_degree: usize,
    pub verdict: String,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    pub precisions: Vec<u32>,
    pub group_order: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdjustJson {
    pub subgroups: usize,
    pub survivors: usize,
    pub found: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecordJson {
    pub degree: usize,
    /// Minimal polynomial of the subfield generator, constant term first.
    pub g: Vec<String>,
    /// Generator as a polynomial in a root of the input, exact fractions,
    /// constant term first.
    pub h: Vec<String>,
    /// 1-based blocks.
    pub blocks: Vec<Vec<usize>>,
    pub principal: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratingJson {
    pub count: usize,
    pub degrees: Vec<usize>,
    pub lll_calls: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub order: String,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StartingJson {
    pub intersection_order: String,
    pub order: String,
    pub generators: Vec<String>,
    /// 1-based indices into `field_degrees` whose discriminant product is a square.
    pub square_subsets: Vec<Vec<usize>>,
    pub field_degrees: Vec<usize>,
    pub discriminants: Vec<String>,
    pub descent: Vec<DescentJson>,
    pub relative_discriminant_trigger: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescentJson {
    pub degree: usize,
    pub projected_order: String,
    pub lower_bound: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimulationJson {
    pub degree: usize,
    pub possible_block_sizes: Vec<usize>,
    pub order_divisor: String,
    pub even: bool,
    pub frobenius: String,
    pub oracle_calls: usize,
    pub found_systems: usize,
    pub true_systems: usize,
    pub complete: bool,
}

fn blocks_json(b: &BlockSystem) -> Vec<Vec<usize>> {
    b.blocks().iter().map(|blk| blk.iter().map(|i| i + 1).collect()).collect()
}

fn parity_name(p: GroupParity) -> &'static str {
    match p {
        GroupParity::Even => "even",
        GroupParity::NotEven => "not-even",
        GroupParity::Unknown => "unknown",
    }
}

pub fn group_json(g: &PermGroup) -> GroupJson {
    GroupJson {
        degree: g.degree(),
        order: g.order().to_string(),
        generators: g.generators().iter().map(ToString::to_string).collect(),
    }
}

pub fn record_json(r: &SubfieldRecord) -> RecordJson {
    RecordJson {
        degree: r.degree(),
        g: r.g.coeffs().iter().map(ToString::to_string).collect(),
        h: r.h.coeffs().iter().map(ToString::to_string).collect(),
        blocks: blocks_json(&r.blocks),
        principal: r.principal_proven,
    }
}

fn inspection_json(ins: &InspectionResult) -> InspectionJson {
    InspectionJson {
        possible_block_sizes: ins.possible_block_sizes.iter().copied().collect(),
        order_divisor: ins.order_divisor.to_string(),
        parity: parity_name(ins.parity).into(),
        primes_sampled: ins.reports.len(),
        lll_prime: Some(ins.lll_prime),
        splitting_prime: Some(ins.splitting_prime),
    }
}

fn trace_json(c: &CallRecord) -> TraceJson {
    let (outcome, blocks) = match &c.outcome {
        CallOutcome::Skipped => ("skipped", None),
        CallOutcome::Rational => ("rational", None),
        CallOutcome::Known(b) => ("known", Some(blocks_json(b))),
        CallOutcome::New(b) => ("new", Some(blocks_json(b))),
    };
    TraceJson {
        factor: c.factor + 1,
        factor_degree: c.factor_degree,
        verdict: c.verdict.to_string(),
        outcome: outcome.into(),
        blocks,
        precisions: c.precisions.clone(),
        group_order: c.group_order.to_string(),
    }
}

fn adjust_json(a: &AdjustReport) -> AdjustJson {
    AdjustJson { subgroups: a.subgroups, survivors: a.survivors, found: a.found.as_ref().map(blocks_json) }
}

pub fn poly_input(mode: &str, seed: u64, f: &IntPoly) -> Input {
    Input {
        mode: mode.into(),
        seed,
        poly: Some(f.to_string()),
        coefficients: f.coeffs().iter().map(ToString::to_string).collect(),
        group_spec: None,
    }
}

/// Inspection, trace, group and generating summary of a search; `records`
/// are the subfields to list.
pub fn search_report(input: Input, out: &SearchOutcome, records: &[SubfieldRecord]) -> Report {
    let mut degrees: Vec<usize> = out.subfields.iter().map(SubfieldRecord::degree).collect();
    degrees.sort_unstable();
    let inspection = match &out.inspection {
        Some(ins) => inspection_json(ins),
        None => InspectionJson {
            possible_block_sizes: Vec::new(),
            order_divisor: out.group.order().to_string(),
            parity: "unknown".into(),
            primes_sampled: out.reports.len(),
            lll_prime: None,
            splitting_prime: None,
        },
    };
    Report {
        input,
        inspection: Some(inspection),
        trace: out.trace.iter().map(trace_json).collect(),
        final_adjust: out.adjust.as_ref().map(adjust_json),
        subfields: records.iter().map(record_json).collect(),
        generating_set: Some(GeneratingJson { count: out.subfields.len(), degrees, lll_calls: out.lll_calls }),
        group: Some(group_json(&out.group)),
        ..Report::default()
    }
}

pub fn starting_json(sg: &StartingGroup) -> StartingJson {
    StartingJson {
        intersection_order: sg.intersection_order.to_string(),
        order: sg.group.order().to_string(),
        generators: sg.group.generators().iter().map(ToString::to_string).collect(),
        square_subsets: sg.square_subsets.iter().map(|s| s.iter().map(|i| i + 1).collect()).collect(),
        field_degrees: sg.fields.iter().map(BlockSystem::num_blocks).collect(),
        discriminants: sg.discriminants.iter().map(ToString::to_string).collect(),
        descent: sg
            .plan
            .steps
            .iter()
            .map(|s| DescentJson {
                degree: s.degree,
                projected_order: s.projected_order.to_string(),
                lower_bound: s.lower_bound.to_string(),
            })
            .collect(),
        relative_discriminant_trigger: sg.plan.relative_discriminant_trigger,
    }
}

pub fn simulation_report(input: Input, sim: &SimulationReport) -> Report {
    Report {
        input,
        trace: sim.trace.iter().map(trace_json).collect(),
        final_adjust: sim.adjust.as_ref().map(adjust_json),
        group: Some(group_json(&sim.group)),
        simulation: Some(SimulationJson {
            degree: sim.degree,
            possible_block_sizes: sim.possible_block_sizes.iter().copied().collect(),
            order_divisor: sim.order_divisor.to_string(),
            even: sim.even,
            frobenius: sim.frobenius.to_string(),
            oracle_calls: sim.oracle_calls,
            found_systems: sim.found_systems.len(),
            true_systems: sim.true_systems.len(),
            complete: sim.complete(),
        }),
        ..Report::default()
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

fn parse_record(r: &RecordJson, n: usize) -> Result<SubfieldRecord> {
    let g = IntPoly::new(r.g.iter().map(|c| parse_int(c)).collect::<Result<_>>()?);
    let h = QPoly::new(
        r.h.iter()
            .map(|c| BigRational::from_str(c).map_err(|_| Error::Parse(format!("bad fraction {c:?}"))))
            .collect::<Result<_>>()?,
    );
    let zero_based: Vec<Vec<usize>> = r
        .blocks
        .iter()
        .map(|b| b.iter().map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("block point 0".into()))).collect())
        .collect::<Result<_>>()?;
    let blocks = BlockSystem::from_blocks(n, &zero_based)?;
    Ok(SubfieldRecord { g, h, blocks, principal_proven: r.principal, invariant_shift: 0 })
}

/// Rebuilds the input polynomial and every subfield record of a JSON
/// report, failing unless each record satisfies `g(h) = 0 mod f`.
pub fn read_report(json: &str) -> Result<(IntPoly, Vec<SubfieldRecord>)> {
    let rep: Report = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let f = IntPoly::new(rep.input.coefficients.iter().map(|c| parse_int(c)).collect::<Result<_>>()?);
    if f.deg() == 0 && !rep.subfields.is_empty() {
        return Err(Error::Parse("report has subfields but no input polynomial".into()));
    }
    let mut out = Vec::with_capacity(rep.subfields.len());
    for (k, r) in rep.subfields.iter().enumerate() {
        let rec = parse_record(r, f.deg())?;
        if !record_is_valid(&f, &rec) {
            return Err(Error::Invalid(format!("subfield {} fails g(h) = 0 mod f", k + 1)));
        }
        out.push(rec);
    }
    Ok((f, out))
}
