use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::search::{field_search, SearchOutcome};
use crate::config::Config;
use crate::cyclescan::{cycle_type_at, first_sample_prime, order_divisor, pgroup_divisor};
use crate::error::Result;
use crate::perm::{BlockSystem, Perm, PermGroup};
use crate::poly::bounds::is_square;
use crate::poly::modp::is_good_prime;
use crate::poly::resultant::discriminant;
use crate::poly::IntPoly;
use crate::primes::next_prime;

/// One subfield in the order a descent would visit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentStep {
    pub degree: usize,
    pub blocks: BlockSystem,
    /// Order of the action of the starting group on the blocks.
    pub projected_order: BigUint,
    /// Cycle-type lower bound for the Galois group of the subfield.
    pub lower_bound: BigUint,
}

impl DescentStep {
    /// Whether a resolvent descent could still shrink this projection.
    pub fn has_gap(&self) -> bool {
        self.projected_order != self.lower_bound
    }
}

/// What a resolvent-based descent would do next; nothing here is executed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentPlan {
    pub steps: Vec<DescentStep>,
    /// Block size of the unique maximal subfield when it exceeds 2, which
    /// calls for the field generated by the relative discriminant.
    pub relative_discriminant_trigger: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct StartingGroup {
    pub group: PermGroup,
    /// Order of the wreath intersection before sign refinements.
    pub intersection_order: BigUint,
    /// Subsets (indices into `fields`) whose discriminant product is a
    /// square; each gave a sign character.
    pub square_subsets: Vec<Vec<usize>>,
    /// Block systems of all subfields, then the singletons for `L`.
    pub fields: Vec<BlockSystem>,
    pub discriminants: Vec<BigInt>,
    pub plan: DescentPlan,
    pub search: SearchOutcome,
}

/// Pairwise coprime numbers `> 1` whose products give every input up to sign.
fn coprime_base(values: &[BigInt]) -> Vec<BigInt> {
    let mut base: Vec<BigInt> = values.iter().map(|v| v.abs()).filter(|v| *v > BigInt::one()).collect();
    base.sort();
    base.dedup();
    'outer: loop {
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let g = base[i].gcd(&base[j]);
                if !g.is_one() {
                    let (a, b) = (&base[i] / &g, &base[j] / &g);
                    base.remove(j);
                    base.remove(i);
                    base.extend([a, b, g].into_iter().filter(|v| *v > BigInt::one()));
                    base.sort();
                    base.dedup();
                    continue 'outer;
                }
            }
        }
        return base;
    }
}

/// Rows: sign bit, then exponent parities over the coprime base. Base
/// elements that are perfect squares carry no information and are dropped.
fn square_class_rows(values: &[BigInt]) -> Vec<Vec<bool>> {
    let base: Vec<BigInt> = coprime_base(values).into_iter().filter(|b| !is_square(b)).collect();
    values
        .iter()
        .map(|v| {
            let mut row = vec![v.is_negative()];
            let mut x = v.abs();
            for b in &base {
                let mut e = 0u32;
                while !x.is_zero() && (&x % b).is_zero() {
                    x /= b;
                    e += 1;
                }
                row.push(e % 2 == 1);
            }
            row
        })
        .collect()
}

/// Basis of the subsets of rows summing to zero over the two-element field.
fn left_kernel(rows: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let r = rows.len();
    let mut work: Vec<(Vec<bool>, Vec<bool>)> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut tag = vec![false; r];
            tag[i] = true;
            (row.clone(), tag)
        })
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..width {
        let Some(p) = (pivot_row..r).find(|&i| work[i].0[col]) else {
            continue;
        };
        work.swap(pivot_row, p);
        let (prow, ptag) = work[pivot_row].clone();
        for (i, (row, tag)) in work.iter_mut().enumerate() {
            if i != pivot_row && row[col] {
                row.iter_mut().zip(&prow).for_each(|(a, b)| *a ^= *b);
                tag.iter_mut().zip(&ptag).for_each(|(a, b)| *a ^= *b);
            }
        }
        pivot_row += 1;
    }
    work[pivot_row..]
        .iter()
        .map(|(_, tag)| (0..r).filter(|&i| tag[i]).collect())
        .collect()
}

fn block_sign_odd(blocks: &BlockSystem, g: &Perm) -> bool {
    !blocks.block_action(g).is_even()
}

/// Lower bound for the order of the Galois group of `g` from cycle types at
/// `samples` good primes.
pub fn cycle_type_lower_bound(g: &IntPoly, samples: usize, config: &Config) -> Result<BigUint> {
    let n = g.deg();
    let mut types = Vec::new();
    let mut p = first_sample_prime(n).max(3) - 1;
    while types.len() < samples {
        p = next_prime(p);
        if p > config.max_prime {
            break;
        }
        if is_good_prime(g, p) {
            types.push(cycle_type_at(g, p)?.cycle_type);
        }
    }
    let mut d = BigUint::from(n.max(1));
    for t in &types {
        d = d.lcm(&order_divisor(t, n));
    }
    if config.pgroup_rule {
        d = d.lcm(&pgroup_divisor(&types, n));
    }
    Ok(d)
}

fn block_action_group(g: &PermGroup, blocks: &BlockSystem) -> Result<PermGroup> {
    PermGroup::new(blocks.num_blocks(), g.generators().iter().map(|s| blocks.block_action(s)).collect())
}

/// An overgroup of the Galois group of `f`: the wreath intersection of the
/// subfield block systems, cut down by one sign character for every set
/// of subfields whose discriminants multiply to a rational square.
pub fn starting_group(f: &IntPoly, config: &Config) -> Result<StartingGroup> {
    let search = field_search(f, config)?;
    let n = f.deg();
    let records = search.all_subfields(config)?;
    let mut fields: Vec<BlockSystem> = records.iter().map(|r| r.blocks.clone()).collect();
    let mut discriminants = Vec::with_capacity(records.len() + 1);
    for r in &records {
        discriminants.push(discriminant(&r.g)?);
    }
    fields.push(BlockSystem::singletons(n));
    discriminants.push(discriminant(f)?);

    let intersection_order = search.group.order();
    let mut group = search.group.clone();
    let square_subsets = left_kernel(&square_class_rows(&discriminants));
    for s in &square_subsets {
        let sel: Vec<&BlockSystem> = s.iter().map(|&i| &fields[i]).collect();
        group = group.kernel_of_character(|g| sel.iter().filter(|b| block_sign_odd(b, g)).count() % 2 == 1);
    }

    let mut steps = Vec::new();
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by_key(|&i| (records[i].g.deg(), i));
    for i in order {
        let action = block_action_group(&group, &records[i].blocks)?;
        steps.push(DescentStep {
            degree: records[i].g.deg(),
            blocks: records[i].blocks.clone(),
            projected_order: action.order(),
            lower_bound: cycle_type_lower_bound(&records[i].g, (2 * records[i].g.deg()).max(25), config)?,
        });
    }
    let maximal: Vec<&BlockSystem> = records
        .iter()
        .map(|r| &r.blocks)
        .filter(|b| !records.iter().any(|o| o.blocks != **b && o.blocks.refines(b)))
        .collect();
    let relative_discriminant_trigger = match maximal.as_slice() {
        [b] if b.block_size() > 2 => Some(b.block_size()),
        _ => None,
    };
    Ok(StartingGroup {
        group,
        intersection_order,
        square_subsets,
        fields,
        discriminants,
        plan: DescentPlan { steps, relative_discriminant_trigger },
        search,
    })
}
