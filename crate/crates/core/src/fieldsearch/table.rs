use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// What is known about the subfields, in terms of the `p`-adic factors
/// `f_1, ..., f_m` of `f`. Index 0 is the linear factor `f_1` whose root
/// `r_1` anchors every first block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnownSubfieldTable {
    pub factor_degrees: Vec<usize>,
    /// Factors whose roots lie in the block containing `r_1`, one set per
    /// known nontrivial block system.
    pub first_blocks: Vec<BTreeSet<usize>>,
    pub principal_flags: Vec<bool>,
    /// Set once the principal subfield of some pair turned out to be `Q`.
    pub whole_principal: bool,
    pub possible_block_sizes: BTreeSet<usize>,
    pub order_divisor: BigUint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    DoFactor,
    SkipFactor,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DoFactor => "do factor",
            Verdict::SkipFactor => "skip factor",
        })
    }
}

impl KnownSubfieldTable {
    pub fn new(factor_degrees: Vec<usize>, possible_block_sizes: BTreeSet<usize>, order_divisor: BigUint) -> Self {
        KnownSubfieldTable {
            factor_degrees,
            first_blocks: Vec::new(),
            principal_flags: Vec::new(),
            whole_principal: false,
            possible_block_sizes,
            order_divisor,
        }
    }

    pub fn degree(&self) -> usize {
        self.factor_degrees.iter().sum()
    }

    /// Sum of the factor degrees over `delta`.
    pub fn block_size(&self, delta: &BTreeSet<usize>) -> usize {
        delta.iter().map(|&i| self.factor_degrees[i]).sum()
    }

    pub fn push(&mut self, delta: BTreeSet<usize>, principal: bool) {
        self.first_blocks.push(delta);
        self.principal_flags.push(principal);
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.factor_degrees.len();
        let bad = |s: &str| Err(Error::MalformedTable(s.into()));
        if m == 0 || self.factor_degrees[0] != 1 {
            return bad("the first factor must be linear");
        }
        if self.factor_degrees.contains(&0) {
            return bad("factor of degree 0");
        }
        if self.first_blocks.len() != self.principal_flags.len() {
            return bad("one principal flag per first block");
        }
        let n = self.degree();
        for d in &self.first_blocks {
            if !d.contains(&0) {
                return bad("first block without the first factor");
            }
            if d.iter().any(|&i| i >= m) {
                return bad("factor index out of range");
            }
            let k = self.block_size(d);
            if n % k != 0 {
                return bad("first block size does not divide the degree");
            }
        }
        Ok(())
    }
}

/// Factors and first blocks written 1-based; proven principal blocks are
/// starred.
impl fmt::Display for KnownSubfieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degrees {:?}; first blocks [", self.factor_degrees)?;
        for (i, (d, p)) in self.first_blocks.iter().zip(&self.principal_flags).enumerate() {
            let idx: Vec<String> = d.iter().map(|k| (k + 1).to_string()).collect();
            let sep = if i == 0 { "" } else { ", " };
            write!(f, "{sep}{{{}}}{}", idx.join(","), if *p { "*" } else { "" })?;
        }
        write!(f, "]; sizes {:?}; divisor {}", self.possible_block_sizes, self.order_divisor)
    }
}

fn subset_sums(degrees: &[usize], limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=limit).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn prime_factors(n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        while m % p == 0 {
            out.push(p);
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Decides whether factor `j` can still lead to an unknown principal
/// subfield, given what `table` records.
pub fn lattice_test(table: &KnownSubfieldTable, j: usize) -> Result<Verdict> {
    table.validate()?;
    let m = table.factor_degrees.len();
    if j == 0 || j >= m {
        return Err(Error::MalformedTable(format!("factor index {j} outside 2..={m}")));
    }
    let deg = |i: usize| table.factor_degrees[i];

    let smallest = (0..table.first_blocks.len())
        .filter(|&i| table.first_blocks[i].contains(&j))
        .min_by_key(|&i| (table.block_size(&table.first_blocks[i]), i));
    let (delta, delta_principal) = match smallest {
        Some(i) => (table.first_blocks[i].clone(), table.principal_flags[i]),
        None => ((0..m).collect::<BTreeSet<_>>(), table.whole_principal),
    };
    let n0 = table.block_size(&delta);

    let refinements: Vec<(usize, bool)> = (0..table.first_blocks.len())
        .filter(|&i| table.first_blocks[i].is_subset(&delta) && table.first_blocks[i] != delta)
        .map(|i| (table.block_size(&table.first_blocks[i]), table.principal_flags[i]))
        .collect();
    let has_size = |k: usize| refinements.iter().any(|&(s, _)| s == k);

    if n0 == 4 && delta_principal && refinements.len() == 1 {
        return Ok(Verdict::SkipFactor);
    }
    if n0 == 8 && delta_principal && has_size(2) && refinements.iter().any(|&(s, p)| s == 4 && p) {
        return Ok(Verdict::SkipFactor);
    }

    let mut sizes: BTreeSet<usize> =
        table.possible_block_sizes.iter().copied().filter(|&d| d < n0 && n0 % d == 0).collect();

    let others: Vec<usize> = delta.iter().filter(|&&i| i != 0 && i != j).map(|&i| deg(i)).collect();
    let base = 1 + deg(j);
    let reach = subset_sums(&others, n0);
    sizes.retain(|&d| d >= base && reach[d - base]);

    sizes.retain(|&d| !refinements.iter().any(|&(k, _)| (d - deg(j)) * n0 < d * k));

    for q in prime_factors(n0) {
        let k = n0 / q;
        if q > k && has_size(q) {
            sizes.remove(&q);
        }
    }

    let pf = prime_factors(n0);
    if pf.len() == 2 && pf[0] == pf[1] && pf[0] % 2 == 1 && refinements.len() == 2 {
        if delta_principal {
            return Ok(Verdict::SkipFactor);
        }
        let mut ds = delta.iter().filter(|&&i| i != 0).map(|&i| deg(i));
        if let Some(first) = ds.next() {
            if ds.any(|d| d != first) {
                return Ok(Verdict::SkipFactor);
            }
        }
    }

    if pf.len() == 2 && pf[0] < pf[1] {
        let (p, q) = (pf[0], pf[1]);
        debug_assert!(is_prime(p as u64) && is_prime(q as u64));
        if q % p != 1 && has_size(p) {
            sizes.remove(&p);
        }
        let exceptional = n0 == 21 || n0 == 55;
        if !exceptional && has_size(p) && (delta_principal || delta.iter().any(|&i| deg(i) > 1)) {
            sizes.remove(&p);
        }
        if exceptional && refinements.len() == 2 && delta_principal {
            return Ok(Verdict::SkipFactor);
        }
    }

    Ok(if sizes.is_empty() { Verdict::SkipFactor } else { Verdict::DoFactor })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn quartic_with_one_refinement_is_done() {
        // four linear factors, Delta = everything (principal), one known 2-block
        let mut t = KnownSubfieldTable::new(vec![1, 1, 1, 1], set(&[2]), BigUint::from(4u32));
        t.whole_principal = true;
        t.push(set(&[0, 1]), true);
        assert_eq!(lattice_test(&t, 2).unwrap(), Verdict::SkipFactor);
        t.whole_principal = false;
        assert_eq!(lattice_test(&t, 2).unwrap(), Verdict::DoFactor);
    }

    #[test]
    fn fresh_field_is_factored() {
        let t = KnownSubfieldTable::new(vec![1, 1, 2, 2], set(&[2, 3]), BigUint::from(6u32));
        assert_eq!(lattice_test(&t, 1).unwrap(), Verdict::DoFactor);
        assert_eq!(lattice_test(&t, 2).unwrap(), Verdict::DoFactor);
    }

    #[test]
    fn degree_fifteen_with_both_refinements() {
        let t = {
            let mut t = KnownSubfieldTable::new(vec![1, 2, 2, 2, 2, 2, 2, 2], set(&[3, 5]), BigUint::from(15u32));
            t.push(set(&[0, 1]), true);
            t.push(set(&[0, 2, 3]), true);
            t
        };
        assert_eq!(lattice_test(&t, 7).unwrap(), Verdict::SkipFactor);
    }

    #[test]
    fn subset_sum_rule() {
        // a degree 3 factor cannot sit in a block of size 2 next to r_1
        let t = KnownSubfieldTable::new(vec![1, 3], set(&[2]), BigUint::from(4u32));
        assert_eq!(lattice_test(&t, 1).unwrap(), Verdict::SkipFactor);
    }

    #[test]
    fn malformed_tables() {
        let mut t = KnownSubfieldTable::new(vec![2, 2], set(&[2]), BigUint::from(4u32));
        assert!(matches!(lattice_test(&t, 1), Err(Error::MalformedTable(_))));
        t.factor_degrees = vec![1, 1, 2];
        t.push(set(&[1, 2]), false);
        assert!(lattice_test(&t, 1).is_err());
        t.first_blocks.clear();
        t.principal_flags.clear();
        assert!(lattice_test(&t, 0).is_err());
        assert!(lattice_test(&t, 3).is_err());
    }
}
