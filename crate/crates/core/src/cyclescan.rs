//! What factoring `f` modulo many primes reveals about its Galois group:
//! cycle types, divisors of the group order, excluded block sizes and parity.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::poly::bounds::is_square;
use crate::poly::modp::{is_good_prime, mod_factor};
use crate::poly::resultant::discriminant;
use crate::poly::IntPoly;
use crate::primes::{divisors, factor_small, next_prime};

/// Degrees of the irreducible factors of `f` modulo `prime`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTypeReport {
    pub prime: u64,
    pub cycle_type: Vec<usize>,
}

impl CycleTypeReport {
    pub fn new(prime: u64, mut cycle_type: Vec<usize>) -> Self {
        cycle_type.sort_unstable();
        CycleTypeReport { prime, cycle_type }
    }

    pub fn degree(&self) -> usize {
        self.cycle_type.iter().sum()
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_type.len()) % 2 == 0
    }

    pub fn has_fixed_point(&self) -> bool {
        self.cycle_type.first() == Some(&1)
    }

    /// Splitting field degree of `f` modulo the prime: lcm of the parts.
    pub fn lcm(&self) -> usize {
        self.cycle_type.iter().fold(1, |a, &b| a.lcm(&b))
    }
}

pub fn cycle_type_at(f: &IntPoly, p: u64) -> Result<CycleTypeReport> {
    if !is_good_prime(f, p) {
        return Err(Error::BadPrime(p));
    }
    let fac = mod_factor(f, p, p)?;
    Ok(CycleTypeReport::new(p, fac.degrees()))
}

/// `n * lcm(n_i) / gcd(n_i)`, a divisor of the order of any transitive
/// group containing an element of this cycle type.
pub fn order_divisor(cycle_type: &[usize], n: usize) -> BigUint {
    let l = cycle_type.iter().fold(BigUint::one(), |a, &b| a.lcm(&BigUint::from(b)));
    let g = cycle_type.iter().fold(0usize, |a, &b| a.gcd(&b));
    BigUint::from(n) * l / BigUint::from(g.max(1))
}

/// Cycle type of `sigma^k` for `sigma` of the given type.
pub fn power_type(cycle_type: &[usize], k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &l in cycle_type {
        let g = l.gcd(&k);
        out.extend(std::iter::repeat_n(l / g, g));
    }
    out.sort_unstable();
    out
}

/// `(q, e, points in cycles of length q^e)` for an element of order `q^e > 1`.
fn prime_power_data(cycle_type: &[usize]) -> Option<(u64, u32, usize)> {
    let order = cycle_type.iter().fold(1usize, |a, &b| a.lcm(&b));
    let f = factor_small(order as u64);
    if f.len() != 1 {
        return None;
    }
    let (q, e) = f[0];
    let full = cycle_type.iter().filter(|&&l| l == order).count() * order;
    Some((q, e, full))
}

/// Divisor of the group order from pairs of elements of order a power of the
/// same prime `q` whose numbers of points with trivial stabilizer differ.
///
/// Such a pair can be conjugated into one Sylow `q`-subgroup without changing
/// cycle types, so `q^(e+f)` divides the order. When both elements fix a
/// point, the same holds inside a point stabilizer and the divisor is
/// multiplied by `n`. The `q`-parts of every sampled element are used.
pub fn pgroup_divisor(types: &[Vec<usize>], n: usize) -> BigUint {
    let mut elems: Vec<(usize, Vec<usize>)> = Vec::new();
    for (idx, t) in types.iter().enumerate() {
        let order = t.iter().fold(1usize, |a, &b| a.lcm(&b));
        for (q, e) in factor_small(order as u64) {
            let qe = (q as usize).pow(e);
            elems.push((idx, power_type(t, order / qe)));
        }
    }
    let mut d = BigUint::one();
    for (i, (si, a)) in elems.iter().enumerate() {
        let Some((q, e, ca)) = prime_power_data(a) else { continue };
        for (sj, b) in &elems[i + 1..] {
            if si == sj {
                continue;
            }
            let Some((q2, f, cb)) = prime_power_data(b) else { continue };
            if q != q2 || ca == cb {
                continue;
            }
            let mut c = BigUint::from(q).pow(e + f);
            if a[0] == 1 && b[0] == 1 {
                c *= BigUint::from(n);
            }
            d = d.lcm(&c);
        }
    }
    d
}

/// True when some `e | n_i` and a set of parts containing part `m`, all
/// divisible by `e`, sum to `e*k`.
fn has_witness(parts: &[usize], m: usize, k: usize) -> bool {
    let nm = parts[m];
    for e in divisors(nm) {
        let target = e * k;
        if target < nm {
            continue;
        }
        let rest = target - nm;
        let mut reach = vec![false; rest + 1];
        reach[0] = true;
        for (i, &l) in parts.iter().enumerate() {
            if i == m || l % e != 0 || l > rest {
                continue;
            }
            for s in (l..=rest).rev() {
                if reach[s - l] {
                    reach[s] = true;
                }
            }
        }
        if reach[rest] {
            return true;
        }
    }
    false
}

/// Proper block sizes `1 < k < n` compatible with every observed cycle type.
pub fn sieve_block_sizes(types: &[Vec<usize>], n: usize) -> BTreeSet<usize> {
    divisors(n)
        .into_iter()
        .filter(|&k| k > 1 && k < n)
        .filter(|&k| types.iter().all(|t| (0..t.len()).all(|m| has_witness(t, m, k))))
        .collect()
}

/// Parity knowledge about the Galois group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupParity {
    /// The discriminant is a square.
    Even,
    /// An odd Frobenius element was observed.
    NotEven,
    /// All observed elements are even but the discriminant is not a square.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct InspectionResult {
    pub reports: Vec<CycleTypeReport>,
    pub possible_block_sizes: BTreeSet<usize>,
    pub lll_prime: u64,
    pub splitting_prime: u64,
    pub order_divisor: BigUint,
    pub parity: GroupParity,
    pub discriminant: BigInt,
}

#[derive(Clone, Debug)]
pub enum Inspection {
    NoSubfields { reports: Vec<CycleTypeReport> },
    Found(InspectionResult),
}

/// First odd prime above `n^2`, where sampling starts.
pub fn first_sample_prime(n: usize) -> u64 {
    next_prime((n * n) as u64)
}

pub fn prime_inspection(f: &IntPoly, config: &Config) -> Result<Inspection> {
    let n = f.deg();
    if n < 1 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    let sample = config.prime_sample.unwrap_or((2 * n).max(25));
    let extra = config.linear_prime_budget.unwrap_or(4 * n);
    let mut reports: Vec<CycleTypeReport> = Vec::new();
    let mut sizes: BTreeSet<usize> = divisors(n).into_iter().filter(|&k| k > 1 && k < n).collect();
    let mut p = first_sample_prime(n).max(3) - 1;
    let mut tried_extra = 0;
    loop {
        p = next_prime(p);
        if p > config.max_prime {
            break;
        }
        if !is_good_prime(f, p) {
            continue;
        }
        let r = cycle_type_at(f, p)?;
        sizes = sieve_block_sizes(std::slice::from_ref(&r.cycle_type), n)
            .intersection(&sizes)
            .copied()
            .collect();
        reports.push(r);
        if sizes.is_empty() {
            return Ok(Inspection::NoSubfields { reports });
        }
        if reports.len() >= sample {
            if reports.iter().any(CycleTypeReport::has_fixed_point) {
                break;
            }
            tried_extra += 1;
            if tried_extra > extra {
                return Err(Error::NoLinearPrime(reports.len()));
            }
        }
    }
    if !reports.iter().any(CycleTypeReport::has_fixed_point) {
        return Err(Error::NoLinearPrime(reports.len()));
    }
    let disc = discriminant(f)?;
    let parity = if reports.iter().all(CycleTypeReport::is_even) {
        if is_square(&disc) {
            GroupParity::Even
        } else {
            GroupParity::Unknown
        }
    } else {
        GroupParity::NotEven
    };
    let types: Vec<Vec<usize>> = reports.iter().map(|r| r.cycle_type.clone()).collect();
    let mut d = BigUint::from(n);
    for t in &types {
        d = d.lcm(&order_divisor(t, n));
    }
    if config.pgroup_rule {
        d = d.lcm(&pgroup_divisor(&types, n));
    }
    let largest = *sizes.iter().next_back().unwrap();
    let lll_prime = reports
        .iter()
        .filter(|r| r.has_fixed_point())
        .min_by_key(|r| (r.cycle_type.iter().filter(|&&l| l < largest).count(), r.prime))
        .unwrap()
        .prime;
    let splitting_prime = reports.iter().min_by_key(|r| (r.lcm(), r.prime)).unwrap().prime;
    Ok(Inspection::Found(InspectionResult {
        reports,
        possible_block_sizes: sizes,
        lll_prime,
        splitting_prime,
        order_divisor: d,
        parity,
        discriminant: disc,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_type_examples() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(cycle_type_at(&f, 5).unwrap().cycle_type, vec![1, 1]);
        assert_eq!(cycle_type_at(&f, 3).unwrap().cycle_type, vec![2]);
        let g = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert_eq!(cycle_type_at(&g, 5).unwrap().cycle_type, vec![1, 2]);
        assert_eq!(cycle_type_at(&g, 7).unwrap().cycle_type, vec![3]);
        assert_eq!(cycle_type_at(&g, 3), Err(Error::BadPrime(3)));
    }

    #[test]
    fn order_divisor_examples() {
        assert_eq!(order_divisor(&[1, 2, 2], 5), BigUint::from(10u32));
        assert_eq!(order_divisor(&[6], 6), BigUint::from(6u32));
        assert_eq!(order_divisor(&[1, 1, 4], 6), BigUint::from(24u32));
    }

    #[test]
    fn pgroup_examples() {
        assert_eq!(pgroup_divisor(&[vec![8], vec![1, 1, 2, 2, 2]], 8), BigUint::from(16u32));
        assert_eq!(pgroup_divisor(&[vec![8]], 8), BigUint::one());
        assert_eq!(pgroup_divisor(&[vec![1, 1, 2, 2, 2], vec![1, 1, 2, 2, 2]], 8), BigUint::one());
    }

    #[test]
    fn sieve_examples() {
        assert!(sieve_block_sizes(&[vec![1, 5]], 6).is_empty());
        assert_eq!(sieve_block_sizes(&[vec![6]], 6), BTreeSet::from([2, 3]));
        assert!(sieve_block_sizes(&[vec![7]], 7).is_empty());
        assert_eq!(power_type(&[2, 3], 2), vec![1, 1, 3]);
    }

    #[test]
    fn inspection_examples() {
        let cfg = Config::default();
        let g = IntPoly::from_i64(&[-2, 0, 0, 1]);
        assert!(matches!(prime_inspection(&g, &cfg).unwrap(), Inspection::NoSubfields { .. }));
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let Inspection::Found(r) = prime_inspection(&f, &cfg).unwrap() else { panic!() };
        assert_eq!(r.possible_block_sizes, BTreeSet::from([2]));
        assert_eq!(r.parity, GroupParity::Even);
        assert_eq!(r.order_divisor, BigUint::from(4u32));
    }
}
