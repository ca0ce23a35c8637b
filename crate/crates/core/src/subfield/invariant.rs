use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::padic::{Elem, UnramifiedRing};
use crate::registry::{Named, Registry};

/// A symmetric function of the roots in one block, parameterized by a
/// shift `s`, used to tell the blocks apart.
pub trait BlockInvariant: Named + Send + Sync {
    fn evaluate(&self, ring: &UnramifiedRing, block_roots: &[&Elem], s: i64) -> Elem;

    /// Bound on every complex conjugate of the invariant when all roots of
    /// `f` have absolute value at most `root_bound`.
    fn conjugate_bound(&self, root_bound: &BigInt, s: i64, block_size: usize) -> BigInt;
}

/// `prod_{i in B} (X_i - s)`.
pub struct ProductInvariant;

impl Named for ProductInvariant {
    fn name(&self) -> &'static str {
        "product"
    }
}

impl BlockInvariant for ProductInvariant {
    fn evaluate(&self, ring: &UnramifiedRing, block_roots: &[&Elem], s: i64) -> Elem {
        let shift = ring.from_int(&BigInt::from(s));
        block_roots.iter().fold(ring.one(), |acc, r| ring.mul(&acc, &ring.sub(r, &shift)))
    }

    fn conjugate_bound(&self, root_bound: &BigInt, s: i64, block_size: usize) -> BigInt {
        num_traits::pow(root_bound + BigInt::from(s).abs(), block_size)
    }
}

/// `sum_{i in B} X_i^(s+1)`.
pub struct PowerSumInvariant;

impl Named for PowerSumInvariant {
    fn name(&self) -> &'static str {
        "sum"
    }
}

impl BlockInvariant for PowerSumInvariant {
    fn evaluate(&self, ring: &UnramifiedRing, block_roots: &[&Elem], s: i64) -> Elem {
        let e = s.max(0) as u64 + 1;
        block_roots.iter().fold(ring.zero(), |acc, r| ring.add(&acc, &ring.pow(r, e)))
    }

    fn conjugate_bound(&self, root_bound: &BigInt, s: i64, block_size: usize) -> BigInt {
        let e = s.max(0) as usize + 1;
        BigInt::from(block_size) * num_traits::pow(root_bound.max(&BigInt::one()).clone(), e)
    }
}

pub fn invariant_registry() -> Registry<dyn BlockInvariant> {
    let mut r: Registry<dyn BlockInvariant> = Registry::new();
    r.register(Box::new(ProductInvariant)).register(Box::new(PowerSumInvariant));
    r
}
