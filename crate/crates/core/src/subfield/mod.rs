//! Explicit subfields from block systems: a defining polynomial `g` and an
//! embedding `alpha -> h(beta)` recovered from `p`-adic root approximations.

mod embed;
mod invariant;
mod res2;

pub use embed::{embedding_bound, embedding_newton};
pub use invariant::{invariant_registry, BlockInvariant, PowerSumInvariant, ProductInvariant};
pub use res2::{res2_polynomial, res2_principal_congruences};

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::padic::{Elem, SplittingContext, UnramifiedRing};
use crate::perm::{blocks_from_values, BlockSystem};
use crate::poly::bounds::{fujiwara_bound, precision_for};
use crate::poly::modp::symmetric;
use crate::poly::{IntPoly, QPoly};

/// A subfield `K = Q(alpha)` of `L = Q[x]/(f)` with `g(alpha) = 0` and
/// `alpha -> h(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubfieldRecord {
    pub g: IntPoly,
    pub h: QPoly,
    pub blocks: BlockSystem,
    /// Set once the block system is known to be principal.
    pub principal_proven: bool,
    pub invariant_shift: i64,
}

impl SubfieldRecord {
    pub fn degree(&self) -> usize {
        self.g.deg()
    }
}

/// Integer upper bound on the absolute values of the complex roots of `f`.
pub fn root_bound(f: &IntPoly) -> BigInt {
    fujiwara_bound(f).ceil().to_integer()
}

fn block_values(ring: &UnramifiedRing, roots: &[Elem], blocks: &BlockSystem, inv: &dyn BlockInvariant, s: i64) -> Vec<Elem> {
    blocks
        .blocks()
        .iter()
        .map(|b| {
            let rs: Vec<&Elem> = b.iter().map(|&i| &roots[i]).collect();
            inv.evaluate(ring, &rs, s)
        })
        .collect()
}

fn pairwise_distinct<T: Eq + std::hash::Hash>(v: &[T]) -> bool {
    v.iter().collect::<HashSet<_>>().len() == v.len()
}

/// Smallest `s >= 0` whose invariant values on the blocks are pairwise
/// distinct in the residue field; falls back to distinctness at the full
/// precision of `ctx` when no such `s` exists below the search limit.
pub fn choose_block_invariant(ctx: &SplittingContext, blocks: &BlockSystem, inv: &dyn BlockInvariant) -> Result<i64> {
    let n = blocks.degree();
    let limit = (4 * n * n).max(8) as i64;
    let ring = ctx.ring();
    for s in 0..=limit {
        let vals = block_values(ring, ctx.roots(), blocks, inv, s);
        let res: Vec<Vec<u64>> = vals.iter().map(|v| ring.residue(v)).collect();
        if pairwise_distinct(&res) {
            return Ok(s);
        }
    }
    for s in 0..=limit {
        if pairwise_distinct(&block_values(ring, ctx.roots(), blocks, inv, s)) {
            return Ok(s);
        }
    }
    Err(Error::DegenerateInvariant(limit))
}

/// `(C', C'')`: the bound on the conjugates of the invariant and on the
/// coefficients of `g = prod_k (X - I_k)`.
pub fn subfield_bounds(f: &IntPoly, blocks: &BlockSystem, s: i64, inv: &dyn BlockInvariant) -> (BigInt, BigInt) {
    let c1 = inv.conjugate_bound(&root_bound(f), s, blocks.block_size());
    let c2 = num_traits::pow(&c1 + 1, blocks.num_blocks());
    (c1, c2)
}

pub(crate) fn check_precision(needed: u32, config: &Config) -> Result<()> {
    if needed > config.precision_cap {
        return Err(Error::PrecisionCeiling(format!("need p^{needed}, cap is p^{}", config.precision_cap)));
    }
    Ok(())
}

/// Reconstructs `g = prod_k (X - I_k)` from the invariant values on the
/// blocks, raising the precision of `ctx` as the coefficient bound demands.
pub fn subfield_poly_from_blocks(
    ctx: &SplittingContext,
    blocks: &BlockSystem,
    s: i64,
    inv: &dyn BlockInvariant,
    config: &Config,
) -> Result<IntPoly> {
    if !blocks.is_uniform() || blocks.degree() != ctx.poly().deg() {
        return Err(Error::Invalid("block system does not match the polynomial".into()));
    }
    let (_, c2) = subfield_bounds(ctx.poly(), blocks, s, inv);
    let a = precision_for(&(&c2 * 2 + 1), ctx.prime());
    check_precision(a, config)?;
    let ctx = ctx.raise_precision(a.max(ctx.precision()));
    let ring = ctx.ring();
    let vals = block_values(ring, ctx.roots(), blocks, inv, s);
    if !pairwise_distinct(&vals) {
        return Err(Error::DegenerateInvariant(s));
    }
    let mut g: Vec<Elem> = vec![ring.one()];
    for v in &vals {
        let mut next = vec![ring.zero(); g.len() + 1];
        for (k, c) in g.iter().enumerate() {
            next[k + 1] = ring.add(&next[k + 1], c);
            next[k] = ring.sub(&next[k], &ring.mul(c, v));
        }
        g = next;
    }
    let m = ring.modulus().clone();
    let mut coeffs = Vec::with_capacity(g.len());
    for c in &g {
        let z = ring
            .as_scalar(c)
            .ok_or_else(|| Error::Reconstruction("coefficient not fixed by Frobenius".into()))?;
        let z = symmetric(&z, &m);
        if z.abs() > c2 {
            return Err(Error::Reconstruction("coefficient exceeds bound".into()));
        }
        coeffs.push(z);
    }
    Ok(IntPoly::new(coeffs))
}

/// `h(r)` for a rational polynomial whose denominators are prime to `p`.
pub(crate) fn eval_rational(ring: &UnramifiedRing, h: &QPoly, r: &Elem) -> Option<Elem> {
    let (d, num) = h.to_int_scaled();
    let dinv = ring.inv(&ring.from_int(&d))?;
    Some(ring.mul(&ring.eval(&num, r), &dinv))
}

/// Exact checks of a candidate `(g, h)` for `blocks`: `g(h) = 0 mod f`,
/// degrees, coefficient bounds, and that `h` at the roots separates exactly
/// the given blocks. `None` means the candidate is rejected.
pub fn verify_and_confirm(
    f: &IntPoly,
    g: &IntPoly,
    h: &QPoly,
    blocks: &BlockSystem,
    ctx: &SplittingContext,
    s: i64,
    inv: &dyn BlockInvariant,
) -> Option<SubfieldRecord> {
    let n = f.deg();
    if blocks.degree() != n || !blocks.is_uniform() || g.deg() * blocks.block_size() != n {
        return None;
    }
    let fq = QPoly::from_int(f);
    if !QPoly::from_int(g).compose_mod(h, &fq).is_zero() {
        return None;
    }
    let (c1, c2) = subfield_bounds(f, blocks, s, inv);
    if g.coeffs().iter().any(|c| c.abs() > c2) {
        return None;
    }
    let big_h = h.mul(&QPoly::from_int(&f.derivative())).rem(&fq);
    let e = embedding_bound(f, &c1);
    if !big_h.is_integral() || big_h.coeffs().iter().any(|c| c.abs() > BigRational::from_integer(e.clone())) {
        return None;
    }
    let ring = ctx.ring();
    let vals: Option<Vec<Elem>> = ctx.roots().iter().map(|r| eval_rational(ring, h, r)).collect();
    let found = blocks_from_values(&vals?, g.deg()).ok()?;
    (found == *blocks).then(|| SubfieldRecord {
        g: g.clone(),
        h: h.clone(),
        blocks: blocks.clone(),
        principal_proven: false,
        invariant_shift: s,
    })
}

/// The whole chain for one block system, with the invariant named in `config`.
pub fn subfield_from_blocks(ctx: &SplittingContext, blocks: &BlockSystem, config: &Config) -> Result<SubfieldRecord> {
    let reg = invariant_registry();
    let inv = reg.get(&config.invariant)?;
    let s = choose_block_invariant(ctx, blocks, inv)?;
    let g = subfield_poly_from_blocks(ctx, blocks, s, inv, config)?;
    let h = embedding_newton(ctx, &g, blocks, s, inv, config)?;
    verify_and_confirm(ctx.poly(), &g, &h, blocks, ctx, s, inv)
        .ok_or_else(|| Error::Reconstruction("candidate failed verification".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn x4p1() -> (IntPoly, SplittingContext) {
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let ctx = SplittingContext::new(&f, 17, 4).unwrap();
        (f, ctx)
    }

    #[test]
    fn invariant_choice() {
        let (_, ctx) = x4p1();
        let res: Vec<Vec<u64>> = ctx.roots().iter().map(|r| ctx.ring().residue(r)).collect();
        assert_eq!(res, vec![vec![2], vec![8], vec![9], vec![15]]);
        let b = BlockSystem::from_blocks_one_based(4, &[&[1, 4], &[2, 3]]).unwrap();
        assert_eq!(choose_block_invariant(&ctx, &b, &ProductInvariant).unwrap(), 0);
        // {2,8},{9,15}: 16 and 135 = 16 mod 17 collide at s = 0
        let c = BlockSystem::from_blocks_one_based(4, &[&[1, 2], &[3, 4]]).unwrap();
        let vals = block_values(ctx.ring(), ctx.roots(), &c, &ProductInvariant, 0);
        assert_eq!(ctx.ring().residue(&vals[0]), ctx.ring().residue(&vals[1]));
        assert_eq!(choose_block_invariant(&ctx, &c, &ProductInvariant).unwrap(), 1);
    }

    #[test]
    fn quartic_subfield() {
        let (f, ctx) = x4p1();
        let cfg = Config::default();
        let b = BlockSystem::from_blocks_one_based(4, &[&[1, 4], &[2, 3]]).unwrap();
        let g = subfield_poly_from_blocks(&ctx, &b, 0, &ProductInvariant, &cfg).unwrap();
        assert_eq!(g, IntPoly::from_i64(&[1, 0, 1]));
        let h = embedding_newton(&ctx, &g, &b, 0, &ProductInvariant, &cfg).unwrap();
        let minus_x2 = QPoly::from_int(&IntPoly::from_i64(&[0, 0, -1]));
        assert_eq!(h, minus_x2);
        let rec = verify_and_confirm(&f, &g, &h, &b, &ctx, 0, &ProductInvariant).unwrap();
        assert_eq!(rec.degree(), 2);
        let bad_g = IntPoly::from_i64(&[2, 0, 1]);
        assert!(verify_and_confirm(&f, &bad_g, &h, &b, &ctx, 0, &ProductInvariant).is_none());
        let tampered = BlockSystem::from_blocks_one_based(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert!(verify_and_confirm(&f, &g, &h, &tampered, &ctx, 0, &ProductInvariant).is_none());
    }

    #[test]
    fn trivial_systems() {
        let (f, ctx) = x4p1();
        let cfg = Config::default();
        let one = BlockSystem::one_block(4);
        let g = subfield_poly_from_blocks(&ctx, &one, 0, &ProductInvariant, &cfg).unwrap();
        assert_eq!(g.deg(), 1);
        assert_eq!(g, IntPoly::from_i64(&[-1, 1]));
        let rec = subfield_from_blocks(&ctx, &BlockSystem::singletons(4), &cfg).unwrap();
        assert_eq!(rec.g.deg(), 4);
        assert!(QPoly::from_int(&rec.g).compose_mod(&rec.h, &QPoly::from_int(&f)).is_zero());
        let id = subfield_from_blocks(&ctx, &BlockSystem::singletons(4), &Config { invariant: "sum".into(), ..cfg });
        let id = id.unwrap();
        assert_eq!(id.g, f);
        assert_eq!(id.h, QPoly::x());
        assert!(!id.h.coeff(1).is_zero() && id.h.coeff(1).is_one());
    }

    #[test]
    fn all_quartic_quadratic_subfields() {
        let (f, ctx) = x4p1();
        let cfg = Config::default();
        let systems = [
            [[1usize, 2], [3, 4]],
            [[1, 3], [2, 4]],
            [[1, 4], [2, 3]],
        ];
        let mut discs = Vec::new();
        for s in systems {
            let b = BlockSystem::from_blocks_one_based(4, &[&s[0], &s[1]]).unwrap();
            let rec = subfield_from_blocks(&ctx, &b, &cfg).unwrap();
            assert!(QPoly::from_int(&rec.g).compose_mod(&rec.h, &QPoly::from_int(&f)).is_zero());
            let d = crate::poly::resultant::discriminant(&rec.g).unwrap();
            discs.push(crate::primes::squarefree_kernel(&d));
        }
        discs.sort();
        assert_eq!(discs, vec![BigInt::from(-2), BigInt::from(-1), BigInt::from(2)]);
    }
}
