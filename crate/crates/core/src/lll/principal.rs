use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::reduce::{lll_with_removals, LatticeBasis};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::padic::{Elem, SplittingContext};
use crate::perm::{blocks_from_values, BlockSystem};
use crate::poly::bounds::precision_for;
use crate::poly::modp::{hensel_lift, mul_raw, rem_monic_raw, symmetric, ModFactorization, ModPoly};
use crate::poly::{IntPoly, QPoly};
use crate::subfield::{root_bound, subfield_from_blocks, SubfieldRecord};

/// `n^2 * ||f||_2`, rounded up.
pub fn removal_bound(f: &IntPoly) -> BigInt {
    let n = f.deg();
    BigInt::from(n * n) * (f.norm2_sq().sqrt() + 1)
}

/// `ceil(1.5 * (2n + log_p ||f||_1))`.
pub fn initial_lll_precision(f: &IntPoly, p: u64) -> u32 {
    let t = 2 * f.deg() as u32 + precision_for(&f.norm1(), p);
    (3 * t).div_ceil(2)
}

/// The field `Q` as a record: `g = x`, `h = 0`, one block.
pub fn rational_record(n: usize) -> SubfieldRecord {
    SubfieldRecord {
        g: IntPoly::x(),
        h: QPoly::zero(),
        blocks: BlockSystem::one_block(n),
        principal_proven: true,
        invariant_shift: 0,
    }
}

/// Rows `(e_k | W ((x^k mod f_j) - r1^k))` for `k < n`, then
/// `(0 | W p^a e_t)` for `t < deg f_j`, with `W = bound + 1` so that any
/// vector with a nonzero right part is longer than the removal bound.
pub fn build_principal_lattice(f: &IntPoly, r1: &BigInt, fj: &ModPoly, bound: &BigInt) -> Result<LatticeBasis> {
    let n = f.deg();
    let dj = fj.degree();
    if dj == 0 || !fj.is_monic() {
        return Err(Error::Invalid("factor must be monic of positive degree".into()));
    }
    let m = fj.modulus().clone();
    let w: BigInt = bound + 1;
    let mut rows = Vec::with_capacity(n + dj);
    let mut xk: Vec<BigInt> = vec![BigInt::one()];
    let mut r1k = BigInt::one();
    for k in 0..n {
        let mut row = vec![BigInt::zero(); n + dj];
        row[k] = BigInt::one();
        for t in 0..dj {
            let mut c = xk.get(t).cloned().unwrap_or_default();
            if t == 0 {
                c -= &r1k;
            }
            row[n + t] = &w * symmetric(&c.mod_floor(&m), &m);
        }
        rows.push(row);
        xk = rem_monic_raw(&mul_raw(&xk, &[BigInt::zero(), BigInt::one()]), fj.coeffs(), &m);
        r1k = (r1k * r1).mod_floor(&m);
    }
    for t in 0..dj {
        let mut row = vec![BigInt::zero(); n + dj];
        row[n + t] = &w * &m;
        rows.push(row);
    }
    LatticeBasis::new(rows, bound.clone())
}

enum Attempt {
    Found(SubfieldRecord),
    Rational,
    RaiseLll,
}

/// Values `(h_1(r_i), ..., h_k(r_i))` grouped into blocks, raising the
/// block precision while fewer than `k` distinct tuples appear.
fn identify_blocks(hs: &[IntPoly], ctx: &SplittingContext, config: &Config) -> Result<Option<BlockSystem>> {
    let n = ctx.poly().deg();
    let k = hs.len();
    let c = root_bound(ctx.poly()).max(BigInt::one());
    let size = hs.iter().map(IntPoly::norm1).max().unwrap_or_default() * num_traits::pow(c, n - 1);
    // a nonzero difference of two values is an algebraic integer whose norm
    // from a field of degree at most n(n-1) bounds its valuation
    let ceiling = (n * (n - 1)) as u32 * precision_for(&(size * 2), ctx.prime()) + 1;
    let mut pr_b = 1u32;
    loop {
        let local = ctx.raise_precision(pr_b);
        let ring = local.ring();
        let values: Vec<Vec<Elem>> =
            local.roots().iter().map(|r| hs.iter().map(|h| ring.eval(h, r)).collect()).collect();
        let mut counts: HashMap<&Vec<Elem>, usize> = HashMap::new();
        for v in &values {
            *counts.entry(v).or_default() += 1;
        }
        if counts.len() > k || (counts.len() == k && counts.values().any(|&c| c != n / k)) {
            return Ok(None);
        }
        if counts.len() == k {
            return Ok(blocks_from_values(&values, k).ok());
        }
        if pr_b >= ceiling || pr_b * 2 > config.precision_cap {
            return Ok(None);
        }
        pr_b *= 2;
    }
}

pub(crate) fn same_block(h: &QPoly, lifted: &ModFactorization, i1: usize, j: usize) -> bool {
    let m = lifted.factors[i1].modulus().clone();
    let r1 = (-&lifted.factors[i1].coeffs()[0]).mod_floor(&m);
    let (_, num) = h.to_int_scaled();
    let at_r1 = num.eval(&r1).mod_floor(&m);
    let rem = rem_monic_raw(num.coeffs(), lifted.factors[j].coeffs(), &m);
    let c0 = rem.first().cloned().unwrap_or_default();
    rem.iter().skip(1).all(Zero::is_zero) && c0 == at_r1
}

fn attempt(
    lifted: &ModFactorization,
    i1: usize,
    j: usize,
    ctx: &SplittingContext,
    config: &Config,
) -> Result<Attempt> {
    let f = ctx.poly();
    let n = f.deg();
    let g1 = &lifted.factors[i1];
    let r1 = (-&g1.coeffs()[0]).mod_floor(g1.modulus());
    let bound = removal_bound(f);
    let lattice = build_principal_lattice(f, &r1, &lifted.factors[j], &bound)?;
    let kept = lll_with_removals(&lattice)?;
    if kept.len() <= 1 {
        return Ok(Attempt::Rational);
    }
    let hs: Vec<IntPoly> = kept.iter().map(|row| IntPoly::new(row[..n].to_vec())).collect();
    let Some(blocks) = identify_blocks(&hs, ctx, config)? else {
        return Ok(Attempt::RaiseLll);
    };
    let rec = match subfield_from_blocks(ctx, &blocks, config) {
        Ok(r) => r,
        Err(Error::PrecisionCeiling(s)) => return Err(Error::PrecisionCeiling(s)),
        Err(_) => return Ok(Attempt::RaiseLll),
    };
    if !same_block(&rec.h, lifted, i1, j) {
        return Ok(Attempt::RaiseLll);
    }
    Ok(Attempt::Found(SubfieldRecord { principal_proven: true, ..rec }))
}

/// The principal subfield for the linear `p`-adic factor `i1` and factor
/// `j` of `fac` (a factorization modulo `p`), with blocks identified at the
/// roots of `ctx`. The LLL precision doubles until the reduced lattice
/// spans exactly a subfield whose blocks join the roots of both factors.
pub fn principal_subfield(
    fac: &ModFactorization,
    i1: usize,
    j: usize,
    ctx: &SplittingContext,
    config: &Config,
) -> Result<SubfieldRecord> {
    principal_subfield_traced(fac, i1, j, ctx, config).map(|(rec, _)| rec)
}

/// [`principal_subfield`] together with every LLL precision tried.
pub fn principal_subfield_traced(
    fac: &ModFactorization,
    i1: usize,
    j: usize,
    ctx: &SplittingContext,
    config: &Config,
) -> Result<(SubfieldRecord, Vec<u32>)> {
    let f = ctx.poly();
    if fac.factors[i1].degree() != 1 || i1 == j {
        return Err(Error::Invalid("need a linear factor and a different second factor".into()));
    }
    let mut pr_l = initial_lll_precision(f, fac.prime);
    let mut history = Vec::new();
    loop {
        if pr_l > config.precision_cap {
            return Err(Error::PrecisionCeiling(format!(
                "LLL precision p^{pr_l} above cap p^{}",
                config.precision_cap
            )));
        }
        history.push(pr_l);
        let lifted = hensel_lift(fac, pr_l)?;
        match attempt(&lifted, i1, j, ctx, config)? {
            Attempt::Found(rec) => return Ok((rec, history)),
            Attempt::Rational => return Ok((rational_record(f.deg()), history)),
            Attempt::RaiseLll => pr_l *= 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::modp::mod_factor;

    #[test]
    fn lattice_shape() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let fac = hensel_lift(&mod_factor(&f, 5, 5).unwrap(), 3).unwrap();
        let r1 = (-&fac.factors[0].coeffs()[0]).mod_floor(fac.factors[0].modulus());
        let r2 = (-&fac.factors[1].coeffs()[0]).mod_floor(fac.factors[1].modulus());
        let b = build_principal_lattice(&f, &r1, &fac.factors[1], &BigInt::from(9)).unwrap();
        assert_eq!(b.rows.len(), 3);
        assert_eq!(b.dimension(), 3);
        let m = BigInt::from(125);
        let expect = symmetric(&(&r2 - &r1).mod_floor(&m), &m) * 10;
        assert_eq!(b.rows[1][2], expect);
        assert!(b.rows[0][2].is_zero());
    }

    #[test]
    fn quartic_principal_subfields() {
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let fac = mod_factor(&f, 17, 17).unwrap();
        let ctx = SplittingContext::new(&f, 41, 2).unwrap();
        let cfg = Config::default();
        let mut discs = Vec::new();
        for j in 1..4 {
            let rec = principal_subfield(&fac, 0, j, &ctx, &cfg).unwrap();
            assert_eq!(rec.g.deg(), 2);
            assert!(rec.principal_proven);
            let d = crate::poly::resultant::discriminant(&rec.g).unwrap();
            discs.push(crate::primes::squarefree_kernel(&d));
        }
        discs.sort();
        assert_eq!(discs, vec![BigInt::from(-2), BigInt::from(-1), BigInt::from(2)]);
    }

    #[test]
    fn primitive_quintic_gives_q() {
        // x^5 - x - 1 has group S5
        let f = IntPoly::from_i64(&[-1, -1, 0, 0, 0, 1]);
        let p = (30..200).find(|&p| {
            crate::primes::is_prime(p)
                && crate::poly::modp::is_good_prime(&f, p)
                && mod_factor(&f, p, p).unwrap().degrees().contains(&1)
        });
        let p = p.unwrap();
        let fac = mod_factor(&f, p, p).unwrap();
        let i1 = fac.factors.iter().position(|g| g.degree() == 1).unwrap();
        let j = if i1 == 0 { 1 } else { 0 };
        let ctx = SplittingContext::new(&f, 31, 2).unwrap();
        let rec = principal_subfield(&fac, i1, j, &ctx, &Config::default()).unwrap();
        assert_eq!(rec.g.deg(), 1);
        assert!(rec.blocks.num_blocks() == 1);
    }
}
