use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::invariant::BlockInvariant;
use super::{block_values, check_precision, root_bound, subfield_bounds};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::padic::SplittingContext;
use crate::perm::BlockSystem;
use crate::poly::field::{FiniteField, Fp, Fq};
use crate::poly::fpoly::PolyRing;
use crate::poly::modp::{mul_raw, rem_monic_raw, symmetric};
use crate::poly::{IntPoly, QPoly};

/// Bound on the coefficients of `h * f'` reduced modulo `f`, when `h` maps
/// into values of absolute value at most `c1` at every root.
///
/// From `h f' = sum_i h(beta_i) prod_{j != i} (x - beta_j)` and
/// `|beta_j| <= C`: each coefficient is at most `n * c1 * (C + 1)^(n-1)`.
pub fn embedding_bound(f: &IntPoly, c1: &BigInt) -> BigInt {
    let n = f.deg();
    BigInt::from(n) * c1 * num_traits::pow(root_bound(f) + 1, n.saturating_sub(1))
}

/// Lagrange interpolation in `F_q`; the result must lie in `F_p[x]`.
fn interpolate(field: &Fq, xs: &[Vec<u64>], ys: &[Vec<u64>]) -> Option<Vec<u64>> {
    let ring = PolyRing::new(field.clone());
    let mut prod = ring.one();
    for x in xs {
        prod = ring.mul(&prod, &vec![field.neg(x), field.one()]);
    }
    let mut acc: Vec<Vec<u64>> = Vec::new();
    for (x, y) in xs.iter().zip(ys) {
        let (q, _) = ring.div_rem(&prod, &vec![field.neg(x), field.one()]);
        let c = field.mul(y, &field.inv(&ring.eval(&q, x))?);
        acc = ring.add(&acc, &ring.scale(&q, &c));
    }
    acc.iter()
        .map(|c| (*c == field.scalar(c[0])).then_some(c[0]))
        .collect()
}

struct QuotientRing<'a> {
    f: &'a [BigInt],
    m: BigInt,
}

impl QuotientRing<'_> {
    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        rem_monic_raw(&mul_raw(a, b), self.f, &self.m)
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let v: Vec<BigInt> = (0..n)
            .map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default())
            .collect();
        rem_monic_raw(&v, self.f, &self.m)
    }

    fn eval(&self, g: &IntPoly, x: &[BigInt]) -> Vec<BigInt> {
        let mut acc: Vec<BigInt> = Vec::new();
        for c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            if acc.is_empty() {
                acc.push(BigInt::zero());
            }
            acc[0] += c;
            acc = rem_monic_raw(&acc, self.f, &self.m);
        }
        acc
    }
}

/// Finds `h` with `h(r_i) = I_k` for `i` in block `B_k`: residue-field
/// interpolation, then Newton iteration for the root `h(x)` of `g` in
/// `Z_p[x]/(f)`, guessing `h` from the small representative of `h * f'`.
pub fn embedding_newton(
    ctx: &SplittingContext,
    g: &IntPoly,
    blocks: &BlockSystem,
    s: i64,
    inv: &dyn BlockInvariant,
    config: &Config,
) -> Result<QPoly> {
    let f = ctx.poly();
    let p = ctx.prime();
    let (c1, _) = subfield_bounds(f, blocks, s, inv);
    let stop = embedding_bound(f, &c1) * 2_000_000;

    let low = ctx.reduce_to(1);
    let ring1 = low.ring();
    let field = ring1.residue_field();
    let vals = block_values(ring1, low.roots(), blocks, inv, s);
    let xs: Vec<Vec<u64>> = low.roots().iter().map(|r| ring1.residue(r)).collect();
    let ys: Vec<Vec<u64>> = (0..f.deg()).map(|i| ring1.residue(&vals[blocks.block_of(i)])).collect();
    let h0 = interpolate(&field, &xs, &ys)
        .ok_or_else(|| Error::Reconstruction("interpolant not defined over F_p".into()))?;

    let fp = Fp::new(p);
    let pr = PolyRing::new(fp);
    let reduce = |q: &IntPoly| -> Vec<u64> {
        pr.trim(q.coeffs().iter().map(|c| c.mod_floor(&BigInt::from(p)).try_into().unwrap()).collect())
    };
    let fbar = reduce(f);
    let dg = g.derivative();
    let mut dgh0: Vec<u64> = Vec::new();
    for &c in reduce(&dg).iter().rev() {
        dgh0 = pr.add(&pr.mulmod(&dgh0, &h0, &fbar), &vec![c]);
    }
    let v0 = pr
        .inverse_mod(&dgh0, &fbar)
        .ok_or_else(|| Error::Reconstruction("invariant values collide modulo p".into()))?;

    let to_big = |v: &[u64]| -> Vec<BigInt> { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut h = to_big(&h0);
    let mut v = to_big(&v0);
    let fq = QPoly::from_int(f);
    let dfq = QPoly::from_int(&f.derivative());
    let dinv = QPoly::inverse_mod(&dfq, &fq).ok_or(Error::NotSquarefree)?;
    let gq = QPoly::from_int(g);
    let df = f.derivative();
    let one = vec![BigInt::one()];
    let mut a = 1u32;
    loop {
        a *= 2;
        check_precision(a, config)?;
        let q = QuotientRing { f: f.coeffs(), m: BigInt::from(p).pow(a) };
        let gh = q.eval(g, &h);
        h = q.sub(&h, &q.mul(&gh, &v));
        let dgh = q.eval(&dg, &h);
        v = q.sub(&v, &q.mul(&q.sub(&q.mul(&dgh, &v), &one), &v));

        let big_h: Vec<BigInt> = q.mul(&h, df.coeffs()).iter().map(|c| symmetric(c, &q.m)).collect();
        let max = big_h.iter().map(|c| c.abs()).max().unwrap_or_default();
        if max * 1_000_000 < q.m {
            let guess = QPoly::from_int(&IntPoly::new(big_h)).mul(&dinv).rem(&fq);
            if gq.compose_mod(&guess, &fq).is_zero() {
                return Ok(guess);
            }
        }
        if q.m > stop {
            return Err(Error::Reconstruction("no embedding within the coefficient bound".into()));
        }
    }
}
