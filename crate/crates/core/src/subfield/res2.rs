use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::padic::SplittingContext;
use crate::perm::blocks::UnionFind;
use crate::perm::BlockSystem;
use crate::poly::resultant::{poly_exact_sqrt, resultant};
use crate::poly::zfactor::{factor_over_z_with_cap, int_gcd};
use crate::poly::IntPoly;

/// Newton interpolation through `(x_k, y_k)`, which must give an integer polynomial.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    let mut acc: Vec<BigRational> = vec![BigRational::zero()];
    for i in (0..n).rev() {
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        acc = next;
    }
    if acc.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(IntPoly::new(acc.into_iter().map(|c| c.to_integer()).collect()))
}

/// `prod_{i<j} (X - (beta_i + s)(beta_j + s))` for monic `f`.
///
/// `Res_y(f_s(y), y^n f_s(X/y))` equals `prod_i (X - gamma_i^2)` times the
/// square of the wanted polynomial; it is interpolated from integer
/// evaluations, divided exactly and square-rooted.
pub fn res2_polynomial(f: &IntPoly, s: i64) -> Result<IntPoly> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.deg();
    let fs = f.shift(&BigInt::from(-s));
    let c = fs.coeffs();
    let pts = n * n + 1;
    let mut xs = Vec::with_capacity(pts);
    let mut ys = Vec::with_capacity(pts);
    for t in 0..pts {
        let x0 = BigInt::from(t);
        let hom: Vec<BigInt> = (0..=n).map(|k| &c[n - k] * num_traits::pow(x0.clone(), n - k)).collect();
        ys.push(resultant(&fs, &IntPoly::new(hom))?);
        xs.push(x0);
    }
    let full = interpolate_integer(&xs, &ys).ok_or_else(|| Error::Reconstruction("resultant interpolation".into()))?;
    let mirrored = &fs * &fs.negate_var();
    let sign = if n % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let squares = IntPoly::new(mirrored.coeffs().iter().step_by(2).map(|c| c * &sign).collect());
    let sq = full
        .div_exact(&squares)
        .ok_or_else(|| Error::Reconstruction("Res_2 division".into()))?;
    let r = poly_exact_sqrt(&sq).ok_or_else(|| Error::Reconstruction("Res_2 square root".into()))?;
    Ok(if r.lc().is_negative() { -&r } else { r })
}

fn is_squarefree(f: &IntPoly) -> bool {
    int_gcd(f, &f.derivative()).deg() == 0
}

/// All principal block systems, read off the irreducible factors of the
/// squarefree `Res_2`: each factor's root pairs, identified at the roots
/// of `ctx`, generate one equivalence relation. Sorted and deduplicated;
/// the one-block system is included when it occurs.
pub fn res2_principal_congruences(ctx: &SplittingContext, config: &Config) -> Result<Vec<BlockSystem>> {
    let f = ctx.poly();
    let n = f.deg();
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut chosen = None;
    for s in 0..=(n * n) as i64 {
        let r = res2_polynomial(f, s)?;
        if is_squarefree(&r) {
            chosen = Some((s, r));
            break;
        }
    }
    let (s, r) = chosen.ok_or_else(|| Error::Budget("no squarefree Res_2 shift".into()))?;
    let factors: Vec<IntPoly> = factor_over_z_with_cap(&r, config.recombination_cap)?
        .factors
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    let mut ctx = ctx.clone();
    let owner = loop {
        let ring = ctx.ring();
        let shift = ring.from_int(&BigInt::from(s));
        let shifted: Vec<_> = ctx.roots().iter().map(|x| ring.add(x, &shift)).collect();
        let mut owner = Vec::new();
        let mut ambiguous = false;
        for i in 0..n {
            for j in i + 1..n {
                let v = ring.mul(&shifted[i], &shifted[j]);
                let hits: Vec<usize> =
                    (0..factors.len()).filter(|&k| ring.is_zero(&ring.eval(&factors[k], &v))).collect();
                if hits.len() != 1 {
                    ambiguous = true;
                }
                owner.push((i, j, hits.first().copied()));
            }
        }
        if !ambiguous {
            break owner;
        }
        let a = ctx.precision() * 2;
        super::check_precision(a, config)?;
        ctx = ctx.raise_precision(a);
    };
    let mut out: Vec<BlockSystem> = Vec::new();
    for k in 0..factors.len() {
        let mut uf = UnionFind::new(n);
        for &(i, j, o) in &owner {
            if o == Some(k) {
                uf.union(i, j);
            }
        }
        let b = BlockSystem::from_labels(&uf.labels())?;
        if !out.contains(&b) {
            out.push(b);
        }
    }
    out.sort_by(|a, b| (a.num_blocks(), a.labels()).cmp(&(b.num_blocks(), b.labels())));
    Ok(out)
}
