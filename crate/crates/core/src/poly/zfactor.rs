//! Zassenhaus factorization over the integers: factor modulo a prime, lift
//! to a Mignotte-style bound and recombine subsets in increasing size.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::bounds::{factor_coefficient_bound, precision_for};
use super::field::Fp;
use super::fpoly::PolyRing;
use super::modp::{hensel_lift, is_good_prime, mod_factor, ModPoly};
use super::IntPoly;
use crate::error::{Error, Result};
use crate::primes::next_prime;

/// Default cap on the number of recombination subsets tried.
pub const DEFAULT_SUBSET_CAP: u64 = 1 << 20;

/// `f = content * prod factor^mult` with primitive irreducible factors of
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl ZFactorization {
    pub fn product(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (g, k) in &self.factors {
            acc = &acc * &g.pow(*k as u32);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Gcd over `Z[x]`, primitive with positive leading coefficient. Coprime
/// images modulo a prime not dividing either leading coefficient settle the
/// common coprime case; otherwise a primitive remainder sequence is run.
pub fn int_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return positive(if a.is_zero() { b } else { a }.primitive_part());
    }
    if coprime_mod_prime(a, b) {
        return IntPoly::one();
    }
    let (mut r0, mut r1) = if a.deg() >= b.deg() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    while !r1.is_zero() {
        let r = r0.pseudo_rem(&r1);
        r0 = r1;
        r1 = if r.is_zero() { r } else { r.primitive_part() };
    }
    positive(r0)
}

fn positive(f: IntPoly) -> IntPoly {
    if f.lc().is_negative() {
        -&f
    } else {
        f
    }
}

fn coprime_mod_prime(a: &IntPoly, b: &IntPoly) -> bool {
    let mut p = 1_000_000;
    for _ in 0..3 {
        p = next_prime(p);
        let pb = BigInt::from(p);
        if (a.lc() % &pb).is_zero() || (b.lc() % &pb).is_zero() {
            continue;
        }
        let ring = PolyRing::new(Fp::new(p));
        let red = |f: &IntPoly| -> Vec<u64> {
            ring.trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced")).collect())
        };
        if ring.deg(&ring.gcd(&red(a), &red(b))) == Some(0) {
            return true;
        }
    }
    false
}

/// Squarefree decomposition of a primitive polynomial over `Z`.
fn squarefree_parts(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out = Vec::new();
    let c0 = int_gcd(f, &f.derivative());
    let mut c = c0;
    let mut w = f.div_exact(&c).expect("gcd divides").primitive_part();
    let mut i = 1;
    while w.deg() > 0 {
        let y = int_gcd(&w, &c);
        let z = w.div_exact(&y).expect("gcd divides").primitive_part();
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.div_exact(&y).expect("gcd divides");
        w = y;
    }
    out
}

/// Irreducible factorization over the integers.
pub fn factor_over_z(f: &IntPoly) -> Result<ZFactorization> {
    factor_over_z_with_cap(f, DEFAULT_SUBSET_CAP)
}

pub fn factor_over_z_with_cap(f: &IntPoly, cap: u64) -> Result<ZFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = f.primitive_part();
    let mut factors = Vec::new();
    if prim.deg() > 0 {
        // powers of x first
        let zeros = prim.coeffs().iter().take_while(|c| c.is_zero()).count();
        let rest = IntPoly::new(prim.coeffs()[zeros..].to_vec());
        if zeros > 0 {
            factors.push((IntPoly::x(), zeros));
        }
        let mut budget = cap;
        for (part, k) in squarefree_parts(&rest) {
            for g in factor_squarefree(&part, &mut budget)? {
                factors.push((g, k));
            }
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    Ok(ZFactorization { content, factors })
}

/// Picks, among the first few good primes, one with the fewest modular factors.
fn choose_prime(f: &IntPoly) -> (u64, usize) {
    let mut best: Option<(u64, usize)> = None;
    let mut p = 2;
    let mut tried = 0;
    while tried < 6 {
        p = next_prime(p);
        if !is_good_prime(f, p) {
            continue;
        }
        tried += 1;
        let r = mod_factor(f, p, p).expect("good prime").factors.len();
        if best.is_none_or(|(_, b)| r < b) {
            best = Some((p, r));
        }
        if r == 1 {
            break;
        }
    }
    best.unwrap()
}

fn factor_squarefree(f: &IntPoly, budget: &mut u64) -> Result<Vec<IntPoly>> {
    if f.deg() <= 1 {
        return Ok(vec![f.primitive_part()]);
    }
    let (p, r) = choose_prime(f);
    if r == 1 {
        return Ok(vec![f.primitive_part()]);
    }
    let bound = factor_coefficient_bound(f) * 2 + 1;
    let a = precision_for(&bound, p);
    let fac = mod_factor(f, p, p)?;
    let lifted = hensel_lift(&fac, a)?;
    let mut remaining: Vec<ModPoly> = lifted.factors;
    let mut g = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= remaining.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            if *budget == 0 {
                return Err(Error::RecombinationBudget(DEFAULT_SUBSET_CAP));
            }
            *budget -= 1;
            let lc = g.lc();
            let mut prod = ModPoly::new(vec![lc.clone()], p, a);
            for &i in &idx {
                prod = prod.mul(&remaining[i]);
            }
            let cand = prod.to_symmetric().primitive_part();
            let const_ok = {
                let g0 = g.coeff(0);
                let c0 = cand.coeff(0);
                g0.is_zero() || (!c0.is_zero() && (&g0 % &c0).is_zero())
            };
            if const_ok {
                if let Some(q) = g.div_exact(&cand) {
                    out.push(cand);
                    g = q;
                    let mut keep = Vec::new();
                    for (i, h) in remaining.into_iter().enumerate() {
                        if !idx.contains(&i) {
                            keep.push(h);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        s += 1;
    }
    if g.deg() > 0 {
        out.push(g.primitive_part());
    }
    Ok(out)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `true` when `f` has a rational root; used as a cheap reducibility witness.
pub fn has_rational_root(f: &IntPoly) -> bool {
    if f.coeff(0).is_zero() {
        return true;
    }
    let lc = f.lc().abs();
    let c0 = f.coeff(0).abs();
    let small = |x: &BigInt| x.bits() <= 40;
    if !small(&lc) || !small(&c0) {
        return false;
    }
    let divs = |n: &BigInt| {
        let n: u64 = n.try_into().unwrap();
        crate::primes::divisors(n as usize)
    };
    for q in divs(&lc) {
        for p in divs(&c0) {
            for sgn in [1i64, -1] {
                // f(p/q) = 0  <=>  sum a_k p^k q^(n-k) = 0
                let (pb, qb) = (BigInt::from(sgn * p as i64), BigInt::from(q as i64));
                let n = f.deg();
                let v: BigInt = f
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a * num_traits::pow(pb.clone(), k) * num_traits::pow(qb.clone(), n - k))
                    .sum();
                if v.is_zero() && pb.gcd(&qb).is_one() {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        let f = IntPoly::from_i64(&[-1, 0, 1]);
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.product(), f);
        assert!(factor_over_z(&IntPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap().is_irreducible());
        assert!(factor_over_z(&IntPoly::from_i64(&[-4, 0, 0, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn multiplicities_and_content() {
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[2, 0, 1]);
        let f = (&(&a * &a) * &b).scale(&BigInt::from(-6));
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.factors, vec![(a, 2), (b, 1)]);
        assert_eq!(fac.product(), f);
    }

    #[test]
    fn swinnerton_dyer_degree_eight() {
        // minimal polynomial of sqrt2+sqrt3+sqrt5 splits modulo every prime
        let f = IntPoly::from_i64(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        let fac = factor_over_z(&f).unwrap();
        assert!(fac.is_irreducible());
    }
}
