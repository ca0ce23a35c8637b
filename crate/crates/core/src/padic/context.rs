use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ring::{Elem, UnramifiedRing};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::poly::field::{FiniteField, Fp, Fq};
use crate::poly::fpoly::PolyRing;
use crate::poly::modp::{is_good_prime, mod_factor};
use crate::poly::IntPoly;

/// Approximations of all roots of `f` in an unramified extension of `Q_p`
/// of degree `d` = lcm of the factor degrees of `f` modulo `p`.
///
/// Roots are ordered by their residues, compared as coefficient vectors
/// (constant term first, lexicographically).
#[derive(Clone, Debug)]
pub struct SplittingContext {
    poly: IntPoly,
    ring: UnramifiedRing,
    roots: Vec<Elem>,
    frobenius: Perm,
    factor_degrees: Vec<usize>,
}

/// `20 * (1 + ceil(log_p |f|_inf) / 10)`.
pub fn default_precision(f: &IntPoly, p: u64) -> u32 {
    let h = crate::poly::bounds::precision_for(&f.norm_inf(), p);
    20 * (1 + h / 10)
}

/// First monic irreducible of degree `d` over `F_p`, enumerating the lower
/// coefficients as base-`p` digits. Degree one gives `t`.
pub fn first_irreducible(p: u64, d: usize) -> Vec<u64> {
    let ring = PolyRing::new(Fp::new(p));
    let mut v = vec![0u64; d + 1];
    v[d] = 1;
    if d == 1 {
        return v;
    }
    let mut k: u128 = 0;
    loop {
        let mut x = k;
        for c in v.iter_mut().take(d) {
            *c = (x % p as u128) as u64;
            x /= p as u128;
        }
        if v[0] != 0 && ring.is_irreducible(&v) {
            return v;
        }
        k += 1;
    }
}

impl SplittingContext {
    pub fn new(f: &IntPoly, p: u64, precision: u32) -> Result<Self> {
        if f.deg() < 1 || !is_good_prime(f, p) {
            return Err(Error::BadPrime(p));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let fac = mod_factor(f, p, p)?;
        let degrees = fac.degrees();
        let d = degrees.iter().fold(1usize, |acc, &e| acc.lcm(&e));
        let ring1 = UnramifiedRing::new(p, 1, first_irreducible(p, d));
        let field = ring1.residue_field();
        let pr = PolyRing::new(field.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let mut residues: Vec<Vec<u64>> = Vec::new();
        for g in &fac.factors {
            let lifted: Vec<Vec<u64>> = g.mod_p().iter().map(|&c| field.scalar(c)).collect();
            residues.extend(pr.roots_of_split(&lifted, &mut rng));
        }
        residues.sort();
        if residues.len() != f.deg() {
            return Err(Error::BadPrime(p));
        }
        let frobenius = frobenius_from_residues(&field, &residues);
        let roots: Vec<Elem> = residues.iter().map(|r| ring1.lift_residue(r)).collect();
        let mut degrees = degrees;
        degrees.sort_unstable();
        let ctx = SplittingContext { poly: f.clone(), ring: ring1, roots, frobenius, factor_degrees: degrees };
        Ok(ctx.raise_precision(precision))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn ring(&self) -> &UnramifiedRing {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn precision(&self) -> u32 {
        self.ring.precision()
    }

    pub fn ext_degree(&self) -> usize {
        self.ring.degree()
    }

    pub fn roots(&self) -> &[Elem] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Elem {
        &self.roots[i]
    }

    /// `Frob(r_i) = r_{frobenius(i)}`.
    pub fn frobenius(&self) -> &Perm {
        &self.frobenius
    }

    /// Sorted degrees of the irreducible factors modulo `p`.
    pub fn factor_degrees(&self) -> &[usize] {
        &self.factor_degrees
    }

    pub fn residue_field(&self) -> Fq {
        self.ring.residue_field()
    }

    /// Newton-lifted roots modulo `p^precision`; a lower or equal precision
    /// returns the reduced context.
    pub fn raise_precision(&self, precision: u32) -> SplittingContext {
        let from = self.precision();
        if precision <= from {
            return self.reduce_to(precision);
        }
        let target = self.ring.with_precision(precision);
        let df = self.poly.derivative();
        let roots = self
            .roots
            .iter()
            .map(|r0| {
                let mut r = r0.clone();
                let mut k = from;
                while k < precision {
                    k = (2 * k).min(precision);
                    let rk = target.with_precision(k);
                    let step = rk.mul(&rk.eval(&self.poly, &r), &rk.inv(&rk.eval(&df, &r)).expect("simple root"));
                    r = rk.sub(&rk.normalize(r), &step);
                }
                r
            })
            .collect();
        SplittingContext { ring: target, roots, ..self.clone() }
    }

    pub fn reduce_to(&self, precision: u32) -> SplittingContext {
        let precision = precision.max(1);
        let ring = self.ring.with_precision(precision);
        let roots = self.roots.iter().map(|r| self.ring.reduce(r, precision)).collect();
        SplittingContext { ring, roots, ..self.clone() }
    }

    /// Applies the Frobenius automorphism of the unramified ring: `t` goes
    /// to the root of `T` congruent to `t^p`.
    pub fn apply_frobenius(&self, x: &Elem) -> Elem {
        let r = &self.ring;
        let field = r.residue_field();
        let tp = field.pow(&field.generator(), &num_bigint::BigUint::from(r.prime()));
        let t_poly = IntPoly::new(r.defining_poly().to_vec());
        let dt = t_poly.derivative();
        let mut tau = r.with_precision(1).lift_residue(&tp);
        let mut k = 1;
        while k < r.precision() {
            k = (2 * k).min(r.precision());
            let rk = r.with_precision(k);
            let step = rk.mul(&rk.eval(&t_poly, &tau), &rk.inv(&rk.eval(&dt, &tau)).expect("T separable"));
            tau = rk.sub(&rk.normalize(tau), &step);
        }
        let coeffs: Vec<Elem> = x.iter().map(|c| r.from_int(c)).collect();
        r.eval_elems(&coeffs, &tau)
    }
}

fn frobenius_from_residues(field: &Fq, residues: &[Vec<u64>]) -> Perm {
    let p = num_bigint::BigUint::from(field.characteristic());
    let images = residues
        .iter()
        .map(|r| {
            let img = field.pow(r, &p);
            residues.iter().position(|s| *s == img).expect("roots closed under Frobenius")
        })
        .collect();
    Perm::from_images(images).expect("Frobenius permutes the roots")
}
