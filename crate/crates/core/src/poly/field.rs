//! Finite fields `F_p` and `F_{p^d}` used for factoring and root finding.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use rand::Rng;

use super::fpoly::PolyRing;

pub trait FiniteField: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Ord;

    fn characteristic(&self) -> u64;
    /// Number of elements.
    fn order(&self) -> BigUint;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, v: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn random<R: Rng>(&self, rng: &mut R) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// The unique `p`-th root (Frobenius is bijective on a finite field).
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.order();
        let e = &q / BigUint::from(self.characteristic());
        self.pow(a, &e)
    }
}

/// Prime field `Z/pZ` with `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 32), "prime out of range");
        Fp { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    pub fn pow_u64(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1u64 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl FiniteField for Fp {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn degree(&self) -> usize {
        1
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_u64(&self, v: u64) -> u64 {
        v % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(self.pow_u64(*a, self.p - 2))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// Extension field `F_p[t]/(T)` for a monic irreducible `T` of degree `d`.
/// Elements are coefficient vectors of length exactly `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    base: Fp,
    modulus: Vec<u64>,
}

impl Fq {
    /// `modulus` must be monic irreducible over `F_p`, lowest coefficient first.
    pub fn new(base: Fp, modulus: Vec<u64>) -> Self {
        assert!(modulus.len() >= 2 && *modulus.last().unwrap() == 1);
        Fq { base, modulus }
    }

    pub fn base(&self) -> Fp {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The generator `t` (for degree 1 this is the root of the linear modulus).
    pub fn generator(&self) -> Vec<u64> {
        let d = self.degree();
        if d == 1 {
            return vec![self.base.neg(&self.modulus[0])];
        }
        let mut v = vec![0; d];
        v[1] = 1;
        v
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let p = &self.base;
        for k in (d..v.len()).rev() {
            let c = v[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                v[k - d + i] = p.sub(&v[k - d + i], &p.mul(&c, &self.modulus[i]));
            }
            v[k] = 0;
        }
        v.truncate(d);
        v.resize(d, 0);
        v
    }

    /// Embeds a prime-field value.
    pub fn scalar(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.base.p();
        v
    }
}

impl FiniteField for Fq {
    type Elem = Vec<u64>;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }
    fn order(&self) -> BigUint {
        BigUint::from(self.base.p()).pow(self.degree() as u32)
    }
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.scalar(1)
    }
    fn from_u64(&self, v: u64) -> Vec<u64> {
        self.scalar(v)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let p = self.base.p() as u128;
        let mut acc = vec![0u128; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + *x as u128 * *y as u128) % p;
            }
        }
        self.reduce(acc.into_iter().map(|c| c as u64).collect())
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let ring = PolyRing::new(self.base);
        let inv = ring.inverse_mod(&ring.trim(a.clone()), &self.modulus)?;
        let mut v = inv;
        v.resize(self.degree(), 0);
        Some(v)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn random<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fq_inverse_and_order() {
        // F_9 = F_3[t]/(t^2+1)
        let f = Fq::new(Fp::new(3), vec![1, 0, 1]);
        let t = f.generator();
        assert_eq!(f.mul(&t, &t), vec![2, 0]);
        for a in 0..3 {
            for b in 0..3 {
                let e = vec![a, b];
                if f.is_zero(&e) {
                    continue;
                }
                let i = f.inv(&e).unwrap();
                assert_eq!(f.mul(&e, &i), f.one());
            }
        }
        let e = f.order() - 1u32;
        assert_eq!(f.pow(&vec![1, 1], &e), f.one());
    }
}
