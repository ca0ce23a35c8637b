use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::poly::field::{FiniteField, Fp, Fq};
use crate::poly::modp::{mul_raw, rem_monic_raw};
use crate::poly::IntPoly;

/// Element of the unramified ring: coefficients of `1, t, .., t^(d-1)` in `[0, p^a)`.
pub type Elem = Vec<BigInt>;

/// `(Z/p^a)[t] / (T)` with `T` monic of degree `d` and irreducible modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedRing {
    prime: u64,
    precision: u32,
    modulus: BigInt,
    t_poly: Vec<BigInt>,
}

impl UnramifiedRing {
    pub fn new(prime: u64, precision: u32, t_poly: Vec<u64>) -> Self {
        assert!(t_poly.last() == Some(&1), "defining polynomial must be monic");
        UnramifiedRing {
            prime,
            precision,
            modulus: BigInt::from(prime).pow(precision),
            t_poly: t_poly.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.t_poly.len() - 1
    }

    pub fn defining_poly(&self) -> &[BigInt] {
        &self.t_poly
    }

    pub fn with_precision(&self, precision: u32) -> UnramifiedRing {
        UnramifiedRing {
            prime: self.prime,
            precision,
            modulus: BigInt::from(self.prime).pow(precision),
            t_poly: self.t_poly.clone(),
        }
    }

    /// The residue field `F_p[t]/(T mod p)`.
    pub fn residue_field(&self) -> Fq {
        let tp: Vec<u64> = self.t_poly.iter().map(|c| c.to_u64().unwrap()).collect();
        Fq::new(Fp::new(self.prime), tp)
    }

    pub fn normalize(&self, mut v: Vec<BigInt>) -> Elem {
        let d = self.degree();
        if v.len() > d {
            v = rem_monic_raw(&v, &self.t_poly, &self.modulus);
        }
        let mut out: Vec<BigInt> = v.into_iter().map(|c| c.mod_floor(&self.modulus)).collect();
        out.resize(d, BigInt::zero());
        out
    }

    pub fn zero(&self) -> Elem {
        vec![BigInt::zero(); self.degree()]
    }

    pub fn one(&self) -> Elem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, c: &BigInt) -> Elem {
        let mut v = self.zero();
        v[0] = c.mod_floor(&self.modulus);
        v
    }

    /// The class of `t`.
    pub fn gen(&self) -> Elem {
        self.normalize(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y).mod_floor(&self.modulus)).collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x - y).mod_floor(&self.modulus)).collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter().map(|x| (-x).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if self.degree() == 1 {
            return vec![(&a[0] * &b[0]).mod_floor(&self.modulus)];
        }
        self.normalize(mul_raw(a, b))
    }

    pub fn scale(&self, a: &Elem, c: &BigInt) -> Elem {
        a.iter().map(|x| (x * c).mod_floor(&self.modulus)).collect()
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// Residue in the residue field.
    pub fn residue(&self, a: &Elem) -> Vec<u64> {
        let p = BigInt::from(self.prime);
        a.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()).collect()
    }

    pub fn lift_residue(&self, r: &[u64]) -> Elem {
        self.normalize(r.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn reduce(&self, a: &Elem, precision: u32) -> Elem {
        assert!(precision <= self.precision);
        let m = BigInt::from(self.prime).pow(precision);
        a.iter().map(|c| c.mod_floor(&m)).collect()
    }

    /// The value as an element of `Z/p^a`, if it has no `t` component.
    pub fn as_scalar(&self, a: &Elem) -> Option<BigInt> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    /// Inverse, when the residue is nonzero: residue-field inverse followed
    /// by Newton iteration `u <- u (2 - a u)`.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        let field = self.residue_field();
        let u0 = field.inv(&self.residue(a))?;
        let mut u = self.lift_residue(&u0);
        let two = self.from_int(&BigInt::from(2));
        let mut k = 1u32;
        while k < self.precision {
            k = (2 * k).min(self.precision);
            let r = self.with_precision(k);
            u = r.mul(&u, &r.sub(&two, &r.mul(a, &u)));
        }
        Some(u)
    }

    /// Evaluates an integer polynomial at `x`.
    pub fn eval(&self, f: &IntPoly, x: &Elem) -> Elem {
        let mut acc = self.zero();
        for c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = (&acc[0] + c).mod_floor(&self.modulus);
        }
        acc
    }

    /// Evaluates a polynomial with ring coefficients at `x`.
    pub fn eval_elems(&self, f: &[Elem], x: &Elem) -> Elem {
        let mut acc = self.zero();
        for c in f.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_lifts() {
        // Z/5^4 [t] / (t^2 + 2): t^2 + 2 is irreducible mod 5
        let r = UnramifiedRing::new(5, 4, vec![2, 0, 1]);
        let x = r.normalize(vec![BigInt::from(3), BigInt::from(7)]);
        let u = r.inv(&x).unwrap();
        assert_eq!(r.mul(&x, &u), r.one());
        assert!(r.inv(&r.from_int(&BigInt::from(10))).is_none());
        let t = r.gen();
        assert_eq!(r.mul(&t, &t), r.from_int(&BigInt::from(-2)));
    }
}
