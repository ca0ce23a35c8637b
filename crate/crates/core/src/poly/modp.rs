//! Polynomials over `Z/p^a`, factorization modulo `p` and Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::Fp;
use super::fpoly::PolyRing;
use super::IntPoly;
use crate::error::{Error, Result};

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    g.gcd.is_one().then(|| g.x.mod_floor(m))
}

/// Symmetric representative of `a` modulo `m` in `(-m/2, m/2]`.
pub fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Polynomial over `Z/p^a` with coefficients in canonical range `[0, p^a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    coeffs: Vec<BigInt>,
    prime: u64,
    precision: u32,
    modulus: BigInt,
}

impl ModPoly {
    pub fn new(coeffs: Vec<BigInt>, prime: u64, precision: u32) -> Self {
        let modulus = BigInt::from(prime).pow(precision);
        Self::with_modulus(coeffs, prime, precision, modulus)
    }

    fn with_modulus(coeffs: Vec<BigInt>, prime: u64, precision: u32, modulus: BigInt) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| c.mod_floor(&modulus)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ModPoly { coeffs, prime, precision, modulus }
    }

    pub fn from_int(f: &IntPoly, prime: u64, precision: u32) -> Self {
        Self::new(f.coeffs().to_vec(), prime, precision)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
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
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Integer polynomial with coefficients in the symmetric range.
    pub fn to_symmetric(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| symmetric(c, &self.modulus)).collect())
    }

    /// Integer polynomial with coefficients in `[0, p^a)`.
    pub fn to_int(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    /// Reduction to a lower precision.
    pub fn reduce_to(&self, precision: u32) -> ModPoly {
        assert!(precision <= self.precision);
        ModPoly::new(self.coeffs.clone(), self.prime, precision)
    }

    /// Residues modulo `p` as machine words.
    pub fn mod_p(&self) -> Vec<u64> {
        let p = BigInt::from(self.prime);
        let mut v: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&p).to_u64().unwrap())
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        ModPoly::with_modulus(
            mul_raw(&self.coeffs, &rhs.coeffs),
            self.prime,
            self.precision,
            self.modulus.clone(),
        )
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &ModPoly) -> ModPoly {
        let r = rem_monic_raw(&self.coeffs, &m.coeffs, &self.modulus);
        ModPoly::with_modulus(r, self.prime, self.precision, self.modulus.clone())
    }

    /// Evaluates at an integer point modulo `p^a`.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * x + c).mod_floor(&self.modulus);
        }
        acc
    }
}

pub(crate) fn mul_raw(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn reduce(v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    trim(v.into_iter().map(|c| c.mod_floor(m)).collect())
}

/// Remainder of `a` by monic `b`, reduced modulo `m`.
pub(crate) fn rem_monic_raw(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    div_rem_monic_raw(a, b, m).1
}

pub(crate) fn div_rem_monic_raw(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    let mut r: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let t = r[k + db].mod_floor(m);
        if t.is_zero() {
            continue;
        }
        for (i, c) in b.iter().enumerate() {
            r[k + i] = (&r[k + i] - &t * c).mod_floor(m);
        }
        q[k] = t;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn sub_raw(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default())
        .collect()
}

fn add_raw(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| a.get(k).cloned().unwrap_or_default() + b.get(k).cloned().unwrap_or_default())
        .collect()
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Factorization of `f` modulo `p^a`: `f ≡ unit * prod factors^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub poly: IntPoly,
    pub prime: u64,
    pub precision: u32,
    pub factors: Vec<ModPoly>,
    pub multiplicities: Vec<usize>,
    pub unit: BigInt,
    pub squarefree: bool,
}

impl ModFactorization {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(g, &k)| std::iter::repeat_n(g.degree(), k))
            .collect()
    }

    /// `unit * prod factors^mult` modulo `p^a`.
    pub fn product(&self) -> ModPoly {
        let mut acc = ModPoly::new(vec![self.unit.clone()], self.prime, self.precision);
        for (g, &k) in self.factors.iter().zip(&self.multiplicities) {
            for _ in 0..k {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Irreducible factorization of `f` modulo the prime `p` (precision 1).
/// Factors are monic, sorted by degree then coefficients.
pub fn mod_factor(f: &IntPoly, p: u64, seed: u64) -> Result<ModFactorization> {
    let fp = Fp::new(p);
    let ring = PolyRing::new(fp);
    let pb = BigInt::from(p);
    let lc = f.lc().mod_floor(&pb);
    if f.is_zero() || lc.is_zero() {
        return Err(Error::BadPrime(p));
    }
    let red: Vec<u64> = ring.trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fac = ring.factor(&red, &mut rng);
    let squarefree = fac.iter().all(|(_, k)| *k == 1);
    Ok(ModFactorization {
        poly: f.clone(),
        prime: p,
        precision: 1,
        factors: fac.iter().map(|(g, _)| ModPoly::new(to_big(g), p, 1)).collect(),
        multiplicities: fac.iter().map(|(_, k)| *k).collect(),
        unit: lc,
        squarefree,
    })
}

/// Lifts a squarefree factorization modulo `p` to modulo `p^target`.
/// Each output factor is monic and reduces to the corresponding input factor.
pub fn hensel_lift(fac: &ModFactorization, target: u32) -> Result<ModFactorization> {
    if !fac.squarefree || fac.multiplicities.iter().any(|&k| k != 1) {
        return Err(Error::NotSquarefree);
    }
    if target <= fac.precision {
        let factors = fac.factors.iter().map(|g| g.reduce_to(target)).collect();
        return Ok(ModFactorization {
            precision: target,
            factors,
            unit: fac.unit.mod_floor(&BigInt::from(fac.prime).pow(target)),
            ..fac.clone()
        });
    }
    let p = fac.prime;
    let m = BigInt::from(p).pow(target);
    let lc = fac.poly.lc();
    let lc_inv = mod_inverse(&lc, &m).ok_or(Error::BadPrime(p))?;
    let monic_target = reduce(
        fac.poly.coeffs().iter().map(|c| c * &lc_inv).collect(),
        &m,
    );
    let base: Vec<Vec<u64>> = fac.factors.iter().map(|g| g.mod_p()).collect();
    let lifted = lift_tree(&monic_target, &base, p, target)?;
    Ok(ModFactorization {
        poly: fac.poly.clone(),
        prime: p,
        precision: target,
        factors: lifted.into_iter().map(|g| ModPoly::new(g, p, target)).collect(),
        multiplicities: fac.multiplicities.clone(),
        unit: lc.mod_floor(&m),
        squarefree: true,
    })
}

fn lift_tree(target: &[BigInt], factors: &[Vec<u64>], p: u64, a: u32) -> Result<Vec<Vec<BigInt>>> {
    if factors.len() == 1 {
        return Ok(vec![target.to_vec()]);
    }
    let ring = PolyRing::new(Fp::new(p));
    let mid = factors.len() / 2;
    let g0 = factors[..mid].iter().fold(ring.one(), |acc, g| ring.mul(&acc, g));
    let h0 = factors[mid..].iter().fold(ring.one(), |acc, g| ring.mul(&acc, g));
    let (g, h) = lift_pair(target, &g0, &h0, p, a)?;
    let mut out = lift_tree(&g, &factors[..mid], p, a)?;
    out.extend(lift_tree(&h, &factors[mid..], p, a)?);
    Ok(out)
}

/// Quadratic Hensel lifting of `target ≡ g*h (mod p)` with `g`, `h` monic
/// and coprime modulo `p`.
fn lift_pair(target: &[BigInt], g0: &[u64], h0: &[u64], p: u64, a: u32) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let ring = PolyRing::new(Fp::new(p));
    let (one, s0, t0) = ring.ext_gcd(&g0.to_vec(), &h0.to_vec());
    if one.len() != 1 {
        return Err(Error::NotSquarefree);
    }
    let pb = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (to_big(g0), to_big(h0), to_big(&s0), to_big(&t0));
    let mut k = 1u32;
    while k < a {
        k = (2 * k).min(a);
        let m = pb.pow(k);
        let e = reduce(sub_raw(target, &mul_raw(&g, &h)), &m);
        let (q, r) = div_rem_monic_raw(&mul_raw(&s, &e), &h, &m);
        let g1 = reduce(add_raw(&add_raw(&g, &mul_raw(&t, &e)), &mul_raw(&q, &g)), &m);
        let h1 = reduce(add_raw(&h, &r), &m);
        let b = reduce(
            sub_raw(&add_raw(&mul_raw(&s, &g1), &mul_raw(&t, &h1)), &[BigInt::one()]),
            &m,
        );
        let (c, d) = div_rem_monic_raw(&mul_raw(&s, &b), &h1, &m);
        s = reduce(sub_raw(&s, &d), &m);
        t = reduce(sub_raw(&sub_raw(&t, &mul_raw(&t, &b)), &mul_raw(&c, &g1)), &m);
        g = g1;
        h = h1;
    }
    Ok((g, h))
}

/// True when `f` reduced modulo `p` keeps its degree and is squarefree.
pub fn is_good_prime(f: &IntPoly, p: u64) -> bool {
    let pb = BigInt::from(p);
    if f.lc().mod_floor(&pb).is_zero() {
        return false;
    }
    let ring = PolyRing::new(Fp::new(p));
    let red: Vec<u64> = ring.trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    );
    ring.is_squarefree(&red)
}

/// Integer `a` with `|a| <= bound` recovered from its residue, if unique.
pub fn reconstruct_bounded(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigInt> {
    let s = symmetric(r, m);
    (s.abs() <= *bound).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn mod_factor_examples() {
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let fac = mod_factor(&f, 2, 0).unwrap();
        assert!(!fac.squarefree);
        assert_eq!(fac.multiplicities, vec![4]);
        assert_eq!(fac.factors[0].coeffs(), &big(&[1, 1])[..]);

        let fac = mod_factor(&IntPoly::from_i64(&[1, 0, 1]), 5, 0).unwrap();
        assert!(fac.squarefree);
        assert_eq!(fac.factors[0].coeffs(), &big(&[2, 1])[..]);
        assert_eq!(fac.factors[1].coeffs(), &big(&[3, 1])[..]);

        let fac = mod_factor(&f, 7, 0).unwrap();
        assert_eq!(fac.degrees(), vec![2, 2]);

        assert_eq!(mod_factor(&IntPoly::from_i64(&[1, 0, 5]), 5, 0), Err(Error::BadPrime(5)));
    }

    #[test]
    fn hensel_examples() {
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        let fac = mod_factor(&f, 7, 0).unwrap();
        let lifted = hensel_lift(&fac, 2).unwrap();
        // x - 3 and x - 4 lift to x - 10 and x - 39 mod 49
        let roots: Vec<BigInt> = lifted
            .factors
            .iter()
            .map(|g| (BigInt::from(49) - &g.coeffs()[0]) % 49)
            .collect();
        assert!(roots.contains(&BigInt::from(10)));
        assert!(roots.contains(&BigInt::from(39)));

        let f = IntPoly::from_i64(&[-1, 0, 1]);
        let fac = mod_factor(&f, 3, 0).unwrap();
        let lifted = hensel_lift(&fac, 2).unwrap();
        assert_eq!(lifted.factors[0].to_symmetric(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(lifted.factors[1].to_symmetric(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(hensel_lift(&fac, 1).unwrap(), fac);

        let bad = mod_factor(&IntPoly::from_i64(&[1, 0, 0, 0, 1]), 2, 0).unwrap();
        assert_eq!(hensel_lift(&bad, 3), Err(Error::NotSquarefree));
    }
}
