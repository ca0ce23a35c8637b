//! Polynomials over a finite field: gcds, squarefree decomposition and
//! Cantor–Zassenhaus factorization.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::field::FiniteField;

/// Retry cap for a single equal-degree split.
pub const SPLIT_RETRIES: usize = 64;

/// Polynomial arithmetic over the field `F`. Polynomials are coefficient
/// vectors, lowest degree first, without trailing zeros.
#[derive(Clone, Debug)]
pub struct PolyRing<F: FiniteField> {
    pub field: F,
}

type P<F> = Vec<<F as FiniteField>::Elem>;

impl<F: FiniteField> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn trim(&self, mut a: P<F>) -> P<F> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn deg(&self, a: &P<F>) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn one(&self) -> P<F> {
        vec![self.field.one()]
    }

    pub fn x(&self) -> P<F> {
        vec![self.field.zero(), self.field.one()]
    }

    pub fn add(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        self.trim(
            (0..n)
                .map(|k| self.field.add(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let n = a.len().max(b.len());
        let z = self.field.zero();
        self.trim(
            (0..n)
                .map(|k| self.field.sub(a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn scale(&self, a: &P<F>, c: &F::Elem) -> P<F> {
        self.trim(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &P<F>, b: &P<F>) -> P<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![self.field.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                v[i + j] = self.field.add(&v[i + j], &self.field.mul(x, y));
            }
        }
        self.trim(v)
    }

    pub fn div_rem(&self, a: &P<F>, b: &P<F>) -> (P<F>, P<F>) {
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        if a.len() <= db {
            return (Vec::new(), a.clone());
        }
        let inv = self.field.inv(b.last().unwrap()).unwrap();
        let mut r = a.clone();
        let mut q = vec![self.field.zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let t = self.field.mul(&r[k + db], &inv);
            if self.field.is_zero(&t) {
                continue;
            }
            for (i, c) in b.iter().enumerate() {
                r[k + i] = self.field.sub(&r[k + i], &self.field.mul(&t, c));
            }
            q[k] = t;
        }
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &P<F>, b: &P<F>) -> P<F> {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &P<F>) -> P<F> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => self.scale(a, &self.field.inv(lc).unwrap()),
        }
    }

    pub fn gcd(&self, a: &P<F>, b: &P<F>) -> P<F> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = std::mem::replace(&mut y, r);
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn ext_gcd(&self, a: &P<F>, b: &P<F>) -> (P<F>, P<F>, P<F>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Vec::new());
        let (mut t0, mut t1) = (Vec::new(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(lc).unwrap();
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn inverse_mod(&self, a: &P<F>, m: &P<F>) -> Option<P<F>> {
        let (g, s, _) = self.ext_gcd(&self.rem(a, m), m);
        (g.len() == 1).then(|| self.rem(&s, m))
    }

    pub fn mulmod(&self, a: &P<F>, b: &P<F>, m: &P<F>) -> P<F> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &P<F>, e: &BigUint, m: &P<F>) -> P<F> {
        let base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn derivative(&self, a: &P<F>) -> P<F> {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| self.field.mul(c, &self.field.from_u64(k as u64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &P<F>, x: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in a.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, x), c);
        }
        acc
    }

    /// `true` iff `gcd(a, a')` is constant.
    pub fn is_squarefree(&self, a: &P<F>) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return a.len() <= 1;
        }
        self.gcd(a, &d).len() == 1
    }

    /// For `a` with `a' = 0`, the polynomial `b` with `b^p = a`.
    fn pth_root_poly(&self, a: &P<F>) -> P<F> {
        let p = self.field.characteristic() as usize;
        self.trim(a.iter().step_by(p).map(|c| self.field.pth_root(c)).collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, k)` with
    /// `a = prod g^k`, each `g` squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self, a: &P<F>) -> Vec<(P<F>, usize)> {
        let mut out = Vec::new();
        self.sqf_rec(&self.monic(a), 1, &mut out);
        out
    }

    fn sqf_rec(&self, a: &P<F>, mult: usize, out: &mut Vec<(P<F>, usize)>) {
        if a.len() <= 1 {
            return;
        }
        let p = self.field.characteristic() as usize;
        let d = self.derivative(a);
        if d.is_empty() {
            let root = self.pth_root_poly(a);
            self.sqf_rec(&root, mult * p, out);
            return;
        }
        // Yun-style loop over the part coprime to the p-th powers.
        let mut c = self.gcd(a, &d);
        let mut w = self.div_rem(a, &c).0;
        let mut i = 1;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let z = self.div_rem(&w, &y).0;
            if z.len() > 1 {
                out.push((self.monic(&z), i * mult));
            }
            i += 1;
            w = y;
            c = self.div_rem(&c, &w).0;
        }
        if c.len() > 1 {
            let root = self.pth_root_poly(&c);
            self.sqf_rec(&root, mult * p, out);
        }
    }

    /// Distinct-degree factorization of a squarefree monic polynomial.
    pub fn distinct_degree(&self, a: &P<F>) -> Vec<(P<F>, usize)> {
        let q = self.field.order();
        let mut out = Vec::new();
        let mut f = self.monic(a);
        let x = self.x();
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.clone(), f.len() - 1));
                break;
            }
            h = self.powmod(&h, &q, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    /// Splits a squarefree monic polynomial whose irreducible factors all have
    /// degree `e` into those factors.
    pub fn equal_degree<R: Rng>(&self, a: &P<F>, e: usize, rng: &mut R) -> Vec<P<F>> {
        let n = a.len() - 1;
        if n == e {
            return vec![self.monic(a)];
        }
        let q = self.field.order();
        let p = self.field.characteristic();
        for _ in 0..SPLIT_RETRIES {
            let r: P<F> = self.trim((0..n).map(|_| self.field.random(rng)).collect());
            if r.len() <= 1 {
                continue;
            }
            let w = if p == 2 {
                // trace map to F_2 of F_{q^e}
                let k = (self.field.degree() * e) as u32;
                let mut t = self.rem(&r, a);
                let mut acc = t.clone();
                for _ in 1..k {
                    t = self.mulmod(&t, &t, a);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                let exp = (q.pow(e as u32) - BigUint::one()) >> 1;
                self.sub(&self.powmod(&r, &exp, a), &self.one())
            };
            let g = self.gcd(a, &w);
            if g.len() > 1 && g.len() < a.len() {
                let rest = self.div_rem(a, &g).0;
                let mut out = self.equal_degree(&g, e, rng);
                out.extend(self.equal_degree(&rest, e, rng));
                return out;
            }
        }
        panic!("equal-degree splitting failed after {SPLIT_RETRIES} retries");
    }

    /// Complete factorization into monic irreducibles with multiplicities,
    /// sorted by degree then coefficients. The leading coefficient is dropped.
    pub fn factor<R: Rng>(&self, a: &P<F>, rng: &mut R) -> Vec<(P<F>, usize)> {
        let mut out = Vec::new();
        for (sq, k) in self.squarefree_decomposition(a) {
            for (part, e) in self.distinct_degree(&sq) {
                for g in self.equal_degree(&part, e, rng) {
                    out.push((g, k));
                }
            }
        }
        out.sort_by(|x, y| (x.0.len(), &x.0).cmp(&(y.0.len(), &y.0)));
        out
    }

    /// All roots of a polynomial that splits into distinct linear factors.
    pub fn roots_of_split<R: Rng>(&self, a: &P<F>, rng: &mut R) -> Vec<F::Elem> {
        let mut out: Vec<F::Elem> = self
            .equal_degree(&self.monic(a), 1, rng)
            .into_iter()
            .map(|g| self.field.neg(&g[0]))
            .collect();
        out.sort();
        out
    }

    /// Rabin-style irreducibility test.
    pub fn is_irreducible(&self, a: &P<F>) -> bool {
        let n = match self.deg(a) {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let f = self.monic(a);
        let q = self.field.order();
        let x = self.x();
        let mut h = self.rem(&x, &f);
        for _ in 0..n / 2 {
            h = self.powmod(&h, &q, &f);
            if self.gcd(&f, &self.sub(&h, &x)).len() > 1 {
                return false;
            }
        }
        true
    }

    /// Is this polynomial the zero polynomial?
    pub fn is_zero(&self, a: &P<F>) -> bool {
        a.is_empty()
    }
}
