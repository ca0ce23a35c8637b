use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPoly;

/// Upper bound `2 * max_i |a_{n-i}/a_n|^{1/i}` on the absolute values of the
/// complex roots, rounded up to two decimals. Returns 1 when all roots vanish.
pub fn fujiwara_bound(f: &IntPoly) -> BigRational {
    let n = f.deg();
    let lc = f.lc().abs();
    let hundred = BigInt::from(100);
    let mut best = BigInt::zero();
    for i in 1..=n {
        let a = f.coeff(n - i).abs();
        if a.is_zero() {
            continue;
        }
        // ceil(100 * (2^i |a| / lc)^(1/i)) = smallest c with c^i * lc >= 100^i 2^i |a|
        let rhs = num_traits::pow(&hundred * 2, i) * &a;
        let quot: BigInt = &rhs / &lc;
        let approx = quot.nth_root(i as u32);
        let mut c = if approx > BigInt::one() { approx - 1 } else { BigInt::zero() };
        while num_traits::pow(c.clone(), i) * &lc < rhs {
            c += 1;
        }
        if c > best {
            best = c;
        }
    }
    if best.is_zero() {
        return BigRational::one();
    }
    BigRational::new(best, hundred)
}

/// Mignotte-style coefficient bound for any factor of `f` scaled by `lc(f)`:
/// `|lc(f)| * 2^deg(f) * (floor(||f||_2) + 1)`.
pub fn factor_coefficient_bound(f: &IntPoly) -> BigInt {
    let norm = f.norm2_sq().sqrt() + 1;
    f.lc().abs() * (BigInt::one() << f.deg()) * norm
}

/// Smallest `a` with `p^a >= bound`.
pub fn precision_for(bound: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut a = 0u32;
    let mut pa = BigInt::one();
    while &pa < bound {
        pa *= &pb;
        a += 1;
    }
    a.max(1)
}

/// Smallest `a` with `p^a >= bound` for a rational bound.
pub fn precision_for_rational(bound: &BigRational, p: u64) -> u32 {
    precision_for(&bound.ceil().to_integer(), p)
}

/// `true` when `n` is a perfect square.
pub fn is_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let r = n.sqrt();
        &r * &r == *n
    }
}
