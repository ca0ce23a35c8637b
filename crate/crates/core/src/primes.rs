//! Small-prime utilities.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Prime factorization of a small integer as `(prime, exponent)` pairs.
pub fn factor_small(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Squarefree integer in the square class of `n` (`n` nonzero), by trial
/// division; meant for moderate inputs.
pub fn squarefree_kernel(n: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let mut rest = n.abs();
    let mut out = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut d = BigInt::from(2u32);
    while &d * &d <= rest {
        let mut odd = false;
        while (&rest % &d).is_zero() {
            rest /= &d;
            odd = !odd;
        }
        if odd {
            out *= &d;
        }
        d += 1u32;
    }
    out * rest
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(next_prime(7), 11);
        assert_eq!(factor_small(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert!(!is_prime(1) && is_prime(2) && is_prime(65521));
        let k = |v: i64| squarefree_kernel(&num_bigint::BigInt::from(v));
        assert_eq!(k(-256), num_bigint::BigInt::from(-1));
        assert_eq!(k(72), num_bigint::BigInt::from(2));
        assert_eq!(k(-243), num_bigint::BigInt::from(-3));
    }
}
