use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Resultant of two integer polynomials by the subresultant PRS.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut s = BigInt::one();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
    }
    if b.deg() == 0 {
        return Ok(s * num_traits::pow(b.lc(), a.deg()));
    }
    let ca = a.content();
    let cb = b.content();
    let t = num_traits::pow(ca.clone(), b.deg()) * num_traits::pow(cb.clone(), a.deg());
    a = IntPoly::new(a.coeffs().iter().map(|c| c / &ca).collect());
    b = IntPoly::new(b.coeffs().iter().map(|c| c / &cb).collect());
    let mut gg = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = a.deg() - b.deg();
        if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let div = &gg * num_traits::pow(h.clone(), delta);
        b = IntPoly::new(r.coeffs().iter().map(|c| exact_div(c, &div)).collect());
        gg = a.lc();
        // h <- g^delta / h^(delta-1)
        h = if delta == 0 {
            h.clone()
        } else {
            exact_div(&num_traits::pow(gg.clone(), delta), &num_traits::pow(h.clone(), delta - 1))
        };
        if b.deg() == 0 {
            let da = a.deg();
            let hh = if da == 0 {
                h
            } else {
                exact_div(&num_traits::pow(b.lc(), da), &num_traits::pow(h, da - 1))
            };
            return Ok(s * t * hh);
        }
    }
}

fn exact_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact division in subresultant PRS");
    q
}

/// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.deg();
    if n == 0 {
        return Ok(BigInt::zero());
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let d = exact_div(&r, &f.lc());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// `g` with `g^2 = f` and positive leading coefficient, if one exists.
pub fn poly_exact_sqrt(f: &IntPoly) -> Option<IntPoly> {
    if f.is_zero() {
        return Some(IntPoly::zero());
    }
    let n = f.deg();
    if n % 2 == 1 || f.lc().is_negative() {
        return None;
    }
    let m = n / 2;
    let top = super::int::exact_isqrt(&f.lc())?;
    let mut g = vec![BigInt::zero(); m + 1];
    g[m] = top.clone();
    let two_top = &top * 2;
    // coefficient of x^(2m-k) in g^2 determines g[m-k]
    for k in 1..=m {
        let mut acc = f.coeff(n - k);
        for i in 1..k {
            acc -= &g[m - i] * &g[m - k + i];
        }
        let (q, r) = acc.div_rem(&two_top);
        if !r.is_zero() {
            return None;
        }
        g[m - k] = q;
    }
    let g = IntPoly::new(g);
    (&g * &g == *f).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_examples() {
        let a = IntPoly::from_i64(&[-2, 0, 1]);
        let b = IntPoly::from_i64(&[-3, 0, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), BigInt::from(1));
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap(), BigInt::from(-108));
        assert_eq!(discriminant(&IntPoly::from_i64(&[1, 0, 0, 0, 1])).unwrap(), BigInt::from(256));
        assert_eq!(resultant(&IntPoly::zero(), &a), Err(Error::ZeroPolynomial));
        // common root gives zero
        let c = IntPoly::from_i64(&[-1, 1]);
        let d = IntPoly::from_i64(&[-1, 0, 1]);
        assert_eq!(resultant(&c, &d).unwrap(), BigInt::zero());
    }

    #[test]
    fn sqrt_examples() {
        let f = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(poly_exact_sqrt(&f), Some(IntPoly::from_i64(&[1, 1])));
        assert_eq!(poly_exact_sqrt(&IntPoly::from_i64(&[1, 0, 1])), None);
        let g = IntPoly::from_i64(&[5, -3, 1]);
        assert_eq!(poly_exact_sqrt(&(&g * &g)), Some(g));
    }
}
