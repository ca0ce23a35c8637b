use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Integer row vectors of common dimension, with the removal bound used by
/// [`lll_with_removals`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<BigInt>>,
    pub removal_bound: BigInt,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>, removal_bound: BigInt) -> Result<Self> {
        if let Some(first) = rows.first() {
            let d = first.len();
            if let Some(bad) = rows.iter().find(|r| r.len() != d) {
                return Err(Error::DegreeMismatch(d, bad.len()));
            }
        }
        Ok(LatticeBasis { rows, removal_bound })
    }

    pub fn dimension(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integral LLL state: `d[i]` is the Gram determinant of the first `i`
/// rows, `lam[k][j] = d[j+1] * mu[k][j]`.
struct Integral {
    b: Vec<Vec<BigInt>>,
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl Integral {
    fn size_reduce(&mut self, k: usize, l: usize) {
        let dl = &self.d[l + 1];
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= *dl {
            return;
        }
        // nearest integer to lam / d
        let q = (&two_lam + dl).div_floor(&(dl * 2));
        let bl = self.b[l].clone();
        for (x, y) in self.b[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        let sub = &q * dl;
        self.lam[k][l] -= sub;
        for i in 0..l {
            let t = &q * &self.lam[l][i];
            self.lam[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = std::mem::replace(&mut self.lam[k - 1][j], t);
        }
        let lam = self.lam[k][k - 1].clone();
        let (dkm2, dkm1, dk) = (&self.d[k - 1], &self.d[k], &self.d[k + 1]);
        let bnew = (dkm2 * dk + &lam * &lam) / dkm1;
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (dk * &self.lam[i][k - 1] - &lam * &t) / dkm1;
            self.lam[i][k - 1] = (&bnew * &t + &lam * &self.lam[i][k]) / dk;
        }
        self.d[k] = bnew;
    }
}

/// LLL reduction with `delta = 99/100` in exact integer arithmetic, then
/// removal of trailing rows whose Gram-Schmidt length exceeds the bound.
/// Every lattice vector of length at most the bound lies in the span of
/// the rows returned.
pub fn lll_with_removals(basis: &LatticeBasis) -> Result<Vec<Vec<BigInt>>> {
    let m = basis.rows.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut st = Integral {
        b: basis.rows.clone(),
        d: vec![BigInt::zero(); m + 1],
        lam: vec![vec![BigInt::zero(); m]; m],
    };
    st.d[0] = BigInt::from(1);
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return Err(Error::Invalid("lattice rows are linearly dependent".into()));
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < m {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    if u.is_zero() {
                        return Err(Error::Invalid("lattice rows are linearly dependent".into()));
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        st.size_reduce(k, k - 1);
        let lhs = (&st.d[k + 1] * &st.d[k - 1] + &st.lam[k][k - 1] * &st.lam[k][k - 1]) * 100;
        let rhs = &st.d[k] * &st.d[k] * 99;
        if lhs < rhs {
            st.swap(k, kmax);
            k = k.max(2) - 1;
        } else {
            for l in (0..k - 1).rev() {
                st.size_reduce(k, l);
            }
            k += 1;
        }
    }
    let bound_sq = &basis.removal_bound * &basis.removal_bound;
    let mut keep = m;
    // |b*_i|^2 = d[i+1] / d[i]
    while keep > 0 && st.d[keep] > &bound_sq * &st.d[keep - 1] {
        keep -= 1;
    }
    st.b.truncate(keep);
    Ok(st.b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn norm_sq(v: &[BigInt]) -> BigInt {
        dot(v, v)
    }

    #[test]
    fn identity_is_reduced() {
        let b = LatticeBasis::new(rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), BigInt::from(1000)).unwrap();
        assert_eq!(lll_with_removals(&b).unwrap(), b.rows);
    }

    #[test]
    fn two_dimensional() {
        let b = LatticeBasis::new(rows(&[&[1, 0], &[4, 1]]), BigInt::from(1000)).unwrap();
        let r = lll_with_removals(&b).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|v| norm_sq(v) == BigInt::from(1)));
    }

    #[test]
    fn planted_short_vector_survives_alone() {
        // (1, 2, 3) * 10^6 relation: x = (3, 0, -1) style knapsack
        let big = 1_000_003i64;
        let b = LatticeBasis::new(
            rows(&[&[1, 0, 0, 17 * big], &[0, 1, 0, 29 * big], &[0, 0, 1, 46 * big]]),
            BigInt::from(10),
        )
        .unwrap();
        let r = lll_with_removals(&b).unwrap();
        assert_eq!(r.len(), 1);
        let v = &r[0];
        assert!(v[3].is_zero());
        assert!(norm_sq(v) <= BigInt::from(100));
    }

    #[test]
    fn dependent_rows_rejected() {
        let b = LatticeBasis::new(rows(&[&[1, 2], &[2, 4]]), BigInt::from(5)).unwrap();
        assert!(lll_with_removals(&b).is_err());
    }
}
