use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use subfields::config::Config;
use subfields::fieldsearch::{count_short_cosets, field_search, record_is_valid};
use subfields::perm::{blocks_from_values, BlockSystem, Perm};
use subfields::poly::parse::parse_poly;
use subfields::poly::resultant::resultant;
use subfields::poly::zfactor::factor_over_z;
use subfields::poly::IntPoly;
use subfields::subfield::subfield_from_blocks;
use subfields::wreath::wreath_intersection;

fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut a = vec![vec![BigRational::zero(); size]; size];
    for i in 0..n {
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            a[i][i + k] = BigRational::from_integer(c.clone());
        }
    }
    for i in 0..m {
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            a[n + i][i + k] = BigRational::from_integer(c.clone());
        }
    }
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for r in col + 1..size {
            let factor = &a[r][col] / &a[col][col];
            for c in col..size {
                let t = &factor * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det.to_integer()
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (1..=max_deg).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![-3i64..=-1, 1i64..=3])
            .prop_map(|(mut c, lc)| {
                c.push(lc);
                IntPoly::from_i64(&c)
            })
    })
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

/// A random uniform partition of `0..n` into blocks of size `k`.
fn system_from(order: &[usize], k: usize) -> BlockSystem {
    let mut labels = vec![0; order.len()];
    for (pos, &pt) in order.iter().enumerate() {
        labels[pt] = pos / k;
    }
    BlockSystem::from_labels(&labels).unwrap()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_matches_sylvester(f in poly_strategy(5), g in poly_strategy(5)) {
        prop_assert_eq!(resultant(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn parse_display_round_trip(f in poly_strategy(8)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn short_cosets_are_conjugation_invariant(
        (sigma, tau, k) in (2usize..=8).prop_flat_map(|n| {
            let ks: Vec<usize> = (1..=n).filter(|k| n % k == 0).collect();
            (perm_strategy(n), perm_strategy(n), prop::sample::select(ks))
        })
    ) {
        let conj = tau.inverse().mul(&sigma).mul(&tau);
        prop_assert_eq!(count_short_cosets(&sigma, k), count_short_cosets(&conj, k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wreath_intersection_is_the_preserver_set(
        (n, orders, sizes) in prop::sample::select(vec![4usize, 6]).prop_flat_map(|n| {
            let ks: Vec<usize> = (2..n).filter(|k| n % k == 0).collect();
            (
                Just(n),
                prop::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 1..=3),
                prop::collection::vec(prop::sample::select(ks), 3),
            )
        })
    ) {
        let systems: Vec<BlockSystem> =
            orders.iter().zip(&sizes).map(|(o, &k)| system_from(o, k)).collect();
        let g = wreath_intersection(&systems, &Config::default()).unwrap();
        let brute: Vec<Perm> = all_perms(n)
            .into_iter()
            .map(|v| Perm::from_images(v).unwrap())
            .filter(|p| systems.iter().all(|s| s.is_preserved_by(p)))
            .collect();
        prop_assert_eq!(g.order(), num_bigint::BigUint::from(brute.len()));
        prop_assert!(brute.iter().all(|p| g.contains(p)));
    }
}

/// `g(h(x))` for monic `g`, `h`, kept only when irreducible.
fn composition(g: &[i64], h: &[i64]) -> Option<IntPoly> {
    let f = IntPoly::from_i64(g).compose(&IntPoly::from_i64(h));
    factor_over_z(&f).ok()?.is_irreducible().then_some(f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn blocks_and_records_round_trip(
        g in prop::collection::vec(-5i64..=5, 2..=3),
        h in prop::collection::vec(-3i64..=3, 2..=3),
    ) {
        let mut g = g;
        g.push(1);
        let mut h = h;
        h.push(1);
        let f = composition(&g, &h);
        prop_assume!(f.is_some());
        let f = f.unwrap();
        let cfg = Config::default();
        let out = field_search(&f, &cfg).unwrap();
        let ctx = out.ctx.as_ref().expect("composite degree has block sizes");
        let records = out.all_subfields(&cfg).unwrap();
        prop_assert!(records.iter().any(|r| r.g.deg() == g.len() - 1));
        let mut seen = HashSet::new();
        for r in &records {
            prop_assert!(record_is_valid(&f, r));
            prop_assert_eq!(r.g.deg(), r.blocks.num_blocks());
            prop_assert!(seen.insert(r.blocks.clone()));
            let again = subfield_from_blocks(ctx, &r.blocks, &cfg).unwrap();
            prop_assert_eq!(&again.blocks, &r.blocks);
            // the values of h at the roots separate exactly the blocks
            let local = ctx.raise_precision(ctx.precision() * 2);
            let ring = local.ring();
            let (_, num) = again.h.to_int_scaled();
            let vals: Vec<_> = local.roots().iter().map(|x| ring.eval(&num, x)).collect();
            prop_assert_eq!(blocks_from_values(&vals, r.blocks.num_blocks()).unwrap(), r.blocks.clone());
        }
    }
}
