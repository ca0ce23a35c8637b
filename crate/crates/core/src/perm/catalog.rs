//! Small transitive groups built from generators, for tests and simulation.
//!
//! Names accepted by [`by_name`]: `cN`, `dN`, `sN`, `aN`, `sKwrsL`,
//! `c2^K-regular`, `cP:cQ-regular`, `cP:cQ`, `a4-regular`, `q8-regular`,
//! `d4-regular`, `a5-regular`, `a5xc2`, `f20`.

use std::collections::{BTreeMap, HashMap};

use super::{Perm, PermGroup};
use crate::error::{Error, Result};

const ELEMENT_LIMIT: u64 = 2_000_000;

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n);
    }
    let strong = (0..n - 1).map(|k| Perm::transposition(n, k, k + 1)).collect();
    PermGroup::from_strong_generators(n, vec![Perm::transposition(n, 0, 1), Perm::cycle(n)], strong)
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n);
    }
    let strong: Vec<Perm> = (0..n - 2).map(|k| Perm::from_cycles(n, &[&[k + 1, k + 2, k + 3]]).unwrap()).collect();
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    let gens = if n == 3 { vec![strong[0].clone()] } else { vec![strong[0].clone(), Perm::from_cycles(n, &[&long]).unwrap()] };
    PermGroup::from_strong_generators(n, gens, strong)
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::new(n, vec![Perm::cycle(n)]).unwrap()
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
    PermGroup::new(n, vec![Perm::cycle(n), refl]).unwrap()
}

/// `Sym_k wr Sym_l` on `k*l` points; point `b*k + i` is position `i` of block `b`.
pub fn wreath_symmetric(k: usize, l: usize) -> PermGroup {
    let n = k * l;
    let mut gens = Vec::new();
    if k > 1 {
        for g in symmetric(k).generators() {
            let mut img: Vec<usize> = (0..n).collect();
            for i in 0..k {
                img[i] = g.apply(i);
            }
            gens.push(Perm::from_images(img).unwrap());
        }
    }
    if l > 1 {
        for g in symmetric(l).generators() {
            let img = (0..n).map(|p| g.apply(p / k) * k + p % k).collect();
            gens.push(Perm::from_images(img).unwrap());
        }
    }
    PermGroup::new(n, gens).unwrap()
}

/// Regular representation: right multiplication on the sorted element list.
pub fn regular(g: &PermGroup) -> Result<PermGroup> {
    let mut els = g.elements(ELEMENT_LIMIT)?;
    els.sort();
    let index: HashMap<Perm, usize> = els.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|s| Perm::from_images(els.iter().map(|x| index[&x.mul(s)]).collect()).unwrap())
        .collect();
    PermGroup::new(els.len(), gens)
}

/// Action of `g` on the right cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let hs = h.elements(ELEMENT_LIMIT)?;
    let els = g.elements(ELEMENT_LIMIT)?;
    let canon = |x: &Perm| hs.iter().map(|y| y.mul(x)).min().unwrap();
    let mut reps: BTreeMap<Perm, usize> = BTreeMap::new();
    for x in &els {
        let c = canon(x);
        let next = reps.len();
        reps.entry(c).or_insert(next);
    }
    let sorted: Vec<Perm> = reps.keys().cloned().collect();
    let index: HashMap<Perm, usize> = sorted.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|s| Perm::from_images(sorted.iter().map(|x| index[&canon(&x.mul(s))]).collect()).unwrap())
        .collect();
    PermGroup::new(sorted.len(), gens)
}

/// `C_p : C_q` acting on `p` points as `x -> x+1`, `x -> a*x`, where `a` has
/// order `q` modulo the prime `p`.
pub fn frobenius(p: usize, q: usize) -> Result<PermGroup> {
    if !crate::primes::is_prime(p as u64) || q == 0 || (p - 1) % q != 0 {
        return Err(Error::Invalid(format!("no group c{p}:c{q}")));
    }
    let a = (1..p)
        .find(|&a| {
            let ord = (1..=p).find(|&e| mod_pow(a, e, p) == 1).unwrap();
            ord == q
        })
        .unwrap();
    let mul = Perm::from_images((0..p).map(|x| x * a % p).collect()).unwrap();
    PermGroup::new(p, vec![Perm::cycle(p), mul])
}

fn mod_pow(a: usize, e: usize, p: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * a % p)
}

/// Elementary abelian group of order `2^k` in its regular representation.
pub fn elementary_abelian_regular(k: usize) -> PermGroup {
    let n = 2 * k;
    let gens = (0..k).map(|i| Perm::transposition(n, 2 * i, 2 * i + 1)).collect();
    regular(&PermGroup::new(n, gens).unwrap()).unwrap()
}

fn quaternion() -> PermGroup {
    // regular action of Q8 written on 8 points
    let i = Perm::from_cycles(8, &[&[1, 2, 4, 7], &[3, 6, 8, 5]]).unwrap();
    let j = Perm::from_cycles(8, &[&[1, 3, 4, 8], &[2, 5, 7, 6]]).unwrap();
    PermGroup::new(8, vec![i, j]).unwrap()
}

/// `A_5 x C_2` acting on the 60 cosets of a diagonal subgroup of order 2.
pub fn a5_times_c2_on_60() -> PermGroup {
    let n = 7;
    let a = Perm::from_cycles(n, &[&[1, 2, 3]]).unwrap();
    let b = Perm::from_cycles(n, &[&[1, 2, 3, 4, 5]]).unwrap();
    let c = Perm::from_cycles(n, &[&[6, 7]]).unwrap();
    let g = PermGroup::new(n, vec![a, b, c]).unwrap();
    let h = PermGroup::new(n, vec![Perm::from_cycles(n, &[&[1, 2], &[3, 4], &[6, 7]]).unwrap()]).unwrap();
    coset_action(&g, &h).unwrap()
}

/// `C_7 : C_6` on the 21 cosets of the subgroup `x -> -x`.
pub fn f42_on_21() -> Result<PermGroup> {
    let g = frobenius(7, 6)?;
    let neg = Perm::from_images((0..7).map(|x| (7 - x) % 7).collect())?;
    coset_action(&g, &PermGroup::new(7, vec![neg])?)
}

pub fn by_name(spec: &str) -> Result<PermGroup> {
    let s = spec.trim().to_ascii_lowercase();
    let bad = || Error::Invalid(format!("unknown group spec `{spec}`"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    if let Some(rest) = s.strip_suffix("-regular") {
        let base = match rest {
            "a4" => alternating(4),
            "a5" => alternating(5),
            "q8" => return Ok(quaternion()),
            "d4" => dihedral(4),
            _ => {
                if let Some(k) = rest.strip_prefix("c2^") {
                    return Ok(elementary_abelian_regular(num(k)?));
                }
                by_name(rest)?
            }
        };
        return regular(&base);
    }
    match s.as_str() {
        "a5xc2" => return Ok(a5_times_c2_on_60()),
        "f20" => return frobenius(5, 4),
        "f42-on-21" => return f42_on_21(),
        _ => {}
    }
    if let Some((l, r)) = s.split_once("wr") {
        let k = num(l.strip_prefix('s').ok_or_else(bad)?)?;
        let m = num(r.strip_prefix('s').ok_or_else(bad)?)?;
        return Ok(wreath_symmetric(k, m));
    }
    if let Some((l, r)) = s.split_once(':') {
        let p = num(l.strip_prefix('c').ok_or_else(bad)?)?;
        let q = num(r.strip_prefix('c').ok_or_else(bad)?)?;
        return frobenius(p, q);
    }
    let (head, tail) = s.split_at(1.min(s.len()));
    let n = num(tail)?;
    if n == 0 {
        return Err(bad());
    }
    Ok(match head {
        "c" => cyclic(n),
        "d" if n >= 3 => dihedral(n),
        "s" => symmetric(n),
        "a" if n >= 3 => alternating(n),
        _ => return Err(bad()),
    })
}

/// Named transitive groups of degree at most `max_degree` whose order is
/// small enough to enumerate.
pub fn transitive_catalog(max_degree: usize) -> Vec<(String, PermGroup)> {
    let mut names: Vec<String> = Vec::new();
    for n in 2..=max_degree {
        names.push(format!("c{n}"));
        if n >= 3 {
            names.push(format!("d{n}"));
        }
        if n <= 9 {
            names.push(format!("s{n}"));
            if n >= 3 {
                names.push(format!("a{n}"));
            }
        }
    }
    for (k, l) in [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (2, 5), (5, 2), (3, 3), (2, 6), (3, 4), (4, 3)] {
        names.push(format!("s{k}wrs{l}"));
    }
    for extra in [
        "c2^2-regular",
        "c2^3-regular",
        "q8-regular",
        "d4-regular",
        "a4-regular",
        "c3-regular",
        "c5:c2",
        "c5:c4",
        "c7:c3",
        "c7:c6",
        "c11:c5",
        "c3:c2-regular",
    ] {
        names.push(extra.to_string());
    }
    names
        .into_iter()
        .filter_map(|name| {
            let g = by_name(&name).ok()?;
            (g.degree() <= max_degree && g.is_transitive()).then_some((name, g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn prebuilt_chains_match_schreier_sims() {
        for n in 2..9 {
            let s = symmetric(n);
            let full = PermGroup::new(n, s.generators().to_vec()).unwrap();
            assert_eq!(s.order(), full.order());
            let a = alternating(n);
            let alt = PermGroup::new(n, a.generators().to_vec()).unwrap();
            assert_eq!(a.order(), alt.order());
            if n >= 3 {
                assert_eq!(&s.order() / &a.order(), BigUint::from(2u32));
                let odd = Perm::transposition(n, 0, n - 1);
                assert!(s.contains(&odd) && !a.contains(&odd));
                assert!(a.contains(&odd.mul(&Perm::transposition(n, 1, n - 1))));
            }
        }
        assert_eq!(alternating(60).order() * 2u32, symmetric(60).order());
    }

    fn order(g: &PermGroup) -> BigUint {
        g.order()
    }

    #[test]
    fn standard_orders() {
        assert_eq!(order(&symmetric(5)), BigUint::from(120u32));
        assert_eq!(order(&alternating(5)), BigUint::from(60u32));
        assert_eq!(order(&dihedral(6)), BigUint::from(12u32));
        assert_eq!(order(&wreath_symmetric(2, 3)), BigUint::from(48u32));
        assert_eq!(order(&frobenius(7, 3).unwrap()), BigUint::from(21u32));
        assert_eq!(order(&quaternion()), BigUint::from(8u32));
    }

    #[test]
    fn regular_and_coset_actions() {
        let a5r = by_name("a5-regular").unwrap();
        assert_eq!(a5r.degree(), 60);
        assert_eq!(order(&a5r), BigUint::from(60u32));
        let big = a5_times_c2_on_60();
        assert_eq!(big.degree(), 60);
        assert_eq!(order(&big), BigUint::from(120u32));
        assert!(big.is_transitive());
        let c73 = by_name("c7:c3-regular").unwrap();
        assert_eq!((c73.degree(), order(&c73)), (21, BigUint::from(21u32)));
        assert_eq!(by_name("c2^3-regular").unwrap().degree(), 8);
    }

    #[test]
    fn a5_block_counts() {
        use crate::perm::{all_block_systems, index2_transitive_subgroups};
        let a5r = by_name("a5-regular").unwrap();
        assert_eq!(all_block_systems(&a5r).unwrap().len(), 57);
        assert_eq!(index2_transitive_subgroups(&a5_times_c2_on_60(), 1_000_000).unwrap().len(), 1);
        assert!(all_block_systems(&symmetric(5)).unwrap().is_empty());
        assert_eq!(all_block_systems(&by_name("c2^2-regular").unwrap()).unwrap().len(), 3);
    }

    #[test]
    fn catalog_is_transitive() {
        let cat = transitive_catalog(12);
        assert!(cat.len() > 40);
        assert!(cat.iter().all(|(_, g)| g.is_transitive()));
        assert!(by_name("x9").is_err());
        assert!(by_name("c7:c4").is_err());
    }
}
