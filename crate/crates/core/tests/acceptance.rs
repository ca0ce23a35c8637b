//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subfields::config::Config;
use subfields::cyclescan::{order_divisor, pgroup_divisor, sieve_block_sizes};
use subfields::fieldsearch::{
    count_short_cosets, field_search, record_is_valid, simulate_from_group, CallOutcome, Verdict,
};
use subfields::lll::principal_subfield;
use subfields::perm::catalog::{a5_times_c2_on_60, alternating, by_name, regular, transitive_catalog, wreath_symmetric};
use subfields::perm::{all_block_systems, index2_transitive_subgroups, BlockSystem, Perm, PermGroup};
use subfields::poly::modp::mod_factor;
use subfields::poly::parse::parse_poly;
use subfields::poly::resultant::discriminant;
use subfields::poly::zfactor::factor_over_z;
use subfields::poly::IntPoly;
use subfields::primes::squarefree_kernel;
use subfields::subfield::res2_principal_congruences;
use subfields::wreath::wreath_intersection;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let f = parse_poly("x^18+9*x^9+27").map_err(err)?;
    let cfg = Config::default();
    let out = field_search(&f, &cfg).map_err(err)?;
    let degrees: BTreeSet<usize> = out.subfields.iter().map(|r| r.g.deg()).collect();
    check(degrees == BTreeSet::from([2, 3, 6]), format!("degrees {degrees:?}"))?;
    let mut shapes: Vec<(usize, usize)> =
        out.subfields.iter().map(|r| (r.blocks.num_blocks(), r.blocks.block_size())).collect();
    shapes.sort();
    check(shapes == [(2, 9), (3, 6), (6, 3)], format!("shapes {shapes:?}"))?;
    let systems: Vec<BlockSystem> = out.subfields.iter().map(|r| r.blocks.clone()).collect();
    let w = wreath_intersection(&systems, &cfg).map_err(err)?;
    check(w.order() == BigUint::from(559_872u32), format!("intersection order {}", w.order()))?;
    let quad = out.subfields.iter().find(|r| r.g.deg() == 2).ok_or("no quadratic")?;
    let class = squarefree_kernel(&discriminant(&quad.g).map_err(err)?);
    check(class == BigInt::from(-3), format!("quadratic class {class}"))?;
    check(out.subfields.iter().all(|r| record_is_valid(&f, r)), "invalid record")?;
    Ok(format!("degrees {{2,3,6}}, shapes 2x9 3x6 6x3, order 559872, quadratic class -3, {} LLL calls", out.lll_calls))
}

fn criterion_2() -> Outcome {
    let f = parse_poly("x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576").map_err(err)?;
    let cfg = Config::default();
    let out = field_search(&f, &cfg).map_err(err)?;
    let all = out.all_subfields(&cfg).map_err(err)?;
    check(all.len() == 14, format!("{} subfields", all.len()))?;
    check(out.lll_calls <= 3, format!("{} LLL calls", out.lll_calls))?;
    check(all.iter().all(|r| record_is_valid(&f, r)), "invalid record")?;
    Ok(format!("14 subfields, {} LLL calls (limit 3)", out.lll_calls))
}

fn criterion_3() -> Outcome {
    let f = parse_poly("x^4+1").map_err(err)?;
    let cfg = Config::default();
    let out = field_search(&f, &cfg).map_err(err)?;
    let lll: BTreeSet<BlockSystem> = out.subfields.iter().map(|r| r.blocks.clone()).collect();
    let ctx = out.ctx.as_ref().ok_or("no splitting context")?;
    let res2: BTreeSet<BlockSystem> =
        res2_principal_congruences(ctx, &cfg).map_err(err)?.into_iter().filter(|b| !b.is_trivial()).collect();
    check(lll.len() == 3 && out.subfields.iter().all(|r| r.g.deg() == 2), format!("{} LLL systems", lll.len()))?;
    check(lll == res2, "LLL and Res2 systems differ")?;
    Ok("3 quadratic subfields, identical block systems on both paths".into())
}

fn criterion_4() -> Outcome {
    for s in ["x^3-2", "x^5-x-1"] {
        let out = field_search(&parse_poly(s).map_err(err)?, &Config::default()).map_err(err)?;
        check(!out.has_subfields() && out.lll_calls == 0, format!("{s}: {} LLL calls", out.lll_calls))?;
    }
    Ok("x^3-2 and x^5-x-1: no subfields, 0 LLL calls".into())
}

fn criterion_5() -> Outcome {
    let a5r = regular(&alternating(5)).map_err(err)?;
    let systems = all_block_systems(&a5r).map_err(err)?.len();
    check(systems == 57, format!("{systems} block systems"))?;
    let subs = index2_transitive_subgroups(&a5_times_c2_on_60(), 1_000_000).map_err(err)?.len();
    check(subs == 1, format!("{subs} index-2 transitive subgroups"))?;
    Ok("A5 regular: 57 block systems; A5xC2 on 60 points: 1 index-2 transitive subgroup".into())
}

fn criterion_6() -> Outcome {
    let g = by_name("c7:c3-regular").map_err(err)?;
    let r = simulate_from_group(&g, 0).map_err(err)?;
    let threes = r.true_systems.iter().filter(|b| b.block_size() == 3).count();
    let sevens = r.true_systems.iter().filter(|b| b.block_size() == 7).count();
    check((threes, sevens) == (7, 1), format!("{threes} systems of size 3, {sevens} of size 7"))?;
    check(r.complete(), "simulation missed block systems")?;
    let mut sizes = BTreeSet::new();
    let mut after: Option<usize> = None;
    for c in &r.trace {
        if let Some(k) = after.as_mut() {
            *k += usize::from(c.verdict == Verdict::DoFactor);
        }
        if let CallOutcome::New(b) = &c.outcome {
            sizes.insert(b.block_size());
        }
        if after.is_none() && sizes.contains(&3) && sizes.contains(&7) {
            after = Some(0);
        }
    }
    let after = after.ok_or("p*q rule never engaged")?;
    check(after <= 2, format!("{after} calls after the p*q rule engaged"))?;
    Ok(format!("7 systems of size 3, 1 of size 7; {after} oracle calls after the p*q rule engaged ({} in all)", r.oracle_calls))
}

fn random_monic(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> Vec<i64> {
    let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[0] == 0 {
        c[0] = 1;
    }
    c.push(1);
    c
}

fn criterion_7() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let shapes = [(2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (2, 5), (5, 2), (3, 3)];
    let mut compared = 0;
    let mut systems = 0;
    let mut attempts = 0;
    while compared < 50 {
        attempts += 1;
        check(attempts < 1000, "too few irreducible compositions")?;
        let (a, b) = shapes[rng.gen_range(0..shapes.len())];
        let f = IntPoly::from_i64(&random_monic(&mut rng, a, 4)).compose(&IntPoly::from_i64(&random_monic(&mut rng, b, 3)));
        if !factor_over_z(&f).map_err(err)?.is_irreducible() {
            continue;
        }
        let out = field_search(&f, &cfg).map_err(err)?;
        let (Some(ins), Some(ctx)) = (&out.inspection, &out.ctx) else {
            return Err(format!("{f}: composite degree but no block sizes"));
        };
        let fac = mod_factor(&f, ins.lll_prime, cfg.seed).map_err(err)?;
        let i1 = fac.factors.iter().position(|g| g.degree() == 1).ok_or("no linear factor")?;
        let mut lll: Vec<BlockSystem> = Vec::new();
        for j in (0..fac.factors.len()).filter(|&j| j != i1) {
            let b = principal_subfield(&fac, i1, j, ctx, &cfg).map_err(err)?.blocks;
            if !lll.contains(&b) {
                lll.push(b);
            }
        }
        lll.sort_by(|x, y| (x.num_blocks(), x.labels()).cmp(&(y.num_blocks(), y.labels())));
        let res2 = res2_principal_congruences(ctx, &cfg).map_err(err)?;
        check(lll == res2, format!("{f}: LLL {lll:?} vs Res2 {res2:?}"))?;
        check(lll.iter().any(|s| s.num_blocks() == a), format!("{f}: known subfield of degree {a} missing"))?;
        compared += 1;
        systems += lll.len();
    }
    Ok(format!("50 compositions of degree <= 10, {systems} principal systems agree"))
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Perm>) {
        if k == cur.len() {
            out.push(Perm::from_images(cur.clone()).unwrap());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    let mut out = Vec::new();
    rec(0, &mut (0..n).collect(), &mut out);
    out
}

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    Perm::from_images(v).unwrap()
}

/// A transitive subgroup of a random conjugate of `Sym_k wr Sym_l`.
fn random_imprimitive_group(rng: &mut ChaCha8Rng) -> PermGroup {
    loop {
        let n = [4, 6, 8][rng.gen_range(0..3)];
        let ks: Vec<usize> = (2..n).filter(|k| n % k == 0).collect();
        let k = ks[rng.gen_range(0..ks.len())];
        let w = wreath_symmetric(k, n / k);
        let c = random_perm(rng, n);
        let gens: Vec<Perm> = (0..rng.gen_range(1..=3))
            .map(|_| w.random_element(rng).conjugate(&c))
            .collect();
        let g = PermGroup::new(n, gens).unwrap();
        if g.is_transitive() {
            return g;
        }
    }
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let perms: Vec<Vec<Perm>> = (0..=8).map(|n| if [4, 6, 8].contains(&n) { all_perms(n) } else { Vec::new() }).collect();
    let mut compared = 0;
    for _ in 0..200 {
        let g = random_imprimitive_group(&mut rng);
        let n = g.degree();
        let systems: Vec<BlockSystem> = all_block_systems(&g).map_err(err)?;
        let masks: Vec<Vec<bool>> =
            systems.iter().map(|s| perms[n].iter().map(|p| s.is_preserved_by(p)).collect()).collect();
        let mut combos: Vec<Vec<usize>> = Vec::new();
        for a in 0..systems.len() {
            combos.push(vec![a]);
            for b in a + 1..systems.len() {
                combos.push(vec![a, b]);
                for c in b + 1..systems.len() {
                    combos.push(vec![a, b, c]);
                }
            }
        }
        for combo in combos.iter().take(12) {
            let chosen: Vec<BlockSystem> = combo.iter().map(|&i| systems[i].clone()).collect();
            let brute: Vec<&Perm> =
                perms[n].iter().enumerate().filter(|(t, _)| combo.iter().all(|&i| masks[i][*t])).map(|(_, p)| p).collect();
            for strategy in ["graph", "direct"] {
                let cfg = Config { intersection: strategy.into(), ..Config::default() };
                let w = wreath_intersection(&chosen, &cfg).map_err(err)?;
                check(
                    w.order() == BigUint::from(brute.len()) && brute.iter().all(|p| w.contains(p)),
                    format!("{strategy}: order {} vs brute force {} for {chosen:?}", w.order(), brute.len()),
                )?;
            }
            compared += 1;
        }
    }
    Ok(format!("200 random groups, {compared} system lists, both strategies equal brute force"))
}

fn criterion_9() -> Outcome {
    let catalog = transitive_catalog(12);
    for (name, g) in &catalog {
        let n = g.degree();
        let types: Vec<Vec<usize>> = g
            .elements(1_000_000)
            .map_err(err)?
            .iter()
            .map(Perm::cycle_type)
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        let sieve = sieve_block_sizes(&types, n);
        let truth: BTreeSet<usize> = all_block_systems(g)
            .map_err(err)?
            .iter()
            .filter(|b| !b.is_trivial())
            .map(BlockSystem::block_size)
            .collect();
        check(truth.is_subset(&sieve), format!("{name}: sieve {sieve:?} excludes part of {truth:?}"))?;
        let mut d = BigUint::from(n);
        for t in &types {
            d = num_integer::Integer::lcm(&d, &order_divisor(t, n));
        }
        d = num_integer::Integer::lcm(&d, &pgroup_divisor(&types, n));
        check((g.order() % &d).is_zero(), format!("{name}: divisor {d} does not divide {}", g.order()))?;
    }
    Ok(format!("{} catalog groups of degree <= 12: sieve sound, divisor divides order", catalog.len()))
}

fn criterion_10() -> Outcome {
    for (n, k) in [(4, 2), (6, 2), (6, 3)] {
        let c = count_short_cosets(&Perm::cycle(n), k);
        check(c == 1, format!("({n})-cycle, k = {k}: {c}"))?;
    }
    for (n, k) in [(4usize, 2usize), (6, 3)] {
        let l = (n / k) as u64;
        let h = n / 2;
        let first: Vec<usize> = (1..=h).collect();
        let second: Vec<usize> = (h + 1..=n).collect();
        let s = Perm::from_cycles(n, &[&first, &second]).map_err(err)?;
        let c = count_short_cosets(&s, k);
        check(c == l + 1, format!("({h},{h}) with k = {k}: {c} short cosets, l+1 = {}", l + 1))?;
    }
    Ok("(n)-cycle rows give 1; (n/2,n/2) rows give l+1 at (4,2) and (6,3)".into())
}

fn main() {
    let criteria: [(u32, f64, fn() -> Outcome); 10] = [
        (1, 60.0, criterion_1),
        (2, 20.0, criterion_2),
        (3, 5.0, criterion_3),
        (4, 60.0, criterion_4),
        (5, 30.0, criterion_5),
        (6, 60.0, criterion_6),
        (7, 600.0, criterion_7),
        (8, 600.0, criterion_8),
        (9, 600.0, criterion_9),
        (10, 60.0, criterion_10),
    ];
    let mut failed = 0;
    for (k, limit, run) in criteria {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        let res = match res {
            Ok(msg) if secs > limit => Err(format!("{msg}; over time limit")),
            other => other,
        };
        match res {
            Ok(msg) => println!("criterion {k:>2}: PASS  {msg} [{secs:.2} s, limit {limit} s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {msg} [{secs:.2} s, limit {limit} s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
