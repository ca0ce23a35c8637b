use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use subfields::config::Config;
use subfields::fieldsearch::{field_search, record_is_valid, starting_group};
use subfields::padic::SplittingContext;
use subfields::perm::all_block_systems;
use subfields::poly::parse::parse_poly;
use subfields::poly::resultant::discriminant;
use subfields::primes::squarefree_kernel;
use subfields::subfield::res2_principal_congruences;

const F18: &str = "x^18+9*x^9+27";
const MULTIQUADRATIC: &str = "x^8 - 40*x^6 + 352*x^4 - 960*x^2 + 576";

#[test]
fn degree_18_example() {
    let f = parse_poly(F18).unwrap();
    let out = field_search(&f, &Config::default()).unwrap();
    let degrees: BTreeSet<usize> = out.subfields.iter().map(|r| r.g.deg()).collect();
    assert_eq!(degrees, BTreeSet::from([2, 3, 6]));
    let mut shapes: Vec<(usize, usize)> =
        out.subfields.iter().map(|r| (r.blocks.num_blocks(), r.blocks.block_size())).collect();
    shapes.sort();
    assert_eq!(shapes, vec![(2, 9), (3, 6), (6, 3)]);
    assert_eq!(out.group.order(), BigUint::from(559_872u32));
    let quad = out.subfields.iter().find(|r| r.g.deg() == 2).unwrap();
    assert_eq!(squarefree_kernel(&discriminant(&quad.g).unwrap()), BigInt::from(-3));
    assert!(out.subfields.iter().all(|r| record_is_valid(&f, r)));
    let d = &out.inspection.as_ref().unwrap().order_divisor;
    assert_eq!(out.group.order() % d, BigUint::default());
}

#[test]
fn multiquadratic_octic() {
    let f = parse_poly(MULTIQUADRATIC).unwrap();
    let cfg = Config::default();
    let out = field_search(&f, &cfg).unwrap();
    assert!(out.lll_calls <= 3);
    let all = out.all_subfields(&cfg).unwrap();
    assert_eq!(all.len(), 14);
    assert_eq!(all.iter().filter(|r| r.g.deg() == 2).count(), 7);
    assert!(all.iter().all(|r| record_is_valid(&f, r)));
    assert_eq!(out.group.order(), BigUint::from(8u32));
}

#[test]
fn quartic_paths_agree() {
    let f = parse_poly("x^4+1").unwrap();
    let cfg = Config::default();
    let out = field_search(&f, &cfg).unwrap();
    let lll: BTreeSet<String> = out.subfields.iter().map(|r| r.blocks.to_string()).collect();
    assert_eq!(lll.len(), 3);
    let ctx: &SplittingContext = out.ctx.as_ref().unwrap();
    let res2: BTreeSet<String> = res2_principal_congruences(ctx, &cfg)
        .unwrap()
        .iter()
        .filter(|b| !b.is_trivial())
        .map(|b| b.to_string())
        .collect();
    assert_eq!(lll, res2);
}

#[test]
fn prime_degree_has_no_subfields() {
    for s in ["x^3-2", "x^5-x-1"] {
        let out = field_search(&parse_poly(s).unwrap(), &Config::default()).unwrap();
        assert!(!out.has_subfields());
        assert_eq!(out.lll_calls, 0);
    }
}

#[test]
fn non_monic_input() {
    // 2x^4 + 1 defines Q((-1/2)^(1/4)), whose only proper subfield is quadratic
    let f = parse_poly("2*x^4+1").unwrap();
    let out = field_search(&f, &Config::default()).unwrap();
    assert_eq!(out.subfields.len(), 1);
    assert_eq!(out.subfields[0].g.deg(), 2);
    assert!(record_is_valid(&f, &out.subfields[0]));
}

#[test]
fn reducible_input_is_rejected() {
    let f = parse_poly("x^4-1").unwrap();
    assert!(field_search(&f, &Config::default()).is_err());
}

#[test]
fn starting_groups() {
    let cfg = Config::default();
    let f = parse_poly(F18).unwrap();
    let sg = starting_group(&f, &cfg).unwrap();
    assert_eq!(sg.intersection_order, BigUint::from(559_872u32));
    // the cubic subfield alone: its discriminant is a square
    let cubic = sg.search.subfields.iter().find(|r| r.g.deg() == 3).unwrap();
    let one = sg.search.group.kernel_of_character(|s| !cubic.blocks.block_action(s).is_even());
    assert_eq!(one.order(), BigUint::from(279_936u32));
    // with the relation disc(f_2) disc(f_18) = square as well
    assert_eq!(sg.group.order(), BigUint::from(139_968u32));
    assert!(all_block_systems(&sg.group).unwrap().len() >= 3);

    let mq = starting_group(&parse_poly(MULTIQUADRATIC).unwrap(), &cfg).unwrap();
    assert_eq!(mq.group.order(), BigUint::from(8u32));

    let prim = starting_group(&parse_poly("x^5-x-1").unwrap(), &cfg).unwrap();
    assert_eq!(prim.group.order(), BigUint::from(120u32));
    assert!(prim.plan.steps.is_empty());
}
