use std::collections::BTreeSet;

use subfields::config::Config;
use subfields::cyclescan::{prime_inspection, Inspection};
use subfields::lll::principal_subfield;
use subfields::padic::{default_precision, SplittingContext};
use subfields::poly::modp::mod_factor;
use subfields::poly::parse::parse_poly;
use subfields::poly::QPoly;

#[test]
fn f18_principal_subfields_match_known_polynomials() {
    let f = parse_poly("x^18 + 9*x^9 + 27").unwrap();
    let cfg = Config::default();
    let Inspection::Found(ins) = prime_inspection(&f, &cfg).unwrap() else { panic!("subfields expected") };
    let fac = mod_factor(&f, ins.lll_prime, 1).unwrap();
    let ctx = SplittingContext::new(&f, ins.splitting_prime, default_precision(&f, ins.splitting_prime)).unwrap();
    let i1 = fac.factors.iter().position(|g| g.degree() == 1).unwrap();
    let mut found = BTreeSet::new();
    for j in (0..fac.factors.len()).filter(|&j| j != i1) {
        let rec = principal_subfield(&fac, i1, j, &ctx, &cfg).unwrap();
        assert!(rec.principal_proven);
        if rec.g.deg() > 1 {
            let fq = QPoly::from_int(&f);
            assert!(QPoly::from_int(&rec.g).compose_mod(&rec.h, &fq).is_zero());
        }
        found.insert(rec.g.to_string());
    }
    let expected: BTreeSet<String> =
        ["x", "x^2 + 9*x + 27", "x^3 - 12*x^2 + 39*x - 37", "x^6 + 9*x^3 + 27"].iter().map(|s| s.to_string()).collect();
    assert_eq!(found, expected);
}
