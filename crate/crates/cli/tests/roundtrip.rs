use std::collections::BTreeMap;

use cr_algebra::{GaussianRational as GR, Monomial, Poly, RationalFn, VariableSpace};
use cr_cli::parse::{parse_expression, Scope};
use proptest::prelude::*;

fn space() -> std::sync::Arc<VariableSpace> {
    VariableSpace::new(&[("z1", 1), ("w", 2)], &[("t", 2)])
}

fn scalar() -> impl Strategy<Value = GR> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a, b, c, d)| GR::complex(a, b, c, d))
}

fn poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 5), scalar()), 1..max_terms).prop_map(|terms| {
        let s = space();
        terms.into_iter().fold(Poly::zero(&s), |acc, (e, c)| &acc + &Poly::monomial(&s, Monomial::from_exponents(e), c))
    })
}

fn parse_back(text: &str) -> RationalFn {
    let s = space();
    let names: Vec<String> = s.all().map(|v| s.name(v).to_string()).collect();
    let params = BTreeMap::new();
    let scope = Scope { variables: &names, parameters: &params };
    parse_expression(text, &scope).unwrap().to_rational(&s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn display_parses_back(n in poly(5), d in poly(3)) {
        prop_assume!(!d.is_zero());
        let f = RationalFn::new(n, d).unwrap();
        prop_assert_eq!(parse_back(&f.to_string()), f);
    }
}

#[test]
fn parser_examples() {
    let s = space();
    let z = RationalFn::var(&s, s.holo(0));
    let w = RationalFn::var(&s, s.holo(1));
    let one = RationalFn::from_poly(Poly::one(&s));
    let got = parse_back("(z1 + i*w)^2/(1 - w)");
    let expected = ((z.clone() + w.scale(&GR::i())) * (z + w.scale(&GR::i()))).try_div(&(one - w)).unwrap();
    assert_eq!(got, expected);
    assert_eq!(parse_back("-(1/2)^(3)"), RationalFn::from_poly(Poly::constant(&s, GR::ratio(-1, 8))));
}
