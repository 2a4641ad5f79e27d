use std::sync::Arc;

use cr_algebra::{GaussianRational, Monomial, Poly, TruncSeries, Var, VariableSpace};
use proptest::prelude::*;

fn space() -> Arc<VariableSpace> {
    VariableSpace::new(&[("z1", 1), ("w", 2)], &[("t", 2)])
}

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=4, -5i64..=5, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
}

fn poly(max_terms: usize) -> impl Strategy<Value = Poly> {
    let s = space();
    let n = s.len();
    prop::collection::vec((prop::collection::vec(0u16..=2, n), scalar()), 0..=max_terms).prop_map(move |terms| {
        Poly::from_terms(&s, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), c)))
    })
}

fn rho(s: &Arc<VariableSpace>) -> Poly {
    let w = Poly::var(s, s.var("w").unwrap());
    let wb = Poly::var(s, s.var("wb").unwrap());
    let z = Poly::var(s, s.var("z1").unwrap());
    let zb = Poly::var(s, s.var("z1b").unwrap());
    &(&w - &wb).scale(&GaussianRational::complex(0, 1, -1, 2)) - &(&z * &zb)
}

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn ring_axioms(a in poly(4), b in poly(4), c in poly(4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_involution(a in poly(5), b in poly(5)) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a + &a.conj()).is_real());
    }

    #[test]
    fn derivatives_commute(a in poly(6), u in 0usize..5, v in 0usize..5) {
        let (u, v) = (Var(u), Var(v));
        prop_assert_eq!(a.derivative(u).derivative(v), a.derivative(v).derivative(u));
    }

    #[test]
    fn divide_linear_reconstructs(p in poly(6)) {
        let s = p.space().clone();
        let d = rho(&s);
        let wb = s.var("wb").unwrap();
        let (q, r) = p.divide_linear(&d, wb).unwrap();
        prop_assert!(!r.uses_var(wb));
        prop_assert_eq!(&(&q * &d) + &r, p);
    }

    #[test]
    fn series_sqrt_squares_back(a in poly(4), order in 1u32..=6) {
        let s = a.space().clone();
        // 1 + u with u of positive weighted order
        let u = Poly::from_terms(&s, a.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| (m.clone(), c.clone())));
        let one_plus_u = TruncSeries::from_poly(&(&Poly::one(&s) + &u), order);
        let root = one_plus_u.sqrt().unwrap();
        prop_assert_eq!(&root * &root, one_plus_u);
    }
}
