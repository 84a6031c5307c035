use proptest::prelude::*;

use extlift::symkernel::{parse, Atom, CoordId, Expr, GaussianRational, Monomial};

fn coords() -> Vec<CoordId> {
    vec![
        CoordId::TIME,
        CoordId::holo(0, 1).unwrap(),
        CoordId::anti(0, 1).unwrap(),
        CoordId::holo(1, 2).unwrap(),
    ]
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(p, q, im)| {
        GaussianRational::from_ratio(p, q) + GaussianRational::from_int(im) * GaussianRational::i()
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let term = (coeff(), prop::collection::vec(0u32..=2, 4)).prop_map(|(c, exps)| {
        let m = Monomial::from_factors(coords().into_iter().zip(exps).map(|(x, e)| (Atom::Coord(x), e)));
        Expr::term(c, m)
    });
    prop::collection::vec(term, 0..4).prop_map(|ts| ts.into_iter().fold(Expr::zero(), |a, t| a + t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in expr(), b in expr(), c in expr()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivatives(a in expr(), b in expr(), i in 0usize..4, j in 0usize..4) {
        let (x, y) = (coords()[i], coords()[j]);
        prop_assert_eq!(a.diff(x).diff(y), a.diff(y).diff(x));
        prop_assert_eq!((&a * &b).diff(x), &a.diff(x) * &b + &a * &b.diff(x));
    }

    #[test]
    fn conjugation_is_an_involution(a in expr(), b in expr()) {
        let conj = |e: &Expr| e.conjugate().unwrap();
        prop_assert_eq!(conj(&conj(&a)), a.clone());
        prop_assert_eq!(conj(&(&a * &b)), &conj(&a) * &conj(&b));
    }

    #[test]
    fn format_then_parse(a in expr()) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }
}
