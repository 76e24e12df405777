//! Randomized algebra properties: ring laws, the Leibniz rule across the
//! special derivations, canonical-form stability through serialization, and
//! the geometric-series realization of the denominator variable.

use proptest::prelude::*;

use topgrav::algebra::json::{poly_from_json, poly_to_json};
use topgrav::algebra::series::geometric_series;
use topgrav::algebra::{rat, Monomial, Poly, Policy, TruncatedSeries, VarId};

fn arb_var() -> impl Strategy<Value = VarId> {
    prop_oneof![
        Just(VarId::v()),
        Just(VarId::big_n()),
        (0u32..5).prop_map(VarId::i),
        (0u32..4).prop_map(VarId::t),
        (1u32..4).prop_map(VarId::j),
        Just(VarId::w()),
    ]
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((arb_var(), 1i64..4), 0..4)
        .prop_map(Monomial::from_raw)
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((arb_monomial(), -9i64..10, 1i64..7), 0..6).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(m, num, den)| (m, rat(num, den))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_commutes_and_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Poly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_commutes_associates_distributes(
        a in arb_poly(),
        b in arb_poly(),
        c in arb_poly(),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn leibniz_rule(a in arb_poly(), b in arb_poly()) {
        for x in [VarId::i(1), VarId::i(2), VarId::t(0), VarId::j(1), VarId::big_n()] {
            let lhs = (&a * &b).differentiate(x).unwrap();
            let rhs = &(&a.differentiate(x).unwrap() * &b)
                + &(&a * &b.differentiate(x).unwrap());
            prop_assert_eq!(lhs, rhs, "Leibniz fails for {}", x);
        }
    }

    #[test]
    fn serialization_is_canonical(a in arb_poly()) {
        let text = poly_to_json(&a);
        let parsed = poly_from_json(&text).unwrap();
        prop_assert_eq!(&parsed, &a);
        prop_assert_eq!(poly_to_json(&parsed), text);
    }

    #[test]
    fn v_expansion_matches_division_oracle(
        terms in prop::collection::vec(((0i64..4), (1u32..4), (1i64..4), (-6i64..7)), 1..5),
    ) {
        // build sum c * v^p * I_k, expand v as the geometric series, and
        // multiply back by (1 - I_1)^{p_max}: the result must equal
        // sum c * (1 - I_1)^{p_max - p} * I_k modulo the policy
        let policy = Policy::i_vars(4, 7);
        let p_max = terms.iter().map(|&(p, ..)| p).max().unwrap();
        let mut poly = Poly::zero();
        for &(p, k, den, num) in &terms {
            poly.add_term(
                Monomial::from_raw(vec![(VarId::v(), p), (VarId::i(k + 1), 1)])
                    .mul(&Monomial::one()),
                rat(num, den),
            );
        }
        let geom = geometric_series(VarId::i(1), &policy);
        let expanded = topgrav::algebra::substitute(&poly, VarId::v(), &geom).unwrap();
        let one_minus = &Poly::one() - &Poly::var(VarId::i(1));
        let lhs = expanded.mul(&TruncatedSeries::from_poly(
            one_minus.pow(p_max as u32),
            policy.clone(),
        ));
        let mut rhs = Poly::zero();
        for &(p, k, den, num) in &terms {
            let factor = one_minus.pow((p_max - p) as u32);
            rhs.add_assign_ref(
                &factor
                    .mul_monomial(&Monomial::var(VarId::i(k + 1)))
                    .scale(&rat(num, den)),
            );
        }
        let rhs = TruncatedSeries::from_poly(rhs, policy);
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn truncated_arithmetic_respects_policy(a in arb_poly(), b in arb_poly()) {
        let policy = Policy::t_vars(3, 3)
            .with_family(topgrav::algebra::Family::I, 4)
            .with_family(topgrav::algebra::Family::J, 3)
            .with_nullary(topgrav::algebra::Family::V)
            .with_nullary(topgrav::algebra::Family::W)
            .with_nullary(topgrav::algebra::Family::BigN);
        let sa = TruncatedSeries::from_poly(a, policy.clone());
        let sb = TruncatedSeries::from_poly(b, policy.clone());
        let prod = sa.mul(&sb);
        for (m, _) in prod.body().iter() {
            prop_assert!(policy.admits(m));
        }
    }
}
