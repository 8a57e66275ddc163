//! Seed-fixed randomized property suites, plus proptest invariants for the
//! scalar field and parser.

use std::sync::Arc;

use paralight_testkit::suites;
use proptest::prelude::*;

use num::BigRational;
use paralight_core::scalar::{parse_expression, Chart, ScalarExpr};

#[test]
fn exact_field_properties_hold() {
    suites::exact_field_suite(250, 0xfeed).unwrap();
}

#[test]
fn nullspace_matches_minor_oracle() {
    suites::nullspace_oracle_suite(220, 0xbeef).unwrap();
}

#[test]
fn connection_properties_on_perturbed_metrics() {
    suites::connection_property_suite(200, 0xcafe).unwrap();
}

#[test]
fn finite_differences_agree_with_symbols() {
    suites::fd_agreement_suite(220, 0xd00d).unwrap();
}

fn chart() -> Arc<Chart> {
    Arc::new(
        Chart::new(
            vec!["x", "y", "z"],
            vec![("e2z", "z", BigRational::from_integer(2.into()))],
        )
        .unwrap(),
    )
}

fn arb_expr() -> impl Strategy<Value = ScalarExpr> {
    // small random expressions assembled through the public arithmetic
    let leaf = prop_oneof![
        (0usize..4).prop_map(|s| ScalarExpr::symbol(&chart(), s)),
        (-4i64..=4).prop_map(|n| ScalarExpr::from_int(&chart(), n)),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| match a.div(&b) {
                Ok(q) => q,
                Err(_) => a,
            }),
            inner.prop_map(|a| a.neg()),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(e in arb_expr()) {
        let printed = e.to_string();
        let reparsed = parse_expression(&chart(), &printed).unwrap();
        prop_assert_eq!(e, reparsed);
    }

    #[test]
    fn field_axioms(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if !a.is_zero() {
            prop_assert!(a.div(&a).unwrap().is_one());
        }
    }

    #[test]
    fn derivative_is_linear(a in arb_expr(), b in arb_expr(), v in 0usize..3) {
        prop_assert_eq!(
            a.add(&b).derivative(v),
            a.derivative(v).add(&b.derivative(v))
        );
    }
}
