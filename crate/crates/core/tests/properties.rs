//! Randomized invariants: the expression grammar's print/parse fixed point
//! and linearity of truncated three-variable series arithmetic.

use opecalc::expr::{self, Ast};
use opecalc::qseries::TriSeries;
use opecalc::scalar;
use opecalc::Scalar;
use proptest::prelude::*;

fn scalars() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| scalar::int(p) / scalar::int(q))
}

/// Names that cannot collide with the `d`/`W`/`C` keywords.
fn names() -> impl Strategy<Value = String> {
    "[a-c][a-z0-9_]{0,4}"
}

fn asts() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![names().prop_map(Ast::Name), Just(Ast::Vacuum)];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec((scalars(), inner.clone()), 1..4).prop_map(Ast::Sum),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Ast::Wick),
            (inner.clone(), inner.clone(), -3i64..=8)
                .prop_map(|(a, b, n)| Ast::Circle(Box::new(a), Box::new(b), n)),
            (1u32..=3, inner).prop_map(|(k, e)| Ast::Derive(k, Box::new(e))),
        ]
    })
}

fn series(order: i64) -> impl Strategy<Value = TriSeries> {
    prop::collection::vec((-3i64..=3, -3i64..=3, 0i64..=2 * order, -5i64..=5), 0..12).prop_map(
        move |terms| {
            let mut s = TriSeries::zero(order);
            for (z, w, qhalf, coeff) in terms {
                s.add_term(z, w, qhalf, coeff);
            }
            s
        },
    )
}

proptest! {
    /// Anything the parser produces is reprinted and reparsed unchanged.
    #[test]
    fn printed_expressions_parse_back_to_themselves(ast in asts()) {
        let text = expr::print(&ast);
        let parsed = expr::parse(&text).expect("printed form parses");
        let reparsed = expr::parse(&expr::print(&parsed)).expect("round trip parses");
        prop_assert_eq!(parsed, reparsed);
    }

    #[test]
    fn series_arithmetic_is_linear(a in series(3), b in series(3), c in series(3)) {
        prop_assert!(a.add(&b).sub(&b).equal_to_order(&a));
        prop_assert!(a.mul(&b.add(&c)).equal_to_order(&a.mul(&b).add(&a.mul(&c))));
    }
}
