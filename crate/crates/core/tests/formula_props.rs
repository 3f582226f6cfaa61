mod common;

use common::*;
use proptest::prelude::*;
use safeltl::formula::{expand_shortcuts, nnf, parse, parse_open, Formula};
use safeltl::fragments::{classify, is_ltlebr, is_ltlebrp, is_safetyltl, layer_of, Layer};

fn random_formula(seed: u64, size: usize) -> Formula {
    generator(&ab(&["p1", "p2", "q"])).any(&mut rng(seed), size)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>(), size in 1usize..14) {
        let f = random_formula(seed, size);
        let text = f.to_string();
        prop_assert_eq!(parse_open(&text).unwrap(), f.clone(), "{}", text);
        prop_assert_eq!(parse(&text, &ab(&["p1", "p2", "q"])).unwrap(), f);
    }

    #[test]
    fn generated_sizes_are_exact(seed in any::<u64>(), size in 1usize..14) {
        prop_assert_eq!(random_formula(seed, size).size(), size);
    }

    #[test]
    fn negation_normal_form_shape(seed in any::<u64>(), size in 1usize..14) {
        let n = nnf(&random_formula(seed, size));
        let ok = !n.any(&|g| match g {
            Formula::Implies(..) => true,
            Formula::Not(a) => !matches!(**a, Formula::Prop(_)),
            _ => false,
        });
        prop_assert!(ok, "{}", n);
    }

    #[test]
    fn expansion_leaves_only_core_operators(seed in any::<u64>(), size in 1usize..14) {
        let e = expand_shortcuts(&random_formula(seed, size));
        let ok = !e.any(&|g| matches!(
            g,
            Formula::Eventually(_)
                | Formula::Globally(_)
                | Formula::Once(_)
                | Formula::Historically(_)
                | Formula::Implies(..)
                | Formula::BoundedUntil { .. }
                | Formula::BoundedSince { .. }
                | Formula::Triggered(..)
        ));
        prop_assert!(ok, "{}", e);
    }

    #[test]
    fn fragment_hierarchy(seed in any::<u64>(), size in 1usize..12) {
        let f = random_formula(seed, size);
        let r = classify(&f).flags;
        prop_assert!(!r.is_ltlebr || r.is_safetyltl, "{}", f);
        prop_assert!(!r.is_ltlebr || r.is_ltlebrp);
        prop_assert!(!r.is_bounded_past || r.is_pure_past);
        prop_assert!(!r.is_pure_past || r.is_bounded_future_layer);
        prop_assert!(!r.is_bounded_future_layer || r.is_future_layer);
        prop_assert!(!r.is_future_layer || r.is_ltlebrp);
        prop_assert!(!r.is_canonical || r.is_canonical_past);
        prop_assert!(!r.is_canonical || r.is_ltlebrp);
        prop_assert_eq!(r.is_ltlebr, is_ltlebr(&f));
        prop_assert_eq!(r.is_safetyltl, is_safetyltl(&f));
    }
}

#[test]
fn layered_generator_stays_in_the_fragment() {
    let a = p12();
    for with_past in [false, true] {
        for f in safety_corpus(&a, 300, 10, with_past, 5) {
            assert!(is_ltlebrp(&f), "{f}");
            assert_eq!(is_ltlebr(&f), !with_past || !f.has_past());
            if !with_past {
                assert!(is_safetyltl(&f), "{f}");
            }
        }
    }
}

#[test]
fn layer_examples() {
    let cases = [
        ("H p1", Layer::PurePast),
        ("X p1 | Y p2", Layer::BoundedFuture),
        ("p1 U[0,2] p2", Layer::BoundedFuture),
        ("G p1", Layer::Future),
        ("p1 R (p2 R p3)", Layer::Future),
        ("G p1 | G p2", Layer::Boolean),
        ("F p1", Layer::Outside),
        ("G p1 R p2", Layer::Outside),
        ("!G p1", Layer::Outside),
    ];
    for (text, layer) in cases {
        assert_eq!(layer_of(&parse_open(text).unwrap()), layer, "{text}");
    }
}

#[test]
fn separating_formula_is_safety_but_outside_the_layers() {
    let f = parse_open("G (p1 | G p2)").unwrap();
    assert!(is_safetyltl(&f));
    assert!(!is_ltlebrp(&f));
}
