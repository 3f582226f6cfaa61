mod common;

use common::*;
use safeltl::canonical::{
    canonicalize, pastify, recognize, to_galpha, CanonError, PayloadClass,
};
use safeltl::formula::{next_depth, parse_open, Formula};
use safeltl::fragments::{is_bounded_past, is_pure_past};
use safeltl::monitor::{
    compile_canonical, compile_progression, compile_safety, equivalent, DEFAULT_MAX_STATES,
};
use safeltl::semantics::{eval, Evaluator};

fn f(text: &str) -> Formula {
    parse_open(text).unwrap()
}

fn uses_nested_release(phi: &Formula) -> bool {
    canonicalize(phi)
        .unwrap()
        .trace
        .iter()
        .any(|s| s.rule == "nested-release")
}

#[test]
fn pastify_reads_the_same_letter_k_steps_later() {
    let a = p12();
    let g = generator(&a);
    let mut r = rng(31);
    let words = lassos(&a, 3, 2);
    for n in 0..200 {
        let psi = g.bounded_future(&mut r, 1 + n % 8, n % 3 == 0);
        let m = next_depth(&psi);
        let before = Evaluator::new(&psi);
        for k in m..=m + 2 {
            let shifted = pastify(&psi, k).unwrap();
            assert!(is_pure_past(&shifted), "{shifted}");
            let after = Evaluator::new(&shifted);
            for w in &words {
                for t in 0..=w.stem().len() + w.cycle().len() {
                    assert_eq!(
                        before.holds_at(w, t),
                        after.holds_at(w, t + k),
                        "{psi} shifted by {k} at {t} on {w}"
                    );
                }
            }
        }
    }
}

#[test]
fn pastify_refuses_a_short_shift() {
    assert!(matches!(
        pastify(&f("X X p1"), 1),
        Err(CanonError::ShiftTooSmall { needed: 2, .. })
    ));
}

#[test]
fn canonicalization_preserves_the_language() {
    let a = p12();
    let words = lassos(&a, 3, 2);
    for with_past in [false, true] {
        for phi in safety_corpus(&a, 250, 9, with_past, 37) {
            let c = canonicalize(&phi).unwrap().result;
            let out = c.to_formula();
            for w in &words {
                assert_eq!(eval(w, &phi), eval(w, &out), "{phi} vs {out} on {w}");
            }
            let before = compile_progression(&phi, &a, DEFAULT_MAX_STATES).unwrap();
            let after = compile_canonical(&c, &a, DEFAULT_MAX_STATES).unwrap();
            assert!(
                equivalent(&before, &after, DEFAULT_MAX_STATES).unwrap().is_none(),
                "{phi} vs {out}"
            );
        }
    }
}

#[test]
fn output_is_recognized_as_canonical() {
    let a = p12();
    for phi in safety_corpus(&a, 300, 9, true, 41) {
        // Adjacent points at one offset read back as a single point.
        let out = canonicalize(&phi).unwrap().result.to_formula();
        let back = recognize(&out, PayloadClass::PurePast);
        assert_eq!(back.map(|c| c.to_formula()), Some(out));
    }
}

#[test]
fn payloads_stay_bounded_without_nested_releases() {
    let a = p12();
    let mut checked = 0;
    for phi in safety_corpus(&a, 300, 9, false, 43) {
        if uses_nested_release(&phi) {
            continue;
        }
        checked += 1;
        let c = canonicalize(&phi).unwrap().result;
        assert!(c.is_bounded(), "{phi} gave {c}");
        assert!(recognize(&c.to_formula(), PayloadClass::BoundedPast).is_some());
        for t in c.terms() {
            assert!(t.payloads().all(is_bounded_past));
        }
    }
    assert!(checked > 200);
}

#[test]
fn nested_release_needs_unbounded_payloads() {
    // Both words put one marker of each kind in every short window in the same
    // first-occurrence order, so no bounded-window term separates them, yet
    // only the second violates the formula.
    let phi = f("p1 R (p2 R p3)");
    let a = ab(&["p1", "p2", "p3"]);
    let n = 6;
    let c = safeltl::Letter(0b100);
    let b = safeltl::Letter(0b110);
    let m = safeltl::Letter(0b101);
    let gap = safeltl::Letter(0);
    let build = |marks: [safeltl::Letter; 4]| {
        let mut stem = Vec::new();
        for x in marks {
            stem.extend(std::iter::repeat(c).take(n));
            stem.push(x);
        }
        safeltl::LassoWord::new(a.clone(), stem, vec![c]).unwrap()
    };
    let kept = build([b, m, b, gap]);
    let broken = build([b, m, gap, b]);
    assert!(eval(&kept, &phi));
    assert!(!eval(&broken, &phi));

    let canon = canonicalize(&phi).unwrap();
    assert!(!canon.result.is_bounded());
    assert!(uses_nested_release(&phi));
    let out = canon.result.to_formula();
    assert!(eval(&kept, &out) && !eval(&broken, &out));
}

#[test]
fn galpha_has_a_single_global_past_body() {
    let a = p12();
    let words = lassos(&a, 3, 2);
    for phi in safety_corpus(&a, 200, 9, true, 47) {
        let c = canonicalize(&phi).unwrap().result;
        let g = to_galpha(&c);
        let Formula::Globally(body) = &g else {
            panic!("{g} is not a G formula");
        };
        assert!(is_pure_past(body), "{g}");
        for w in &words {
            assert_eq!(eval(w, &phi), eval(w, &g), "{phi} vs {g} on {w}");
        }
        let before = compile_progression(&phi, &a, DEFAULT_MAX_STATES).unwrap();
        let after = compile_safety(&g, &a, DEFAULT_MAX_STATES).unwrap();
        assert!(equivalent(&before, &after, DEFAULT_MAX_STATES).unwrap().is_none());
    }
}

#[test]
fn worked_examples() {
    let cases = [
        ("G p1", "G p1"),
        ("X p1", "X p1"),
        ("false R p1", "G p1"),
        ("G (p1 & X p2)", "G p1 & X (G p2)"),
        ("p1 R X p2", "X (Y p1 R p2)"),
    ];
    let a = p12();
    for (input, expected) in cases {
        let c = canonicalize(&f(input)).unwrap().result;
        let m1 = compile_canonical(&c, &a, DEFAULT_MAX_STATES).unwrap();
        let m2 = compile_safety(&f(expected), &a, DEFAULT_MAX_STATES).unwrap();
        assert!(
            equivalent(&m1, &m2, DEFAULT_MAX_STATES).unwrap().is_none(),
            "{input} gave {c}"
        );
    }
}

#[test]
fn refuses_inputs_outside_the_fragment() {
    for text in ["F p1", "G (p1 | G p2)", "!G p1"] {
        assert!(matches!(
            canonicalize(&f(text)),
            Err(CanonError::OutsideFragment(_))
        ));
    }
}

#[test]
fn nested_releases_under_other_operators() {
    let a = ab(&["p1", "p2", "p3"]);
    let words = lassos(&a, 2, 2);
    for text in [
        "X (p1 R (p2 R p3))",
        "X (! p2) R p2 R p2 R p1",
        "p3 R (p1 R (p2 R p3))",
        "p1 R X (p2 R X p3)",
        "X X (p1 R (p2 R p3)) & G (p1 | X p2)",
        "(p1 R (X p2 R p3)) | X (p2 R (p3 R p1))",
        "G (p1 R (p2 R p3))",
        "(p1 & Y p2) R (X p2 R (p3 R G p1))",
    ] {
        let phi = f(text);
        let out = canonicalize(&phi).unwrap().result.to_formula();
        for w in &words {
            assert_eq!(oracle(w, &phi), eval(w, &out), "{phi} vs {out} on {w}");
        }
    }
}
