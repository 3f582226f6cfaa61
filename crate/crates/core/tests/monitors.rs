mod common;

use common::*;
use rand::Rng;
use safeltl::canonical::{canonicalize, CanonicalFormula};
use safeltl::formula::{parse_open, Formula};
use safeltl::monitor::{
    builder, builders, compile_canonical, compile_past, compile_safety, contains, equivalent,
    MonitorError, SafetyMonitor, Side, TermStatus, DEFAULT_MAX_STATES,
};
use safeltl::semantics::{eval, evalfin};
use safeltl::word::FiniteWord;

const CAP: usize = DEFAULT_MAX_STATES;

fn f(text: &str) -> Formula {
    parse_open(text).unwrap()
}

#[test]
fn past_monitors_match_finite_evaluation() {
    let a = p12();
    let g = generator(&a);
    let mut r = rng(53);
    let words: Vec<FiniteWord> = (1..=5).flat_map(|n| FiniteWord::enumerate(&a, n)).collect();
    for n in 0..150 {
        let alpha = g.past(&mut r, 1 + n % 9, n % 2 == 1);
        let m = compile_past(&alpha, &a, CAP).unwrap();
        for w in &words {
            assert_eq!(m.run(w), evalfin(w, &alpha).unwrap(), "{alpha} on {w:?}");
        }
    }
}

#[test]
fn safety_monitors_match_evaluation() {
    let a = p12();
    let words = lassos(&a, 3, 2);
    for with_past in [false, true] {
        for phi in safety_corpus(&a, 200, 9, with_past, 59) {
            for b in builders() {
                let m = match b.build(&phi, &a, CAP) {
                    Ok(m) => m,
                    Err(MonitorError::Unsupported { .. }) => continue,
                    Err(e) => panic!("{} on {phi}: {e}", b.name()),
                };
                for w in &words {
                    assert_eq!(m.accepts(w), eval(w, &phi), "{} on {phi} and {w}", b.name());
                }
            }
        }
    }
}

#[test]
fn progression_handles_safety_formulas_outside_the_layers() {
    let a = p12();
    let words = lassos(&a, 3, 2);
    for text in [
        "G (p1 | G p2)",
        "G (p1 -> X (p2 R p1)) | G p2",
        "X (p1 | G (p2 & O p1))",
        "(p1 U[0,2] p2) | G !p1",
    ] {
        let phi = f(text);
        let m = builder("progression").unwrap().build(&phi, &a, CAP).unwrap();
        for w in &words {
            assert_eq!(m.accepts(w), eval(w, &phi), "{phi} on {w}");
        }
    }
}

fn tree_value(c: &CanonicalFormula, status: &[TermStatus], next: &mut usize) -> bool {
    match c {
        CanonicalFormula::Term(_) => {
            *next += 1;
            status[*next - 1] != TermStatus::Violated
        }
        CanonicalFormula::And(x, y) => {
            let l = tree_value(x, status, next);
            tree_value(y, status, next) && l
        }
        CanonicalFormula::Or(x, y) => {
            let l = tree_value(x, status, next);
            tree_value(y, status, next) || l
        }
    }
}

#[test]
fn term_machine_runs_are_monotone() {
    let a = p12();
    let mut r = rng(61);
    let letters = letters_of(&a);
    for phi in safety_corpus(&a, 150, 9, true, 67) {
        let c = canonicalize(&phi).unwrap().result;
        let m = compile_canonical(&c, &a, CAP).unwrap();
        for _ in 0..20 {
            let mut s = m.initial();
            let mut before: Vec<TermStatus> = m.term_status(s).unwrap().to_vec();
            for _ in 0..12 {
                s = m.step(s, letters[r.gen_range(0..letters.len())]);
                if m.is_reject(s) {
                    for &l in &letters {
                        assert!(m.is_reject(m.step(s, l)));
                    }
                    break;
                }
                let now = m.term_status(s).unwrap().to_vec();
                for (old, new) in before.iter().zip(&now) {
                    assert!(*old == TermStatus::Pending || old == new, "{phi}");
                }
                assert!(tree_value(&c, &now, &mut 0), "{phi}");
                before = now;
            }
        }
    }
}

fn monitor(text: &str) -> SafetyMonitor {
    compile_safety(&f(text), &p12(), CAP).unwrap()
}

#[test]
fn containment_is_a_preorder() {
    let a = p12();
    let ms: Vec<SafetyMonitor> = safety_corpus(&a, 18, 6, true, 71)
        .iter()
        .map(|phi| compile_safety(phi, &a, CAP).unwrap())
        .collect();
    for x in &ms {
        assert!(contains(x, x, CAP).unwrap().is_none());
    }
    for x in &ms {
        for y in &ms {
            if contains(x, y, CAP).unwrap().is_some() {
                continue;
            }
            for z in &ms {
                if contains(y, z, CAP).unwrap().is_none() {
                    assert!(contains(x, z, CAP).unwrap().is_none());
                }
            }
        }
    }
}

#[test]
fn counterexamples_separate_the_inputs() {
    let a = p12();
    let corpus = safety_corpus(&a, 40, 7, true, 73);
    let mut emitted = 0;
    for pair in corpus.windows(2) {
        let (l, r) = (&pair[0], &pair[1]);
        let ml = compile_safety(l, &a, CAP).unwrap();
        let mr = compile_safety(r, &a, CAP).unwrap();
        if let Some(cex) = equivalent(&ml, &mr, CAP).unwrap() {
            emitted += 1;
            let (in_l, in_r) = (oracle(&cex.word, l), oracle(&cex.word, r));
            assert_ne!(in_l, in_r, "{l} vs {r} on {}", cex.word);
            assert_eq!(in_l, cex.holds_in == Side::Left);
        }
    }
    assert!(emitted > 20);
}

#[test]
fn late_detection_pair_is_equivalent() {
    // `G (Z p)` rejects one step after `G p` on the same words.
    assert!(equivalent(&monitor("G p1"), &monitor("G (Z p1)"), CAP).unwrap().is_none());
    assert!(equivalent(&monitor("G p1"), &monitor("G (Z Z p1)"), CAP).unwrap().is_none());
    assert!(equivalent(&monitor("G p1"), &monitor("G (Y p1)"), CAP).unwrap().is_some());
}

#[test]
fn dead_ends_count_as_rejection() {
    // `G (Y p1 -> false)` rejects one letter after a p1, whatever that letter is.
    let x = monitor("G !p1");
    let y = monitor("G (Y p1 -> false)");
    assert!(equivalent(&x, &y, CAP).unwrap().is_none());
}
