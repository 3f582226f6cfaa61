//! Shortcut expansion and negation normal form.

use std::sync::Arc;

use super::{Formula, Sub};

/// `⋁_{i=lo}^{hi} ( step^i rhs ∧ ⋀_{j<i} step^j lhs )`.
fn bounded_schema(lo: u32, hi: u32, lhs: Formula, rhs: Formula, step: fn(Formula) -> Formula) -> Formula {
    let shifted = |n: u32, f: &Formula| (0..n).fold(f.clone(), |acc, _| step(acc));
    let disjunct = |i: u32| {
        let head = shifted(i, &rhs);
        match (0..i).map(|j| shifted(j, &lhs)).reduce(Formula::and) {
            Some(conj) => Formula::and(head, conj),
            None => head,
        }
    };
    (lo..=hi)
        .map(disjunct)
        .reduce(Formula::or)
        .expect("bounded operator has a nonempty range")
}

fn map_children(f: &Formula, g: &mut impl FnMut(&Formula) -> Formula) -> Formula {
    use Formula::*;
    let mut s = |a: &Sub| Arc::new(g(a));
    match f {
        Prop(_) | True | False => f.clone(),
        Not(a) => Not(s(a)),
        Next(a) => Next(s(a)),
        Eventually(a) => Eventually(s(a)),
        Globally(a) => Globally(s(a)),
        Yesterday(a) => Yesterday(s(a)),
        WeakYesterday(a) => WeakYesterday(s(a)),
        Once(a) => Once(s(a)),
        Historically(a) => Historically(s(a)),
        And(a, b) => And(s(a), s(b)),
        Or(a, b) => Or(s(a), s(b)),
        Implies(a, b) => Implies(s(a), s(b)),
        Until(a, b) => Until(s(a), s(b)),
        Release(a, b) => Release(s(a), s(b)),
        Since(a, b) => Since(s(a), s(b)),
        Triggered(a, b) => Triggered(s(a), s(b)),
        BoundedUntil { lo, hi, lhs, rhs } => BoundedUntil {
            lo: *lo,
            hi: *hi,
            lhs: s(lhs),
            rhs: s(rhs),
        },
        BoundedSince { lo, hi, lhs, rhs } => BoundedSince {
            lo: *lo,
            hi: *hi,
            lhs: s(lhs),
            rhs: s(rhs),
        },
    }
}

/// Replaces bounded until/since with their `X`/`Y` expansions and leaves
/// every other operator untouched.
pub fn expand_bounded(f: &Formula) -> Formula {
    match f {
        Formula::BoundedUntil { lo, hi, lhs, rhs } => {
            bounded_schema(*lo, *hi, expand_bounded(lhs), expand_bounded(rhs), Formula::next)
        }
        Formula::BoundedSince { lo, hi, lhs, rhs } => bounded_schema(
            *lo,
            *hi,
            expand_bounded(lhs),
            expand_bounded(rhs),
            Formula::yesterday,
        ),
        _ => map_children(f, &mut expand_bounded),
    }
}

/// Rewrites into the core operator set
/// `p, true, false, !, &, |, X, U, R, Y, Z, S`.
pub fn expand_shortcuts(f: &Formula) -> Formula {
    use Formula::*;
    let e = expand_shortcuts;
    match f {
        Implies(a, b) => Formula::or(Formula::not(e(a)), e(b)),
        Eventually(a) => Formula::until(True, e(a)),
        Globally(a) => Formula::release(False, e(a)),
        Once(a) => Formula::since(True, e(a)),
        Historically(a) => Formula::not(Formula::since(True, Formula::not(e(a)))),
        Triggered(a, b) => Formula::not(Formula::since(
            Formula::not(e(a)),
            Formula::not(e(b)),
        )),
        BoundedUntil { lo, hi, lhs, rhs } => {
            bounded_schema(*lo, *hi, e(lhs), e(rhs), Formula::next)
        }
        BoundedSince { lo, hi, lhs, rhs } => {
            bounded_schema(*lo, *hi, e(lhs), e(rhs), Formula::yesterday)
        }
        _ => map_children(f, &mut expand_shortcuts),
    }
}

/// Negation normal form: negations only directly above propositions.
///
/// Bounded operators and implications are expanded first; all other derived
/// operators are kept and negated through their duals.
pub fn nnf(f: &Formula) -> Formula {
    push(&expand_bounded(f), false)
}

fn push(f: &Formula, negated: bool) -> Formula {
    use Formula::*;
    let pos = |a: &Formula| push(a, false);
    let neg = |a: &Formula| push(a, true);
    if !negated {
        return match f {
            Not(a) => neg(a),
            Implies(a, b) => Formula::or(neg(a), pos(b)),
            _ => map_children(f, &mut |c| push(c, false)),
        };
    }
    match f {
        Prop(_) => Formula::not(f.clone()),
        True => False,
        False => True,
        Not(a) => pos(a),
        And(a, b) => Formula::or(neg(a), neg(b)),
        Or(a, b) => Formula::and(neg(a), neg(b)),
        Implies(a, b) => Formula::and(pos(a), neg(b)),
        Next(a) => Formula::next(neg(a)),
        Until(a, b) => Formula::release(neg(a), neg(b)),
        Release(a, b) => Formula::until(neg(a), neg(b)),
        Eventually(a) => Formula::globally(neg(a)),
        Globally(a) => Formula::eventually(neg(a)),
        Yesterday(a) => Formula::weak_yesterday(neg(a)),
        WeakYesterday(a) => Formula::yesterday(neg(a)),
        Since(a, b) => Formula::triggered(neg(a), neg(b)),
        Triggered(a, b) => Formula::since(neg(a), neg(b)),
        Once(a) => Formula::historically(neg(a)),
        Historically(a) => Formula::once(neg(a)),
        BoundedUntil { .. } | BoundedSince { .. } => unreachable!("expanded before nnf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn bounded_until_instances() {
        let f = Formula::bounded_until(0, 0, p("p"), p("q"));
        assert_eq!(expand_shortcuts(&f), p("q"));
        let f = Formula::bounded_until(1, 1, p("p"), p("q"));
        assert_eq!(expand_shortcuts(&f), Formula::and(Formula::next(p("q")), p("p")));
        let f = Formula::bounded_since(0, 1, p("p"), p("q"));
        assert_eq!(
            expand_shortcuts(&f),
            Formula::or(p("q"), Formula::and(Formula::yesterday(p("q")), p("p")))
        );
    }

    #[test]
    fn once_is_true_since() {
        let f = Formula::once(p("p"));
        assert_eq!(expand_shortcuts(&f), Formula::since(Formula::True, p("p")));
    }

    #[test]
    fn expansion_leaves_core_operators_only() {
        let f = parse_open("G (a -> O b) & (c T d) & F H e & a U[1,3] b").unwrap();
        let e = expand_shortcuts(&f);
        assert!(!e.any(&|n| matches!(
            n,
            Formula::Implies(..)
                | Formula::Eventually(_)
                | Formula::Globally(_)
                | Formula::Once(_)
                | Formula::Historically(_)
                | Formula::Triggered(..)
                | Formula::BoundedUntil { .. }
                | Formula::BoundedSince { .. }
        )));
    }

    #[test]
    fn nnf_duals() {
        let f = Formula::not(Formula::globally(p("p")));
        assert_eq!(nnf(&f), Formula::eventually(Formula::not(p("p"))));
        let f = Formula::not(Formula::yesterday(p("p")));
        assert_eq!(nnf(&f), Formula::weak_yesterday(Formula::not(p("p"))));
        assert_eq!(nnf(&p("p")), p("p"));
        let f = parse_open("!(a U b) & !(c S d) & !(e -> X f)").unwrap();
        let n = nnf(&f);
        assert_eq!(
            n.to_string(),
            "! a R ! b & ! c T ! d & (e & X (! f))"
        );
    }
}
