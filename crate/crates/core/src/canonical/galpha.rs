use crate::formula::Formula;

use super::{CanonicalFormula, CanonicalTerm, TermKind};

/// `Y^i (Z false)`: true exactly at position `i`.
fn at_position(i: usize) -> Formula {
    Formula::yesterday_n(i, Formula::weak_yesterday(Formula::False))
}

/// `Y^i true`: true exactly from position `i` on.
fn from_position(i: usize) -> Formula {
    Formula::yesterday_n(i, Formula::True)
}

fn term_body(t: &CanonicalTerm) -> Formula {
    let i = t.offset;
    match t.kind {
        TermKind::Point => Formula::implies(at_position(i), t.alpha.clone()),
        TermKind::Always if i == 0 => t.alpha.clone(),
        TermKind::Always => Formula::implies(from_position(i), t.alpha.clone()),
        TermKind::Release => {
            let beta = t.beta.clone().expect("release term has a right operand");
            let held_since_start =
                Formula::since(beta.clone(), Formula::and(beta.clone(), at_position(i)));
            let escaped = Formula::yesterday(Formula::once(Formula::and(
                t.alpha.clone(),
                held_since_start,
            )));
            Formula::implies(from_position(i), Formula::or(beta, escaped))
        }
    }
}

/// Pure-past `α` with `G α` equivalent to `c`.
pub fn galpha_body(c: &CanonicalFormula) -> Formula {
    match c {
        CanonicalFormula::Term(t) => term_body(t),
        CanonicalFormula::And(a, b) => Formula::and(galpha_body(a), galpha_body(b)),
        CanonicalFormula::Or(a, b) => Formula::or(
            Formula::historically(galpha_body(a)),
            Formula::historically(galpha_body(b)),
        ),
    }
}

/// Single-`G` form with a pure-past body.
pub fn to_galpha(c: &CanonicalFormula) -> Formula {
    Formula::globally(galpha_body(c))
}
