//! Syntactic fragment membership.
//!
//! Layer membership for the safety fragment is computed bottom-up: every
//! subformula gets the lowest [`Layer`] that accepts it, where a formula in a
//! layer also belongs to every layer above it.

use std::collections::HashSet;

use serde::Serialize;

use crate::canonical::{recognize, PayloadClass};
use crate::formula::{nnf, Formula};

/// Grammar layers of the safety fragment, lowest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    PurePast,
    BoundedFuture,
    Future,
    Boolean,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerTraceEntry {
    pub subformula: String,
    pub layer: Layer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FragmentFlags {
    pub is_ltlp: bool,
    pub is_pure_past: bool,
    pub is_bounded_past: bool,
    pub is_bounded_future_layer: bool,
    pub is_future_layer: bool,
    pub is_ltlebr: bool,
    pub is_ltlebrp: bool,
    pub is_safetyltl: bool,
    pub is_canonical: bool,
    /// Canonical shape with unrestricted pure-past payloads.
    pub is_canonical_past: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FragmentReport {
    pub formula: String,
    pub flags: FragmentFlags,
    pub layer_trace: Vec<LayerTraceEntry>,
}

/// Only past operators and Boolean connectives.
pub fn is_pure_past(f: &Formula) -> bool {
    !f.has_future()
}

/// Booleans, `Y`, `Z` and bounded since only.
pub fn is_bounded_past(f: &Formula) -> bool {
    use Formula::*;
    match f {
        Prop(_) | True | False => true,
        Not(a) | Yesterday(a) | WeakYesterday(a) => is_bounded_past(a),
        And(a, b) | Or(a, b) | Implies(a, b) => is_bounded_past(a) && is_bounded_past(b),
        BoundedSince { lhs, rhs, .. } => is_bounded_past(lhs) && is_bounded_past(rhs),
        _ => false,
    }
}

/// Future-only formula whose negation normal form has no `U` and no `F`.
pub fn is_safetyltl(f: &Formula) -> bool {
    !f.has_past()
        && !nnf(f).any(&|n| matches!(n, Formula::Until(..) | Formula::Eventually(_)))
}

/// Lowest layer accepting `f` (past operators allowed in the pure-past layer).
pub fn layer_of(f: &Formula) -> Layer {
    layer_with_notes(f, &mut |_, _, _| {})
}

fn layer_with_notes(
    f: &Formula,
    log: &mut impl FnMut(&Formula, Layer, Option<&'static str>),
) -> Layer {
    use Formula::*;
    use Layer::*;
    if is_pure_past(f) {
        log(f, PurePast, None);
        return PurePast;
    }
    let mut note = None;
    let layer = match f {
        Not(a) => {
            if layer_with_notes(a, log) <= BoundedFuture {
                BoundedFuture
            } else {
                Outside
            }
        }
        Or(a, b) => {
            let l = layer_with_notes(a, log).max(layer_with_notes(b, log));
            match l {
                PurePast | BoundedFuture => BoundedFuture,
                Future | Boolean => Boolean,
                Outside => Outside,
            }
        }
        Implies(a, b) => {
            note = Some("implication read as negated antecedent or consequent");
            let negated = match layer_with_notes(a, log) {
                PurePast | BoundedFuture => BoundedFuture,
                _ => Outside,
            };
            match negated.max(layer_with_notes(b, log)) {
                PurePast | BoundedFuture => BoundedFuture,
                Future | Boolean => Boolean,
                Outside => Outside,
            }
        }
        And(a, b) => {
            let l = layer_with_notes(a, log).max(layer_with_notes(b, log));
            if l <= BoundedFuture {
                note = Some("conjunction accepted as derived connective");
                BoundedFuture
            } else {
                l
            }
        }
        Next(a) => match layer_with_notes(a, log) {
            PurePast | BoundedFuture => BoundedFuture,
            Future => Future,
            _ => Outside,
        },
        BoundedUntil { lhs, rhs, .. } => {
            if layer_with_notes(lhs, log).max(layer_with_notes(rhs, log)) <= BoundedFuture {
                BoundedFuture
            } else {
                Outside
            }
        }
        Globally(a) => {
            if layer_with_notes(a, log) <= Future {
                Future
            } else {
                Outside
            }
        }
        Release(a, b) => {
            let left = layer_with_notes(a, log);
            let right = layer_with_notes(b, log);
            if left <= BoundedFuture && right <= Future {
                Future
            } else {
                Outside
            }
        }
        _ => {
            for c in f.children() {
                layer_with_notes(c, log);
            }
            Outside
        }
    };
    log(f, layer, note);
    layer
}

/// Membership in the safety fragment with past.
pub fn is_ltlebrp(f: &Formula) -> bool {
    layer_of(f) <= Layer::Boolean
}

/// Membership in the safety fragment without past operators.
pub fn is_ltlebr(f: &Formula) -> bool {
    !f.has_past() && is_ltlebrp(f)
}

pub fn classify(f: &Formula) -> FragmentReport {
    let mut trace = Vec::new();
    let mut seen = HashSet::new();
    let layer = layer_with_notes(f, &mut |sub, layer, note| {
        if seen.insert(sub.clone()) {
            trace.push(LayerTraceEntry {
                subformula: sub.to_string(),
                layer,
                note,
            });
        }
    });
    let pure_past = is_pure_past(f);
    let ltlebrp = layer <= Layer::Boolean;
    let flags = FragmentFlags {
        is_ltlp: true,
        is_pure_past: pure_past,
        is_bounded_past: is_bounded_past(f),
        is_bounded_future_layer: layer <= Layer::BoundedFuture,
        is_future_layer: layer <= Layer::Future,
        is_ltlebr: ltlebrp && !f.has_past(),
        is_ltlebrp: ltlebrp,
        is_safetyltl: is_safetyltl(f),
        is_canonical: recognize(f, PayloadClass::BoundedPast).is_some(),
        is_canonical_past: recognize(f, PayloadClass::PurePast).is_some(),
    };
    FragmentReport {
        formula: f.to_string(),
        flags,
        layer_trace: trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn flags(s: &str) -> FragmentFlags {
        classify(&parse_open(s).unwrap()).flags
    }

    #[test]
    fn phi_g_is_safety_but_not_in_the_layered_fragment() {
        let f = flags("G(p1 | G p2)");
        assert!(f.is_safetyltl);
        assert!(!f.is_ltlebr);
        assert!(!f.is_ltlebrp);
    }

    #[test]
    fn past_formula_under_globally() {
        let f = flags("G(!p2 -> H p1)");
        assert!(f.is_ltlebrp);
        assert!(!f.is_ltlebr);
        assert!(f.is_canonical_past);
        assert!(!f.is_canonical);
    }

    #[test]
    fn release_left_side_must_be_bounded() {
        assert!(!flags("G p2 | ((X G p2) R p1)").is_ltlebr);
        assert!(flags("p1 R (p2 R p3)").is_ltlebr);
        assert!(flags("p1 R (p2 R p3)").is_future_layer);
    }

    #[test]
    fn bounded_layers() {
        let f = flags("X p & q U[1,2] r");
        assert!(f.is_bounded_future_layer);
        assert!(f.is_ltlebr);
        assert!(f.is_safetyltl);
        assert!(!flags("G (G p)").is_bounded_future_layer);
        assert!(flags("G (G p)").is_future_layer);
        assert!(!flags("G (p | G q)").is_future_layer);
        assert!(!flags("F p").is_ltlebrp);
        assert!(!flags("F p").is_safetyltl);
        assert!(flags("!(F p)").is_safetyltl);
    }

    #[test]
    fn bounded_past_is_pure_past() {
        let f = flags("Y p & p S[1,2] Z q");
        assert!(f.is_bounded_past && f.is_pure_past);
        let f = flags("O p");
        assert!(!f.is_bounded_past && f.is_pure_past);
    }

    #[test]
    fn canonical_shapes() {
        assert!(flags("X X G (p | Y p | Y Y p)").is_canonical);
        assert!(flags("X (Y p R q) & G p").is_canonical);
        assert!(!flags("G p R q").is_canonical);
    }

    #[test]
    fn trace_notes_derived_conjunction() {
        let r = classify(&parse_open("X p & q").unwrap());
        let top = r.layer_trace.last().unwrap();
        assert_eq!(top.layer, Layer::BoundedFuture);
        assert!(top.note.is_some());
    }
}
