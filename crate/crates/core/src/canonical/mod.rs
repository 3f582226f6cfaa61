//! Canonical forms: and/or trees of three term shapes with pure-past
//! payloads, plus the single-`G` normal form derived from them.

mod galpha;
mod pastify;
mod rewrite;

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::formula::Formula;
use crate::fragments::{is_bounded_past, is_pure_past};

pub use galpha::{galpha_body, to_galpha};
pub use pastify::pastify;
pub use rewrite::{canonicalize, Canonicalization, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("`{0}` is outside the safety fragment")]
    OutsideFragment(String),
    #[error("shift {k} is smaller than the next depth {needed} of `{formula}`")]
    ShiftTooSmall {
        formula: String,
        k: usize,
        needed: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    /// `X^i α`
    Point,
    /// `X^i G α`
    Always,
    /// `X^i (α R β)`
    Release,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalTerm {
    pub kind: TermKind,
    pub offset: usize,
    pub alpha: Formula,
    /// Right operand, present for [`TermKind::Release`] only.
    pub beta: Option<Formula>,
}

impl CanonicalTerm {
    pub fn point(offset: usize, alpha: Formula) -> Self {
        CanonicalTerm {
            kind: TermKind::Point,
            offset,
            alpha,
            beta: None,
        }
    }

    pub fn always(offset: usize, alpha: Formula) -> Self {
        CanonicalTerm {
            kind: TermKind::Always,
            offset,
            alpha,
            beta: None,
        }
    }

    pub fn release(offset: usize, alpha: Formula, beta: Formula) -> Self {
        CanonicalTerm {
            kind: TermKind::Release,
            offset,
            alpha,
            beta: Some(beta),
        }
    }

    pub fn payloads(&self) -> impl Iterator<Item = &Formula> {
        std::iter::once(&self.alpha).chain(self.beta.as_ref())
    }

    /// Every payload is bounded past (Booleans, `Y`, `Z`, bounded since).
    pub fn is_bounded(&self) -> bool {
        self.payloads().all(is_bounded_past)
    }

    pub fn to_formula(&self) -> Formula {
        let body = match self.kind {
            TermKind::Point => self.alpha.clone(),
            TermKind::Always => Formula::globally(self.alpha.clone()),
            TermKind::Release => Formula::release(
                self.alpha.clone(),
                self.beta.clone().expect("release term has a right operand"),
            ),
        };
        Formula::next_n(self.offset, body)
    }

    fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "kind": self.kind,
            "offset": self.offset,
            "alpha": self.alpha.to_string(),
        });
        if let Some(b) = &self.beta {
            v["beta"] = Value::String(b.to_string());
        }
        v
    }
}

/// And/or tree over canonical terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CanonicalFormula {
    Term(CanonicalTerm),
    And(Box<CanonicalFormula>, Box<CanonicalFormula>),
    Or(Box<CanonicalFormula>, Box<CanonicalFormula>),
}

impl CanonicalFormula {
    pub fn and(a: CanonicalFormula, b: CanonicalFormula) -> Self {
        CanonicalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: CanonicalFormula, b: CanonicalFormula) -> Self {
        CanonicalFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn terms(&self) -> Vec<&CanonicalTerm> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a CanonicalTerm>) {
        match self {
            CanonicalFormula::Term(t) => out.push(t),
            CanonicalFormula::And(a, b) | CanonicalFormula::Or(a, b) => {
                a.collect_terms(out);
                b.collect_terms(out);
            }
        }
    }

    /// All payloads bounded past: the output lies in the bounded canonical
    /// fragment.
    pub fn is_bounded(&self) -> bool {
        self.terms().iter().all(|t| t.is_bounded())
    }

    pub fn max_offset(&self) -> usize {
        self.terms().iter().map(|t| t.offset).max().unwrap_or(0)
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            CanonicalFormula::Term(t) => t.to_formula(),
            CanonicalFormula::And(a, b) => Formula::and(a.to_formula(), b.to_formula()),
            CanonicalFormula::Or(a, b) => Formula::or(a.to_formula(), b.to_formula()),
        }
    }

    pub(crate) fn shifted(self, by: usize) -> Self {
        match self {
            CanonicalFormula::Term(t) => CanonicalFormula::Term(t.shifted(by)),
            CanonicalFormula::And(a, b) => Self::and(a.shifted(by), b.shifted(by)),
            CanonicalFormula::Or(a, b) => Self::or(a.shifted(by), b.shifted(by)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CanonicalFormula::Term(t) => json!({ "term": t.to_json() }),
            CanonicalFormula::And(a, b) => json!({ "and": [a.to_json(), b.to_json()] }),
            CanonicalFormula::Or(a, b) => json!({ "or": [a.to_json(), b.to_json()] }),
        }
    }
}

impl fmt::Display for CanonicalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

impl Serialize for CanonicalFormula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Which payloads the recognizer admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PayloadClass {
    BoundedPast,
    PurePast,
}

impl PayloadClass {
    fn admits(self, f: &Formula) -> bool {
        match self {
            PayloadClass::BoundedPast => is_bounded_past(f),
            PayloadClass::PurePast => is_pure_past(f),
        }
    }
}

/// Reads `f` as a canonical formula, if it has that shape.
pub fn recognize(f: &Formula, payloads: PayloadClass) -> Option<CanonicalFormula> {
    if payloads.admits(f) {
        return Some(CanonicalFormula::Term(CanonicalTerm::point(0, f.clone())));
    }
    match f {
        Formula::And(a, b) => Some(CanonicalFormula::and(
            recognize(a, payloads)?,
            recognize(b, payloads)?,
        )),
        Formula::Or(a, b) => Some(CanonicalFormula::or(
            recognize(a, payloads)?,
            recognize(b, payloads)?,
        )),
        _ => recognize_term(f, payloads).map(CanonicalFormula::Term),
    }
}

fn recognize_term(f: &Formula, payloads: PayloadClass) -> Option<CanonicalTerm> {
    let mut offset = 0;
    let mut body = f;
    while let Formula::Next(inner) = body {
        offset += 1;
        body = inner;
    }
    match body {
        b if payloads.admits(b) => Some(CanonicalTerm::point(offset, b.clone())),
        Formula::Globally(a) if payloads.admits(a) => {
            Some(CanonicalTerm::always(offset, (**a).clone()))
        }
        Formula::Release(a, b) if payloads.admits(a) && payloads.admits(b) => Some(
            CanonicalTerm::release(offset, (**a).clone(), (**b).clone()),
        ),
        _ => None,
    }
}
