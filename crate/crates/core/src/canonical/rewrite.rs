//! Rewriting of the layered safety fragment into canonical terms.
//!
//! The input is decomposed top-down. A release distributes over the
//! conjunctive canonical form of its right operand; each term shape then has
//! a closed-form combination with the (pastified) left operand.
//!
//! Those rules give terms that hold at a position iff the input does, so they
//! compose under `X`, `G` and `R`. A release nested on the right of another
//! release has no such form; the enclosing future-layer formula is then
//! turned as a whole into one `G` term whose past payload tracks the
//! admissible starting points, valid at the first position only.

use serde::Serialize;

use crate::formula::{next_depth, Alphabet, Formula};
use crate::monitor::PastMonitor;
use crate::fragments::{layer_of, Layer};

use super::{pastify, CanonError, CanonicalFormula, CanonicalTerm, TermKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: &'static str,
    pub input: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Canonicalization {
    pub result: CanonicalFormula,
    pub trace: Vec<TraceStep>,
}

/// Rewrites a formula of the layered safety fragment (past allowed) into an
/// equivalent canonical formula.
pub fn canonicalize(f: &Formula) -> Result<Canonicalization, CanonError> {
    if layer_of(f) > Layer::Boolean {
        return Err(CanonError::OutsideFragment(f.to_string()));
    }
    let mut rw = Rewriter { trace: Vec::new() };
    let result = rw.formula(f)?;
    Ok(Canonicalization {
        result,
        trace: rw.trace,
    })
}

struct Rewriter {
    trace: Vec<TraceStep>,
}

fn term(t: CanonicalTerm) -> CanonicalFormula {
    CanonicalFormula::Term(t)
}

fn is_bounded_layer(f: &Formula) -> bool {
    layer_of(f) <= Layer::BoundedFuture
}

impl Rewriter {
    fn log(&mut self, rule: &'static str, f: &Formula) {
        self.trace.push(TraceStep {
            rule,
            input: f.to_string(),
        });
    }

    fn bounded(&mut self, rule: &'static str, f: &Formula) -> Result<(usize, Formula), CanonError> {
        self.log(rule, f);
        let m = next_depth(f);
        Ok((m, pastify(f, m)?))
    }

    /// Boolean layer: only ever evaluated at the first position.
    fn formula(&mut self, f: &Formula) -> Result<CanonicalFormula, CanonError> {
        use Formula::*;
        if is_bounded_layer(f) {
            let (m, alpha) = self.bounded("bounded-to-point", f)?;
            return Ok(term(CanonicalTerm::point(m, alpha)));
        }
        match f {
            And(a, b) => {
                self.log("split-and", f);
                Ok(CanonicalFormula::and(self.formula(a)?, self.formula(b)?))
            }
            Or(a, b) => {
                self.log("split-or", f);
                Ok(CanonicalFormula::or(self.formula(a)?, self.formula(b)?))
            }
            Implies(a, b) => {
                self.log("implication-to-or", f);
                let a = Formula::not((**a).clone());
                Ok(CanonicalFormula::or(self.formula(&a)?, self.formula(b)?))
            }
            _ if layer_of(f) <= Layer::Future => self.future(f),
            _ => Err(CanonError::OutsideFragment(f.to_string())),
        }
    }

    /// A future-layer formula read at the first position. Falls back to a
    /// single anchored term when the position-independent rules run into a
    /// release nested on the right of another release.
    fn future(&mut self, f: &Formula) -> Result<CanonicalFormula, CanonError> {
        let mark = self.trace.len();
        if let Some(c) = self.shiftable(f)? {
            return Ok(c);
        }
        self.trace.truncate(mark);
        self.log("nested-release", f);
        let bad = violation(f, &Formula::weak_yesterday(Formula::False), 0)?;
        Ok(term(CanonicalTerm::always(0, Formula::not(bad))))
    }

    /// Canonical form equivalent to `f` at every position, if the rules
    /// without anchoring reach one.
    fn shiftable(&mut self, f: &Formula) -> Result<Option<CanonicalFormula>, CanonError> {
        use Formula::*;
        if is_bounded_layer(f) {
            let (m, alpha) = self.bounded("bounded-to-point", f)?;
            return Ok(Some(term(CanonicalTerm::point(m, alpha))));
        }
        match f {
            And(a, b) => {
                self.log("split-and", f);
                let (Some(a), Some(b)) = (self.shiftable(a)?, self.shiftable(b)?) else {
                    return Ok(None);
                };
                Ok(Some(CanonicalFormula::and(a, b)))
            }
            Next(a) => {
                self.log("next-to-offset", f);
                Ok(self.shiftable(a)?.map(|c| c.shifted(1)))
            }
            Globally(a) => self.globally(a).map(Some),
            Release(a, b) if **a == False => {
                self.log("false-release-to-globally", f);
                self.globally(b).map(Some)
            }
            Release(a, b) => match self.shiftable(b)? {
                Some(right) => self.release(a, right),
                None => Ok(None),
            },
            _ => Err(CanonError::OutsideFragment(f.to_string())),
        }
    }

    /// Canonical form of `G f`.
    fn globally(&mut self, f: &Formula) -> Result<CanonicalFormula, CanonError> {
        use Formula::*;
        if is_bounded_layer(f) {
            let (m, alpha) = self.bounded("globally-bounded-to-always", f)?;
            return Ok(term(CanonicalTerm::always(m, alpha)));
        }
        match f {
            And(a, b) => {
                self.log("globally-over-and", f);
                Ok(CanonicalFormula::and(self.globally(a)?, self.globally(b)?))
            }
            Next(a) => {
                self.log("globally-next-to-next-globally", f);
                Ok(self.globally(a)?.shifted(1))
            }
            Globally(a) => {
                self.log("globally-idempotent", f);
                self.globally(a)
            }
            Release(_, b) => {
                self.log("globally-release-to-globally", f);
                self.globally(b)
            }
            _ => Err(CanonError::OutsideFragment(Formula::globally(f.clone()).to_string())),
        }
    }

    /// Canonical form of `left R right`, with `right` already canonical.
    fn release(
        &mut self,
        left: &Formula,
        right: CanonicalFormula,
    ) -> Result<Option<CanonicalFormula>, CanonError> {
        match right {
            CanonicalFormula::And(a, b) => {
                self.log("release-over-and", left);
                let (Some(a), Some(b)) = (self.release(left, *a)?, self.release(left, *b)?) else {
                    return Ok(None);
                };
                Ok(Some(CanonicalFormula::and(a, b)))
            }
            CanonicalFormula::Or(..) => Err(CanonError::OutsideFragment(format!(
                "{left} R ({})",
                right.to_formula()
            ))),
            CanonicalFormula::Term(t) => self.release_term(left, t),
        }
    }

    fn release_term(
        &mut self,
        left: &Formula,
        t: CanonicalTerm,
    ) -> Result<Option<CanonicalFormula>, CanonError> {
        let m = next_depth(left);
        let n = m.max(t.offset);
        let lag = n - t.offset;
        match t.kind {
            TermKind::Always => {
                self.log("release-of-always", left);
                Ok(Some(term(t)))
            }
            TermKind::Point => {
                let a = pastify(left, n)?;
                let b = Formula::yesterday_n(lag, t.alpha);
                if implies(&b, &a) {
                    // The left side holds wherever the right one first does.
                    self.log("release-of-implied-point", left);
                    Ok(Some(term(CanonicalTerm::point(n, b))))
                } else if implies(&a, &Formula::not(b.clone())) {
                    // The left side can only hold once the right one failed.
                    self.log("release-of-exclusive-point", left);
                    Ok(Some(term(CanonicalTerm::always(n, b))))
                } else {
                    self.log("release-of-point", left);
                    Ok(Some(term(CanonicalTerm::release(n, a, b))))
                }
            }
            TermKind::Release => {
                let a = pastify(left, n)?;
                let b = Formula::yesterday_n(lag, t.alpha.clone());
                let c = Formula::yesterday_n(lag, t.beta.clone().expect("release term has a right operand"));
                if implies(&a, &b) {
                    // The inner release is already released where the outer one is.
                    self.log("nested-release-inner-released", left);
                    let point = CanonicalTerm::point(t.offset, t.beta.expect("checked above"));
                    self.release_term(left, point)
                } else if implies(&c, &a) {
                    // The outer release is released at the first position.
                    self.log("nested-release-outer-released", left);
                    Ok(Some(term(t)))
                } else {
                    Ok(None)
                }
            }
        }
    }
}

/// `x → y` holds at every position of every word, for pure-past `x`, `y`.
/// Gives up (answers no) past the state limit.
fn implies(x: &Formula, y: &Formula) -> bool {
    let f = Formula::and(x.clone(), Formula::not(y.clone()));
    let Ok(alphabet) = Alphabet::from_formulas([&f]) else {
        return false;
    };
    PastMonitor::compile(&f, &alphabet, IMPLICATION_STATES).is_ok_and(|m| m.never_holds())
}

const IMPLICATION_STATES: usize = 4096;

fn and_simplified(a: Formula, b: Formula) -> Formula {
    match (a, b) {
        (Formula::True, x) | (x, Formula::True) => x,
        (a, b) => Formula::and(a, b),
    }
}

fn is_first_position(s: &Formula) -> bool {
    matches!(s, Formula::WeakYesterday(a) if **a == Formula::False)
}

/// Past formula that becomes true at some position iff `f` fails at some
/// admissible position `j`, where `j` is admissible iff `start` holds at
/// `j + lag` and `start` is false before `lag`.
fn violation(f: &Formula, start: &Formula, lag: usize) -> Result<Formula, CanonError> {
    use Formula::*;
    if is_bounded_layer(f) {
        let m = next_depth(f);
        let d = m.max(lag);
        return Ok(and_simplified(
            Formula::yesterday_n(d - lag, start.clone()),
            Formula::not(Formula::yesterday_n(d - m, pastify(f, m)?)),
        ));
    }
    match f {
        And(a, b) => Ok(Formula::or(
            violation(a, start, lag)?,
            violation(b, start, lag)?,
        )),
        Next(a) if lag > 0 => violation(a, start, lag - 1),
        Next(a) => violation(a, &Formula::yesterday(start.clone()), 0),
        Globally(a) => violation(a, &once_simplified(start), lag),
        Release(a, b) if **a == False => violation(b, &once_simplified(start), lag),
        Release(a, b) => {
            let m = next_depth(a);
            let d = m.max(lag);
            let psi = Formula::yesterday_n(d - m, pastify(a, m)?);
            let next_start = if is_first_position(start) && lag == 0 {
                // Only j = 0 is admissible: no `a` anywhere before the anchor.
                let seen = and_simplified(psi, Formula::yesterday_n(m, Formula::True));
                and_simplified(
                    Formula::yesterday_n(m, Formula::True),
                    Formula::not(Formula::yesterday(Formula::once(seen))),
                )
            } else {
                let anchor = Formula::yesterday_n(d - lag, start.clone());
                let clear = Formula::not(psi);
                Formula::or(
                    anchor.clone(),
                    Formula::yesterday(Formula::since(
                        clear.clone(),
                        Formula::and(anchor, clear),
                    )),
                )
            };
            violation(b, &next_start, d)
        }
        _ => Err(CanonError::OutsideFragment(f.to_string())),
    }
}

fn once_simplified(start: &Formula) -> Formula {
    if is_first_position(start) || *start == Formula::True {
        Formula::True
    } else {
        Formula::once(start.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn canon(s: &str) -> CanonicalFormula {
        canonicalize(&parse_open(s).unwrap()).unwrap().result
    }

    #[test]
    fn always_with_offset() {
        let c = canon("X X G (p | Y p | Y Y p)");
        let t = c.terms()[0].clone();
        assert_eq!((t.kind, t.offset), (TermKind::Always, 2));
        assert_eq!(t.alpha.to_string(), "p | Y p | Y (Y p)");
        assert!(c.is_bounded());
    }

    #[test]
    fn past_payload_kept() {
        let c = canon("G (!p2 -> H p1)");
        assert_eq!(c.terms().len(), 1);
        let t = c.terms()[0];
        assert_eq!((t.kind, t.offset), (TermKind::Always, 0));
        assert_eq!(t.alpha, parse_open("!p2 -> H p1").unwrap());
    }

    #[test]
    fn release_of_point_aligns_offsets() {
        let c = canon("X p R X X q");
        let t = c.terms()[0];
        assert_eq!((t.kind, t.offset), (TermKind::Release, 2));
        assert_eq!(t.alpha.to_string(), "Y p");
        assert_eq!(t.beta.as_ref().unwrap().to_string(), "q");
    }

    #[test]
    fn nested_release_becomes_always() {
        let c = canon("p1 R (p2 R p3)");
        let t = c.terms()[0];
        assert_eq!(t.kind, TermKind::Always);
        assert!(!c.is_bounded());
    }

    fn kinds(s: &str) -> Vec<TermKind> {
        canon(s).terms().iter().map(|t| t.kind).collect()
    }

    #[test]
    fn decided_releases_collapse() {
        assert_eq!(kinds("(p | q) R p"), [TermKind::Point]);
        assert_eq!(kinds("(p & q) R !p"), [TermKind::Always]);
        // Inner release already released by the outer left side.
        assert_eq!(kinds("p R (p R q)"), [TermKind::Release]);
        // Right side of the inner release forces the outer left side.
        assert_eq!(kinds("q R (p R q)"), [TermKind::Release]);
        assert!(canon("p1 R (p2 R p3)").terms()[0].kind == TermKind::Always);
    }

    #[test]
    fn implication_is_pointwise_validity() {
        let f = |s: &str| parse_open(s).unwrap();
        assert!(implies(&f("p & Y q"), &f("O q")));
        assert!(implies(&f("H p"), &f("p")));
        assert!(!implies(&f("O q"), &f("q")));
    }

    #[test]
    fn outside_fragment_is_rejected() {
        assert!(canonicalize(&parse_open("G (p | G q)").unwrap()).is_err());
        assert!(canonicalize(&parse_open("F p").unwrap()).is_err());
    }

    #[test]
    fn trace_is_recorded() {
        let r = canonicalize(&parse_open("G (p & X q)").unwrap()).unwrap();
        assert_eq!(r.trace[0].rule, "globally-bounded-to-always");
    }
}
