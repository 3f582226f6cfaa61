//! Safety monitor for canonical formulas.
//!
//! A state records the valuation of every payload subformula at the last
//! position read, the position itself (capped past the largest offset) and
//! the status of every term. A term only ever moves from pending to settled
//! or violated, so the and/or tree evaluated with pending read as true is an
//! optimistic verdict that turns false exactly once.

use std::collections::HashMap;

use crate::canonical::{CanonicalFormula, TermKind};
use crate::formula::Alphabet;
use crate::semantics::Dag;
use crate::word::Letter;

use super::{MonitorError, SafetyMonitor, TermStatus};

struct Term {
    kind: TermKind,
    offset: usize,
    alpha: usize,
    beta: usize,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Live {
    valuation: Option<Vec<bool>>,
    position: usize,
    status: Vec<TermStatus>,
}

enum State {
    Live(Live),
    Sink,
}

fn tree_holds(c: &CanonicalFormula, status: &[TermStatus], next: &mut usize) -> bool {
    match c {
        CanonicalFormula::Term(_) => {
            let ok = status[*next] != TermStatus::Violated;
            *next += 1;
            ok
        }
        CanonicalFormula::And(a, b) => {
            let x = tree_holds(a, status, next);
            tree_holds(b, status, next) && x
        }
        CanonicalFormula::Or(a, b) => {
            let x = tree_holds(a, status, next);
            tree_holds(b, status, next) || x
        }
    }
}

fn update(term: &Term, t: usize, val: &[bool], status: TermStatus) -> TermStatus {
    use TermStatus::*;
    if status != Pending || t < term.offset {
        return status;
    }
    match term.kind {
        TermKind::Point if t == term.offset => {
            if val[term.alpha] {
                Settled
            } else {
                Violated
            }
        }
        TermKind::Point => status,
        TermKind::Always => {
            if val[term.alpha] {
                Pending
            } else {
                Violated
            }
        }
        TermKind::Release => {
            if !val[term.beta] {
                Violated
            } else if val[term.alpha] {
                Settled
            } else {
                Pending
            }
        }
    }
}

pub fn compile_canonical(
    c: &CanonicalFormula,
    alphabet: &Alphabet,
    max_states: usize,
) -> Result<SafetyMonitor, MonitorError> {
    let terms = c.terms();
    for t in &terms {
        for p in t.payloads() {
            if p.has_future() {
                return Err(MonitorError::NotPurePast(p.to_string()));
            }
        }
    }
    let dag = Dag::build(terms.iter().flat_map(|t| t.payloads()));
    let props = dag.prop_indices(alphabet);
    let mut roots = dag.roots.iter().copied();
    let compiled: Vec<Term> = terms
        .iter()
        .map(|t| {
            let alpha = roots.next().expect("one root per payload");
            let beta = if t.beta.is_some() {
                roots.next().expect("one root per payload")
            } else {
                alpha
            };
            Term {
                kind: t.kind,
                offset: t.offset,
                alpha,
                beta,
            }
        })
        .collect();
    let cap = c.max_offset() + 1;

    let initial = Live {
        valuation: None,
        position: 0,
        status: vec![TermStatus::Pending; compiled.len()],
    };
    let mut states = vec![State::Live(initial.clone())];
    let mut index: HashMap<Live, u32> = HashMap::from([(initial, 0)]);
    let mut sink: Option<u32> = None;
    let mut next = Vec::new();
    let mut scratch = vec![false; dag.ops.len()];
    let mut s = 0;
    while s < states.len() {
        let live = match &states[s] {
            State::Sink => {
                next.extend(std::iter::repeat(s as u32).take(alphabet.letter_count()));
                s += 1;
                continue;
            }
            State::Live(l) => l.clone(),
        };
        for l in Letter::all(alphabet) {
            dag.past_step(live.valuation.as_deref(), l, &props, &mut scratch);
            let status: Vec<TermStatus> = compiled
                .iter()
                .zip(&live.status)
                .map(|(term, &st)| update(term, live.position, &scratch, st))
                .collect();
            let target = if tree_holds(c, &status, &mut 0) {
                let key = Live {
                    valuation: Some(scratch.clone()),
                    position: (live.position + 1).min(cap),
                    status,
                };
                match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = states.len() as u32;
                        index.insert(key.clone(), t);
                        states.push(State::Live(key));
                        t
                    }
                }
            } else {
                *sink.get_or_insert_with(|| {
                    states.push(State::Sink);
                    (states.len() - 1) as u32
                })
            };
            if states.len() > max_states {
                return Err(MonitorError::TooManyStates(max_states));
            }
            next.push(target);
        }
        s += 1;
    }

    let reject = states.iter().map(|s| matches!(s, State::Sink)).collect();
    let labels = states
        .iter()
        .map(|s| match s {
            State::Sink => "reject".to_owned(),
            State::Live(l) => {
                let marks: String = l
                    .status
                    .iter()
                    .map(|st| match st {
                        TermStatus::Pending => 'P',
                        TermStatus::Settled => 'S',
                        TermStatus::Violated => 'V',
                    })
                    .collect();
                let pos = if l.position == cap {
                    format!("t>={cap}")
                } else {
                    format!("t={}", l.position)
                };
                format!("{pos} [{marks}]")
            }
        })
        .collect();
    let status = states
        .iter()
        .map(|s| match s {
            State::Sink => Vec::new(),
            State::Live(l) => l.status.clone(),
        })
        .collect();
    Ok(SafetyMonitor::from_parts(
        alphabet.clone(),
        next,
        reject,
        labels,
        Some(status),
    ))
}
