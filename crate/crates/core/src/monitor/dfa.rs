use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::formula::Alphabet;
use crate::word::{LassoWord, Letter};

/// Per-term progress recorded by the canonical term machine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TermStatus {
    Pending,
    Settled,
    Violated,
}

/// Explicit deterministic safety automaton. State 0 is initial; an infinite
/// word is accepted iff its run never enters a reject state. Reject states are
/// absorbing.
#[derive(Debug, Clone)]
pub struct SafetyMonitor {
    alphabet: Alphabet,
    letters: usize,
    next: Vec<u32>,
    reject: Vec<bool>,
    labels: Vec<String>,
    term_status: Option<Vec<Vec<TermStatus>>>,
}

impl SafetyMonitor {
    pub(crate) fn from_parts(
        alphabet: Alphabet,
        next: Vec<u32>,
        reject: Vec<bool>,
        labels: Vec<String>,
        term_status: Option<Vec<Vec<TermStatus>>>,
    ) -> Self {
        let letters = alphabet.letter_count();
        debug_assert_eq!(next.len(), reject.len() * letters);
        SafetyMonitor {
            alphabet,
            letters,
            next,
            reject,
            labels,
            term_status,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.reject.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn step(&self, state: usize, letter: Letter) -> usize {
        self.next[state * self.letters + letter.0 as usize] as usize
    }

    pub fn is_reject(&self, state: usize) -> bool {
        self.reject[state]
    }

    pub fn label(&self, state: usize) -> &str {
        &self.labels[state]
    }

    /// Term statuses of a state, for monitors built from canonical terms.
    /// Reject states carry no statuses.
    pub fn term_status(&self, state: usize) -> Option<&[TermStatus]> {
        self.term_status.as_ref().map(|t| t[state].as_slice())
    }

    /// Runs the monitor on a lasso word.
    pub fn accepts(&self, word: &LassoWord) -> bool {
        let mut s = self.initial();
        for &l in word.stem() {
            s = self.step(s, l);
            if self.is_reject(s) {
                return false;
            }
        }
        let mut seen = HashSet::new();
        while seen.insert(s) {
            for &l in word.cycle() {
                s = self.step(s, l);
                if self.is_reject(s) {
                    return false;
                }
            }
        }
        true
    }

    /// Graphviz rendering with one edge per (source, target) pair, labelled
    /// by the letters taking it.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph monitor {\n  rankdir=LR;\n  init [shape=point];\n  init -> s0;\n");
        for s in 0..self.state_count() {
            let shape = if self.reject[s] { "doublecircle" } else { "circle" };
            let label = self.labels[s].replace('"', "\\\"");
            let _ = writeln!(out, "  s{s} [shape={shape}, label=\"{label}\"];");
        }
        for s in 0..self.state_count() {
            let mut targets: Vec<(usize, Vec<String>)> = Vec::new();
            for l in Letter::all(&self.alphabet) {
                let t = self.step(s, l);
                let text = l.display(&self.alphabet);
                match targets.iter_mut().find(|(x, _)| *x == t) {
                    Some((_, ls)) => ls.push(text),
                    None => targets.push((t, vec![text])),
                }
            }
            for (t, ls) in targets {
                let _ = writeln!(out, "  s{s} -> s{t} [label=\"{}\"];", ls.join(" "));
            }
        }
        out.push_str("}\n");
        out
    }
}
