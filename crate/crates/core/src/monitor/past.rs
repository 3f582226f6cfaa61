use std::collections::HashMap;

use crate::formula::{Alphabet, Formula};
use crate::semantics::Dag;
use crate::word::{FiniteWord, Letter};

use super::MonitorError;

/// Deterministic machine reading a finite word and reporting the truth of a
/// pure-past formula at the last position read.
///
/// State 0 is the state before any letter; its output is `false`. Every
/// other state is the valuation of the formula's subformula closure.
#[derive(Debug, Clone)]
pub struct PastMonitor {
    alphabet: Alphabet,
    letters: usize,
    valuations: Vec<Option<Vec<bool>>>,
    next: Vec<u32>,
    output: Vec<bool>,
}

impl PastMonitor {
    pub fn compile(
        alpha: &Formula,
        alphabet: &Alphabet,
        max_states: usize,
    ) -> Result<Self, MonitorError> {
        if alpha.has_future() {
            return Err(MonitorError::NotPurePast(alpha.to_string()));
        }
        let dag = Dag::build([alpha]);
        let root = dag.roots[0];
        let props = dag.prop_indices(alphabet);
        let letters = alphabet.letter_count();
        let mut valuations: Vec<Option<Vec<bool>>> = vec![None];
        let mut index: HashMap<Vec<bool>, u32> = HashMap::new();
        let mut next = Vec::new();
        let mut scratch = vec![false; dag.ops.len()];
        let mut s = 0;
        while s < valuations.len() {
            for l in Letter::all(alphabet) {
                dag.past_step(valuations[s].as_deref(), l, &props, &mut scratch);
                let target = match index.get(&scratch) {
                    Some(&t) => t,
                    None => {
                        if valuations.len() >= max_states {
                            return Err(MonitorError::TooManyStates(max_states));
                        }
                        let t = valuations.len() as u32;
                        index.insert(scratch.clone(), t);
                        valuations.push(Some(scratch.clone()));
                        t
                    }
                };
                next.push(target);
            }
            s += 1;
        }
        let output = valuations
            .iter()
            .map(|v| v.as_ref().is_some_and(|v| v[root]))
            .collect();
        Ok(PastMonitor {
            alphabet: alphabet.clone(),
            letters,
            valuations,
            next,
            output,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.valuations.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn step(&self, state: usize, letter: Letter) -> usize {
        self.next[state * self.letters + letter.0 as usize] as usize
    }

    pub fn output(&self, state: usize) -> bool {
        self.output[state]
    }

    /// Truth of the formula at the last position of `word`.
    pub fn run(&self, word: &FiniteWord) -> bool {
        let s = word
            .letters()
            .iter()
            .fold(self.initial(), |s, &l| self.step(s, l));
        self.output(s)
    }

    /// The formula is false at every position of every word.
    pub fn never_holds(&self) -> bool {
        !self.output.iter().any(|&v| v)
    }

    /// Number of distinct outputs over non-initial states.
    pub fn output_classes(&self) -> usize {
        let mut seen = [false; 2];
        for v in &self.output[1..] {
            seen[*v as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }
}
