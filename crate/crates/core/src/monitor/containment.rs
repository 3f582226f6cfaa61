use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::word::{LassoWord, Letter};

use super::{MonitorError, SafetyMonitor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A word accepted by exactly one of two monitors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub word: LassoWord,
    pub holds_in: Side,
}

/// States from which the run can avoid rejection forever.
pub fn viable_states(m: &SafetyMonitor) -> Vec<bool> {
    let n = m.state_count();
    let letters: Vec<Letter> = Letter::all(m.alphabet()).collect();
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut live_succ = vec![0usize; n];
    let mut viable: Vec<bool> = (0..n).map(|s| !m.is_reject(s)).collect();
    for s in 0..n {
        for &l in &letters {
            let t = m.step(s, l);
            preds[t].push(s as u32);
            if viable[t] {
                live_succ[s] += 1;
            }
        }
    }
    let mut dead: Vec<usize> = (0..n).filter(|&s| viable[s] && live_succ[s] == 0).collect();
    for &s in &dead {
        viable[s] = false;
    }
    while let Some(t) = dead.pop() {
        for &p in &preds[t] {
            let p = p as usize;
            if viable[p] {
                live_succ[p] -= 1;
                if live_succ[p] == 0 {
                    viable[p] = false;
                    dead.push(p);
                }
            }
        }
    }
    viable
}

fn check_alphabets(a: &SafetyMonitor, b: &SafetyMonitor) -> Result<(), MonitorError> {
    if a.alphabet() != b.alphabet() {
        return Err(MonitorError::AlphabetMismatch);
    }
    Ok(())
}

/// `L(a) ⊆ L(b)`. On failure returns a word accepted by `a` and rejected
/// by `b`.
pub fn contains(
    a: &SafetyMonitor,
    b: &SafetyMonitor,
    max_states: usize,
) -> Result<Option<LassoWord>, MonitorError> {
    check_alphabets(a, b)?;
    let viable = viable_states(a);
    let letters: Vec<Letter> = Letter::all(a.alphabet()).collect();
    let start = (a.initial(), b.initial());
    if !viable[start.0] {
        return Ok(None);
    }
    let mut parent: HashMap<(usize, usize), Option<((usize, usize), Letter)>> =
        HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([start]);
    while let Some(pair) = queue.pop_front() {
        if b.is_reject(pair.1) {
            return Ok(Some(witness(a, &viable, &parent, pair, &letters)));
        }
        for &l in &letters {
            let next = (a.step(pair.0, l), b.step(pair.1, l));
            if !viable[next.0] || parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= max_states {
                return Err(MonitorError::TooManyStates(max_states));
            }
            parent.insert(next, Some((pair, l)));
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Path to `end`, then a greedy lasso inside `a`'s viable states.
fn witness(
    a: &SafetyMonitor,
    viable: &[bool],
    parent: &HashMap<(usize, usize), Option<((usize, usize), Letter)>>,
    end: (usize, usize),
    letters: &[Letter],
) -> LassoWord {
    let mut stem = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, l))) = parent.get(&cur) {
        stem.push(*l);
        cur = *prev;
    }
    stem.reverse();

    let mut s = end.0;
    let mut order: Vec<usize> = Vec::new();
    let mut seen = HashSet::new();
    let mut path: Vec<Letter> = Vec::new();
    while seen.insert(s) {
        order.push(s);
        let l = *letters
            .iter()
            .find(|&&l| viable[a.step(s, l)])
            .expect("viable state has a viable successor");
        path.push(l);
        s = a.step(s, l);
    }
    let loop_start = order.iter().position(|&x| x == s).expect("revisited state");
    stem.extend_from_slice(&path[..loop_start]);
    let cycle = path[loop_start..].to_vec();
    LassoWord::new(a.alphabet().clone(), stem, cycle).expect("nonempty loop")
}

/// Language equality; the counterexample comes from the failing direction.
pub fn equivalent(
    a: &SafetyMonitor,
    b: &SafetyMonitor,
    max_states: usize,
) -> Result<Option<Counterexample>, MonitorError> {
    if let Some(word) = contains(a, b, max_states)? {
        return Ok(Some(Counterexample {
            word,
            holds_in: Side::Left,
        }));
    }
    Ok(contains(b, a, max_states)?.map(|word| Counterexample {
        word,
        holds_in: Side::Right,
    }))
}
