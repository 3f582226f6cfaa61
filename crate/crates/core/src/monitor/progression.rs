//! Safety monitor by formula progression.
//!
//! The formula is put in negation normal form; its maximal pure-past
//! subformulas become atoms evaluated by the shared past recurrences. What
//! remains is built from `∧ ∨ X G R`, so an obligation is a set of
//! subformulas to hold from the next position on, and a state is a
//! subsumption-free disjunction of such sets. With only greatest-fixpoint
//! operators left, a word is satisfied iff progression never reaches the
//! empty disjunction.

use std::collections::{BTreeSet, HashMap};

use crate::formula::{nnf, Alphabet, Formula};
use crate::fragments::is_pure_past;
use crate::semantics::Dag;
use crate::word::Letter;

use super::{MonitorError, SafetyMonitor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    Atom(usize),
    And(u32, u32),
    Or(u32, u32),
    Next(u32),
    Globally(u32),
    Release(u32, u32),
}

type Clause = BTreeSet<u32>;
type Dnf = Vec<Clause>;

struct Obligations {
    nodes: Vec<Node>,
    index: HashMap<Formula, u32>,
    atoms: Vec<Formula>,
}

impl Obligations {
    fn intern(&mut self, f: &Formula) -> Result<u32, MonitorError> {
        if let Some(&n) = self.index.get(f) {
            return Ok(n);
        }
        let node = if is_pure_past(f) {
            self.atoms.push(f.clone());
            Node::Atom(self.atoms.len() - 1)
        } else {
            match f {
                Formula::And(a, b) => Node::And(self.intern(a)?, self.intern(b)?),
                Formula::Or(a, b) => Node::Or(self.intern(a)?, self.intern(b)?),
                Formula::Next(a) => Node::Next(self.intern(a)?),
                Formula::Globally(a) => Node::Globally(self.intern(a)?),
                Formula::Release(a, b) => Node::Release(self.intern(a)?, self.intern(b)?),
                _ => return Err(MonitorError::NotSafetyShaped(f.to_string())),
            }
        };
        let n = self.nodes.len() as u32;
        self.nodes.push(node);
        self.index.insert(f.clone(), n);
        Ok(n)
    }
}

fn minimize(mut dnf: Dnf) -> Dnf {
    dnf.sort_by_key(|c| c.len());
    dnf.dedup();
    let mut out: Dnf = Vec::with_capacity(dnf.len());
    for c in dnf {
        if !out.iter().any(|d| d.is_subset(&c)) {
            out.push(c);
        }
    }
    out.sort();
    out
}

fn and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.union(y).copied().collect());
        }
    }
    minimize(out)
}

fn or(mut a: Dnf, b: Dnf) -> Dnf {
    a.extend(b);
    minimize(a)
}

fn truth(b: bool) -> Dnf {
    if b {
        vec![Clause::new()]
    } else {
        Vec::new()
    }
}

fn single(n: u32) -> Dnf {
    vec![Clause::from([n])]
}

struct Progress<'a> {
    nodes: &'a [Node],
    atom_value: &'a [bool],
    memo: HashMap<u32, Dnf>,
}

impl Progress<'_> {
    /// Obligations for the next position that make node `n` hold now.
    fn node(&mut self, n: u32) -> Dnf {
        if let Some(d) = self.memo.get(&n) {
            return d.clone();
        }
        let d = match self.nodes[n as usize] {
            Node::Atom(a) => truth(self.atom_value[a]),
            Node::And(a, b) => {
                let x = self.node(a);
                and(&x, &self.node(b))
            }
            Node::Or(a, b) => {
                let x = self.node(a);
                or(x, self.node(b))
            }
            Node::Next(a) => single(a),
            Node::Globally(a) => and(&self.node(a), &single(n)),
            Node::Release(a, b) => {
                let right = self.node(b);
                let left = or(self.node(a), single(n));
                and(&right, &left)
            }
        };
        self.memo.insert(n, d.clone());
        d
    }

    fn dnf(&mut self, current: &Dnf) -> Dnf {
        let mut out = Vec::new();
        for clause in current {
            let mut acc = truth(true);
            for &n in clause {
                acc = and(&acc, &self.node(n));
                if acc.is_empty() {
                    break;
                }
            }
            out.extend(acc);
        }
        minimize(out)
    }
}

/// Builds a monitor for any formula whose negation normal form has no
/// `U`/`F` outside pure-past subformulas.
pub fn compile_progression(
    f: &Formula,
    alphabet: &Alphabet,
    max_states: usize,
) -> Result<SafetyMonitor, MonitorError> {
    let normal = nnf(f);
    let mut ob = Obligations {
        nodes: Vec::new(),
        index: HashMap::new(),
        atoms: Vec::new(),
    };
    let root = ob.intern(&normal)?;
    let dag = Dag::build(ob.atoms.iter());
    let props = dag.prop_indices(alphabet);

    type Key = (Option<Vec<bool>>, Dnf);
    let initial: Key = (None, single(root));
    let mut states: Vec<Key> = vec![initial.clone()];
    let mut index: HashMap<Key, u32> = HashMap::from([(initial, 0)]);
    let mut next = Vec::new();
    let mut scratch = vec![false; dag.ops.len()];
    let mut atom_value = vec![false; ob.atoms.len()];
    let mut s = 0;
    while s < states.len() {
        let (valuation, dnf) = states[s].clone();
        for l in Letter::all(alphabet) {
            let settled = dnf.is_empty() || dnf.iter().any(|c| c.is_empty());
            let key = if settled {
                (None, dnf.clone())
            } else {
                dag.past_step(valuation.as_deref(), l, &props, &mut scratch);
                for (v, &r) in atom_value.iter_mut().zip(&dag.roots) {
                    *v = scratch[r];
                }
                let mut p = Progress {
                    nodes: &ob.nodes,
                    atom_value: &atom_value,
                    memo: HashMap::new(),
                };
                let d = p.dnf(&dnf);
                if d.is_empty() || d.iter().any(|c| c.is_empty()) {
                    (None, d)
                } else {
                    (Some(scratch.clone()), d)
                }
            };
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if states.len() >= max_states {
                        return Err(MonitorError::TooManyStates(max_states));
                    }
                    let t = states.len() as u32;
                    index.insert(key.clone(), t);
                    states.push(key);
                    t
                }
            };
            next.push(target);
        }
        s += 1;
    }

    let reject = states.iter().map(|(_, d)| d.is_empty()).collect();
    let labels = states
        .iter()
        .map(|(_, d)| {
            if d.is_empty() {
                "reject".to_owned()
            } else if d.iter().any(|c| c.is_empty()) {
                "true".to_owned()
            } else {
                format!("{} obligation sets", d.len())
            }
        })
        .collect();
    Ok(SafetyMonitor::from_parts(
        alphabet.clone(),
        next,
        reject,
        labels,
        None,
    ))
}
