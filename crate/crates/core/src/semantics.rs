//! Satisfaction over ultimately periodic and finite words.
//!
//! A formula is compiled into a hash-consed DAG over the core operators. Over
//! a lasso word every node's truth is itself eventually periodic, so each
//! node is evaluated once, bottom-up, into a [`Valuation`] (stem + cycle):
//!
//! * past operators run their forward recurrence until the pair
//!   (carried value, offset in the cycle) repeats;
//! * `U`/`R` solve their least/greatest fixpoint on the cycle by backward
//!   sweeps to stabilization, then sweep the stem once.

use std::collections::HashMap;

use crate::formula::{expand_shortcuts, Alphabet, Formula, Proposition};
use crate::word::{FiniteWord, LassoWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("`{0}` is not a pure-past formula")]
    NotPurePast(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Op {
    Prop(Proposition),
    True,
    False,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
    Yesterday(usize),
    WeakYesterday(usize),
    Since(usize, usize),
}

/// Hash-consed operator DAG in topological order (children first).
#[derive(Debug, Clone)]
pub(crate) struct Dag {
    pub ops: Vec<Op>,
    pub roots: Vec<usize>,
}

impl Dag {
    pub fn build<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Dag {
        let mut builder = DagBuilder::default();
        let roots = formulas
            .into_iter()
            .map(|f| builder.add(&expand_shortcuts(f)))
            .collect();
        Dag {
            ops: builder.ops,
            roots,
        }
    }

    /// Alphabet index of each `Prop` node (`None` for absent propositions,
    /// which never hold).
    pub fn prop_indices(&self, alphabet: &Alphabet) -> Vec<Option<usize>> {
        self.ops
            .iter()
            .map(|op| match op {
                Op::Prop(p) => alphabet.index_of(p.as_str()),
                _ => None,
            })
            .collect()
    }

    /// One forward step of a pure-past DAG: computes every node at the
    /// current position from the previous position's values.
    pub fn past_step(
        &self,
        prev: Option<&[bool]>,
        letter: Letter,
        props: &[Option<usize>],
        out: &mut [bool],
    ) {
        for (n, op) in self.ops.iter().enumerate() {
            out[n] = match *op {
                Op::Prop(_) => props[n].is_some_and(|i| letter.contains(i)),
                Op::True => true,
                Op::False => false,
                Op::Not(a) => !out[a],
                Op::And(a, b) => out[a] && out[b],
                Op::Or(a, b) => out[a] || out[b],
                Op::Yesterday(a) => prev.is_some_and(|p| p[a]),
                Op::WeakYesterday(a) => prev.map_or(true, |p| p[a]),
                Op::Since(a, b) => out[b] || (out[a] && prev.is_some_and(|p| p[n])),
                Op::Next(_) | Op::Until(..) | Op::Release(..) => {
                    unreachable!("past_step on a future operator")
                }
            };
        }
    }

    /// Valuation of every node over `word`.
    pub fn valuations(&self, word: &LassoWord) -> Vec<Valuation> {
        let props = self.prop_indices(word.alphabet());
        let mut vals: Vec<Valuation> = Vec::with_capacity(self.ops.len());
        for (n, op) in self.ops.iter().enumerate() {
            let v = match *op {
                Op::Prop(_) => {
                    let bit = |l: Letter| props[n].is_some_and(|i| l.contains(i));
                    Valuation {
                        stem: word.stem().iter().map(|&l| bit(l)).collect(),
                        cycle: word.cycle().iter().map(|&l| bit(l)).collect(),
                    }
                }
                Op::True => Valuation::constant(true),
                Op::False => Valuation::constant(false),
                Op::Not(a) => vals[a].map(|x| !x),
                Op::And(a, b) => Valuation::zip(&vals[a], &vals[b], |x, y| x && y),
                Op::Or(a, b) => Valuation::zip(&vals[a], &vals[b], |x, y| x || y),
                Op::Next(a) => vals[a].shift_left(),
                Op::Yesterday(a) => vals[a].shift_right(false),
                Op::WeakYesterday(a) => vals[a].shift_right(true),
                Op::Until(a, b) => fixpoint(&vals[a], &vals[b], false),
                Op::Release(a, b) => fixpoint(&vals[a], &vals[b], true),
                Op::Since(a, b) => since(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        vals
    }
}

#[derive(Default)]
struct DagBuilder {
    ops: Vec<Op>,
    index: HashMap<Op, usize>,
}

impl DagBuilder {
    fn intern(&mut self, op: Op) -> usize {
        if let Some(&n) = self.index.get(&op) {
            return n;
        }
        let n = self.ops.len();
        self.ops.push(op.clone());
        self.index.insert(op, n);
        n
    }

    fn add(&mut self, f: &Formula) -> usize {
        use Formula as F;
        let op = match f {
            F::Prop(p) => Op::Prop(p.clone()),
            F::True => Op::True,
            F::False => Op::False,
            F::Not(a) => Op::Not(self.add(a)),
            F::And(a, b) => Op::And(self.add(a), self.add(b)),
            F::Or(a, b) => Op::Or(self.add(a), self.add(b)),
            F::Next(a) => Op::Next(self.add(a)),
            F::Until(a, b) => Op::Until(self.add(a), self.add(b)),
            F::Release(a, b) => Op::Release(self.add(a), self.add(b)),
            F::Yesterday(a) => Op::Yesterday(self.add(a)),
            F::WeakYesterday(a) => Op::WeakYesterday(self.add(a)),
            F::Since(a, b) => Op::Since(self.add(a), self.add(b)),
            other => unreachable!("shortcut `{other}` survived expansion"),
        };
        self.intern(op)
    }
}

/// Eventually periodic truth sequence: `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    stem: Vec<bool>,
    cycle: Vec<bool>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Valuation {
    fn constant(b: bool) -> Self {
        Valuation {
            stem: vec![],
            cycle: vec![b],
        }
    }

    pub fn at(&self, i: usize) -> bool {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    pub fn stem_len(&self) -> usize {
        self.stem.len()
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    fn map(&self, f: impl Fn(bool) -> bool) -> Self {
        Valuation {
            stem: self.stem.iter().map(|&x| f(x)).collect(),
            cycle: self.cycle.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Re-expresses the sequence with the given stem length and period
    /// (a multiple of the current one, stem at least as long).
    fn reframe(&self, stem: usize, period: usize) -> (Vec<bool>, Vec<bool>) {
        (
            (0..stem).map(|i| self.at(i)).collect(),
            (0..period).map(|o| self.at(stem + o)).collect(),
        )
    }

    fn common_frame(a: &Valuation, b: &Valuation) -> (usize, usize) {
        let (p, q) = (a.period(), b.period());
        (a.stem_len().max(b.stem_len()), p / gcd(p, q) * q)
    }

    fn zip(a: &Valuation, b: &Valuation, f: impl Fn(bool, bool) -> bool) -> Self {
        let (s, c) = Self::common_frame(a, b);
        let (sa, ca) = a.reframe(s, c);
        let (sb, cb) = b.reframe(s, c);
        Valuation {
            stem: sa.iter().zip(&sb).map(|(&x, &y)| f(x, y)).collect(),
            cycle: ca.iter().zip(&cb).map(|(&x, &y)| f(x, y)).collect(),
        }
    }

    /// Value at `i` becomes the value at `i + 1`.
    fn shift_left(&self) -> Self {
        if self.stem.is_empty() {
            let mut cycle = self.cycle.clone();
            cycle.rotate_left(1);
            Valuation { stem: vec![], cycle }
        } else {
            Valuation {
                stem: self.stem[1..].to_vec(),
                cycle: self.cycle.clone(),
            }
        }
    }

    /// Value at `i` becomes the value at `i - 1`, with `first` at position 0.
    fn shift_right(&self, first: bool) -> Self {
        let mut stem = Vec::with_capacity(self.stem.len() + 1);
        stem.push(first);
        stem.extend_from_slice(&self.stem);
        Valuation {
            stem,
            cycle: self.cycle.clone(),
        }
    }
}

/// `a U b` (least fixpoint of `b ∨ (a ∧ X·)`) or `a R b` (greatest fixpoint
/// of `b ∧ (a ∨ X·)`).
fn fixpoint(a: &Valuation, b: &Valuation, greatest: bool) -> Valuation {
    let (s, c) = Valuation::common_frame(a, b);
    let (sa, ca) = a.reframe(s, c);
    let (sb, cb) = b.reframe(s, c);
    let step = |x: bool, y: bool, next: bool| {
        if greatest {
            y && (x || next)
        } else {
            y || (x && next)
        }
    };
    let mut cycle = vec![greatest; c];
    loop {
        let mut changed = false;
        for o in (0..c).rev() {
            let v = step(ca[o], cb[o], cycle[(o + 1) % c]);
            if v != cycle[o] {
                cycle[o] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut stem = vec![false; s];
    let mut next = cycle[0];
    for i in (0..s).rev() {
        next = step(sa[i], sb[i], next);
        stem[i] = next;
    }
    Valuation { stem, cycle }
}

/// `a S b` by the forward recurrence, unrolling the cycle until the value
/// carried into it repeats.
fn since(a: &Valuation, b: &Valuation) -> Valuation {
    let (s, c) = Valuation::common_frame(a, b);
    let (sa, ca) = a.reframe(s, c);
    let (sb, cb) = b.reframe(s, c);
    let mut out = Vec::with_capacity(s + 3 * c);
    let mut carried: Option<bool> = None;
    for i in 0..s {
        let v = sb[i] || (sa[i] && carried == Some(true));
        out.push(v);
        carried = Some(v);
    }
    let mut seen: Vec<Option<bool>> = Vec::new();
    loop {
        if let Some(first) = seen.iter().position(|&e| e == carried) {
            let start = s + first * c;
            let cycle = out.split_off(start);
            let cycle = cycle[..(seen.len() - first) * c].to_vec();
            return Valuation { stem: out, cycle };
        }
        seen.push(carried);
        for o in 0..c {
            let v = cb[o] || (ca[o] && carried == Some(true));
            out.push(v);
            carried = Some(v);
        }
    }
}

/// Reusable compiled formula.
#[derive(Debug, Clone)]
pub struct Evaluator {
    dag: Dag,
}

impl Evaluator {
    pub fn new(f: &Formula) -> Self {
        Evaluator {
            dag: Dag::build([f]),
        }
    }

    /// Truth of the formula at every position of `word`.
    pub fn valuation(&self, word: &LassoWord) -> Valuation {
        let mut vals = self.dag.valuations(word);
        vals.swap_remove(self.dag.roots[0])
    }

    pub fn holds_at(&self, word: &LassoWord, i: usize) -> bool {
        self.valuation(word).at(i)
    }
}

/// `σ, i ⊨ φ`.
pub fn eval_at(word: &LassoWord, i: usize, f: &Formula) -> bool {
    Evaluator::new(f).holds_at(word, i)
}

/// `σ ⊨ φ`, i.e. satisfaction at position 0.
pub fn eval(word: &LassoWord, f: &Formula) -> bool {
    eval_at(word, 0, f)
}

/// Truth of a pure-past formula at the last position of a finite word.
pub fn evalfin(word: &FiniteWord, f: &Formula) -> Result<bool, SemanticsError> {
    if f.has_future() {
        return Err(SemanticsError::NotPurePast(f.to_string()));
    }
    let dag = Dag::build([f]);
    let props = dag.prop_indices(word.alphabet());
    let mut prev = vec![false; dag.ops.len()];
    let mut cur = vec![false; dag.ops.len()];
    for (pos, &letter) in word.letters().iter().enumerate() {
        dag.past_step((pos > 0).then_some(&prev[..]), letter, &props, &mut cur);
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[dag.roots[0]])
}
