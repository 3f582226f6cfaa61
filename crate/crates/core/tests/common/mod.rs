//! Shared test support: a literal-semantics reference evaluator and word and
//! formula corpora.
#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use safeltl::formula::{Alphabet, Formula};
use safeltl::generate::FormulaGenerator;
use safeltl::word::{FiniteWord, LassoWord, Letter};

/// Reference evaluator: every operator is read as its quantifier over
/// positions, computed bottom-up into one truth table per subformula. For
/// lassos the table runs one loop past a horizon after which every
/// subformula is periodic, and later positions fold back onto that loop.
pub struct Oracle<'a> {
    alphabet: &'a Alphabet,
    letters: Vec<Letter>,
    /// `(horizon, loop length)`; `None` for finite words, where future
    /// operators are out of scope.
    fold: Option<(usize, usize)>,
}

impl<'a> Oracle<'a> {
    pub fn lasso(w: &'a LassoWord, f: &Formula) -> Self {
        let period = w.cycle().len();
        let horizon = w.stem().len() + 2 * (f.size() + 1) * period;
        Oracle {
            alphabet: w.alphabet(),
            letters: (0..horizon + period).map(|i| w.at(i)).collect(),
            fold: Some((horizon, period)),
        }
    }

    pub fn finite(w: &'a FiniteWord) -> Self {
        Oracle {
            alphabet: w.alphabet(),
            letters: w.letters().to_vec(),
            fold: None,
        }
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn idx(&self, p: usize) -> usize {
        match self.fold {
            Some((t, l)) if p >= t + l => t + (p - t) % l,
            _ => p,
        }
    }

    /// Last position (exclusive) a future quantifier at `i` needs to visit.
    fn future_end(&self, i: usize) -> usize {
        let (t, l) = self.fold.expect("future operator on a finite word");
        i.max(t) + l
    }

    /// Truth of `f` at every stored position.
    pub fn table(&self, f: &Formula) -> Vec<bool> {
        use Formula::*;
        let n = self.len();
        let at = |v: &[bool], p: usize| v[self.idx(p)];
        match f {
            Prop(p) => {
                let x = self.alphabet.index_of(p.as_str());
                self.letters
                    .iter()
                    .map(|l| x.is_some_and(|x| l.contains(x)))
                    .collect()
            }
            True => vec![true; n],
            False => vec![false; n],
            Not(a) => self.table(a).into_iter().map(|v| !v).collect(),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                (0..n)
                    .map(|i| match f {
                        And(..) => x[i] && y[i],
                        Or(..) => x[i] || y[i],
                        _ => !x[i] || y[i],
                    })
                    .collect()
            }
            Next(a) => {
                let x = self.table(a);
                (0..n).map(|i| at(&x, i + 1)).collect()
            }
            Until(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                (0..n)
                    .map(|i| {
                        (i..self.future_end(i))
                            .any(|j| at(&y, j) && (i..j).all(|k| at(&x, k)))
                    })
                    .collect()
            }
            Release(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                (0..n)
                    .map(|i| {
                        (i..self.future_end(i))
                            .all(|j| at(&y, j) || (i..j).any(|k| at(&x, k)))
                    })
                    .collect()
            }
            Eventually(a) => {
                let x = self.table(a);
                (0..n).map(|i| (i..self.future_end(i)).any(|j| at(&x, j))).collect()
            }
            Globally(a) => {
                let x = self.table(a);
                (0..n).map(|i| (i..self.future_end(i)).all(|j| at(&x, j))).collect()
            }
            BoundedUntil { lo, hi, lhs, rhs } => {
                let (x, y) = (self.table(lhs), self.table(rhs));
                let (lo, hi) = (*lo as usize, *hi as usize);
                (0..n)
                    .map(|i| {
                        (i + lo..=i + hi).any(|j| at(&y, j) && (i..j).all(|k| at(&x, k)))
                    })
                    .collect()
            }
            Yesterday(a) => {
                let x = self.table(a);
                (0..n).map(|i| i > 0 && x[i - 1]).collect()
            }
            WeakYesterday(a) => {
                let x = self.table(a);
                (0..n).map(|i| i == 0 || x[i - 1]).collect()
            }
            Since(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                (0..n)
                    .map(|i| (0..=i).any(|j| y[j] && (j + 1..=i).all(|k| x[k])))
                    .collect()
            }
            Triggered(a, b) => {
                let (x, y) = (self.table(a), self.table(b));
                (0..n)
                    .map(|i| (0..=i).all(|j| y[j] || (j + 1..=i).any(|k| x[k])))
                    .collect()
            }
            Once(a) => {
                let x = self.table(a);
                (0..n).map(|i| x[..=i].iter().any(|&v| v)).collect()
            }
            Historically(a) => {
                let x = self.table(a);
                (0..n).map(|i| x[..=i].iter().all(|&v| v)).collect()
            }
            BoundedSince { lo, hi, lhs, rhs } => {
                let (x, y) = (self.table(lhs), self.table(rhs));
                let (lo, hi) = (*lo as usize, *hi as usize);
                (0..n)
                    .map(|i| {
                        i >= lo
                            && (i.saturating_sub(hi)..=i - lo)
                                .any(|j| y[j] && (j + 1..=i).all(|k| x[k]))
                    })
                    .collect()
            }
        }
    }

    /// Reads position `i` (folded onto the loop) from a table of this word.
    pub fn lookup(&self, table: &[bool], i: usize) -> bool {
        table[self.idx(i)]
    }

    pub fn holds(&self, f: &Formula, i: usize) -> bool {
        self.lookup(&self.table(f), i)
    }
}

pub fn oracle_at(w: &LassoWord, i: usize, f: &Formula) -> bool {
    Oracle::lasso(w, f).holds(f, i)
}

pub fn oracle(w: &LassoWord, f: &Formula) -> bool {
    oracle_at(w, 0, f)
}

/// Truth at the last position of a finite word.
pub fn oracle_fin(w: &FiniteWord, f: &Formula) -> bool {
    Oracle::finite(w).holds(f, w.len() - 1)
}

pub fn ab(names: &[&str]) -> Alphabet {
    Alphabet::new(names.iter().copied()).unwrap()
}

pub fn p12() -> Alphabet {
    ab(&["p1", "p2"])
}

/// All lassos with stem length ≤ `stem` and loop length in `1..=cycle`.
pub fn lassos(alphabet: &Alphabet, stem: usize, cycle: usize) -> Vec<LassoWord> {
    LassoWord::enumerate(alphabet, stem, cycle)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generator(alphabet: &Alphabet) -> FormulaGenerator {
    FormulaGenerator::new(alphabet)
}

/// Deterministic corpus of full-logic formulas of sizes `1..=max_size`.
pub fn corpus(alphabet: &Alphabet, count: usize, max_size: usize, seed: u64) -> Vec<Formula> {
    let mut r = rng(seed);
    let g = generator(alphabet);
    (0..count)
        .map(|n| g.any(&mut r, 1 + n % max_size))
        .collect()
}

/// Deterministic corpus from the layered safety fragment.
pub fn safety_corpus(
    alphabet: &Alphabet,
    count: usize,
    max_size: usize,
    with_past: bool,
    seed: u64,
) -> Vec<Formula> {
    let mut r = rng(seed);
    let g = generator(alphabet);
    (0..count)
        .map(|n| g.layered_safety(&mut r, 1 + n % max_size, with_past))
        .collect()
}

pub fn letters_of(alphabet: &Alphabet) -> Vec<Letter> {
    Letter::all(alphabet).collect()
}
