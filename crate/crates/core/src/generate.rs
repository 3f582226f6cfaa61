//! Seeded random formula generation.
//!
//! Every generator takes an exact node budget (`Formula::size`) so corpora can
//! be stratified by size.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::formula::{Alphabet, Formula, Proposition};

#[derive(Debug, Clone)]
pub struct FormulaGenerator {
    props: Vec<Proposition>,
    max_bound: u32,
}

fn split(rng: &mut impl Rng, size: usize) -> (usize, usize) {
    let left = rng.gen_range(1..=size - 2);
    (left, size - 1 - left)
}

fn bounds(rng: &mut impl Rng, max: u32) -> (u32, u32) {
    let hi = rng.gen_range(0..=max);
    (rng.gen_range(0..=hi), hi)
}

impl FormulaGenerator {
    pub fn new(alphabet: &Alphabet) -> Self {
        assert!(!alphabet.is_empty(), "generation needs at least one proposition");
        FormulaGenerator {
            props: alphabet.propositions().to_vec(),
            max_bound: 2,
        }
    }

    pub fn with_max_bound(mut self, max_bound: u32) -> Self {
        self.max_bound = max_bound;
        self
    }

    fn atom(&self, rng: &mut impl Rng, constants: bool) -> Formula {
        if constants && rng.gen_ratio(1, 6) {
            if rng.gen() {
                Formula::True
            } else {
                Formula::False
            }
        } else {
            Formula::Prop(self.props.choose(rng).expect("nonempty").clone())
        }
    }

    /// Any formula of the full logic with exactly `size` nodes.
    pub fn any(&self, rng: &mut impl Rng, size: usize) -> Formula {
        assert!(size >= 1);
        if size == 1 {
            return self.atom(rng, true);
        }
        if size == 2 || rng.gen_ratio(2, 5) {
            let a = self.any(rng, size - 1);
            return match rng.gen_range(0..8) {
                0 => Formula::not(a),
                1 => Formula::next(a),
                2 => Formula::eventually(a),
                3 => Formula::globally(a),
                4 => Formula::yesterday(a),
                5 => Formula::weak_yesterday(a),
                6 => Formula::once(a),
                _ => Formula::historically(a),
            };
        }
        let (l, r) = split(rng, size);
        let a = self.any(rng, l);
        let b = self.any(rng, r);
        match rng.gen_range(0..9) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => Formula::implies(a, b),
            3 => Formula::until(a, b),
            4 => Formula::release(a, b),
            5 => Formula::since(a, b),
            6 => Formula::triggered(a, b),
            7 => {
                let (lo, hi) = bounds(rng, self.max_bound);
                Formula::bounded_until(lo, hi, a, b)
            }
            _ => {
                let (lo, hi) = bounds(rng, self.max_bound);
                Formula::bounded_since(lo, hi, a, b)
            }
        }
    }

    /// Pure-past formula; only `Y`, `Z` and bounded since when `bounded`.
    pub fn past(&self, rng: &mut impl Rng, size: usize, bounded: bool) -> Formula {
        if size == 1 {
            return self.atom(rng, false);
        }
        if size == 2 || rng.gen_ratio(1, 2) {
            let a = self.past(rng, size - 1, bounded);
            let choices = if bounded { 3 } else { 5 };
            return match rng.gen_range(0..choices) {
                0 => Formula::not(a),
                1 => Formula::yesterday(a),
                2 => Formula::weak_yesterday(a),
                3 => Formula::once(a),
                _ => Formula::historically(a),
            };
        }
        let (l, r) = split(rng, size);
        let a = self.past(rng, l, bounded);
        let b = self.past(rng, r, bounded);
        let choices = if bounded { 3 } else { 4 };
        match rng.gen_range(0..choices) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            2 => {
                let (lo, hi) = bounds(rng, self.max_bound);
                Formula::bounded_since(lo, hi, a, b)
            }
            _ => Formula::since(a, b),
        }
    }

    fn propositional(&self, rng: &mut impl Rng, size: usize) -> Formula {
        if size == 1 {
            return self.atom(rng, false);
        }
        if size == 2 || rng.gen_ratio(1, 3) {
            return Formula::not(self.propositional(rng, size - 1));
        }
        let (l, r) = split(rng, size);
        let a = self.propositional(rng, l);
        let b = self.propositional(rng, r);
        if rng.gen() {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }

    fn base(&self, rng: &mut impl Rng, size: usize, with_past: bool) -> Formula {
        if with_past {
            self.past(rng, size, false)
        } else {
            self.propositional(rng, size)
        }
    }

    /// Bounded-future layer.
    pub fn bounded_future(&self, rng: &mut impl Rng, size: usize, with_past: bool) -> Formula {
        if size == 1 || rng.gen_ratio(1, 4) {
            return self.base(rng, size, with_past);
        }
        if size == 2 || rng.gen_ratio(1, 3) {
            let a = self.bounded_future(rng, size - 1, with_past);
            return if rng.gen() {
                Formula::next(a)
            } else {
                Formula::not(a)
            };
        }
        let (l, r) = split(rng, size);
        let a = self.bounded_future(rng, l, with_past);
        let b = self.bounded_future(rng, r, with_past);
        match rng.gen_range(0..3) {
            0 => Formula::and(a, b),
            1 => Formula::or(a, b),
            _ => {
                let (lo, hi) = bounds(rng, self.max_bound);
                Formula::bounded_until(lo, hi, a, b)
            }
        }
    }

    /// Future layer: conjunction, `X`, `G`, and release with a
    /// bounded-future left operand.
    pub fn future(&self, rng: &mut impl Rng, size: usize, with_past: bool) -> Formula {
        if size == 1 || rng.gen_ratio(1, 4) {
            return self.bounded_future(rng, size, with_past);
        }
        if size == 2 || rng.gen_ratio(1, 3) {
            let a = self.future(rng, size - 1, with_past);
            return if rng.gen() {
                Formula::next(a)
            } else {
                Formula::globally(a)
            };
        }
        let (l, r) = split(rng, size);
        let b = self.future(rng, r, with_past);
        if rng.gen() {
            Formula::and(self.future(rng, l, with_past), b)
        } else {
            Formula::release(self.bounded_future(rng, l, with_past), b)
        }
    }

    /// Formula of the layered safety fragment, with or without past.
    pub fn layered_safety(&self, rng: &mut impl Rng, size: usize, with_past: bool) -> Formula {
        if size < 3 || rng.gen_ratio(1, 2) {
            return self.future(rng, size, with_past);
        }
        let (l, r) = split(rng, size);
        let a = self.layered_safety(rng, l, with_past);
        let b = self.layered_safety(rng, r, with_past);
        if rng.gen() {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragments::classify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gen() -> FormulaGenerator {
        FormulaGenerator::new(&Alphabet::new(["p1", "p2"]).unwrap())
    }

    #[test]
    fn sizes_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in 1..=12 {
            for _ in 0..50 {
                assert_eq!(gen().any(&mut rng, size).size(), size);
                assert_eq!(gen().layered_safety(&mut rng, size, true).size(), size);
                assert_eq!(gen().past(&mut rng, size, true).size(), size);
            }
        }
    }

    #[test]
    fn layered_output_is_in_the_fragment() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for size in 1..=10 {
            for _ in 0..50 {
                let f = gen().layered_safety(&mut rng, size, false);
                assert!(classify(&f).flags.is_ltlebr, "{f}");
                let f = gen().layered_safety(&mut rng, size, true);
                assert!(classify(&f).flags.is_ltlebrp, "{f}");
            }
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a: Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..20).map(|_| gen().any(&mut rng, 6)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let b: Vec<_> = (0..20).map(|_| gen().any(&mut rng, 6)).collect();
        assert_eq!(a, b);
    }
}
