//! Bounded-past canonical formulas for the experiment: a deterministic
//! enumeration of single terms and a seeded sampler of and/or trees.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{CanonicalFormula, CanonicalTerm};
use crate::formula::{temporal_depth, Alphabet, Formula};

use super::SeparationError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceConfig {
    pub max_next: usize,
    pub max_d: usize,
    pub samples: usize,
    pub seed: u64,
    /// Largest number of terms in a sampled and/or tree.
    pub leaf_budget: usize,
}

impl Default for SourceConfig {
    fn default() -> Self {
        SourceConfig {
            max_next: 2,
            max_d: 2,
            samples: 1000,
            seed: 42,
            leaf_budget: 3,
        }
    }
}

fn literals(alphabet: &Alphabet) -> Vec<Formula> {
    alphabet
        .propositions()
        .iter()
        .flat_map(|p| {
            let f = Formula::Prop(p.clone());
            [f.clone(), Formula::not(f)]
        })
        .collect()
}

/// Past literals of depth at most `max_d`: literals under `Y`/`Z` chains and
/// bounded since between literals.
fn past_literals(alphabet: &Alphabet, max_d: usize) -> BTreeSet<Formula> {
    let base = literals(alphabet);
    let mut layer: BTreeSet<Formula> = base.iter().cloned().collect();
    let mut all = layer.clone();
    for t in 1..=max_d {
        let mut next = BTreeSet::new();
        for f in &layer {
            next.insert(Formula::yesterday(f.clone()));
            next.insert(Formula::weak_yesterday(f.clone()));
        }
        for a in &base {
            for b in &base {
                if a != b {
                    next.insert(Formula::bounded_since(0, t as u32, a.clone(), b.clone()));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Structurally deduplicated bounded-past payloads of depth at most `max_d`,
/// in a fixed order.
pub fn payload_pool(alphabet: &Alphabet, max_d: usize) -> Vec<Formula> {
    let lits = past_literals(alphabet, max_d);
    let base = literals(alphabet);
    let mut pool: BTreeSet<Formula> = lits.clone();
    pool.insert(Formula::True);
    for a in &base {
        for b in &lits {
            if a != b {
                pool.insert(Formula::and(a.clone(), b.clone()));
                pool.insert(Formula::or(a.clone(), b.clone()));
            }
        }
    }
    debug_assert!(pool
        .iter()
        .all(|f| temporal_depth(f).is_some_and(|d| d <= max_d)));
    pool.into_iter().collect()
}

fn all_terms(alphabet: &Alphabet, max_next: usize, max_d: usize) -> Vec<CanonicalTerm> {
    let pool = payload_pool(alphabet, max_d);
    let lits: Vec<Formula> = past_literals(alphabet, max_d).into_iter().collect();
    let mut terms = Vec::new();
    for offset in 0..=max_next {
        for a in &pool {
            terms.push(CanonicalTerm::point(offset, a.clone()));
            terms.push(CanonicalTerm::always(offset, a.clone()));
        }
        for a in &lits {
            for b in &lits {
                terms.push(CanonicalTerm::release(offset, a.clone(), b.clone()));
            }
        }
    }
    terms
}

/// Every single-term canonical formula with offset at most `max_next` and
/// payloads from the pool (release operands from the literal part of it),
/// duplicate-free and in a deterministic order.
pub fn enumerate_canonical(
    max_next: usize,
    max_d: usize,
    alphabet: &Alphabet,
) -> Vec<CanonicalFormula> {
    all_terms(alphabet, max_next, max_d)
        .into_iter()
        .map(CanonicalFormula::Term)
        .collect()
}

fn sample_tree(rng: &mut impl Rng, terms: &[CanonicalTerm], leaves: usize) -> CanonicalFormula {
    if leaves == 1 {
        return CanonicalFormula::Term(terms.choose(rng).expect("nonempty pool").clone());
    }
    let left = rng.gen_range(1..leaves);
    let a = sample_tree(rng, terms, left);
    let b = sample_tree(rng, terms, leaves - left);
    if rng.gen() {
        CanonicalFormula::and(a, b)
    } else {
        CanonicalFormula::or(a, b)
    }
}

/// Where experiment formulas come from.
pub trait FormulaSource: Send + Sync {
    fn name(&self) -> &'static str;
    fn formulas(&self, alphabet: &Alphabet, config: &SourceConfig) -> Vec<CanonicalFormula>;
}

/// Single terms from [`enumerate_canonical`].
pub struct EnumeratedSource;
/// `samples` distinct and/or trees of up to `leaf_budget` terms.
pub struct SampledSource;
/// Enumerated terms followed by the sampled trees not already among them.
pub struct MixedSource;

impl FormulaSource for EnumeratedSource {
    fn name(&self) -> &'static str {
        "enumerated"
    }

    fn formulas(&self, alphabet: &Alphabet, config: &SourceConfig) -> Vec<CanonicalFormula> {
        enumerate_canonical(config.max_next, config.max_d, alphabet)
    }
}

impl FormulaSource for SampledSource {
    fn name(&self) -> &'static str {
        "sampled"
    }

    fn formulas(&self, alphabet: &Alphabet, config: &SourceConfig) -> Vec<CanonicalFormula> {
        let terms = all_terms(alphabet, config.max_next, config.max_d);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(config.samples);
        let mut attempts = 0;
        while out.len() < config.samples && attempts < config.samples * 20 {
            attempts += 1;
            let leaves = rng.gen_range(1..=config.leaf_budget.max(1));
            let c = sample_tree(&mut rng, &terms, leaves);
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        out
    }
}

impl FormulaSource for MixedSource {
    fn name(&self) -> &'static str {
        "mixed"
    }

    fn formulas(&self, alphabet: &Alphabet, config: &SourceConfig) -> Vec<CanonicalFormula> {
        let mut out = EnumeratedSource.formulas(alphabet, config);
        let known: std::collections::HashSet<CanonicalFormula> = out.iter().cloned().collect();
        out.extend(
            SampledSource
                .formulas(alphabet, config)
                .into_iter()
                .filter(|c| !known.contains(c)),
        );
        out
    }
}

pub fn sources() -> Vec<Box<dyn FormulaSource>> {
    vec![
        Box::new(EnumeratedSource),
        Box::new(SampledSource),
        Box::new(MixedSource),
    ]
}

pub fn source(name: &str) -> Result<Box<dyn FormulaSource>, SeparationError> {
    sources()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| SeparationError::UnknownSource(name.to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn smallest_layer_has_the_three_shapes() {
        let ab = Alphabet::new(["p"]).unwrap();
        let all = enumerate_canonical(0, 0, &ab);
        let texts: HashSet<String> = all.iter().map(|c| c.to_string()).collect();
        assert!(texts.contains("G p"));
        assert!(texts.contains("p"));
        assert!(texts.contains("p R p"));
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let ab = Alphabet::new(["p1", "p2"]).unwrap();
        let all = enumerate_canonical(1, 2, &ab);
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|c| c.is_bounded()));
    }

    #[test]
    fn sampling_is_seeded() {
        let ab = Alphabet::new(["p1", "p2"]).unwrap();
        let config = SourceConfig {
            samples: 50,
            ..SourceConfig::default()
        };
        let a = SampledSource.formulas(&ab, &config);
        let b = SampledSource.formulas(&ab, &config);
        assert_eq!(a, b);
        assert_eq!(a.len(), 50);
        assert!(source("mixed").is_ok());
        assert!(source("other").is_err());
    }
}
