//! Deterministic monitors: past monitors over finite words and safety
//! monitors over infinite words, with containment and equivalence.

mod containment;
mod dfa;
mod past;
mod progression;
mod terms;

use crate::canonical::{recognize, CanonError, CanonicalFormula, CanonicalTerm, PayloadClass};
use crate::formula::{Alphabet, Formula};
use crate::fragments::is_pure_past;

pub use containment::{contains, equivalent, viable_states, Counterexample, Side};
pub use dfa::{SafetyMonitor, TermStatus};
pub use past::PastMonitor;
pub use progression::compile_progression;
pub use terms::compile_canonical;

pub const DEFAULT_MAX_STATES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MonitorError {
    #[error("`{0}` is not a pure-past formula")]
    NotPurePast(String),
    #[error("`{0}` has an eventuality; only safety-shaped formulas can be monitored")]
    NotSafetyShaped(String),
    #[error("the `{builder}` builder does not accept `{formula}`")]
    Unsupported { builder: &'static str, formula: String },
    #[error("monitors are over different alphabets")]
    AlphabetMismatch,
    #[error("state limit of {0} exceeded")]
    TooManyStates(usize),
    #[error("unknown monitor builder `{0}`")]
    UnknownBuilder(String),
    #[error(transparent)]
    Canonical(#[from] CanonError),
}

/// A way of turning a formula into a safety monitor.
pub trait MonitorBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn build(
        &self,
        f: &Formula,
        alphabet: &Alphabet,
        max_states: usize,
    ) -> Result<SafetyMonitor, MonitorError>;
}

/// Term machine over a formula that already has canonical shape (pure-past
/// payloads), including `G α`.
pub struct CanonicalBuilder;

/// Progression over the negation normal form.
pub struct ProgressionBuilder;

/// Canonical shape when recognized, progression otherwise.
pub struct AutoBuilder;

fn as_canonical(f: &Formula) -> Option<CanonicalFormula> {
    if let Formula::Globally(a) = f {
        if is_pure_past(a) {
            return Some(CanonicalFormula::Term(CanonicalTerm::always(0, (**a).clone())));
        }
    }
    recognize(f, PayloadClass::PurePast)
}

impl MonitorBuilder for CanonicalBuilder {
    fn name(&self) -> &'static str {
        "canonical"
    }

    fn build(
        &self,
        f: &Formula,
        alphabet: &Alphabet,
        max_states: usize,
    ) -> Result<SafetyMonitor, MonitorError> {
        let c = as_canonical(f).ok_or_else(|| MonitorError::Unsupported {
            builder: self.name(),
            formula: f.to_string(),
        })?;
        compile_canonical(&c, alphabet, max_states)
    }
}

impl MonitorBuilder for ProgressionBuilder {
    fn name(&self) -> &'static str {
        "progression"
    }

    fn build(
        &self,
        f: &Formula,
        alphabet: &Alphabet,
        max_states: usize,
    ) -> Result<SafetyMonitor, MonitorError> {
        compile_progression(f, alphabet, max_states)
    }
}

impl MonitorBuilder for AutoBuilder {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn build(
        &self,
        f: &Formula,
        alphabet: &Alphabet,
        max_states: usize,
    ) -> Result<SafetyMonitor, MonitorError> {
        match as_canonical(f) {
            Some(c) => compile_canonical(&c, alphabet, max_states),
            None => compile_progression(f, alphabet, max_states),
        }
    }
}

/// Registered builders, in lookup order.
pub fn builders() -> Vec<Box<dyn MonitorBuilder>> {
    vec![
        Box::new(AutoBuilder),
        Box::new(CanonicalBuilder),
        Box::new(ProgressionBuilder),
    ]
}

pub fn builder(name: &str) -> Result<Box<dyn MonitorBuilder>, MonitorError> {
    builders()
        .into_iter()
        .find(|b| b.name() == name)
        .ok_or_else(|| MonitorError::UnknownBuilder(name.to_owned()))
}

/// Monitor for a canonical formula or a `G α` formula, or any other
/// safety-shaped formula.
pub fn compile_safety(
    f: &Formula,
    alphabet: &Alphabet,
    max_states: usize,
) -> Result<SafetyMonitor, MonitorError> {
    AutoBuilder.build(f, alphabet, max_states)
}

/// Past monitor for a pure-past formula.
pub fn compile_past(
    alpha: &Formula,
    alphabet: &Alphabet,
    max_states: usize,
) -> Result<PastMonitor, MonitorError> {
    PastMonitor::compile(alpha, alphabet, max_states)
}
