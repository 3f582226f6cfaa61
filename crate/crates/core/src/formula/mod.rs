//! Abstract syntax of LTL with past operators.
//!
//! A [`Formula`] is an immutable tree with shared subtrees. Structural
//! equality, ordering and hashing all follow the tree shape, so formulas can be
//! used directly as keys when deduplicating generated corpora.

mod metrics;
mod parser;
mod print;
mod rewrite;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use metrics::{next_depth, past_temporal_depth, temporal_depth, SyntacticMetrics};
pub use parser::{parse, parse_open, ParseError, ParseErrorKind};
pub use rewrite::{expand_bounded, expand_shortcuts, nnf};

/// Upper bound on alphabet size. Letters are stored as bit sets.
pub const MAX_PROPOSITIONS: usize = 16;

/// A proposition letter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Proposition(Arc<str>);

impl Proposition {
    /// Builds a proposition, checking the identifier shape.
    pub fn new(name: &str) -> Option<Self> {
        if is_identifier(name) && !is_reserved(name) {
            Some(Proposition(Arc::from(name)))
        } else {
            None
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn is_reserved(name: &str) -> bool {
    matches!(
        name,
        "true" | "false" | "X" | "Y" | "Z" | "F" | "G" | "O" | "H" | "U" | "R" | "S" | "T"
    )
}

/// Errors raised while declaring an alphabet.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlphabetError {
    #[error("invalid proposition name `{0}`")]
    InvalidName(String),
    #[error("duplicate proposition `{0}`")]
    Duplicate(String),
    #[error("alphabet has {0} propositions, at most {MAX_PROPOSITIONS} are supported")]
    TooLarge(usize),
}

/// An ordered set of propositions. Declaration order fixes the bit layout of
/// letters and the enumeration order of `2^Σ`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Alphabet {
    props: Arc<[Proposition]>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut props: Vec<Proposition> = Vec::new();
        for name in names {
            let name = name.as_ref();
            let prop =
                Proposition::new(name).ok_or_else(|| AlphabetError::InvalidName(name.into()))?;
            if props.contains(&prop) {
                return Err(AlphabetError::Duplicate(name.into()));
            }
            props.push(prop);
        }
        if props.len() > MAX_PROPOSITIONS {
            return Err(AlphabetError::TooLarge(props.len()));
        }
        Ok(Alphabet {
            props: props.into(),
        })
    }

    /// Alphabet of the propositions occurring in `formulas`, in order of first
    /// occurrence.
    pub fn from_formulas<'a, I>(formulas: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut props: Vec<Proposition> = Vec::new();
        for f in formulas {
            for p in f.propositions() {
                if !props.contains(&p) {
                    props.push(p);
                }
            }
        }
        if props.len() > MAX_PROPOSITIONS {
            return Err(AlphabetError::TooLarge(props.len()));
        }
        Ok(Alphabet {
            props: props.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p.as_str() == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.props
    }

    /// Number of letters, `2^|Σ|`.
    pub fn letter_count(&self) -> usize {
        1usize << self.props.len()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.props.iter()).finish()
    }
}

impl TryFrom<Vec<String>> for Alphabet {
    type Error = AlphabetError;

    fn try_from(names: Vec<String>) -> Result<Self, Self::Error> {
        Alphabet::new(names)
    }
}

impl From<Alphabet> for Vec<String> {
    fn from(a: Alphabet) -> Self {
        a.props.iter().map(|p| p.as_str().to_owned()).collect()
    }
}

/// Shared subformula handle.
pub type Sub = Arc<Formula>;

/// LTL+P formula.
///
/// `BoundedUntil` and `BoundedSince` carry inclusive bounds `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Prop(Proposition),
    True,
    False,
    Not(Sub),
    And(Sub, Sub),
    Or(Sub, Sub),
    Implies(Sub, Sub),
    Next(Sub),
    Until(Sub, Sub),
    Release(Sub, Sub),
    Eventually(Sub),
    Globally(Sub),
    BoundedUntil { lo: u32, hi: u32, lhs: Sub, rhs: Sub },
    Yesterday(Sub),
    WeakYesterday(Sub),
    Since(Sub, Sub),
    Triggered(Sub, Sub),
    Once(Sub),
    Historically(Sub),
    BoundedSince { lo: u32, hi: u32, lhs: Sub, rhs: Sub },
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    /// Proposition by name. Panics on a malformed identifier; use
    /// [`Proposition::new`] for fallible construction.
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(Proposition::new(name).unwrap_or_else(|| panic!("bad proposition {name}")))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Arc::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Arc::new(a), Arc::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Arc::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Arc::new(a), Arc::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Arc::new(a), Arc::new(b))
    }

    pub fn eventually(f: Formula) -> Formula {
        Formula::Eventually(Arc::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Arc::new(f))
    }

    pub fn bounded_until(lo: u32, hi: u32, a: Formula, b: Formula) -> Formula {
        assert!(lo <= hi, "bounded until with lo > hi");
        Formula::BoundedUntil {
            lo,
            hi,
            lhs: Arc::new(a),
            rhs: Arc::new(b),
        }
    }

    pub fn yesterday(f: Formula) -> Formula {
        Formula::Yesterday(Arc::new(f))
    }

    pub fn weak_yesterday(f: Formula) -> Formula {
        Formula::WeakYesterday(Arc::new(f))
    }

    pub fn since(a: Formula, b: Formula) -> Formula {
        Formula::Since(Arc::new(a), Arc::new(b))
    }

    pub fn triggered(a: Formula, b: Formula) -> Formula {
        Formula::Triggered(Arc::new(a), Arc::new(b))
    }

    pub fn once(f: Formula) -> Formula {
        Formula::Once(Arc::new(f))
    }

    pub fn historically(f: Formula) -> Formula {
        Formula::Historically(Arc::new(f))
    }

    pub fn bounded_since(lo: u32, hi: u32, a: Formula, b: Formula) -> Formula {
        assert!(lo <= hi, "bounded since with lo > hi");
        Formula::BoundedSince {
            lo,
            hi,
            lhs: Arc::new(a),
            rhs: Arc::new(b),
        }
    }

    /// `X^n f`.
    pub fn next_n(n: usize, f: Formula) -> Formula {
        (0..n).fold(f, |acc, _| Formula::next(acc))
    }

    /// `Y^n f`.
    pub fn yesterday_n(n: usize, f: Formula) -> Formula {
        (0..n).fold(f, |acc, _| Formula::yesterday(acc))
    }

    /// Direct children, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Prop(_) | True | False => vec![],
            Not(a) | Next(a) | Eventually(a) | Globally(a) | Yesterday(a) | WeakYesterday(a)
            | Once(a) | Historically(a) => vec![a],
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | Release(a, b) | Since(a, b)
            | Triggered(a, b) => vec![a, b],
            BoundedUntil { lhs, rhs, .. } | BoundedSince { lhs, rhs, .. } => vec![lhs, rhs],
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn is_future_operator(&self) -> bool {
        matches!(
            self,
            Formula::Next(_)
                | Formula::Until(..)
                | Formula::Release(..)
                | Formula::Eventually(_)
                | Formula::Globally(_)
                | Formula::BoundedUntil { .. }
        )
    }

    pub fn is_past_operator(&self) -> bool {
        matches!(
            self,
            Formula::Yesterday(_)
                | Formula::WeakYesterday(_)
                | Formula::Since(..)
                | Formula::Triggered(..)
                | Formula::Once(_)
                | Formula::Historically(_)
                | Formula::BoundedSince { .. }
        )
    }

    /// True when some node satisfies `pred`.
    pub fn any(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn has_future(&self) -> bool {
        self.any(&Formula::is_future_operator)
    }

    pub fn has_past(&self) -> bool {
        self.any(&Formula::is_past_operator)
    }

    /// Propositions in order of first occurrence (left to right).
    pub fn propositions(&self) -> Vec<Proposition> {
        fn walk(f: &Formula, out: &mut Vec<Proposition>) {
            if let Formula::Prop(p) = f {
                if !out.contains(p) {
                    out.push(p.clone());
                }
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl From<Proposition> for Formula {
    fn from(p: Proposition) -> Self {
        Formula::Prop(p)
    }
}
