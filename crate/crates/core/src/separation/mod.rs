//! Indistinguishability experiments over the three-marker word family.
//!
//! `σ(i,k,j)` carries `{p1}` at positions `i` and `k`, `{p2}` at `j` and
//! `{p1,p2}` everywhere else. The safety formula `G(p1 | G p2)` holds on it
//! iff both `p1`-only markers come before the `p2`-only one, while bounded-past
//! canonical formulas only see short windows and cannot tell `σ(i,i,j)` from
//! `σ(i,k,j)` once the markers are far enough apart.

mod experiment;
mod pool;
mod windows;

use serde::Serialize;

use crate::formula::{Alphabet, Formula};
use crate::semantics::eval;
use crate::word::{LassoWord, Letter};

pub use experiment::{
    indices, run_indistinguishability, MarginRule, PointVerdict, ReportParameters, SeparationReport,
    FormulaVerdict, WitnessSummary,
};
pub use pool::{
    enumerate_canonical, payload_pool, source, sources, EnumeratedSource, FormulaSource,
    MixedSource, SampledSource, SourceConfig,
};
pub use windows::{check_interval_correspondence, classify_window, IntervalReport, WindowType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeparationError {
    #[error("indices clash: i={i}, k={k}, j={j} needs i != j and k != j")]
    IndexClash { i: usize, k: usize, j: usize },
    #[error("window hypotheses fail for d={d}: need i >= d, j >= i+d, k >= j+d (got i={i}, j={j}, k={k})")]
    Hypotheses { d: usize, i: usize, j: usize, k: usize },
    #[error("`{0}` is not a bounded-past canonical formula")]
    NotBoundedCanonical(String),
    #[error("unknown formula source `{0}`")]
    UnknownSource(String),
}

pub fn sigma_alphabet() -> Alphabet {
    Alphabet::new(["p1", "p2"]).expect("static alphabet")
}

const P1: Letter = Letter(0b01);
const P2: Letter = Letter(0b10);
const BOTH: Letter = Letter(0b11);

/// The separating safety formula `G(p1 | G p2)`.
pub fn phi_g() -> Formula {
    Formula::globally(Formula::or(
        Formula::prop("p1"),
        Formula::globally(Formula::prop("p2")),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaWord {
    pub i: usize,
    pub k: usize,
    pub j: usize,
    pub word: LassoWord,
}

/// `σ(i,k,j)` as a stem of length `max(i,j,k)+1` followed by `{p1,p2}^ω`.
pub fn make_sigma(i: usize, k: usize, j: usize) -> Result<SigmaWord, SeparationError> {
    if i == j || k == j {
        return Err(SeparationError::IndexClash { i, k, j });
    }
    let len = i.max(j).max(k) + 1;
    let stem = (0..len)
        .map(|h| {
            if h == i || h == k {
                P1
            } else if h == j {
                P2
            } else {
                BOTH
            }
        })
        .collect();
    let word = LassoWord::new(sigma_alphabet(), stem, vec![BOTH]).expect("nonempty loop");
    Ok(SigmaWord { i, k, j, word })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipCheck {
    pub holds: bool,
    pub predicted: bool,
}

impl MembershipCheck {
    pub fn matches(&self) -> bool {
        self.holds == self.predicted
    }
}

/// Evaluates `G(p1 | G p2)` on the word and compares with `i < j && k < j`.
pub fn check_membership(w: &SigmaWord) -> MembershipCheck {
    MembershipCheck {
        holds: eval(&w.word, &phi_g()),
        predicted: w.i < w.j && w.k < w.j,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(w: &SigmaWord, n: usize) -> Vec<Letter> {
        (0..n).map(|h| w.word.at(h)).collect()
    }

    #[test]
    fn family_positions() {
        let w = make_sigma(1, 1, 2).unwrap();
        assert_eq!(letters(&w, 5), [BOTH, P1, P2, BOTH, BOTH]);
        assert_eq!(make_sigma(1, 3, 2).unwrap().word.at(3), P1);
        assert!(make_sigma(1, 1, 1).is_err());
    }

    #[test]
    fn membership_examples() {
        for (i, k, j, expected) in [(1, 1, 2, true), (1, 3, 2, false), (2, 2, 1, false)] {
            let c = check_membership(&make_sigma(i, k, j).unwrap());
            assert_eq!(c.holds, expected);
            assert!(c.matches());
        }
    }
}
