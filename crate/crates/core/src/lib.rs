//! Safety fragments of linear temporal logic with past.
//!
//! The crate parses and prints formulas, classifies them into syntactic
//! fragments, evaluates them over finite and ultimately periodic words,
//! rewrites the layered safety fragment into canonical and single-`G` forms,
//! compiles deterministic safety monitors with containment checks, and runs
//! indistinguishability experiments over families of words.

pub mod canonical;
pub mod cli;
pub mod formula;
pub mod fragments;
pub mod generate;
pub mod monitor;
pub mod semantics;
pub mod separation;
pub mod word;

pub use formula::{parse, parse_open, Alphabet, Formula, Proposition};
pub use word::{FiniteWord, LassoWord, Letter, RawWord};
