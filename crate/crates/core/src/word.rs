//! Finite and ultimately periodic words over `2^Σ`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::Alphabet;

/// A set of propositions, stored as a bit set indexed by alphabet position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> Letter {
        Letter(self.0 | 1 << index)
    }

    /// All letters of `alphabet` in enumeration order.
    pub fn all(alphabet: &Alphabet) -> impl Iterator<Item = Letter> {
        (0..alphabet.letter_count() as u32).map(Letter)
    }

    pub fn names(self, alphabet: &Alphabet) -> Vec<String> {
        alphabet
            .propositions()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains(*i))
            .map(|(_, p)| p.as_str().to_owned())
            .collect()
    }

    pub fn display(self, alphabet: &Alphabet) -> String {
        format!("{{{}}}", self.names(alphabet).join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("word literal: {0}")]
    Literal(String),
    #[error("proposition `{0}` is not in the alphabet")]
    UnknownProposition(String),
    #[error("a finite word needs at least one letter")]
    EmptyFinite,
    #[error("a lasso word needs a nonempty loop")]
    EmptyLoop,
    #[error("interval [{start},{end}] is invalid for a word of length {len}")]
    Interval { start: i64, end: usize, len: usize },
}

/// A nonempty finite word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::EmptyFinite);
        }
        Ok(FiniteWord { alphabet, letters })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All words of length `1..=max_len`, shortest first.
    pub fn enumerate(alphabet: &Alphabet, max_len: usize) -> Vec<FiniteWord> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max_len {
            layer = layer
                .iter()
                .flat_map(|w| {
                    Letter::all(alphabet).map(move |l| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
                .collect();
            out.extend(layer.iter().map(|w| FiniteWord {
                alphabet: alphabet.clone(),
                letters: w.clone(),
            }));
        }
        out
    }
}

/// An ultimately periodic word `stem · loop^ω`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LassoWord {
    alphabet: Alphabet,
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(alphabet: Alphabet, stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, WordError> {
        if cycle.is_empty() {
            return Err(WordError::EmptyLoop);
        }
        Ok(LassoWord {
            alphabet,
            stem,
            cycle,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Letter at position `i`.
    pub fn at(&self, i: usize) -> Letter {
        if i < self.stem.len() {
            self.stem[i]
        } else {
            self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Every lasso with stem length `<= max_stem` and loop length in
    /// `1..=max_loop`.
    pub fn enumerate(alphabet: &Alphabet, max_stem: usize, max_loop: usize) -> Vec<LassoWord> {
        let stems = FiniteWord::enumerate(alphabet, max_stem);
        let loops = FiniteWord::enumerate(alphabet, max_loop);
        let mut out = Vec::new();
        let empty: [Vec<Letter>; 1] = [vec![]];
        for stem in empty
            .iter()
            .cloned()
            .chain(stems.into_iter().map(|w| w.letters))
        {
            for l in &loops {
                out.push(LassoWord {
                    alphabet: alphabet.clone(),
                    stem: stem.clone(),
                    cycle: l.letters.clone(),
                });
            }
        }
        out
    }

    pub fn to_raw(&self) -> RawWord {
        RawWord {
            stem: self.stem.iter().map(|l| l.names(&self.alphabet)).collect(),
            cycle: Some(self.cycle.iter().map(|l| l.names(&self.alphabet)).collect()),
        }
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.stem {
            f.write_str(&l.display(&self.alphabet))?;
        }
        f.write_str(";")?;
        for l in &self.cycle {
            f.write_str(&l.display(&self.alphabet))?;
        }
        Ok(())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(&l.display(&self.alphabet))?;
        }
        Ok(())
    }
}

/// Read access shared by both word kinds.
pub trait Word {
    fn alphabet(&self) -> &Alphabet;
    /// Letter at `i`, or `None` past the end of a finite word.
    fn letter(&self, i: usize) -> Option<Letter>;
    fn finite_len(&self) -> Option<usize>;
}

impl Word for FiniteWord {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn letter(&self, i: usize) -> Option<Letter> {
        self.letters.get(i).copied()
    }
    fn finite_len(&self) -> Option<usize> {
        Some(self.letters.len())
    }
}

impl Word for LassoWord {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn letter(&self, i: usize) -> Option<Letter> {
        Some(self.at(i))
    }
    fn finite_len(&self) -> Option<usize> {
        None
    }
}

/// `σ_[start, end]`, where a negative `start` clamps to 0.
pub fn interval<W: Word + ?Sized>(word: &W, start: i64, end: usize) -> Result<FiniteWord, WordError> {
    let bad = || WordError::Interval {
        start,
        end,
        len: word.finite_len().unwrap_or(usize::MAX),
    };
    if start > end as i64 {
        return Err(bad());
    }
    if let Some(len) = word.finite_len() {
        if end >= len {
            return Err(bad());
        }
    }
    let from = start.max(0) as usize;
    let letters = (from..=end).map(|i| word.letter(i).expect("checked bound")).collect();
    Ok(FiniteWord {
        alphabet: word.alphabet().clone(),
        letters,
    })
}

/// Word in name form: the JSON shape and the result of parsing a literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawWord {
    pub stem: Vec<Vec<String>>,
    #[serde(rename = "loop", default, skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<Vec<String>>>,
}

impl RawWord {
    /// Parses `{p1 p2}{p1};{p1 p2}`. The part after `;` is the loop; without
    /// `;` the literal denotes a finite word.
    pub fn parse_literal(text: &str) -> Result<RawWord, WordError> {
        let (stem_text, loop_text) = match text.split_once(';') {
            Some((s, l)) => (s, Some(l)),
            None => (text, None),
        };
        let stem = parse_letters(stem_text)?;
        let cycle = loop_text.map(parse_letters).transpose()?;
        Ok(RawWord { stem, cycle })
    }

    pub fn names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let all = self.stem.iter().chain(self.cycle.iter().flatten());
        for name in all.flatten() {
            if !out.contains(name) {
                out.push(name.clone());
            }
        }
        out
    }

    fn letters(alphabet: &Alphabet, raw: &[Vec<String>]) -> Result<Vec<Letter>, WordError> {
        raw.iter()
            .map(|names| {
                names.iter().try_fold(Letter::EMPTY, |acc, n| {
                    alphabet
                        .index_of(n)
                        .map(|i| acc.with(i))
                        .ok_or_else(|| WordError::UnknownProposition(n.clone()))
                })
            })
            .collect()
    }

    pub fn to_lasso(&self, alphabet: &Alphabet) -> Result<LassoWord, WordError> {
        let cycle = self.cycle.as_ref().ok_or(WordError::EmptyLoop)?;
        LassoWord::new(
            alphabet.clone(),
            Self::letters(alphabet, &self.stem)?,
            Self::letters(alphabet, cycle)?,
        )
    }

    pub fn to_finite(&self, alphabet: &Alphabet) -> Result<FiniteWord, WordError> {
        if self.cycle.is_some() {
            return Err(WordError::Literal("finite word expected, found `;`".into()));
        }
        FiniteWord::new(alphabet.clone(), Self::letters(alphabet, &self.stem)?)
    }
}

fn parse_letters(text: &str) -> Result<Vec<Vec<String>>, WordError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('{')
            .ok_or_else(|| WordError::Literal(format!("expected `{{` at `{rest}`")))?;
        let close = body
            .find('}')
            .ok_or_else(|| WordError::Literal("unterminated `{`".into()))?;
        let names: Vec<String> = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::to_owned)
            .collect();
        if let Some(bad) = names.iter().find(|n| !crate::formula::is_identifier(n)) {
            return Err(WordError::Literal(format!("invalid proposition `{bad}`")));
        }
        out.push(names);
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["p1", "p2"]).unwrap()
    }

    #[test]
    fn literal_round_trip() {
        let raw = RawWord::parse_literal("{p1 p2}{p1};{p1,p2}").unwrap();
        assert_eq!(raw.stem, vec![vec!["p1", "p2"], vec!["p1"]]);
        let w = raw.to_lasso(&ab()).unwrap();
        assert_eq!(w.to_string(), "{p1 p2}{p1};{p1 p2}");
        assert_eq!(w.at(5), Letter(3));
        let json = serde_json::to_string(&w.to_raw()).unwrap();
        assert_eq!(json, r#"{"stem":[["p1","p2"],["p1"]],"loop":[["p1","p2"]]}"#);
        let back: RawWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_lasso(&ab()).unwrap(), w);
    }

    #[test]
    fn literal_errors() {
        assert_eq!(
            RawWord::parse_literal("{p1};").unwrap().to_lasso(&ab()),
            Err(WordError::EmptyLoop)
        );
        assert!(RawWord::parse_literal("{p1").is_err());
        assert!(RawWord::parse_literal("p1").is_err());
        assert_eq!(
            RawWord::parse_literal(";{q}").unwrap().to_lasso(&ab()),
            Err(WordError::UnknownProposition("q".into()))
        );
        assert_eq!(
            RawWord::parse_literal("").unwrap().to_finite(&ab()),
            Err(WordError::EmptyFinite)
        );
    }

    #[test]
    fn intervals_clamp_and_unroll() {
        let w = RawWord::parse_literal("{p1}{p2}{};{p1 p2}").unwrap().to_lasso(&ab()).unwrap();
        let iv = interval(&w, -2, 1).unwrap();
        assert_eq!(iv.letters(), &[Letter(1), Letter(2)]);
        assert_eq!(interval(&w, 3, 3).unwrap().letters(), &[Letter(3)]);
        let w = RawWord::parse_literal("{p1};{p2}").unwrap().to_lasso(&ab()).unwrap();
        assert_eq!(interval(&w, 0, 2).unwrap().letters(), &[Letter(1), Letter(2), Letter(2)]);
        let fin = FiniteWord::new(ab(), vec![Letter(1)]).unwrap();
        assert!(interval(&fin, 0, 1).is_err());
        assert!(interval(&w, 2, 1).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(FiniteWord::enumerate(&ab(), 2).len(), 4 + 16);
        assert_eq!(LassoWord::enumerate(&ab(), 3, 2).len(), 85 * 20);
    }
}
