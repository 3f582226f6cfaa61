//! Hand-written recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, tightest first: unary operators (`! X Y Z F G O H`), the
//! right-associative binary temporal operators (`U R S T`, with bounded forms
//! `U[a,b]` and `S[a,b]`), `&`, `|`, and finally the right-associative `->`.

use std::fmt;

use super::{is_reserved, Alphabet, Formula, Proposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    UnknownProposition(String),
    MalformedBound { lo: u32, hi: u32 },
}

/// Parse failure with a 1-based source location.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::UnknownProposition(p) => write!(f, "unknown proposition `{p}`"),
            ParseErrorKind::MalformedBound { lo, hi } => {
                write!(f, "malformed bound [{lo},{hi}]: lower bound exceeds upper bound")
            }
        }
    }
}

/// Parses `text`, requiring every proposition to be declared in `alphabet`.
pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Formula, ParseError> {
    Parser::new(text, Some(alphabet)).run()
}

/// Parses `text` accepting any well-formed identifier as a proposition.
pub fn parse_open(text: &str) -> Result<Formula, ParseError> {
    Parser::new(text, None).run()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Bang,
    Unary(char),
    Binary(char, Option<(u32, u32)>),
    Amp,
    Pipe,
    Arrow,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::True => f.write_str("`true`"),
            Tok::False => f.write_str("`false`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Unary(c) | Tok::Binary(c, _) => write!(f, "`{c}`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            chars: src.char_indices().peekable(),
            src,
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<(usize, char)> {
        let next = self.chars.next();
        if let Some((_, c)) = next {
            if c == '\n' {
                self.line += 1;
                self.column = 1;
            } else {
                self.column += 1;
            }
        }
        next
    }

    fn err(&self, line: usize, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax(msg.into()),
            line,
            column,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        digits
            .parse()
            .map_err(|_| self.err(line, column, "expected a natural number in bound"))
    }

    fn expect_char(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        match self.bump() {
            Some((_, c)) if c == want => Ok(()),
            Some((_, c)) => Err(self.err(line, column, format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(line, column, format!("expected `{want}`, found end of input"))),
        }
    }

    fn bound(&mut self, op: char) -> Result<Option<(u32, u32)>, ParseError> {
        if self.chars.peek().map(|&(_, c)| c) != Some('[') {
            return Ok(None);
        }
        let (line, column) = (self.line, self.column);
        if op != 'U' && op != 'S' {
            return Err(self.err(line, column, format!("operator `{op}` takes no bound")));
        }
        self.bump();
        let lo = self.number()?;
        self.expect_char(',')?;
        let hi = self.number()?;
        self.expect_char(']')?;
        if lo > hi {
            return Err(ParseError {
                kind: ParseErrorKind::MalformedBound { lo, hi },
                line,
                column,
            });
        }
        Ok(Some((lo, hi)))
    }

    fn tokens(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let (line, column) = (self.line, self.column);
            let Some((start, c)) = self.bump() else {
                out.push(Spanned {
                    tok: Tok::Eof,
                    line,
                    column,
                });
                return Ok(out);
            };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '-' => {
                    if self.chars.peek().map(|&(_, c)| c) == Some('>') {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(self.err(line, column, "expected `->`"));
                    }
                }
                c if c.is_ascii_alphabetic() => {
                    let mut end = start + c.len_utf8();
                    while let Some(&(i, c)) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' {
                            end = i + c.len_utf8();
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    let word = &self.src[start..end];
                    match word {
                        "true" => Tok::True,
                        "false" => Tok::False,
                        "X" | "Y" | "Z" | "F" | "G" | "O" | "H" => {
                            Tok::Unary(word.chars().next().unwrap())
                        }
                        "U" | "R" | "S" | "T" => {
                            let op = word.chars().next().unwrap();
                            let bound = self.bound(op)?;
                            Tok::Binary(op, bound)
                        }
                        _ => Tok::Ident(word.to_owned()),
                    }
                }
                other => {
                    return Err(self.err(line, column, format!("unexpected character `{other}`")))
                }
            };
            out.push(Spanned { tok, line, column });
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    alphabet: Option<&'a Alphabet>,
    toks: Vec<Spanned>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, alphabet: Option<&'a Alphabet>) -> Self {
        Parser {
            text,
            alphabet,
            toks: Vec::new(),
            pos: 0,
        }
    }

    fn run(mut self) -> Result<Formula, ParseError> {
        self.toks = Lexer::new(self.text).tokens()?;
        let f = self.implication()?;
        match self.peek() {
            Tok::Eof => Ok(f),
            tok => Err(self.unexpected(&tok.clone(), "end of input")),
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn unexpected(&self, tok: &Tok, expected: &str) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            kind: ParseErrorKind::Syntax(format!("expected {expected}, found {tok}")),
            line: s.line,
            column: s.column,
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.advance();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.advance();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.temporal()?;
        while *self.peek() == Tok::Amp {
            self.advance();
            let rhs = self.temporal()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn temporal(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if let Tok::Binary(op, bound) = self.peek().clone() {
            self.advance();
            let rhs = self.temporal()?;
            return Ok(match (op, bound) {
                ('U', None) => Formula::until(lhs, rhs),
                ('U', Some((lo, hi))) => Formula::bounded_until(lo, hi, lhs, rhs),
                ('S', None) => Formula::since(lhs, rhs),
                ('S', Some((lo, hi))) => Formula::bounded_since(lo, hi, lhs, rhs),
                ('R', _) => Formula::release(lhs, rhs),
                _ => Formula::triggered(lhs, rhs),
            });
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Bang => {
                self.advance();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Unary(op) => {
                self.advance();
                let inner = self.unary()?;
                Ok(match op {
                    'X' => Formula::next(inner),
                    'Y' => Formula::yesterday(inner),
                    'Z' => Formula::weak_yesterday(inner),
                    'F' => Formula::eventually(inner),
                    'G' => Formula::globally(inner),
                    'O' => Formula::once(inner),
                    _ => Formula::historically(inner),
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (line, column) = (self.toks[self.pos].line, self.toks[self.pos].column);
        match self.advance() {
            Tok::True => Ok(Formula::True),
            Tok::False => Ok(Formula::False),
            Tok::LParen => {
                let inner = self.implication()?;
                match self.peek().clone() {
                    Tok::RParen => {
                        self.advance();
                        Ok(inner)
                    }
                    tok => Err(self.unexpected(&tok, "`)`")),
                }
            }
            Tok::Ident(name) => {
                debug_assert!(!is_reserved(&name));
                if let Some(alphabet) = self.alphabet {
                    if !alphabet.contains(&name) {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnknownProposition(name),
                            line,
                            column,
                        });
                    }
                }
                let prop = Proposition::new(&name).ok_or_else(|| ParseError {
                    kind: ParseErrorKind::Syntax(format!("invalid identifier `{name}`")),
                    line,
                    column,
                })?;
                Ok(Formula::Prop(prop))
            }
            tok => {
                self.pos = self.pos.saturating_sub(usize::from(tok != Tok::Eof));
                Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("expected a formula, found {tok}")),
                    line,
                    column,
                })
            }
        }
    }
}
