//! Command-line front end. Results go to `out`, diagnostics to `err`.
//!
//! Exit codes: 0 success or affirmative answer, 1 negative answer, 2 usage or
//! parse error, 3 resource limit exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::canonical::{canonicalize, to_galpha};
use crate::formula::{parse, parse_open, Alphabet, Formula};
use crate::fragments::{classify, is_pure_past};
use crate::monitor::{self, Counterexample, MonitorError, SafetyMonitor};
use crate::semantics::{eval_at, evalfin};
use crate::separation::{
    self, check_membership, make_sigma, run_indistinguishability, MarginRule, ReportParameters,
    SourceConfig,
};
use crate::word::RawWord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "safeltl", version, about = "Safety fragments of LTL with past")]
struct Cli {
    /// Propositions, separated by commas or spaces. Inferred from the inputs
    /// in order of first occurrence when omitted.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[arg(long, global = true, default_value_t = monitor::DEFAULT_MAX_STATES, value_parser = positive)]
    max_states: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Canonical,
    Galpha,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report fragment membership.
    Classify { formula: String },
    /// Evaluate a formula on a word (`stem;loop`, or a finite word with --finite).
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 0)]
        position: usize,
        /// Read the word as finite and evaluate a pure-past formula at its end.
        #[arg(long)]
        finite: bool,
        formula: String,
    },
    /// Rewrite into canonical form.
    Canonicalize {
        #[arg(long, value_enum, default_value = "canonical")]
        emit: Emit,
        formula: String,
    },
    /// Rewrite into a single `G` over a pure-past body.
    Galpha { formula: String },
    /// Build a safety monitor.
    Monitor {
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value = "auto")]
        builder: String,
        formula: String,
    },
    /// Decide language equality.
    Equiv {
        #[arg(long, default_value = "auto")]
        builder: String,
        left: String,
        right: String,
    },
    /// Decide whether the left language is contained in the right one.
    Contains {
        #[arg(long, default_value = "auto")]
        builder: String,
        left: String,
        right: String,
    },
    /// Show a word of the three-marker family and whether `G(p1 | G p2)` holds.
    Sigma { i: usize, k: usize, j: usize },
    /// Run the indistinguishability experiment.
    Separation {
        #[arg(long, default_value_t = 2)]
        max_next: usize,
        #[arg(long, default_value_t = 2)]
        max_d: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3, value_parser = positive)]
        leaf_budget: usize,
        #[arg(long, default_value = "mixed")]
        source: String,
        /// Margins for both index gaps, comma separated.
        #[arg(long, default_value = "0,1,2", value_delimiter = ',')]
        margins: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        markdown: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Limit(String),
}

impl From<MonitorError> for Failure {
    fn from(e: MonitorError) -> Self {
        match e {
            MonitorError::TooManyStates(_) => Failure::Limit(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

struct Session<'a> {
    alphabet: Option<Alphabet>,
    format: Format,
    max_states: usize,
    out: &'a mut dyn Write,
}

type Outcome = Result<i32, Failure>;

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[derive(Serialize)]
struct CounterexampleJson {
    word: RawWord,
    holds_in: monitor::Side,
}

fn counterexample_json(c: &Counterexample) -> CounterexampleJson {
    CounterexampleJson {
        word: c.word.to_raw(),
        holds_in: c.holds_in,
    }
}

impl Session<'_> {
    fn emit_line(&mut self, text: &str) -> Outcome {
        writeln!(self.out, "{text}").map_err(usage)?;
        Ok(EXIT_OK)
    }

    fn emit_json(&mut self, v: &impl Serialize) -> Outcome {
        let text = serde_json::to_string_pretty(v).map_err(usage)?;
        self.emit_line(&text)
    }

    /// Parses formulas against the declared alphabet, or infers one.
    fn formulas(&self, texts: &[&str], extra: &[String]) -> Result<(Vec<Formula>, Alphabet), Failure> {
        if let Some(ab) = &self.alphabet {
            let fs = texts
                .iter()
                .map(|t| parse(t, ab).map_err(usage))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((fs, ab.clone()));
        }
        let fs = texts
            .iter()
            .map(|t| parse_open(t).map_err(usage))
            .collect::<Result<Vec<_>, _>>()?;
        let mut names: Vec<String> = Vec::new();
        for p in fs.iter().flat_map(|f| f.propositions()) {
            if !names.iter().any(|n| n == p.as_str()) {
                names.push(p.as_str().to_owned());
            }
        }
        for n in extra {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        let ab = Alphabet::new(names).map_err(usage)?;
        Ok((fs, ab))
    }

    fn one(&self, text: &str) -> Result<(Formula, Alphabet), Failure> {
        let (mut fs, ab) = self.formulas(&[text], &[])?;
        Ok((fs.remove(0), ab))
    }

    fn monitor(&self, builder: &str, f: &Formula, ab: &Alphabet) -> Result<SafetyMonitor, Failure> {
        Ok(monitor::builder(builder)?.build(f, ab, self.max_states)?)
    }

    fn run(&mut self, command: Command) -> Outcome {
        match command {
            Command::Classify { formula } => {
                let (f, _) = self.one(&formula)?;
                let report = classify(&f);
                match self.format {
                    Format::Json => self.emit_json(&report),
                    Format::Text => {
                        let flags = serde_json::to_value(report.flags).map_err(usage)?;
                        let mut lines = vec![report.formula.clone()];
                        for (k, v) in flags.as_object().expect("struct") {
                            lines.push(format!("  {k}: {v}"));
                        }
                        self.emit_line(&lines.join("\n"))
                    }
                }
            }
            Command::Eval {
                word,
                position,
                finite,
                formula,
            } => {
                let raw = parse_word(&word)?;
                let (fs, ab) = self.formulas(&[&formula], &raw.names())?;
                let f = &fs[0];
                let holds = if finite {
                    let w = raw.to_finite(&ab).map_err(usage)?;
                    evalfin(&w, f).map_err(usage)?
                } else {
                    let w = raw.to_lasso(&ab).map_err(usage)?;
                    eval_at(&w, position, f)
                };
                match self.format {
                    Format::Json => self.emit_json(&json!({
                        "formula": f.to_string(),
                        "position": position,
                        "holds": holds,
                    }))?,
                    Format::Text => self.emit_line(&holds.to_string())?,
                };
                Ok(verdict(holds))
            }
            Command::Canonicalize { emit, formula } => {
                let (f, _) = self.one(&formula)?;
                let c = canonicalize(&f).map_err(usage)?;
                let result = match emit {
                    Emit::Canonical => c.result.to_formula(),
                    Emit::Galpha => to_galpha(&c.result),
                };
                match self.format {
                    Format::Json => self.emit_json(&json!({
                        "formula": f.to_string(),
                        "result": result.to_string(),
                        "canonical": c.result,
                        "bounded_payloads": c.result.is_bounded(),
                        "trace": c.trace,
                    })),
                    Format::Text => {
                        self.emit_line(&result.to_string())?;
                        let trace = serde_json::to_string(&c.trace).map_err(usage)?;
                        self.emit_line(&trace)
                    }
                }
            }
            Command::Galpha { formula } => {
                let (f, _) = self.one(&formula)?;
                let g = match &f {
                    Formula::Globally(a) if is_pure_past(a) => f.clone(),
                    _ => to_galpha(&canonicalize(&f).map_err(usage)?.result),
                };
                match self.format {
                    Format::Json => self.emit_json(&json!({
                        "formula": f.to_string(),
                        "galpha": g.to_string(),
                    })),
                    Format::Text => self.emit_line(&g.to_string()),
                }
            }
            Command::Monitor {
                dot,
                builder,
                formula,
            } => {
                let (f, ab) = self.one(&formula)?;
                let m = self.monitor(&builder, &f, &ab)?;
                if dot {
                    return self.emit_line(m.to_dot().trim_end());
                }
                let rejecting = (0..m.state_count()).filter(|&s| m.is_reject(s)).count();
                let summary = json!({
                    "formula": f.to_string(),
                    "builder": builder,
                    "alphabet": ab,
                    "states": m.state_count(),
                    "reject_states": rejecting,
                });
                match self.format {
                    Format::Json => self.emit_json(&summary),
                    Format::Text => self.emit_line(&format!(
                        "{} states ({} rejecting) over {{{}}}",
                        m.state_count(),
                        rejecting,
                        ab.propositions()
                            .iter()
                            .map(|p| p.as_str())
                            .collect::<Vec<_>>()
                            .join(" ")
                    )),
                }
            }
            Command::Equiv {
                builder,
                left,
                right,
            } => {
                let (fs, ab) = self.formulas(&[&left, &right], &[])?;
                let a = self.monitor(&builder, &fs[0], &ab)?;
                let b = self.monitor(&builder, &fs[1], &ab)?;
                match monitor::equivalent(&a, &b, self.max_states)? {
                    None => {
                        match self.format {
                            Format::Json => self.emit_json(&json!({ "equivalent": true }))?,
                            Format::Text => self.emit_line("equivalent")?,
                        };
                        Ok(EXIT_OK)
                    }
                    Some(c) => {
                        self.emit_json(&counterexample_json(&c))?;
                        Ok(EXIT_NEGATIVE)
                    }
                }
            }
            Command::Contains {
                builder,
                left,
                right,
            } => {
                let (fs, ab) = self.formulas(&[&left, &right], &[])?;
                let a = self.monitor(&builder, &fs[0], &ab)?;
                let b = self.monitor(&builder, &fs[1], &ab)?;
                match monitor::contains(&a, &b, self.max_states)? {
                    None => {
                        match self.format {
                            Format::Json => self.emit_json(&json!({ "contained": true }))?,
                            Format::Text => self.emit_line("contained")?,
                        };
                        Ok(EXIT_OK)
                    }
                    Some(word) => {
                        let c = Counterexample {
                            word,
                            holds_in: monitor::Side::Left,
                        };
                        self.emit_json(&counterexample_json(&c))?;
                        Ok(EXIT_NEGATIVE)
                    }
                }
            }
            Command::Sigma { i, k, j } => {
                let w = make_sigma(i, k, j).map_err(usage)?;
                let m = check_membership(&w);
                match self.format {
                    Format::Json => self.emit_json(&json!({
                        "i": i, "k": k, "j": j,
                        "word": w.word.to_raw(),
                        "satisfies_witness": m.holds,
                        "predicted": m.predicted,
                    }))?,
                    Format::Text => self.emit_line(&format!("{} {}", w.word, m.holds))?,
                };
                Ok(verdict(m.holds))
            }
            Command::Separation {
                max_next,
                max_d,
                samples,
                seed,
                leaf_budget,
                source,
                margins,
                out,
                markdown,
            } => {
                let src = separation::source(&source).map_err(usage)?;
                let config = SourceConfig {
                    max_next,
                    max_d,
                    samples,
                    seed,
                    leaf_budget,
                };
                let ab = separation::sigma_alphabet();
                let formulas: Vec<Formula> = src
                    .formulas(&ab, &config)
                    .iter()
                    .map(|c| c.to_formula())
                    .collect();
                let rule = MarginRule::uniform(margins);
                let params = ReportParameters {
                    source: src.name().to_owned(),
                    config,
                    margins: rule.clone(),
                };
                let report = run_indistinguishability(&formulas, &rule, params).map_err(usage)?;
                let text = serde_json::to_string_pretty(&report).map_err(usage)?;
                if let Some(path) = out {
                    std::fs::write(&path, format!("{text}\n")).map_err(usage)?;
                }
                if markdown {
                    self.emit_line(report.to_markdown().trim_end())?;
                } else if self.format == Format::Json {
                    self.emit_line(&text)?;
                } else {
                    self.emit_line(&format!(
                        "{} formulas, {} telling the pair apart; witness separated {}/{} pairs",
                        report.formulas_checked,
                        report.formulas_disagreeing,
                        report.witness.pairs_distinguished,
                        report.witness.pairs_tested
                    ))?;
                }
                Ok(verdict(report.holds()))
            }
        }
    }
}

fn positive(text: &str) -> Result<usize, String> {
    match text.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_word(text: &str) -> Result<RawWord, Failure> {
    if text.contains('"') {
        serde_json::from_str(text).map_err(usage)
    } else {
        RawWord::parse_literal(text).map_err(usage)
    }
}

fn parse_alphabet(text: &str) -> Result<Alphabet, Failure> {
    Alphabet::new(
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty()),
    )
    .map_err(usage)
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let alphabet = match cli.alphabet.as_deref().map(parse_alphabet).transpose() {
        Ok(a) => a,
        Err(Failure::Usage(m)) | Err(Failure::Limit(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let mut session = Session {
        alphabet,
        format: cli.format,
        max_states: cli.max_states,
        out,
    };
    match session.run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Limit(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_LIMIT
        }
    }
}
