use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::canonical::{recognize, PayloadClass};
use crate::formula::{next_depth, past_temporal_depth, Formula};
use crate::semantics::eval;

use super::{
    check_interval_correspondence, make_sigma, phi_g, IntervalReport, SeparationError,
    SourceConfig,
};

/// Extra separations added on top of the minimal indices: `j = i + d + δ`
/// and `k = j + d + δ'` for every `δ` and `δ'` listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarginRule {
    pub deltas: Vec<usize>,
    pub delta_primes: Vec<usize>,
}

impl Default for MarginRule {
    fn default() -> Self {
        MarginRule {
            deltas: vec![0, 1, 2],
            delta_primes: vec![0, 1, 2],
        }
    }
}

impl MarginRule {
    pub fn uniform(margins: impl IntoIterator<Item = usize>) -> Self {
        let m: Vec<usize> = margins.into_iter().collect();
        MarginRule {
            deltas: m.clone(),
            delta_primes: m,
        }
    }

    fn grid(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.deltas
            .iter()
            .flat_map(|&a| self.delta_primes.iter().map(move |&b| (a, b)))
    }
}

/// Indices `(i, j, k)` for depths `m`, `d` and margins, moving `j` (then `k`)
/// one step further when it would coincide with `i` (then `j`).
pub fn indices(m: usize, d: usize, delta: usize, delta_prime: usize) -> (usize, usize, usize) {
    let i = m + d;
    let mut j = i + d + delta;
    if j == i {
        j += 1;
    }
    let mut k = j + d + delta_prime;
    if k == j {
        k += 1;
    }
    (i, j, k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointVerdict {
    pub delta: usize,
    pub delta_prime: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Truth on `σ(i,i,j)`.
    pub near: bool,
    /// Truth on `σ(i,k,j)`.
    pub far: bool,
}

impl PointVerdict {
    pub fn agrees(&self) -> bool {
        self.near == self.far
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaVerdict {
    pub formula: String,
    pub next_depth: usize,
    pub past_depth: usize,
    pub agrees_everywhere: bool,
    pub points: Vec<PointVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessSummary {
    pub formula: String,
    pub pairs_tested: usize,
    pub pairs_distinguished: usize,
    pub all_distinguished: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportParameters {
    pub source: String,
    #[serde(flatten)]
    pub config: SourceConfig,
    pub margins: MarginRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub parameters: ReportParameters,
    pub formulas_checked: usize,
    pub formulas_disagreeing: usize,
    pub verdicts: Vec<FormulaVerdict>,
    pub witness: WitnessSummary,
    pub window_checks: Vec<IntervalReport>,
}

impl SeparationReport {
    /// No formula told the pair apart and the witness told every pair apart.
    pub fn holds(&self) -> bool {
        self.formulas_disagreeing == 0 && self.witness.all_distinguished
    }

    pub fn disagreements(&self) -> impl Iterator<Item = &FormulaVerdict> {
        self.verdicts.iter().filter(|v| !v.agrees_everywhere)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let p = &self.parameters;
        let _ = writeln!(out, "# Separation experiment\n");
        let _ = writeln!(
            out,
            "source `{}`, seed {}, max next {}, max depth {}, margins {:?} x {:?}\n",
            p.source, p.config.seed, p.config.max_next, p.config.max_d, p.margins.deltas,
            p.margins.delta_primes
        );
        let _ = writeln!(out, "| quantity | value |\n|---|---|");
        let _ = writeln!(out, "| formulas checked | {} |", self.formulas_checked);
        let _ = writeln!(out, "| formulas telling the pair apart | {} |", self.formulas_disagreeing);
        let _ = writeln!(
            out,
            "| witness pairs distinguished | {}/{} |",
            self.witness.pairs_distinguished, self.witness.pairs_tested
        );
        let _ = writeln!(
            out,
            "| window checks holding | {}/{} |",
            self.window_checks.iter().filter(|w| w.holds()).count(),
            self.window_checks.len()
        );
        let bad: Vec<&FormulaVerdict> = self.disagreements().collect();
        if !bad.is_empty() {
            let _ = writeln!(out, "\n## Disagreeing formulas\n");
            let _ = writeln!(out, "| formula | m | d | (i, j, k) |\n|---|---|---|---|");
            for v in bad.iter().take(50) {
                let pts: Vec<String> = v
                    .points
                    .iter()
                    .filter(|p| !p.agrees())
                    .map(|p| format!("({}, {}, {})", p.i, p.j, p.k))
                    .collect();
                let _ = writeln!(
                    out,
                    "| `{}` | {} | {} | {} |",
                    v.formula,
                    v.next_depth,
                    v.past_depth,
                    pts.join(" ")
                );
            }
            if bad.len() > 50 {
                let _ = writeln!(out, "\n{} more not shown.", bad.len() - 50);
            }
        }
        out
    }
}

/// Evaluates every bounded-past canonical formula on `σ(i,i,j)` and
/// `σ(i,k,j)` over the margin grid, and checks that `G(p1 | G p2)` tells
/// every such pair apart.
pub fn run_indistinguishability(
    formulas: &[Formula],
    margins: &MarginRule,
    parameters: ReportParameters,
) -> Result<SeparationReport, SeparationError> {
    let witness = phi_g();
    let mut verdicts = Vec::with_capacity(formulas.len());
    let mut triples: BTreeSet<(usize, usize, usize, usize)> = BTreeSet::new();
    let mut pairs: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for f in formulas {
        if recognize(f, PayloadClass::BoundedPast).is_none() {
            return Err(SeparationError::NotBoundedCanonical(f.to_string()));
        }
        let m = next_depth(f);
        let d = past_temporal_depth(f);
        let points: Vec<PointVerdict> = margins
            .grid()
            .map(|(delta, delta_prime)| {
                let (i, j, k) = indices(m, d, delta, delta_prime);
                triples.insert((d, i, j, k));
                pairs.insert((i, j, k));
                let near = make_sigma(i, i, j).expect("j > i");
                let far = make_sigma(i, k, j).expect("k > j > i");
                PointVerdict {
                    delta,
                    delta_prime,
                    i,
                    j,
                    k,
                    near: eval(&near.word, f),
                    far: eval(&far.word, f),
                }
            })
            .collect();
        verdicts.push(FormulaVerdict {
            formula: f.to_string(),
            next_depth: m,
            past_depth: d,
            agrees_everywhere: points.iter().all(PointVerdict::agrees),
            points,
        });
    }
    verdicts.sort_by(|a, b| a.formula.cmp(&b.formula));
    verdicts.dedup_by(|a, b| a.formula == b.formula);

    let pairs_distinguished = pairs
        .iter()
        .filter(|&&(i, j, k)| {
            let near = make_sigma(i, i, j).expect("j > i");
            let far = make_sigma(i, k, j).expect("k > j > i");
            eval(&near.word, &witness) != eval(&far.word, &witness)
        })
        .count();
    let window_checks = triples
        .into_iter()
        .map(|(d, i, j, k)| check_interval_correspondence(d, i, j, k))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(SeparationReport {
        parameters,
        formulas_checked: verdicts.len(),
        formulas_disagreeing: verdicts.iter().filter(|v| !v.agrees_everywhere).count(),
        verdicts,
        witness: WitnessSummary {
            formula: witness.to_string(),
            pairs_tested: pairs.len(),
            pairs_distinguished,
            all_distinguished: pairs_distinguished == pairs.len(),
        },
        window_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_open;

    fn params() -> ReportParameters {
        ReportParameters {
            source: "test".into(),
            config: SourceConfig::default(),
            margins: MarginRule::default(),
        }
    }

    fn run(texts: &[&str], margins: &MarginRule) -> SeparationReport {
        let fs: Vec<Formula> = texts.iter().map(|t| parse_open(t).unwrap()).collect();
        run_indistinguishability(&fs, margins, params()).unwrap()
    }

    #[test]
    fn globally_p1_agrees_everywhere() {
        let r = run(&["G p1"], &MarginRule::default());
        assert!(r.holds());
        assert!(r.verdicts[0].points.iter().all(|p| !p.near && !p.far));
    }

    #[test]
    fn witness_separates_every_pair() {
        let r = run(&["G p1", "X G (p1 | Y p2)"], &MarginRule::default());
        assert!(r.witness.all_distinguished);
    }

    #[test]
    fn tight_margin_lets_a_window_formula_see_both_markers() {
        let r = run(&["G (p2 | Y p1)"], &MarginRule::default());
        assert_eq!(r.formulas_disagreeing, 1);
        let r = run(&["G (p2 | Y p1)"], &MarginRule::uniform([1, 2, 3]));
        assert_eq!(r.formulas_disagreeing, 0);
    }

    #[test]
    fn rejects_unbounded_payloads() {
        let f = parse_open("G (H p1)").unwrap();
        assert!(run_indistinguishability(&[f], &MarginRule::default(), params()).is_err());
    }

    #[test]
    fn index_bumping() {
        assert_eq!(indices(0, 0, 0, 0), (0, 1, 2));
        assert_eq!(indices(1, 1, 0, 0), (2, 3, 4));
    }
}
