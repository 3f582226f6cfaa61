use crate::formula::{next_depth, Formula};
use crate::fragments::is_pure_past;

use super::CanonError;

/// Turns a bounded-future formula into a past formula read `k` steps later:
/// `σ, t+k ⊨ pastify(ψ, k)` iff `σ, t ⊨ ψ`.
pub fn pastify(psi: &Formula, k: usize) -> Result<Formula, CanonError> {
    let needed = next_depth(psi);
    if k < needed {
        return Err(CanonError::ShiftTooSmall {
            formula: psi.to_string(),
            k,
            needed,
        });
    }
    shift(psi, k)
}

fn shift(f: &Formula, k: usize) -> Result<Formula, CanonError> {
    use Formula::*;
    if is_pure_past(f) {
        return Ok(match f {
            True | False => f.clone(),
            _ => Formula::yesterday_n(k, f.clone()),
        });
    }
    Ok(match f {
        Not(a) => Formula::not(shift(a, k)?),
        And(a, b) => Formula::and(shift(a, k)?, shift(b, k)?),
        Or(a, b) => Formula::or(shift(a, k)?, shift(b, k)?),
        Implies(a, b) => Formula::or(Formula::not(shift(a, k)?), shift(b, k)?),
        Next(a) => shift(a, k - 1)?,
        BoundedUntil { .. } => shift(&crate::formula::expand_bounded(f), k)?,
        _ => return Err(CanonError::OutsideFragment(f.to_string())),
    })
}
