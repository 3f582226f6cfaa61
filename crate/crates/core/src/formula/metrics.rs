use serde::Serialize;

use super::Formula;
use crate::fragments::is_bounded_past;

/// Syntactic measures used to pick separation indices.
///
/// `past_temporal_depth` is the yesterday-step lookback `D`; the window a
/// bounded-past formula inspects holds `D + 1` states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SyntacticMetrics {
    pub next_depth: usize,
    pub past_temporal_depth: usize,
    pub size: usize,
}

impl SyntacticMetrics {
    pub fn of(f: &Formula) -> Self {
        SyntacticMetrics {
            next_depth: next_depth(f),
            past_temporal_depth: past_temporal_depth(f),
            size: f.size(),
        }
    }
}

/// Maximal nesting of `X`, counting bounded until by its expansion.
pub fn next_depth(f: &Formula) -> usize {
    match f {
        Formula::Next(a) => 1 + next_depth(a),
        Formula::BoundedUntil { hi, lhs, rhs, .. } => {
            let hi = *hi as usize;
            let right = hi + next_depth(rhs);
            if hi == 0 {
                right
            } else {
                right.max(hi - 1 + next_depth(lhs))
            }
        }
        _ => f.children().into_iter().map(next_depth).max().unwrap_or(0),
    }
}

/// Temporal depth `D` of a bounded-past formula. `None` when `f` is not
/// bounded past.
pub fn temporal_depth(f: &Formula) -> Option<usize> {
    if !is_bounded_past(f) {
        return None;
    }
    Some(depth_unchecked(f))
}

fn depth_unchecked(f: &Formula) -> usize {
    match f {
        Formula::Yesterday(a) | Formula::WeakYesterday(a) => 1 + depth_unchecked(a),
        Formula::BoundedSince { hi, lhs, rhs, .. } => {
            *hi as usize + depth_unchecked(lhs).max(depth_unchecked(rhs))
        }
        _ => f
            .children()
            .into_iter()
            .map(depth_unchecked)
            .max()
            .unwrap_or(0),
    }
}

/// Maximum `D` over the maximal bounded-past subformulas of `f`.
pub fn past_temporal_depth(f: &Formula) -> usize {
    match temporal_depth(f) {
        Some(d) => d,
        None => f
            .children()
            .into_iter()
            .map(past_temporal_depth)
            .max()
            .unwrap_or(0),
    }
}
