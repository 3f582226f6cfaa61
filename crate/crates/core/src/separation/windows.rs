use serde::Serialize;

use crate::word::{interval, Letter};

use super::{make_sigma, SeparationError, SigmaWord, BOTH, P1, P2};

/// Shape of a trailing window of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowType {
    /// Only `{p1,p2}` letters.
    Type1,
    /// A single `{p1}` among `{p1,p2}` letters.
    Type2,
    /// A single `{p2}` among `{p1,p2}` letters.
    Type3,
    Other,
}

pub fn classify_window(letters: &[Letter]) -> WindowType {
    let marks: Vec<Letter> = letters.iter().copied().filter(|&l| l != BOTH).collect();
    match marks.as_slice() {
        [] => WindowType::Type1,
        [l] if *l == P1 => WindowType::Type2,
        [l] if *l == P2 => WindowType::Type3,
        _ => WindowType::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UntypedWindow {
    /// `"near"` for `σ(i,i,j)`, `"far"` for `σ(i,k,j)`.
    pub word: &'static str,
    pub end: usize,
    pub letters: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalReport {
    pub d: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Every window of `σ(i,k,j)` also occurs in `σ(i,i,j)`.
    pub far_windows_matched: bool,
    /// Every window of `σ(i,i,j)` also occurs in `σ(i,k,j)`.
    pub near_windows_matched: bool,
    pub unmatched_far_ends: Vec<usize>,
    pub unmatched_near_ends: Vec<usize>,
    pub untyped_windows: Vec<UntypedWindow>,
    /// The window after the horizon repeats the one at the horizon.
    pub horizon_stable: bool,
}

impl IntervalReport {
    pub fn holds(&self) -> bool {
        self.far_windows_matched
            && self.near_windows_matched
            && self.untyped_windows.is_empty()
            && self.horizon_stable
    }
}

fn window(w: &SigmaWord, d: usize, end: usize) -> Vec<Letter> {
    interval(&w.word, end as i64 - d as i64, end)
        .expect("lasso windows are always defined")
        .letters()
        .to_vec()
}

fn render(w: &SigmaWord, letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|l| l.display(w.word.alphabet()))
        .collect()
}

/// Compares the trailing windows `[n-d, n]` of `σ(i,i,j)` and `σ(i,k,j)` for
/// all `n ≤ k+d+1`.
pub fn check_interval_correspondence(
    d: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Result<IntervalReport, SeparationError> {
    if i < d || j < i + d || k < j + d {
        return Err(SeparationError::Hypotheses { d, i, j, k });
    }
    let near = make_sigma(i, i, j)?;
    let far = make_sigma(i, k, j)?;
    let horizon = k + d + 1;
    let near_windows: Vec<Vec<Letter>> = (0..=horizon).map(|n| window(&near, d, n)).collect();
    let far_windows: Vec<Vec<Letter>> = (0..=horizon).map(|n| window(&far, d, n)).collect();

    let unmatched_far_ends: Vec<usize> = (0..=horizon)
        .filter(|&n| !near_windows.contains(&far_windows[n]))
        .collect();
    let unmatched_near_ends: Vec<usize> = (0..=horizon)
        .filter(|&n| !far_windows.contains(&near_windows[n]))
        .collect();

    let mut untyped_windows = Vec::new();
    for (name, w, ws) in [("near", &near, &near_windows), ("far", &far, &far_windows)] {
        for (end, letters) in ws.iter().enumerate() {
            if classify_window(letters) == WindowType::Other {
                untyped_windows.push(UntypedWindow {
                    word: name,
                    end,
                    letters: render(w, letters),
                });
            }
        }
    }
    let horizon_stable = window(&near, d, horizon + 1) == near_windows[horizon]
        && window(&far, d, horizon + 1) == far_windows[horizon];

    Ok(IntervalReport {
        d,
        i,
        j,
        k,
        far_windows_matched: unmatched_far_ends.is_empty(),
        near_windows_matched: unmatched_near_ends.is_empty(),
        unmatched_far_ends,
        unmatched_near_ends,
        untyped_windows,
        horizon_stable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_letter_windows_always_match() {
        for (i, j, k) in [(0, 1, 2), (3, 5, 6), (2, 4, 9)] {
            assert!(check_interval_correspondence(0, i, j, k).unwrap().holds());
        }
    }

    #[test]
    fn hypotheses_are_checked() {
        assert!(matches!(
            check_interval_correspondence(2, 1, 3, 5),
            Err(SeparationError::Hypotheses { .. })
        ));
    }

    #[test]
    fn adjacent_markers_leak_into_one_window() {
        // k = j + d puts {p2} and the second {p1} in one window of length d+1.
        let r = check_interval_correspondence(1, 1, 2, 3).unwrap();
        assert!(!r.far_windows_matched);
        assert_eq!(r.unmatched_far_ends, [3, 4]);
        // One extra step of separation is enough.
        assert!(check_interval_correspondence(1, 1, 3, 5).unwrap().holds());
    }
}
