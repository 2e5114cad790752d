//! Exhaustive enumeration of decorated partially labelled Dyck paths.
//!
//! `enumerate(m, n, k, max_label)` streams every element of the set with
//! `m` zero labels, `n` positive labels drawn from `1..=max_label`, and
//! `k` decorated contractible valleys — lazily, by depth-first extension
//! of area words, then labels, then decoration subsets. The output order
//! is deterministic.

use std::collections::BTreeSet;

use itertools::structs::Combinations;
use itertools::Itertools;

use super::{LabelledPath, Rules};

/// All Dyck area words of the given length: `a_1 = 0`,
/// `a_{i+1} <= a_i + 1`.
pub(crate) fn area_words(size: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut word = vec![0u8];
    loop {
        if word.len() == size {
            out.push(word.clone());
            // Backtrack to the deepest position that can still grow.
            loop {
                let last = *word.last().unwrap();
                let prev_cap = if word.len() >= 2 {
                    word[word.len() - 2] + 1
                } else {
                    0
                };
                if word.len() == 1 {
                    return out;
                }
                if last < prev_cap {
                    *word.last_mut().unwrap() += 1;
                    break;
                }
                word.pop();
            }
        } else {
            word.push(0);
        }
    }
}

/// Lazy iterator over valid label words for a fixed area word: exactly
/// `zeros` zero labels, positive labels in `1..=max_label`, first label
/// positive, strict increase on rises.
pub(crate) struct LabelingIter {
    size: usize,
    max_label: u8,
    zeros_target: usize,
    rises: Vec<bool>,
    // zero_capacity_after[i] = number of positions j > i that may hold a 0
    zero_capacity_after: Vec<usize>,
    labels: Vec<u8>,
    zeros: usize,
    primed: bool,
    done: bool,
}

impl LabelingIter {
    pub(crate) fn new(area_word: &[u8], zeros: usize, max_label: u8) -> Self {
        let size = area_word.len();
        let rises: Vec<bool> = (0..size)
            .map(|i| i > 0 && area_word[i] == area_word[i - 1] + 1)
            .collect();
        let mut zero_capacity_after = vec![0usize; size + 1];
        for i in (0..size).rev() {
            let here = usize::from(i > 0 && !rises[i]);
            zero_capacity_after[i] = zero_capacity_after[i + 1] + here;
        }
        LabelingIter {
            size,
            max_label,
            zeros_target: zeros,
            rises,
            zero_capacity_after,
            labels: Vec::with_capacity(size),
            zeros: 0,
            primed: false,
            done: false,
        }
    }

    /// Smallest valid value `>= from` at the next open position.
    fn first_valid(&self, from: u8) -> Option<u8> {
        let pos = self.labels.len();
        let remaining_zero_slots = self.zero_capacity_after[pos + 1];
        if from == 0 {
            let zero_allowed = pos > 0
                && !self.rises[pos]
                && self.zeros < self.zeros_target
                && self.zeros_target - self.zeros - 1 <= remaining_zero_slots;
            if zero_allowed {
                return Some(0);
            }
        }
        // Any positive value leaves the same number of zeros to place.
        if self.zeros_target - self.zeros > remaining_zero_slots {
            return None;
        }
        let mut v = from.max(1);
        if self.rises[pos] {
            v = v.max(self.labels[pos - 1] + 1);
        }
        (v <= self.max_label).then_some(v)
    }

    fn push(&mut self, v: u8) {
        if v == 0 {
            self.zeros += 1;
        }
        self.labels.push(v);
    }

    fn pop(&mut self) -> Option<u8> {
        let v = self.labels.pop()?;
        if v == 0 {
            self.zeros -= 1;
        }
        Some(v)
    }

    /// Depth-first completion with the next open position starting at
    /// `from`; leaves a full assignment in `self.labels` on success.
    fn complete(&mut self, mut from: u8) -> bool {
        loop {
            if self.labels.len() == self.size {
                return true;
            }
            match self.first_valid(from) {
                Some(v) => {
                    self.push(v);
                    from = 0;
                }
                None => match self.pop() {
                    Some(prev) => from = prev + 1,
                    None => return false,
                },
            }
        }
    }
}

impl Iterator for LabelingIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let found = if !self.primed {
            self.primed = true;
            if self.size == 0 {
                self.done = true;
                return (self.zeros_target == 0).then(Vec::new);
            }
            self.complete(0)
        } else {
            match self.pop() {
                Some(prev) => self.complete(prev + 1),
                None => false,
            }
        };
        if found {
            Some(self.labels.clone())
        } else {
            self.done = true;
            None
        }
    }
}

/// Stream all of `LD(m, n)^{.k}` with labels bounded by `max_label`.
pub fn enumerate(
    zero_labels: usize,
    positive_labels: usize,
    decorations: usize,
    max_label: u8,
) -> Enumerate {
    assert!(max_label >= 1, "enumeration needs max_label >= 1");
    Enumerate {
        words: area_words(zero_labels + positive_labels).into_iter(),
        zeros: zero_labels,
        k: decorations,
        max_label,
        state: None,
    }
}

pub struct Enumerate {
    words: std::vec::IntoIter<Vec<u8>>,
    zeros: usize,
    k: usize,
    max_label: u8,
    state: Option<WordState>,
}

struct WordState {
    word: Vec<u8>,
    labelings: LabelingIter,
    current: Option<(Vec<u8>, Combinations<std::vec::IntoIter<usize>>)>,
}

impl Iterator for Enumerate {
    type Item = LabelledPath;

    fn next(&mut self) -> Option<LabelledPath> {
        loop {
            if let Some(state) = &mut self.state {
                if let Some((labels, combos)) = &mut state.current {
                    if let Some(dv) = combos.next() {
                        return Some(LabelledPath::new_unchecked(
                            state.word.clone(),
                            labels.clone(),
                            BTreeSet::from_iter(dv),
                        ));
                    }
                    state.current = None;
                }
                match state.labelings.next() {
                    Some(labels) => {
                        let valleys = Rules::standard().valleys(&state.word, &labels);
                        let combos = valleys.into_iter().combinations(self.k);
                        state.current = Some((labels, combos));
                    }
                    None => self.state = None,
                }
            } else {
                let word = self.words.next()?;
                let labelings = LabelingIter::new(&word, self.zeros, self.max_label);
                self.state = Some(WordState {
                    word,
                    labelings,
                    current: None,
                });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_word_counts_are_catalan() {
        // 1, 1, 2, 5, 14, 42, 132, 429
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
        for (size, &c) in catalan.iter().enumerate() {
            assert_eq!(area_words(size).len(), c, "size {size}");
        }
    }

    #[test]
    fn single_step() {
        let paths: Vec<_> = enumerate(0, 1, 0, 1).collect();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].to_string(), "area=0 labels=1 dv=");
    }

    #[test]
    fn only_the_empty_path_has_no_positive_labels() {
        assert_eq!(enumerate(0, 0, 0, 1).count(), 1);
        assert_eq!(enumerate(1, 0, 0, 1).count(), 0);
        assert_eq!(enumerate(0, 0, 1, 1).count(), 0);
    }

    #[test]
    fn two_rows_two_labels() {
        // Area word (0,0) admits label pairs (1,1),(1,2),(2,1),(2,2);
        // area word (0,1) forces the rise (1,2).
        let paths: Vec<_> = enumerate(0, 2, 0, 2).collect();
        assert_eq!(paths.len(), 5);
        let texts: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
        assert!(texts.contains(&"area=0,1 labels=1,2 dv=".to_string()));
        assert!(texts.contains(&"area=0,0 labels=2,1 dv=".to_string()));
    }

    #[test]
    fn emitted_paths_are_valid_and_unique() {
        for (m, n, k) in [(0, 3, 1), (1, 2, 1), (2, 2, 0), (1, 3, 2)] {
            let paths: Vec<_> = enumerate(m, n, k, n as u8).collect();
            let mut seen = std::collections::HashSet::new();
            for p in &paths {
                assert!(super::super::validate(p.area_word(), p.labels(), p.decorations())
                    .is_empty());
                assert_eq!(p.zero_label_count(), m);
                assert_eq!(p.positive_label_count(), n);
                assert_eq!(p.decoration_count(), k);
                assert!(seen.insert(p.clone()), "duplicate {p}");
            }
        }
    }

    #[test]
    fn zero_labels_are_placed_everywhere_possible() {
        // Size 3, one zero, alphabet {1}: zero can sit on any non-rise
        // row except the first.
        let paths: Vec<_> = enumerate(1, 2, 0, 1).collect();
        for p in &paths {
            assert_eq!(p.labels().iter().filter(|&&w| w == 0).count(), 1);
        }
        // Area word (0,0,0) gives (1,0,1) and (1,1,0); (0,0,1) gives
        // (1,0,1); every word with a rise from a positive label is dead
        // because the alphabet stops at 1.
        assert_eq!(paths.len(), 3);
    }
}
