//! Decorated partially labelled Dyck paths and their q,t,x statistics.
//!
//! A path of size `s` is stored as its area word `a_1..a_s` (the diagonal
//! `y = x + a_i` on which the i-th north step starts), a label word
//! `w_1..w_s` (label 0 marks an unlabelled step), and a set of decorated
//! rows. Rows are numbered from 1 throughout the public API.

mod enumerate;
mod push;
mod tables;
mod text;

pub use enumerate::enumerate;
pub use push::{verify_pushing_theorem, PushResult, PushingCheck};
pub use tables::{genpoly, maxlabel_genpoly, LabelledTable, MaxLabelTable, TableCache, Touch};

use std::collections::BTreeSet;
use std::fmt;

use crate::qt::XPoly;

/// The combinatorial rule set. The standard rules implement the usual
/// statistics; the perturbed constructors exist so that verification
/// sweeps can prove they are sensitive to the definitions (a sweep run
/// under perturbed rules must fail somewhere).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rules {
    /// An equal-level step is a contractible valley only when its label
    /// strictly exceeds the previous one.
    pub valley_requires_label_rise: bool,
    /// How much each decoration subtracts from dinv (standard: 1).
    pub decoration_penalty: i64,
}

impl Rules {
    pub fn standard() -> Self {
        Rules {
            valley_requires_label_rise: true,
            decoration_penalty: 1,
        }
    }

    /// Perturbation: each decoration costs 2 instead of 1.
    pub fn perturbed_dinv_penalty() -> Self {
        Rules {
            decoration_penalty: 2,
            ..Rules::standard()
        }
    }

    /// Perturbation: equal-level steps count as valleys regardless of labels.
    pub fn perturbed_valley_condition() -> Self {
        Rules {
            valley_requires_label_rise: false,
            ..Rules::standard()
        }
    }

    /// Rows `i >= 2` that are contractible valleys: either the step starts
    /// strictly lower than the previous one, or it starts on the same
    /// diagonal with a strictly larger label.
    pub fn valleys(&self, area_word: &[u8], labels: &[u8]) -> Vec<usize> {
        (2..=area_word.len())
            .filter(|&i| {
                let (a, ap) = (area_word[i - 1], area_word[i - 2]);
                a < ap
                    || (a == ap
                        && (!self.valley_requires_label_rise || labels[i - 1] > labels[i - 2]))
            })
            .collect()
    }
}

/// One invariant violation found by validation, with the offending row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Lengths of the area word and label word differ.
    LengthMismatch { area: usize, labels: usize },
    /// `a_1 != 0`.
    AreaWordStart { got: u8 },
    /// `a_i > a_{i-1} + 1`.
    AreaWordJump { row: usize },
    /// `w_1 = 0`.
    FirstLabelZero,
    /// Rise without a strict label increase.
    ColumnNotIncreasing { row: usize },
    /// Decorated row index outside `1..=size`.
    DecorationOutOfRange { row: usize },
    /// Decorated row is not a contractible valley.
    DecorationNotValley { row: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch { area, labels } => {
                write!(f, "area word has {area} rows but label word has {labels}")
            }
            Violation::AreaWordStart { got } => write!(f, "area word must start at 0, got {got}"),
            Violation::AreaWordJump { row } => {
                write!(f, "row {row}: area rises by more than 1")
            }
            Violation::FirstLabelZero => write!(f, "row 1: the first label cannot be 0"),
            Violation::ColumnNotIncreasing { row } => {
                write!(f, "row {row}: label does not increase up the column")
            }
            Violation::DecorationOutOfRange { row } => {
                write!(f, "decoration on row {row} is out of range")
            }
            Violation::DecorationNotValley { row } => {
                write!(f, "decorated row {row} is not a contractible valley")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("invalid path: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("label {label} exceeds the variable count {nvars}")]
    LabelTooLarge { label: u8, nvars: usize },
    #[error("cannot parse path: {0}")]
    Parse(String),
}

/// A valley-decorated partially labelled Dyck path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledPath {
    area_word: Vec<u8>,
    labels: Vec<u8>,
    decorations: BTreeSet<usize>,
}

impl LabelledPath {
    /// Validating constructor.
    pub fn new(
        area_word: Vec<u8>,
        labels: Vec<u8>,
        decorations: BTreeSet<usize>,
    ) -> Result<Self, PathError> {
        let violations = validate(&area_word, &labels, &decorations);
        if violations.is_empty() {
            Ok(LabelledPath {
                area_word,
                labels,
                decorations,
            })
        } else {
            Err(PathError::Invalid(violations))
        }
    }

    pub(crate) fn new_unchecked(
        area_word: Vec<u8>,
        labels: Vec<u8>,
        decorations: BTreeSet<usize>,
    ) -> Self {
        debug_assert!(validate(&area_word, &labels, &decorations).is_empty());
        LabelledPath {
            area_word,
            labels,
            decorations,
        }
    }

    pub fn empty() -> Self {
        LabelledPath {
            area_word: Vec::new(),
            labels: Vec::new(),
            decorations: BTreeSet::new(),
        }
    }

    /// Total number of north steps.
    pub fn size(&self) -> usize {
        self.area_word.len()
    }

    pub fn area_word(&self) -> &[u8] {
        &self.area_word
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Decorated rows (1-based).
    pub fn decorations(&self) -> &BTreeSet<usize> {
        &self.decorations
    }

    pub fn positive_label_count(&self) -> usize {
        self.labels.iter().filter(|&&w| w > 0).count()
    }

    pub fn zero_label_count(&self) -> usize {
        self.size() - self.positive_label_count()
    }

    pub fn decoration_count(&self) -> usize {
        self.decorations.len()
    }

    pub fn max_label(&self) -> u8 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Rows eligible for decoration, in increasing order.
    pub fn contractible_valleys(&self) -> Vec<usize> {
        Rules::standard().valleys(&self.area_word, &self.labels)
    }

    /// Number of whole squares between the path and the main diagonal.
    pub fn area(&self) -> u64 {
        self.area_word.iter().map(|&a| a as u64).sum()
    }

    /// Diagonal inversion count: pairs `i < j` with an undecorated `i` that
    /// form a primary (`a_i = a_j`, `w_i < w_j`) or secondary
    /// (`a_i = a_j + 1`, `w_i > w_j`) inversion, minus one per decoration.
    /// Pairs range over all rows, including the 0-labelled ones.
    pub fn dinv(&self) -> i64 {
        self.dinv_with(Rules::standard())
    }

    pub fn dinv_with(&self, rules: Rules) -> i64 {
        let (total, by_row) = inversions_by_row(&self.area_word, &self.labels);
        let forfeited: i64 = self.decorations.iter().map(|&i| by_row[i - 1]).sum();
        total - forfeited - rules.decoration_penalty * self.decorations.len() as i64
    }

    /// Number of undecorated, positively labelled steps starting on the
    /// main diagonal.
    pub fn touch(&self) -> usize {
        (1..=self.size())
            .filter(|&i| {
                self.area_word[i - 1] == 0
                    && self.labels[i - 1] > 0
                    && !self.decorations.contains(&i)
            })
            .count()
    }

    /// `x^P`: the product of `x_{w_i}` over positive labels, as a
    /// polynomial in `x_1..x_nvars`.
    pub fn monomial(&self, nvars: usize) -> Result<XPoly, PathError> {
        let mut exps = vec![0u8; nvars];
        for &w in &self.labels {
            if w == 0 {
                continue;
            }
            if w as usize > nvars {
                return Err(PathError::LabelTooLarge { label: w, nvars });
            }
            exps[w as usize - 1] += 1;
        }
        let mut p = XPoly::zero(nvars);
        p.add_term(exps, &crate::qt::QtRational::one());
        Ok(p)
    }
}

/// Check every invariant, reporting all violations with offending rows.
pub fn validate(area_word: &[u8], labels: &[u8], decorations: &BTreeSet<usize>) -> Vec<Violation> {
    let mut out = Vec::new();
    if area_word.len() != labels.len() {
        out.push(Violation::LengthMismatch {
            area: area_word.len(),
            labels: labels.len(),
        });
        return out;
    }
    let size = area_word.len();
    if size > 0 && area_word[0] != 0 {
        out.push(Violation::AreaWordStart { got: area_word[0] });
    }
    for i in 2..=size {
        if area_word[i - 1] > area_word[i - 2] + 1 {
            out.push(Violation::AreaWordJump { row: i });
        }
    }
    if size > 0 && labels[0] == 0 {
        out.push(Violation::FirstLabelZero);
    }
    for i in 2..=size {
        if area_word[i - 1] == area_word[i - 2] + 1 && labels[i - 1] <= labels[i - 2] {
            out.push(Violation::ColumnNotIncreasing { row: i });
        }
    }
    if out.is_empty() {
        let valleys = Rules::standard().valleys(area_word, labels);
        for &row in decorations {
            if row < 1 || row > size {
                out.push(Violation::DecorationOutOfRange { row });
            } else if !valleys.contains(&row) {
                out.push(Violation::DecorationNotValley { row });
            }
        }
    }
    out
}

/// Total diagonal inversion count together with, for each row `i`, the
/// number of inversion pairs having `i` as their first index.
pub(crate) fn inversions_by_row(area_word: &[u8], labels: &[u8]) -> (i64, Vec<i64>) {
    let size = area_word.len();
    let mut by_row = vec![0i64; size];
    let mut total = 0i64;
    for i in 0..size {
        for j in i + 1..size {
            let primary = area_word[i] == area_word[j] && labels[i] < labels[j];
            let secondary = area_word[i] == area_word[j] + 1 && labels[i] > labels[j];
            if primary || secondary {
                by_row[i] += 1;
                total += 1;
            }
        }
    }
    (total, by_row)
}
