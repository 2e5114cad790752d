//! The pushing algorithm and the identity it proves.
//!
//! Pushing removes every step carrying the maximal label: a maximal step
//! starting on the main diagonal is deleted together with the east step
//! after it (a decoration on it disappears too); a maximal step starting
//! above the diagonal slides past the east step after it and is relabelled
//! 0 (a decoration on it survives). Both moves are possible because a
//! maximal step is always followed by an east step.

use std::collections::BTreeSet;

use super::tables::{TableCache, Touch};
use super::{LabelledPath, Rules};
use crate::qt::{q_binomial, QtPoly, QtRational, XPoly};

/// Outcome of one pushing pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushResult {
    pub pushed: LabelledPath,
    /// Deleted steps: maximal-labelled steps that started on the diagonal.
    pub deleted_steps: usize,
    /// How many of the deleted steps were decorated valleys.
    pub deleted_decorations: usize,
}

impl LabelledPath {
    /// Push every step labelled with the maximal label of this path.
    pub fn push(&self) -> PushResult {
        self.push_value(self.max_label())
    }

    /// Push every step labelled `value` (no-op when no step carries it).
    pub fn push_value(&self, value: u8) -> PushResult {
        let size = self.size();
        let mut area_word = Vec::with_capacity(size);
        let mut labels = Vec::with_capacity(size);
        let mut decorations = BTreeSet::new();
        let mut deleted_steps = 0;
        let mut deleted_decorations = 0;
        for row in 1..=size {
            let a = self.area_word()[row - 1];
            let w = self.labels()[row - 1];
            if value > 0 && w == value {
                // A maximal step is never under a rise, i.e. always has an
                // east step to trade with.
                assert!(
                    row == size || self.area_word()[row] <= a,
                    "maximal step not followed by an east step"
                );
                if a == 0 {
                    deleted_steps += 1;
                    if self.decorations().contains(&row) {
                        deleted_decorations += 1;
                    }
                    continue;
                }
                area_word.push(a - 1);
                labels.push(0);
            } else {
                area_word.push(a);
                labels.push(w);
            }
            if self.decorations().contains(&row) {
                decorations.insert(area_word.len());
            }
        }
        let pushed = LabelledPath::new(area_word, labels, decorations)
            .expect("pushing a valid path yields a valid path");
        debug_assert_eq!(pushed.size(), size - deleted_steps);
        debug_assert_eq!(
            pushed.decoration_count(),
            self.decoration_count() - deleted_decorations
        );
        PushResult {
            pushed,
            deleted_steps,
            deleted_decorations,
        }
    }
}

/// Outcome of checking the pushing identity for one parameter tuple.
#[derive(Clone, Debug)]
pub struct PushingCheck {
    pub lhs: XPoly,
    pub rhs: XPoly,
    pub equal: bool,
}

/// Check the pushing identity for paths of size `n` with `k` decorations,
/// touch `r`, and exactly `maximal` labels equal to the top letter
/// `max_label`:
///
/// the maximal-label restricted sum over `LD(n)^{.k}` equals
///
/// ```text
/// sum_{p=0}^{maximal} t^{maximal-p} sum_{i=0}^{p} q^C(i,2)
///     [r-p+i choose i]_q [r choose p-i]_q
///     genpoly(maximal-p, n-maximal, k-i, r-p+i, max_label-1)
/// ```
///
/// Both sides are polynomials in `x_1..x_{max_label-1}`.
pub fn verify_pushing_theorem(
    maximal: usize,
    n: usize,
    k: usize,
    r: usize,
    max_label: u8,
    cache: &TableCache,
    rules: Rules,
) -> PushingCheck {
    assert!(max_label >= 1);
    let nvars = max_label as usize - 1;
    let lhs = cache.maxlabel(n, max_label, rules).genpoly(k, r, maximal);
    let mut rhs = XPoly::zero(nvars);
    if maximal <= n {
        for p in 0..=maximal {
            for i in 0..=p.min(k) {
                let interlace = q_binomial(r as i64 - p as i64 + i as i64, i as i64);
                let choose = q_binomial(r as i64, p as i64 - i as i64);
                if interlace.is_zero() || choose.is_zero() {
                    continue;
                }
                let slice = cache
                    .labelled(maximal - p, n - maximal, max_label - 1, rules)
                    .genpoly(k - i, Touch::Exactly(r - p + i));
                if slice.is_zero() {
                    continue;
                }
                let scale = QtPoly::monomial(
                    (i * (i.saturating_sub(1)) / 2) as u32,
                    (maximal - p) as u32,
                    1,
                );
                let coef = QtRational::from(&(&scale * &interlace) * &choose);
                rhs = rhs
                    .checked_add(&slice.scalar_mul(&coef))
                    .expect("tables share nvars");
            }
        }
    }
    PushingCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    }
}
