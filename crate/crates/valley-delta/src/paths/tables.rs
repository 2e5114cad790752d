//! Generating polynomials of decorated path families.
//!
//! One enumeration pass over a family buckets every (path, decoration set)
//! object by decoration count, touch, and (for the maximal-label tables)
//! the number of top labels, accumulating `q^dinv t^area x^P` exactly.
//! A family is enumerated once and all parameter slices are read off the
//! buckets; `TableCache` shares built tables between checks.
//!
//! Decoration subsets never change the x-monomial or the area, and dinv is
//! affine in the chosen subset (each decorated row forfeits the inversion
//! pairs it leads plus the decoration penalty), so subsets cost a few
//! integer operations instead of a re-scan.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::enumerate::{area_words, LabelingIter};
use super::{inversions_by_row, Rules};
use crate::qt::{QtPoly, QtRational, XPoly};

/// Touch selector for generating polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Touch {
    Exactly(usize),
    All,
}

impl Touch {
    fn matches(&self, r: usize) -> bool {
        match self {
            Touch::Exactly(want) => *want == r,
            Touch::All => true,
        }
    }
}

/// Accumulated monomial data: exponent vector -> (dinv, area) -> count.
/// dinv is signed so that perturbed rule sets stay representable.
type RawTerms = HashMap<Vec<u8>, HashMap<(i64, u64), i64>>;

#[derive(Default)]
struct RawBuckets {
    // (decorations, touch, top-label count) -> terms
    buckets: HashMap<(usize, usize, usize), RawTerms>,
    objects: u64,
}

impl RawBuckets {
    fn merge(mut self, other: RawBuckets) -> RawBuckets {
        for (key, terms) in other.buckets {
            let mine = self.buckets.entry(key).or_default();
            for (exps, laurent) in terms {
                let slot = mine.entry(exps).or_default();
                for (qa, c) in laurent {
                    *slot.entry(qa).or_insert(0) += c;
                }
            }
        }
        self.objects += other.objects;
        self
    }
}

/// Shared enumeration pass. `top_substituted` selects the maximal-label
/// table: exponents then range over `1..max_label` and the count of
/// `max_label` labels is recorded per object.
fn build_raw(
    size: usize,
    zeros: usize,
    max_label: u8,
    top_substituted: bool,
    rules: Rules,
) -> RawBuckets {
    let nvars = if top_substituted {
        max_label as usize - 1
    } else {
        max_label as usize
    };
    let words = area_words(size);
    words
        .into_par_iter()
        .map(|word| {
            let area: u64 = word.iter().map(|&a| u64::from(a)).sum();
            let mut out = RawBuckets::default();
            for labels in LabelingIter::new(&word, zeros, max_label) {
                let (total, by_row) = inversions_by_row(&word, &labels);
                let valleys = rules.valleys(&word, &labels);
                let touch_base = (0..size)
                    .filter(|&i| word[i] == 0 && labels[i] > 0)
                    .count();
                let top_count = if top_substituted {
                    labels.iter().filter(|&&w| w == max_label).count()
                } else {
                    0
                };
                let mut exps = vec![0u8; nvars];
                for &w in &labels {
                    if w > 0 && !(top_substituted && w == max_label) {
                        exps[w as usize - 1] += 1;
                    }
                }
                // Per valley: dinv forfeited and whether it was a touch row.
                let costs: Vec<(i64, usize)> = valleys
                    .iter()
                    .map(|&v| {
                        let cost = by_row[v - 1] + rules.decoration_penalty;
                        let was_touch =
                            usize::from(word[v - 1] == 0 && labels[v - 1] > 0);
                        (cost, was_touch)
                    })
                    .collect();
                for mask in 0u32..(1 << valleys.len()) {
                    let mut k = 0usize;
                    let mut dinv = total;
                    let mut touch = touch_base;
                    for (b, (cost, was_touch)) in costs.iter().enumerate() {
                        if mask >> b & 1 == 1 {
                            k += 1;
                            dinv -= cost;
                            touch -= was_touch;
                        }
                    }
                    let terms = out.buckets.entry((k, touch, top_count)).or_default();
                    *terms
                        .entry(exps.clone())
                        .or_default()
                        .entry((dinv, area))
                        .or_insert(0) += 1;
                    out.objects += 1;
                }
            }
            out
        })
        .reduce(RawBuckets::default, RawBuckets::merge)
}

/// Turn a Laurent count table into an exact coefficient; negative dinv
/// (possible only under perturbed rules) lands in the denominator.
fn laurent_coefficient(laurent: &HashMap<(i64, u64), i64>) -> QtRational {
    let dmin = laurent.keys().map(|&(d, _)| d).min().unwrap_or(0).min(0);
    let mut num = QtPoly::zero();
    for (&(d, a), &c) in laurent {
        num += &QtPoly::monomial((d - dmin) as u32, a as u32, BigInt::from(c));
    }
    if dmin == 0 {
        num.into()
    } else {
        QtRational::new(num, QtPoly::monomial((-dmin) as u32, 0, 1)).unwrap()
    }
}

fn finish(raw: RawBuckets, nvars: usize) -> (HashMap<(usize, usize, usize), XPoly>, u64) {
    let mut out = HashMap::new();
    for (key, terms) in raw.buckets {
        let mut poly = XPoly::zero(nvars);
        for (exps, laurent) in terms {
            poly.add_term(exps, &laurent_coefficient(&laurent));
        }
        out.insert(key, poly);
    }
    (out, raw.objects)
}

/// Bucketed generating polynomials of `LD(m, n)` with labels `<= max_label`,
/// sliced by decoration count and touch.
pub struct LabelledTable {
    max_label: u8,
    buckets: HashMap<(usize, usize, usize), XPoly>,
    /// Number of (path, decoration set) objects enumerated in the build.
    pub objects: u64,
}

impl LabelledTable {
    pub fn build(zeros: usize, positives: usize, max_label: u8, rules: Rules) -> Self {
        let raw = build_raw(zeros + positives, zeros, max_label, false, rules);
        let (buckets, objects) = finish(raw, max_label as usize);
        LabelledTable {
            max_label,
            buckets,
            objects,
        }
    }

    /// Sum of `q^dinv t^area x^P` over the bucket: `k` decorations,
    /// touch per selector.
    pub fn genpoly(&self, k: usize, touch: Touch) -> XPoly {
        let mut acc = XPoly::zero(self.max_label as usize);
        for (&(bk, br, _), poly) in &self.buckets {
            if bk == k && touch.matches(br) {
                acc = acc.checked_add(poly).expect("tables share nvars");
            }
        }
        acc
    }
}

/// Bucketed generating polynomials of `LD(n)` (no zero labels) over the
/// alphabet `1..=max_label`, with `x_{max_label}` set to 1 and objects
/// additionally sliced by how many labels equal `max_label`.
pub struct MaxLabelTable {
    max_label: u8,
    buckets: HashMap<(usize, usize, usize), XPoly>,
    pub objects: u64,
}

impl MaxLabelTable {
    pub fn build(positives: usize, max_label: u8, rules: Rules) -> Self {
        assert!(max_label >= 1);
        let raw = build_raw(positives, 0, max_label, true, rules);
        let (buckets, objects) = finish(raw, max_label as usize - 1);
        MaxLabelTable {
            max_label,
            buckets,
            objects,
        }
    }

    /// Bucket with `k` decorations, touch `r`, and exactly `maximal` labels
    /// equal to the top letter; a polynomial in `x_1..x_{max_label-1}`.
    pub fn genpoly(&self, k: usize, r: usize, maximal: usize) -> XPoly {
        self.buckets
            .get(&(k, r, maximal))
            .cloned()
            .unwrap_or_else(|| XPoly::zero(self.max_label as usize - 1))
    }
}

/// `sum q^dinv t^area x^P` over `LD(m, n)^{.k}` with the given touch and
/// labels at most `max_label`. Builds the family table; use [`TableCache`]
/// when slicing the same family repeatedly.
pub fn genpoly(
    zeros: usize,
    positives: usize,
    decorations: usize,
    touch: Touch,
    max_label: u8,
) -> XPoly {
    LabelledTable::build(zeros, positives, max_label, Rules::standard())
        .genpoly(decorations, touch)
}

/// The maximal-label restricted sum: paths of `LD(n)^{.k}` with touch `r`
/// and exactly `maximal` labels equal to `max_label`, with that variable
/// set to 1.
pub fn maxlabel_genpoly(
    positives: usize,
    decorations: usize,
    r: usize,
    maximal: usize,
    max_label: u8,
) -> XPoly {
    MaxLabelTable::build(positives, max_label, Rules::standard()).genpoly(decorations, r, maximal)
}

/// Memoising store for built tables, shared by verification sweeps.
/// Concurrent lookups serialise on a build in progress rather than
/// duplicating it.
pub struct TableCache {
    labelled: Mutex<HashMap<(usize, usize, u8, Rules), Arc<LabelledTable>>>,
    maxlabel: Mutex<HashMap<(usize, u8, Rules), Arc<MaxLabelTable>>>,
    pub hits: AtomicU64,
    pub objects_built: AtomicU64,
}

impl TableCache {
    pub fn new() -> Self {
        TableCache {
            labelled: Mutex::new(HashMap::new()),
            maxlabel: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            objects_built: AtomicU64::new(0),
        }
    }

    pub fn labelled(
        &self,
        zeros: usize,
        positives: usize,
        max_label: u8,
        rules: Rules,
    ) -> Arc<LabelledTable> {
        let mut map = self.labelled.lock().unwrap();
        if let Some(t) = map.get(&(zeros, positives, max_label, rules)) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Arc::clone(t);
        }
        let t = Arc::new(LabelledTable::build(zeros, positives, max_label, rules));
        self.objects_built.fetch_add(t.objects, Ordering::Relaxed);
        map.insert((zeros, positives, max_label, rules), Arc::clone(&t));
        t
    }

    pub fn maxlabel(&self, positives: usize, max_label: u8, rules: Rules) -> Arc<MaxLabelTable> {
        let mut map = self.maxlabel.lock().unwrap();
        if let Some(t) = map.get(&(positives, max_label, rules)) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Arc::clone(t);
        }
        let t = Arc::new(MaxLabelTable::build(positives, max_label, rules));
        self.objects_built.fetch_add(t.objects, Ordering::Relaxed);
        map.insert((positives, max_label, rules), Arc::clone(&t));
        t
    }
}

impl Default for TableCache {
    fn default() -> Self {
        TableCache::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::enumerate;
    use crate::qt::QtRational;

    /// Brute-force route: per-path statistics over the enumeration stream.
    fn genpoly_by_enumeration(
        zeros: usize,
        positives: usize,
        k: usize,
        touch: Touch,
        max_label: u8,
    ) -> XPoly {
        let nvars = max_label as usize;
        let mut acc = XPoly::zero(nvars);
        for p in enumerate(zeros, positives, k, max_label) {
            if !touch.matches(p.touch()) {
                continue;
            }
            let coef = QtRational::from(QtPoly::monomial(
                u32::try_from(p.dinv()).expect("dinv is non-negative"),
                p.area() as u32,
                1,
            ));
            let mono = p.monomial(nvars).unwrap().scalar_mul(&coef);
            acc = acc.checked_add(&mono).unwrap();
        }
        acc
    }

    #[test]
    fn single_column_genpoly() {
        let g = genpoly(0, 1, 0, Touch::Exactly(1), 1);
        assert_eq!(g.to_string(), "x1");
        assert!(genpoly(0, 1, 0, Touch::Exactly(0), 1).is_zero());
    }

    #[test]
    fn five_paths_of_size_two() {
        // Frozen from the hand enumeration of LD(2) with labels <= 2.
        let g = genpoly(0, 2, 0, Touch::All, 2);
        assert_eq!(g.to_string(), "x1^2 + (1 + q + t)*x1*x2 + x2^2");
    }

    #[test]
    fn evaluation_counts_paths() {
        for (m, n, k) in [(0, 3, 0), (0, 3, 1), (1, 2, 0), (1, 2, 1)] {
            let g = genpoly(m, n, k, Touch::All, n as u8);
            let by_hand = enumerate(m, n, k, n as u8).count();
            assert_eq!(
                g.count_at_ones().unwrap(),
                num_bigint::BigInt::from(by_hand),
                "({m},{n},{k})"
            );
        }
    }

    #[test]
    fn table_route_matches_enumeration_route() {
        for (m, n, k) in [(0, 3, 0), (0, 3, 1), (1, 2, 1), (2, 2, 0), (1, 3, 1)] {
            for r in 0..=n {
                let fast = genpoly(m, n, k, Touch::Exactly(r), n as u8);
                let slow = genpoly_by_enumeration(m, n, k, Touch::Exactly(r), n as u8);
                assert_eq!(fast, slow, "({m},{n},{k},{r})");
            }
        }
    }

    #[test]
    fn empty_family_buckets() {
        // The empty path: one object with k = r = 0.
        let g = genpoly(0, 0, 0, Touch::All, 1);
        assert_eq!(g.to_string(), "1");
        assert!(genpoly(0, 0, 0, Touch::Exactly(1), 1).is_zero());
        assert!(genpoly(1, 0, 0, Touch::All, 1).is_zero());
    }

    #[test]
    fn maxlabel_trivial_cases() {
        // One north step over alphabet {1,2}: the path labelled 2 has one
        // maximal label and substitutes away; the path labelled 1 has none.
        assert_eq!(maxlabel_genpoly(1, 0, 1, 1, 2).to_string(), "1");
        assert_eq!(maxlabel_genpoly(1, 0, 1, 0, 2).to_string(), "x1");
    }

    #[test]
    fn maxlabel_zero_bucket_is_plain_genpoly() {
        // Paths with no top label over alphabet n+1 are exactly the paths
        // over alphabet n.
        for (n, k, r) in [(2, 0, 1), (3, 1, 1), (3, 0, 2)] {
            let a = maxlabel_genpoly(n, k, r, 0, n as u8 + 1);
            let b = genpoly(0, n, k, Touch::Exactly(r), n as u8);
            assert_eq!(a, b, "({n},{k},{r})");
        }
    }

    #[test]
    fn table_cache_hits() {
        let cache = TableCache::new();
        let _ = cache.labelled(0, 2, 2, Rules::standard());
        let _ = cache.labelled(0, 2, 2, Rules::standard());
        assert_eq!(cache.hits.load(Ordering::Relaxed), 1);
        // A different rule set is a different table.
        let _ = cache.labelled(0, 2, 2, Rules::perturbed_dinv_penalty());
        assert_eq!(cache.hits.load(Ordering::Relaxed), 1);
    }

    #[test]
    fn perturbed_rules_change_genpoly() {
        let std =
            LabelledTable::build(0, 2, 2, Rules::standard()).genpoly(1, Touch::All);
        let bad = LabelledTable::build(0, 2, 2, Rules::perturbed_dinv_penalty())
            .genpoly(1, Touch::All);
        assert_ne!(std, bad);
        // The doubled penalty drives q^0 to q^{-1} on the decorated
        // (1,2)-path, so the perturbed polynomial is genuinely Laurent.
        assert!(bad
            .terms()
            .any(|(_, c)| !c.denominator().is_one()));
    }
}
