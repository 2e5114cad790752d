//! Modified Macdonald polynomials by the statistics-on-fillings formula,
//! with an in-memory memo and an optional on-disk cache.
//!
//! For a shape `mu` (rows bottom-to-top, legs pointing up) and a filling
//! `sigma` with positive entries, reading cells top row first:
//!
//! - a descent is a cell whose entry strictly exceeds the entry directly
//!   below it; `maj` adds `leg + 1` per descent;
//! - cells attack within a row (left before right) and across adjacent
//!   rows when the upper cell sits strictly right of the lower one (upper
//!   before lower); `inv` counts attacking pairs whose earlier entry is
//!   larger, minus the arms of the descents.
//!
//! Then the Macdonald basis element for `mu` is
//! `sum_sigma q^inv t^maj x^sigma`, and the coefficient of a monomial
//! basis element is the sum over fillings of the matching content.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rayon::prelude::*;

use crate::qt::{QtPoly, QtRational};

use super::partition::Partition;

/// Expansions of every basis element of one degree into the monomial basis.
pub(crate) type DegreeExpansion = BTreeMap<Partition, BTreeMap<Partition, QtRational>>;

static MEMO: OnceLock<Mutex<HashMap<usize, Arc<DegreeExpansion>>>> = OnceLock::new();
static CACHE_DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
static MEMO_HITS: AtomicU64 = AtomicU64::new(0);
static DISK_HITS: AtomicU64 = AtomicU64::new(0);

const CACHE_VERSION: &str = "v1";

fn cache_dir_lock() -> &'static RwLock<Option<PathBuf>> {
    CACHE_DIR.get_or_init(|| {
        RwLock::new(
            std::env::var_os("VDELTA_CACHE_DIR")
                .filter(|v| !v.is_empty())
                .map(PathBuf::from),
        )
    })
}

/// Select the on-disk cache directory (`None` disables disk caching).
/// Defaults to the `VDELTA_CACHE_DIR` environment variable.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_lock().write().unwrap() = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_lock().read().unwrap().clone()
}

/// (in-memory hits, on-disk hits) since process start.
pub fn cache_stats() -> (u64, u64) {
    (
        MEMO_HITS.load(Ordering::Relaxed),
        DISK_HITS.load(Ordering::Relaxed),
    )
}

pub(crate) fn htilde_in_monomial(mu: &Partition) -> BTreeMap<Partition, QtRational> {
    htilde_degree(mu.size())
        .get(mu)
        .expect("every partition of the degree is present")
        .clone()
}

/// All Macdonald expansions of one degree, memoised and disk-cached.
pub(crate) fn htilde_degree(n: usize) -> Arc<DegreeExpansion> {
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = memo.lock().unwrap();
    if let Some(hit) = map.get(&n) {
        MEMO_HITS.fetch_add(1, Ordering::Relaxed);
        return Arc::clone(hit);
    }
    let expansion = match load_from_disk(n) {
        Some(e) => {
            DISK_HITS.fetch_add(1, Ordering::Relaxed);
            e
        }
        None => {
            let e = compute_degree(n);
            store_to_disk(n, &e);
            e
        }
    };
    let arc = Arc::new(expansion);
    map.insert(n, Arc::clone(&arc));
    arc
}

fn compute_degree(n: usize) -> DegreeExpansion {
    let partitions = Partition::all(n);
    partitions
        .par_iter()
        .map(|mu| (mu.clone(), fillings_expansion(mu, &partitions)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Geometry of one shape, cells listed in reading order.
struct ShapeStats {
    /// (earlier cell, later cell) attacking pairs, by cell index.
    attacks: Vec<(usize, usize)>,
    /// (cell, cell below, leg + 1, arm) for descent candidates.
    descents: Vec<(usize, usize, u64, i64)>,
    cell_count: usize,
}

impl ShapeStats {
    fn new(mu: &Partition) -> Self {
        // Reading order: top row first, left to right inside a row.
        let mut cells: Vec<(usize, usize)> = mu.cells().collect();
        cells.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let pos: HashMap<(usize, usize), usize> =
            cells.iter().copied().zip(0..).collect();
        let mut attacks = Vec::new();
        let mut descents = Vec::new();
        for (idx, &(i, j)) in cells.iter().enumerate() {
            // Same row, to the right.
            for i2 in i + 1..=mu.parts()[j - 1] as usize {
                attacks.push((idx, pos[&(i2, j)]));
            }
            // Row below, strictly left.
            if j >= 2 {
                for i2 in 1..i {
                    attacks.push((idx, pos[&(i2, j - 1)]));
                }
                descents.push((
                    idx,
                    pos[&(i, j - 1)],
                    (mu.leg(i, j) + 1) as u64,
                    mu.arm(i, j) as i64,
                ));
            }
        }
        ShapeStats {
            attacks,
            descents,
            cell_count: cells.len(),
        }
    }

    fn statistics(&self, values: &[u8]) -> (u32, u32) {
        let mut inv: i64 = self
            .attacks
            .iter()
            .filter(|&&(u, v)| values[u] > values[v])
            .count() as i64;
        let mut maj: u64 = 0;
        for &(u, south, weight, arm) in &self.descents {
            if values[u] > values[south] {
                maj += weight;
                inv -= arm;
            }
        }
        assert!(inv >= 0, "fillings inversion statistic went negative");
        (inv as u32, maj as u32)
    }
}

/// Expand one Macdonald basis element into the monomial basis by summing
/// `q^inv t^maj` over fillings of each content.
fn fillings_expansion(
    mu: &Partition,
    contents: &[Partition],
) -> BTreeMap<Partition, QtRational> {
    let shape = ShapeStats::new(mu);
    let mut out = BTreeMap::new();
    for lambda in contents {
        let mut counts: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
        let mut values = vec![0u8; shape.cell_count];
        let mut acc = QtPoly::zero();
        fill(&shape, &mut counts, &mut values, 0, &mut acc);
        if !acc.is_zero() {
            out.insert(lambda.clone(), acc.into());
        }
    }
    out
}

fn fill(
    shape: &ShapeStats,
    counts: &mut Vec<usize>,
    values: &mut Vec<u8>,
    idx: usize,
    acc: &mut QtPoly,
) {
    if idx == shape.cell_count {
        let (inv, maj) = shape.statistics(values);
        *acc += &QtPoly::monomial(inv, maj, 1);
        return;
    }
    for v in 0..counts.len() {
        if counts[v] == 0 {
            continue;
        }
        counts[v] -= 1;
        values[idx] = (v + 1) as u8;
        fill(shape, counts, values, idx + 1, acc);
        counts[v] += 1;
    }
}

// --- disk cache -------------------------------------------------------

fn cache_file(n: usize) -> Option<PathBuf> {
    cache_dir().map(|d| d.join(format!("htilde_{n}.txt")))
}

fn load_from_disk(n: usize) -> Option<DegreeExpansion> {
    let path = cache_file(n)?;
    let text = fs::read_to_string(path).ok()?;
    parse_cache(n, &text)
}

fn parse_cache(n: usize, text: &str) -> Option<DegreeExpansion> {
    let mut lines = text.lines();
    let header = lines.next()?;
    if header.trim() != format!("htilde-cache {CACHE_VERSION} degree={n}") {
        return None;
    }
    let mut out: DegreeExpansion = BTreeMap::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('|').map(str::trim);
        let mu: Partition = fields.next()?.parse().ok()?;
        let lambda: Partition = fields.next()?.parse().ok()?;
        let coeff = QtRational::parse(fields.next()?).ok()?;
        if fields.next().is_some() || mu.size() != n || lambda.size() != n {
            return None;
        }
        out.entry(mu).or_default().insert(lambda, coeff);
    }
    // Every partition of n must be present, with a nonempty expansion.
    let all = Partition::all(n);
    if out.len() != all.len() || all.iter().any(|p| !out.contains_key(p)) {
        return None;
    }
    Some(out)
}

fn store_to_disk(n: usize, expansion: &DegreeExpansion) {
    let Some(path) = cache_file(n) else {
        return;
    };
    let Some(dir) = path.parent() else { return };
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let mut text = format!("htilde-cache {CACHE_VERSION} degree={n}\n");
    for (mu, row) in expansion {
        for (lambda, coeff) in row {
            text.push_str(&format!("{mu} | {lambda} | {coeff}\n"));
        }
    }
    // Atomic replacement: temp file in the same directory, then rename.
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    if fs::write(&tmp, text).is_ok() {
        let _ = fs::rename(&tmp, &path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn coeff(exp: &BTreeMap<Partition, QtRational>, parts: &[u8]) -> String {
        exp.get(&pt(parts)).cloned().unwrap_or_else(QtRational::zero).to_string()
    }

    #[test]
    fn degree_one() {
        let e = htilde_in_monomial(&pt(&[1]));
        assert_eq!(e.len(), 1);
        assert_eq!(coeff(&e, &[1]), "1");
    }

    #[test]
    fn degree_two_row_and_column() {
        // Expansions derived by hand from the fillings statistics.
        let row = htilde_in_monomial(&pt(&[2]));
        assert_eq!(coeff(&row, &[2]), "1");
        assert_eq!(coeff(&row, &[1, 1]), "1 + q");
        let col = htilde_in_monomial(&pt(&[1, 1]));
        assert_eq!(coeff(&col, &[2]), "1");
        assert_eq!(coeff(&col, &[1, 1]), "1 + t");
    }

    #[test]
    fn degree_three_hook() {
        // For the hook [2,1]: m_3-coefficient 1, m_21 gets 1 + q + t,
        // m_111 gets 1 + 2q + 2t + qt.
        let e = htilde_in_monomial(&pt(&[2, 1]));
        assert_eq!(coeff(&e, &[3]), "1");
        assert_eq!(coeff(&e, &[2, 1]), "1 + q + t");
        assert_eq!(coeff(&e, &[1, 1, 1]), "1 + 2*q + 2*t + q*t");
    }

    #[test]
    fn conjugation_swaps_q_and_t() {
        for n in 0..=6usize {
            let table = htilde_degree(n);
            for (mu, exp) in table.iter() {
                let conj = &table[&mu.conjugate()];
                for (lambda, c) in exp {
                    let swapped = conj.get(lambda).cloned().unwrap_or_else(QtRational::zero);
                    assert_eq!(c.swap_qt(), swapped, "mu={mu} lambda={lambda}");
                }
            }
        }
    }

    #[test]
    fn dimension_specialisation() {
        use num_bigint::BigInt;
        // Coefficient of m_{1^n} at q = t = 1 is n!.
        let one = BigInt::from(1);
        let mut factorial = BigInt::from(1);
        for n in 1..=5usize {
            factorial *= n;
            let ones = Partition::from_unsorted(vec![1; n]);
            for (mu, exp) in htilde_degree(n).iter() {
                let c = exp.get(&ones).expect("m_{1^n} coefficient");
                assert_eq!(
                    c.eval_exact(&one, &one).unwrap(),
                    factorial,
                    "mu = {mu}"
                );
            }
        }
    }

    #[test]
    fn disk_cache_round_trip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("vdelta-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let expansion = compute_degree(3);
        set_cache_dir(Some(dir.clone()));
        store_to_disk(3, &expansion);
        assert_eq!(load_from_disk(3), Some(expansion.clone()));
        // Corrupt the payload: loader must reject it.
        let path = dir.join("htilde_3.txt");
        fs::write(&path, "htilde-cache v1 degree=3\n[3] | [3] | 1\n").unwrap();
        assert_eq!(load_from_disk(3), None);
        fs::write(&path, "garbage").unwrap();
        assert_eq!(load_from_disk(3), None);
        set_cache_dir(None);
        let _ = fs::remove_dir_all(&dir);
    }
}
