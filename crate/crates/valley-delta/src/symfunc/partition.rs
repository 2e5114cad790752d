use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::SymError;

/// An integer partition: weakly decreasing positive parts. Partitions
/// order by size first, then reverse-lexicographically within a size, so
/// `[3] < [2,1] < [1,1,1]` — the order every table and rendering uses.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Partition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: Vec<u8>) -> Result<Self, SymError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymError::BadPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u8>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn single(n: u8) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u8)
            .collect();
        Partition { parts }
    }

    /// Cells `(i, j)`: column `i` in row `j`, both 1-based; row `j` has
    /// `parts[j-1]` cells.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(j, &p)| (1..=p as usize).map(move |i| (i, j + 1)))
    }

    /// Cells strictly to the right of `(i, j)`.
    pub fn arm(&self, i: usize, j: usize) -> usize {
        self.parts[j - 1] as usize - i
    }

    /// Cells strictly to the left.
    pub fn co_arm(&self, i: usize, _j: usize) -> usize {
        i - 1
    }

    /// Cells strictly above (rows after `j` still covering column `i`).
    pub fn leg(&self, i: usize, j: usize) -> usize {
        self.parts[j..].iter().filter(|&&p| p as usize >= i).count()
    }

    /// Cells strictly below.
    pub fn co_leg(&self, _i: usize, j: usize) -> usize {
        j - 1
    }

    pub fn multiplicity(&self, part: u8) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// `z = prod_i i^{m_i} m_i!` over part multiplicities.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let max = self.parts.first().copied().unwrap_or(0);
        for i in 1..=max {
            let m = self.multiplicity(i);
            for f in 1..=m {
                z *= f;
            }
            z *= BigInt::from(i).pow(m as u32);
        }
        z
    }

    /// Union of parts (multiset sum), e.g. `[2,1] + [2] = [2,2,1]`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_unsorted(parts)
    }

    pub fn with_part(&self, part: u8) -> Partition {
        self.union(&Partition::single(part))
    }

    /// Remove one copy of `part`, if present.
    pub fn without_part(&self, part: u8) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == part)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// All partitions of `n` in canonical order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(remaining: usize, max_part: usize, prefix: &mut Vec<u8>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in (1..=remaining.min(max_part)).rev() {
                prefix.push(p as u8);
                go(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n.min(u8::MAX as usize), &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = SymError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| SymError::BadPartition(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u8>()
                    .map_err(|_| SymError::BadPartition(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}
