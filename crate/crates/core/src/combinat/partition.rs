//! Partitions and their cells.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CombinatError;

/// A weakly decreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

/// A cell of a Young diagram, zero-based.
///
/// One-based coordinates used in some formulas are `(row + 1, col + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Partition {
    /// Build from parts in any order; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, CombinatError> {
        if parts.contains(&0) {
            return Err(CombinatError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition (n); empty for n = 0.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.parts.first().copied().unwrap_or(0);
        Partition { parts: (0..w).map(|c| self.parts.iter().filter(|&&p| p > c).count() as u32).collect() }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.parts.get(cell.row as usize).is_some_and(|&p| cell.col < p)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).map(move |c| Cell { row: r as u32, col: c }))
            .collect()
    }

    /// Cells to the right of `cell` in its row.
    pub fn arm(&self, cell: Cell) -> u32 {
        self.parts[cell.row as usize] - cell.col - 1
    }

    /// Cells below `cell` in its column.
    pub fn leg(&self, cell: Cell) -> u32 {
        self.parts.iter().filter(|&&p| p > cell.col).count() as u32 - cell.row - 1
    }

    /// n(λ) = Σ_i (i-1) λ_i.
    pub fn n_weight(&self) -> u32 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    /// Multiplicity of each part size, index k holds m_k.
    pub fn multiplicities(&self) -> Vec<u32> {
        let w = self.parts.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0; w + 1];
        for &p in &self.parts {
            m[p as usize] += 1;
        }
        m
    }

    /// z_λ = Π_k k^{m_k} m_k!.
    pub fn z(&self) -> BigInt {
        let mut out = BigInt::one();
        for (k, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for j in 1..=m {
                out *= BigInt::from(k) * BigInt::from(j);
            }
        }
        out
    }

    /// Dominance order: `self >= other` with equal sizes.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..self.parts.len().max(other.parts.len()) {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Union of parts (the product p_λ p_μ in the power-sum basis).
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Remove one part equal to `k`, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let i = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(i);
        Some(Partition { parts })
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for k in (1..=n.min(max)).rev() {
            prefix.push(k);
            go(n - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, grouped by size.
pub fn partitions_upto(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = CombinatError;

    /// Accepts `3,1,1`, `∅`, `()` or the empty string.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| CombinatError::BadPartition(s.to_string())))
            .collect::<Result<Vec<u32>, _>>()?;
        if parts.iter().map(|&p| p as u64).sum::<u64>() > u32::MAX as u64 {
            return Err(CombinatError::BadPartition(s.to_string()));
        }
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = CombinatError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}
