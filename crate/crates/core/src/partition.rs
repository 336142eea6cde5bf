//! Partition combinatorics: hook sets H(m,n), the minimal excluded
//! rectangle, Cayley-Hamilton coefficient partitions and
//! Littlewood-Richardson coefficients.
//!
//! The LR rule is implemented by direct enumeration of skew semistandard
//! tableaux whose reverse reading word is a lattice word; an independent
//! brute-force oracle via monomial expansion of Schur polynomial products
//! lives in the test suite.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Weakly decreasing list of positive parts; trailing zeros are dropped on
/// construction so equal partitions compare equal. The empty partition is
/// the zero partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u32,
}

impl Partition {
    /// Build from a weakly decreasing part list (zeros allowed, dropped).
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        let parts: Vec<u32> = parts.into_iter().take_while(|&p| p > 0).collect();
        let weight = parts.iter().sum();
        Partition { parts, weight }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), weight: 0 }
    }

    /// `((n+1)^(m+1))`: the minimal partition outside H(m,n).
    pub fn lambda_mn(m: usize, n: usize) -> Self {
        Partition::new(vec![n as u32 + 1; m + 1])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part i (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Componentwise containment with implicit zeros: self_i <= other_i.
    pub fn contained_in(&self, other: &Partition) -> bool {
        (0..self.len()).all(|i| self.part(i) <= other.part(i))
    }

    /// Membership in the fat hook H(m,n): part m+1 (1-based) at most n.
    pub fn in_hook(&self, m: usize, n: usize) -> bool {
        self.part(m) <= n as u32
    }

    /// Conjugate (transposed Young diagram).
    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let parts = (0..cols)
            .map(|c| self.parts.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition::new(parts)
    }

    /// All partitions of weight `w`, in decreasing lexicographic order.
    pub fn all_of_weight(w: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current: Vec<u32> = Vec::new();
        fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::new(current.clone()));
                return;
            }
            let top = remaining.min(max_part);
            for p in (1..=top).rev() {
                current.push(p);
                rec(remaining - p, p, current, out);
                current.pop();
            }
        }
        rec(w, w, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The Cayley-Hamilton coefficient partitions
/// `[m|n]^k = ((n+1)^k, n^(m-k))` and `[m|n]_r = (n^m, r)`.
pub fn ch_partitions(
    m: usize,
    n: usize,
    k: i64,
    r: i64,
) -> Result<(Partition, Partition), Error> {
    if k < 0 || k as usize > m {
        return Err(Error::IndexOutOfRange { index: k, bound: m as i64 });
    }
    if r < 0 || r as usize > n {
        return Err(Error::IndexOutOfRange { index: r, bound: n as i64 });
    }
    let k = k as usize;
    let mut upper = vec![n as u32 + 1; k];
    upper.extend(vec![n as u32; m - k]);
    let mut lower = vec![n as u32; m];
    lower.push(r as u32);
    Ok((Partition::new(upper), Partition::new(lower)))
}

/// Littlewood-Richardson coefficient C^nu_{lambda,mu}: the number of skew
/// semistandard tableaux of shape nu/lambda and content mu whose reverse
/// reading word is a lattice word. Returns 0 unless |nu| = |lambda| + |mu|
/// and lambda is contained in nu.
pub fn lr_coeff(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.weight() != lambda.weight() + mu.weight() || !lambda.contained_in(nu) {
        return 0;
    }
    if mu.is_empty() {
        return 1; // nu = lambda
    }

    // Cells of nu/lambda in reverse reading order: rows top to bottom,
    // each row right to left. Filling in this order keeps the lattice
    // prefix condition checkable cell by cell, and both tableau
    // constraints reference already-filled cells only.
    let rows = nu.len();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for r in 0..rows {
        let lo = lambda.part(r) as usize;
        let hi = nu.part(r) as usize;
        for c in (lo..hi).rev() {
            cells.push((r, c));
        }
    }

    let entries = mu.len();
    let mut grid: Vec<Vec<usize>> = (0..rows)
        .map(|r| vec![usize::MAX; nu.part(r) as usize])
        .collect();
    let mut counts = vec![0u32; entries];
    let mut total = 0u64;

    fn dfs(
        pos: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        counts: &mut Vec<u32>,
        mu: &Partition,
        total: &mut u64,
    ) {
        if pos == cells.len() {
            *total += 1;
            return;
        }
        let (r, c) = cells[pos];
        for e in 0..counts.len() {
            if counts[e] >= mu.part(e) {
                continue;
            }
            // Lattice condition on the reverse reading word: after placing
            // e, every prefix must hold count(e-1) >= count(e).
            if e > 0 && counts[e - 1] <= counts[e] {
                continue;
            }
            // Rows weakly increase left to right: the right neighbour was
            // filled earlier in this row.
            if c + 1 < grid[r].len() && grid[r][c + 1] != usize::MAX && e > grid[r][c + 1] {
                continue;
            }
            // Columns strictly increase top to bottom.
            if r > 0 && c < grid[r - 1].len() && grid[r - 1][c] != usize::MAX && e <= grid[r - 1][c]
            {
                continue;
            }
            grid[r][c] = e;
            counts[e] += 1;
            dfs(pos + 1, cells, grid, counts, mu, total);
            counts[e] -= 1;
            grid[r][c] = usize::MAX;
        }
    }

    dfs(0, &cells, &mut grid, &mut counts, mu, &mut total);
    total
}
