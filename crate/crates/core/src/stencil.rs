//! The stencil data model: an `m x n` pattern of stars and zeros with
//! integer-tuple labels on rows and columns.
//!
//! Rust-side indices are 0-based. Files, JSON documents and the CLI use
//! 1-based indices.

use std::collections::HashSet;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::StencilError;

/// Row or column label. Base stencils use arity 1; tensor powers concatenate.
pub type Label = Vec<u32>;

/// Largest side accepted by [`Stencil::count_star_diagonals`].
pub const DIAGONAL_ORACLE_LIMIT: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Stencil {
    rows: Vec<BitSet>,
    ncols: usize,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

pub(crate) fn default_labels(n: usize) -> Vec<Label> {
    (1..=n as u32).map(|i| vec![i]).collect()
}

fn check_labels(axis: &'static str, labels: &[Label]) -> Result<(), StencilError> {
    if let Some(first) = labels.first() {
        for l in labels {
            if l.len() != first.len() {
                return Err(StencilError::LabelArity {
                    axis,
                    expected: first.len(),
                    found: l.len(),
                });
            }
        }
    }
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l) {
            return Err(StencilError::DuplicateLabel {
                axis,
                label: l.clone(),
            });
        }
    }
    Ok(())
}

fn check_subset(indices: &[usize], size: usize) -> Result<(), StencilError> {
    let mut seen = vec![false; size];
    for &i in indices {
        if i >= size {
            return Err(StencilError::IndexOutOfRange { index: i, size });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(StencilError::DuplicateIndex(i));
        }
    }
    Ok(())
}

impl Stencil {
    /// All-zero `m x n` stencil with default labels.
    pub fn zeros(m: usize, n: usize) -> Self {
        Stencil {
            rows: vec![BitSet::new(n); m],
            ncols: n,
            row_labels: default_labels(m),
            col_labels: default_labels(n),
        }
    }

    pub fn from_fn(m: usize, n: usize, mut star: impl FnMut(usize, usize) -> bool) -> Self {
        let mut s = Stencil::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                if star(i, j) {
                    s.rows[i].insert(j);
                }
            }
        }
        s
    }

    /// Builds from boolean rows; all rows must have the same length.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, StencilError> {
        let n = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(StencilError::SizeMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Ok(Stencil::from_fn(rows.len(), n, |i, j| rows[i][j]))
    }

    pub(crate) fn from_bit_rows(rows: Vec<BitSet>, ncols: usize) -> Self {
        let m = rows.len();
        Stencil {
            rows,
            ncols,
            row_labels: default_labels(m),
            col_labels: default_labels(ncols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Stencil::from_fn(n, n, |i, j| i == j)
    }

    pub fn all_star(m: usize, n: usize) -> Self {
        Stencil::from_fn(m, n, |_, _| true)
    }

    /// `D_n`: stars everywhere except the main diagonal.
    pub fn off_diagonal(n: usize) -> Self {
        Stencil::from_fn(n, n, |i, j| i != j)
    }

    /// Replaces both label sequences, checking lengths, uniform arity and distinctness.
    pub fn with_labels(
        mut self,
        row_labels: Vec<Label>,
        col_labels: Vec<Label>,
    ) -> Result<Self, StencilError> {
        if row_labels.len() != self.nrows() {
            return Err(StencilError::SizeMismatch {
                expected: self.nrows(),
                found: row_labels.len(),
            });
        }
        if col_labels.len() != self.ncols {
            return Err(StencilError::SizeMismatch {
                expected: self.ncols,
                found: col_labels.len(),
            });
        }
        check_labels("row", &row_labels)?;
        check_labels("column", &col_labels)?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    /// Copy of `self` with entry `(i, j)` set to `star`.
    pub fn with_entry(&self, i: usize, j: usize, star: bool) -> Self {
        let mut s = self.clone();
        if star {
            s.rows[i].insert(j);
        } else {
            s.rows[i].remove(j);
        }
        s
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn row(&self, i: usize) -> &BitSet {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    /// Rows holding a star in column `j`, as a bitset over row indices.
    pub fn column(&self, j: usize) -> BitSet {
        BitSet::from_indices(
            self.nrows(),
            (0..self.nrows()).filter(|&i| self.rows[i].contains(j)),
        )
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn star_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    /// Largest number of zeros in any row.
    pub fn max_row_zeros(&self) -> usize {
        self.rows
            .iter()
            .map(|r| self.ncols - r.count())
            .max()
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Stencil {
        let cols: Vec<BitSet> = (0..self.ncols).map(|j| self.column(j)).collect();
        Stencil {
            rows: cols,
            ncols: self.nrows(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn substencil(&self, rows: &[usize], cols: &[usize]) -> Result<Stencil, StencilError> {
        check_subset(rows, self.nrows())?;
        check_subset(cols, self.ncols)?;
        let mut out = Stencil::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]));
        out.row_labels = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        out.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        Ok(out)
    }

    /// `result[i, j] = self[row_perm[i], col_perm[j]]`, labels carried along.
    pub fn permute(&self, p: &PermutationPair) -> Result<Stencil, StencilError> {
        if p.row_perm.len() != self.nrows() {
            return Err(StencilError::SizeMismatch {
                expected: self.nrows(),
                found: p.row_perm.len(),
            });
        }
        if p.col_perm.len() != self.ncols {
            return Err(StencilError::SizeMismatch {
                expected: self.ncols,
                found: p.col_perm.len(),
            });
        }
        self.substencil(&p.row_perm, &p.col_perm)
    }

    /// True when the stencil is square with a star diagonal and zeros strictly below it.
    pub fn is_upper_triangular(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| self.get(i, i) && (0..i).all(|j| !self.get(i, j)))
    }

    /// Number of star diagonals, i.e. the permanent of the 0/1 pattern.
    ///
    /// Ryser's inclusion-exclusion formula over column subsets in Gray-code
    /// order. Intended as a test oracle only.
    pub fn count_star_diagonals(&self) -> Result<u64, StencilError> {
        if !self.is_square() {
            return Err(StencilError::NotSquare {
                rows: self.nrows(),
                cols: self.ncols,
            });
        }
        let n = self.nrows();
        if n > DIAGONAL_ORACLE_LIMIT {
            return Err(StencilError::OracleLimit {
                side: n,
                limit: DIAGONAL_ORACLE_LIMIT,
            });
        }
        if n == 0 {
            return Ok(1);
        }
        let masks: Vec<u32> = self.rows.iter().map(|r| r.words()[0] as u32).collect();
        let mut sums = vec![0i64; n];
        let mut subset: u32 = 0;
        let mut total: i128 = 0;
        for k in 1u32..(1 << n) {
            let bit = k.trailing_zeros() as usize;
            let adding = subset >> bit & 1 == 0;
            subset ^= 1 << bit;
            for (s, m) in sums.iter_mut().zip(&masks) {
                if m >> bit & 1 == 1 {
                    *s += if adding { 1 } else { -1 };
                }
            }
            let prod: i128 = sums.iter().map(|&s| s as i128).product();
            if prod != 0 {
                let sign = if (n - subset.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
                total += sign * prod;
            }
        }
        Ok(total as u64)
    }

    /// Maximum matching in the bipartite row/column graph of stars.
    pub fn max_matching_size(&self) -> usize {
        max_matching(&self.rows, self.ncols)
    }
}

/// Kuhn's augmenting-path matching over row supports.
pub(crate) fn max_matching(rows: &[BitSet], ncols: usize) -> usize {
    fn augment(
        r: usize,
        rows: &[BitSet],
        seen: &mut BitSet,
        col_match: &mut [usize],
    ) -> bool {
        for c in rows[r].iter() {
            if seen.contains(c) {
                continue;
            }
            seen.insert(c);
            if col_match[c] == usize::MAX || augment(col_match[c], rows, seen, col_match) {
                col_match[c] = r;
                return true;
            }
        }
        false
    }

    let mut col_match = vec![usize::MAX; ncols];
    let mut size = 0;
    for r in 0..rows.len() {
        // cheap greedy pass first
        if let Some(c) = rows[r].iter().find(|&c| col_match[c] == usize::MAX) {
            col_match[c] = r;
            size += 1;
            continue;
        }
        let mut seen = BitSet::new(ncols);
        if augment(r, rows, &mut seen, &mut col_match) {
            size += 1;
        }
    }
    size
}

impl fmt::Debug for Stencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Stencil {}x{}", self.nrows(), self.ncols)?;
        for r in &self.rows {
            let line: String = (0..self.ncols)
                .map(|j| if r.contains(j) { '*' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Row and column permutations applied together.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PermutationPair {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

fn check_bijection(p: &[usize]) -> Result<(), StencilError> {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || std::mem::replace(&mut seen[i], true) {
            return Err(StencilError::NotAPermutation(p.len()));
        }
    }
    Ok(())
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

impl PermutationPair {
    pub fn new(row_perm: Vec<usize>, col_perm: Vec<usize>) -> Result<Self, StencilError> {
        check_bijection(&row_perm)?;
        check_bijection(&col_perm)?;
        Ok(PermutationPair { row_perm, col_perm })
    }

    pub fn identity(m: usize, n: usize) -> Self {
        PermutationPair {
            row_perm: (0..m).collect(),
            col_perm: (0..n).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        PermutationPair {
            row_perm: invert(&self.row_perm),
            col_perm: invert(&self.col_perm),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(rows: &[&str]) -> Stencil {
        Stencil::from_rows(
            &rows
                .iter()
                .map(|r| r.chars().map(|c| c == '*').collect())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn substencil_examples() {
        let i3 = Stencil::identity(3);
        assert_eq!(i3.substencil(&[0, 1], &[0, 1]).unwrap(), Stencil::identity(2));
        let d3 = Stencil::off_diagonal(3);
        let sub = d3.substencil(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(sub, grid(&["0*", "*0"]));
        let h = grid(&["*0*", "0**"]);
        let first = h.substencil(&[0], &[0, 1, 2]).unwrap();
        assert_eq!(first, grid(&["*0*"]));
    }

    #[test]
    fn substencil_errors() {
        let i3 = Stencil::identity(3);
        assert_eq!(
            i3.substencil(&[0, 3], &[0]),
            Err(StencilError::IndexOutOfRange { index: 3, size: 3 })
        );
        assert_eq!(
            i3.substencil(&[1, 1], &[0]),
            Err(StencilError::DuplicateIndex(1))
        );
    }

    #[test]
    fn permute_examples() {
        let d2 = grid(&["0*", "*0"]);
        assert_eq!(d2.permute(&PermutationPair::identity(2, 2)).unwrap(), d2);
        let swap = PermutationPair::new(vec![1, 0], vec![0, 1]).unwrap();
        let p = d2.permute(&swap).unwrap();
        assert!(p.get(0, 0) && p.get(1, 1) && !p.get(0, 1) && !p.get(1, 0));
        assert_eq!(p.row_labels(), &[vec![2], vec![1]]);
        assert!(matches!(
            d2.permute(&PermutationPair::identity(3, 2)),
            Err(StencilError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn permutation_pair_rejects_non_bijection() {
        assert!(PermutationPair::new(vec![0, 0], vec![0]).is_err());
        assert!(PermutationPair::new(vec![0, 2], vec![0]).is_err());
    }

    #[test]
    fn star_diagonal_counts() {
        assert_eq!(Stencil::identity(3).count_star_diagonals().unwrap(), 1);
        assert_eq!(Stencil::all_star(3, 3).count_star_diagonals().unwrap(), 6);
        assert_eq!(Stencil::off_diagonal(3).count_star_diagonals().unwrap(), 2);
        // derangements of 5
        assert_eq!(Stencil::off_diagonal(5).count_star_diagonals().unwrap(), 44);
        assert_eq!(Stencil::all_star(8, 8).count_star_diagonals().unwrap(), 40320);
        assert!(Stencil::zeros(2, 3).count_star_diagonals().is_err());
        assert!(Stencil::identity(21).count_star_diagonals().is_err());
        assert_eq!(Stencil::all_star(20, 20).count_star_diagonals().unwrap(), 2432902008176640000);
    }

    #[test]
    fn matching_examples() {
        assert_eq!(Stencil::identity(7).max_matching_size(), 7);
        assert_eq!(Stencil::zeros(4, 5).max_matching_size(), 0);
        assert_eq!(Stencil::off_diagonal(3).max_matching_size(), 3);
        assert_eq!(grid(&["**", "*0", "*0"]).max_matching_size(), 2);
    }

    #[test]
    fn labels_validated() {
        let s = Stencil::identity(2);
        assert!(matches!(
            s.clone().with_labels(vec![vec![1], vec![1]], vec![vec![1], vec![2]]),
            Err(StencilError::DuplicateLabel { axis: "row", .. })
        ));
        assert!(matches!(
            s.with_labels(vec![vec![1], vec![1, 2]], vec![vec![1], vec![2]]),
            Err(StencilError::LabelArity { .. })
        ));
    }
}
