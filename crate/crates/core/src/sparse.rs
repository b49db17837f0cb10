//! Integer matrices in coordinate form, sorted by `(row, col)`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Builds from unordered triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, i64)>) -> Self {
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        SparseIntMatrix { rows, cols, entries }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let triplets = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                assert_eq!(row.len(), cols, "ragged dense matrix");
                row.iter().enumerate().map(move |(c, &v)| (r, c, v))
            })
            .collect();
        Self::from_triplets(rows, cols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries
            .binary_search_by_key(&(row, col), |&(r, c, _)| (r, c))
            .map_or(0, |n| self.entries[n].2)
    }

    pub fn transpose(&self) -> Self {
        let triplets = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        Self::from_triplets(self.cols, self.rows, triplets)
    }

    /// Rows as lists of `(col, value)`.
    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r].push((c, v));
        }
        out
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let right = other.row_lists();
        let mut acc = vec![0i64; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut triplets = Vec::new();
        let mut start = 0;
        while start < self.entries.len() {
            let row = self.entries[start].0;
            let mut end = start;
            while end < self.entries.len() && self.entries[end].0 == row {
                let (_, k, a) = self.entries[end];
                for &(c, b) in &right[k] {
                    if acc[c] == 0 {
                        touched.push(c);
                    }
                    acc[c] += a * b;
                    // a cancellation to zero leaves a stale entry in `touched`;
                    // from_triplets drops it
                }
                end += 1;
            }
            touched.sort_unstable();
            touched.dedup();
            for &c in &touched {
                triplets.push((row, c, acc[c]));
                acc[c] = 0;
            }
            touched.clear();
            start = end;
        }
        SparseIntMatrix::from_triplets(self.rows, other.cols, triplets)
    }

    pub fn add(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.shape(), other.shape(), "dimension mismatch in sum");
        let mut triplets = self.entries.clone();
        triplets.extend_from_slice(&other.entries);
        SparseIntMatrix::from_triplets(self.rows, self.cols, triplets)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r][c] = v;
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && self.entries.iter().all(|&(r, c, v)| self.get(c, r) == v)
    }

    pub fn trace(&self) -> i64 {
        self.entries
            .iter()
            .filter(|e| e.0 == e.1)
            .map(|e| e.2)
            .sum()
    }

    /// Copy with `self` placed at `(row_offset, col_offset)` inside a larger
    /// `rows x cols` matrix.
    pub fn embedded(&self, rows: usize, cols: usize, row_offset: usize, col_offset: usize) -> Self {
        assert!(row_offset + self.rows <= rows && col_offset + self.cols <= cols);
        let triplets = self
            .entries
            .iter()
            .map(|&(r, c, v)| (r + row_offset, c + col_offset, v))
            .collect();
        Self::from_triplets(rows, cols, triplets)
    }

    /// The sub-block `rows x cols` starting at `(row_offset, col_offset)`.
    pub fn block(&self, row_offset: usize, col_offset: usize, rows: usize, cols: usize) -> Self {
        let triplets = self
            .entries
            .iter()
            .filter(|&&(r, c, _)| {
                (row_offset..row_offset + rows).contains(&r)
                    && (col_offset..col_offset + cols).contains(&c)
            })
            .map(|&(r, c, v)| (r - row_offset, c - col_offset, v))
            .collect();
        Self::from_triplets(rows, cols, triplets)
    }
}

impl fmt::Display for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
