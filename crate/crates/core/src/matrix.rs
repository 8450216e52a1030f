//! Sparse binary parity-check matrices.
//!
//! Columns are variable nodes and rows are check nodes. The column adjacency
//! is authoritative; the row adjacency is derived once at construction and
//! the matrix is immutable afterwards.

use crate::error::{Error, Result};

/// A sparse `m x n` binary matrix stored as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheckMatrix {
    m: usize,
    n: usize,
    cols: Vec<Vec<usize>>,
    rows: Vec<Vec<usize>>,
}

impl ParityCheckMatrix {
    /// Builds a matrix from `(row, col)` pairs. Pairs may come in any order,
    /// but the same pair may not appear twice.
    pub fn from_edges(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        check_dims(m, n)?;
        let mut cols = vec![Vec::new(); n];
        for &(row, col) in edges {
            if row >= m || col >= n {
                return Err(Error::IndexOutOfBounds { row, col, m, n });
            }
            cols[col].push(row);
        }
        Self::from_columns(m, cols)
    }

    /// Builds a matrix from per-column row lists.
    pub fn from_columns(m: usize, mut cols: Vec<Vec<usize>>) -> Result<Self> {
        let n = cols.len();
        check_dims(m, n)?;
        for (col, list) in cols.iter_mut().enumerate() {
            list.sort_unstable();
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateEdge { row: w[0], col });
                }
            }
            if let Some(&row) = list.last() {
                if row >= m {
                    return Err(Error::IndexOutOfBounds { row, col, m, n });
                }
            }
        }
        let rows = transpose(m, &cols);
        Ok(ParityCheckMatrix { m, n, cols, rows })
    }

    /// Number of check nodes (rows).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of variable nodes (columns).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn col(&self, j: usize) -> &[usize] {
        &self.cols[j]
    }

    pub fn row(&self, i: usize) -> &[usize] {
        &self.rows[i]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn num_edges(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cols[col].binary_search(&row).is_ok()
    }

    /// Iterates over all `(row, col)` pairs in column-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, rows)| rows.iter().map(move |&r| (r, c)))
    }

    /// The `n x m` matrix with rows and columns swapped.
    pub fn transpose(&self) -> ParityCheckMatrix {
        ParityCheckMatrix {
            m: self.n,
            n: self.m,
            cols: self.rows.clone(),
            rows: self.cols.clone(),
        }
    }

    /// Applies a row and a column permutation: old row `r` becomes
    /// `row_perm[r]`, old column `c` becomes `col_perm[c]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: row_perm.len(),
            });
        }
        if col_perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: col_perm.len(),
            });
        }
        let mut cols = vec![Vec::new(); self.n];
        for (c, rows) in self.cols.iter().enumerate() {
            cols[col_perm[c]] = rows.iter().map(|&r| row_perm[r]).collect();
        }
        Self::from_columns(self.m, cols)
    }

    pub fn col_degrees(&self) -> Vec<usize> {
        self.cols.iter().map(Vec::len).collect()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    /// `H x` over GF(2).
    pub fn syndrome(&self, x: &BinaryVector) -> Result<BinaryVector> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut parity = vec![false; self.m];
        for &c in x.support() {
            for &r in &self.cols[c] {
                parity[r] ^= true;
            }
        }
        Ok(BinaryVector::from_bools(&parity))
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::EmptyDimension { m, n });
    }
    Ok(())
}

fn transpose(m: usize, cols: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut rows = vec![Vec::new(); m];
    // columns are visited in increasing order, so every row list comes out sorted
    for (c, list) in cols.iter().enumerate() {
        for &r in list {
            rows[r].push(c);
        }
    }
    rows
}

/// A binary vector stored by its support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    length: usize,
    support: Vec<usize>,
}

impl BinaryVector {
    pub fn new(length: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        for w in support.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge { row: 0, col: w[0] });
            }
        }
        if let Some(&last) = support.last() {
            if last >= length {
                return Err(Error::IndexOutOfBounds {
                    row: 0,
                    col: last,
                    m: 1,
                    n: length,
                });
            }
        }
        Ok(BinaryVector { length, support })
    }

    pub fn zeros(length: usize) -> Self {
        BinaryVector {
            length,
            support: Vec::new(),
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BinaryVector {
            length: bits.len(),
            support: bits
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    pub fn to_bools(&self) -> Vec<bool> {
        let mut bits = vec![false; self.length];
        for &i in &self.support {
            bits[i] = true;
        }
        bits
    }
}
