//! GF(2) linear algebra on word-packed bit rows.

use crate::matrix::{BinaryVector, ParityCheckMatrix};

const WORD: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length bit vector packed into `u64` words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitRow {
    len: usize,
    words: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut row = Self::zeros(len);
        for &i in support {
            row.flip(i);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }

    pub fn to_vector(&self) -> BinaryVector {
        BinaryVector::new(self.len, self.ones().collect()).expect("bit positions are in range")
    }
}

/// Rows of `h` packed as bit rows of length `n`.
pub fn packed_rows(h: &ParityCheckMatrix) -> Vec<BitRow> {
    h.rows()
        .iter()
        .map(|r| BitRow::from_support(h.n(), r))
        .collect()
}

/// Columns of `h` packed as bit rows of length `m` (the per-column syndromes).
pub fn packed_columns(h: &ParityCheckMatrix) -> Vec<BitRow> {
    h.columns()
        .iter()
        .map(|c| BitRow::from_support(h.m(), c))
        .collect()
}

/// Reduced row echelon form over GF(2).
#[derive(Debug, Clone)]
pub struct Echelon {
    /// Nonzero reduced rows, one per pivot.
    pub rows: Vec<BitRow>,
    /// Pivot column of each row, increasing.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Gauss-Jordan elimination of packed rows of length `ncols`.
pub fn reduce(mut rows: Vec<BitRow>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(sel) = (top..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(top, sel);
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    Echelon {
        rows,
        pivots,
        ncols,
    }
}

pub fn rank(h: &ParityCheckMatrix) -> usize {
    reduce(packed_rows(h), h.n()).rank()
}

/// One basis vector per free column of the reduced form; the free column is
/// set and the pivot columns are solved for.
pub fn nullspace_basis_packed(h: &ParityCheckMatrix) -> Vec<BitRow> {
    let ech = reduce(packed_rows(h), h.n());
    ech.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = BitRow::zeros(h.n());
            v.flip(f);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(f) {
                    v.flip(p);
                }
            }
            v
        })
        .collect()
}

pub fn nullspace_basis(h: &ParityCheckMatrix) -> Vec<BinaryVector> {
    nullspace_basis_packed(h)
        .iter()
        .map(BitRow::to_vector)
        .collect()
}
