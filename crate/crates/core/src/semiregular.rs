//! Column-weight-3 girth-8 matrices from a 3-AP-free sequence.
//!
//! With `n = t^2` columns, column `j` has one 1 in each of three row levels:
//!
//! ```text
//! r1 = a_j                          a_j = j / t            (t rows)
//! r2 = c1 + b_{i_j} + r1            i_j = j mod t + 1      (t + b_t - 1 rows)
//! r3 = c2 + a_j + r2                c1 = t - 1, c2 = t - 1 + b_t
//! ```
//!
//! Rows are 0-based, giving `m = 4t + 2 b_t - 3`.

use crate::apfree::{find_3ap, ApFreeSequence};
use crate::error::{Error, Result};
use crate::matrix::ParityCheckMatrix;

/// Parameters of the semi-regular construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiRegularSpec {
    pub t: usize,
    pub sequence: ApFreeSequence,
}

impl SemiRegularSpec {
    pub fn new(t: usize, sequence: ApFreeSequence) -> Result<Self> {
        check_len(t, sequence.terms())?;
        Ok(SemiRegularSpec { t, sequence })
    }

    pub fn n(&self) -> usize {
        self.t * self.t
    }

    pub fn c1(&self) -> usize {
        self.t - 1
    }

    pub fn c2(&self) -> usize {
        self.t - 1 + self.b_t()
    }

    pub fn b_t(&self) -> usize {
        self.sequence.terms()[self.t - 1] as usize
    }

    /// Row ranges `[start, end)` of the three levels.
    pub fn levels(&self) -> [std::ops::Range<usize>; 3] {
        let (t, bt) = (self.t, self.b_t());
        [0..t, t..2 * t + bt - 1, 2 * t + bt - 1..4 * t + 2 * bt - 3]
    }

    pub fn build(&self) -> ParityCheckMatrix {
        place(self.t, self.sequence.terms())
    }
}

fn check_len(t: usize, terms: &[u64]) -> Result<()> {
    if t < 2 {
        return Err(Error::ParamsOutOfRange(format!("t = {t}, need t >= 2")));
    }
    if terms.len() < t {
        return Err(Error::SequenceTooShort {
            need: t,
            got: terms.len(),
        });
    }
    Ok(())
}

/// `4t + 2 b_t - 3`.
pub fn predicted_m(t: usize, sequence: &ApFreeSequence) -> Result<usize> {
    check_len(t, sequence.terms())?;
    Ok(4 * t + 2 * sequence.terms()[t - 1] as usize - 3)
}

/// Builds `H_s` after checking the sequence is long enough and 3-AP-free.
pub fn build_h_s(t: usize, terms: &[u64]) -> Result<ParityCheckMatrix> {
    check_len(t, terms)?;
    if let Some((a, b, c)) = find_3ap(&terms[..t])? {
        return Err(Error::ContainsAp(a, b, c));
    }
    Ok(place(t, terms))
}

/// Same placement with no 3-AP check, for negative controls.
#[doc(hidden)]
pub fn build_h_s_unchecked(t: usize, terms: &[u64]) -> Result<ParityCheckMatrix> {
    check_len(t, terms)?;
    if terms[..t].first() == Some(&0) || terms[..t].windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    Ok(place(t, terms))
}

/// The three row positions of column `j`.
pub fn column_rows(t: usize, terms: &[u64], j: usize) -> [usize; 3] {
    let c1 = t - 1;
    let c2 = t - 1 + terms[t - 1] as usize;
    let a = j / t;
    let b = terms[j % t] as usize;
    let r1 = a;
    let r2 = c1 + b + r1;
    let r3 = c2 + a + r2;
    [r1, r2, r3]
}

fn place(t: usize, terms: &[u64]) -> ParityCheckMatrix {
    let m = 4 * t + 2 * terms[t - 1] as usize - 3;
    let cols = (0..t * t)
        .map(|j| column_rows(t, terms, j).to_vec())
        .collect();
    ParityCheckMatrix::from_columns(m, cols).expect("levels are disjoint and in range")
}
