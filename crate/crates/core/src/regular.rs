//! The `(w_c, w_r)`-regular girth-8 construction.
//!
//! A three-layer tree rooted at a check node is closed off by one check per
//! last-layer position joining that position across all branches. For
//! `w_c >= 3` the graph is then replicated `w_r` times per stage, and each
//! last-layer position gets a check joining its `w_r` copies.
//!
//! Every variable node carries a [`CharacteristicArray`]; columns of the
//! final matrix are ordered lexicographically by it.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::{BinaryVector, ParityCheckMatrix};

/// Label `(t_1, ..., t_{w_c-2}, l, j)` of a variable node.
///
/// `copies` holds one copy index in `1..=w_r` per replication stage already
/// executed. `ell` in `1..=w_r` is the first-layer branch and `j` is `0` for
/// the first-layer node or `1..=(w_c-1)(w_r-1)` for a last-layer node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacteristicArray {
    pub copies: Vec<usize>,
    pub ell: usize,
    pub j: usize,
}

impl CharacteristicArray {
    pub fn coords(&self) -> Vec<usize> {
        let mut c = self.copies.clone();
        c.push(self.ell);
        c.push(self.j);
        c
    }

    /// Dash-separated coordinates, e.g. `1-2-0`.
    pub fn to_dashed(&self) -> String {
        self.coords()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn is_first_layer(&self) -> bool {
        self.j == 0
    }
}

/// What a check node is in the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckRole {
    /// Root of a base tree.
    Root,
    /// Child of a first-layer variable node.
    Child,
    /// Closes one last-layer position across the branches of a base tree.
    Level2,
    /// Joins one last-layer position across the copies made at this stage (1-based).
    Level3(usize),
}

impl std::fmt::Display for CheckRole {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckRole::Root => f.write_str("root"),
            CheckRole::Child => f.write_str("child"),
            CheckRole::Level2 => f.write_str("level2"),
            CheckRole::Level3(s) => write!(f, "level3({s})"),
        }
    }
}

/// A matrix with a label per column and a role per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub wc: usize,
    pub wr: usize,
    pub matrix: ParityCheckMatrix,
    pub labels: Vec<CharacteristicArray>,
    pub check_roles: Vec<CheckRole>,
    /// `true` once every level of the construction has run.
    pub complete: bool,
}

impl LabeledGraph {
    pub fn column_of(&self, label: &CharacteristicArray) -> Option<usize> {
        // labels are sorted for complete graphs; fall back to a scan otherwise
        if self.complete {
            self.labels.binary_search(label).ok()
        } else {
            self.labels.iter().position(|l| l == label)
        }
    }

    /// CSV with header `col,coords`.
    pub fn labels_csv(&self) -> String {
        let mut out = String::from("col,coords\n");
        for (c, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("{c},{}\n", l.to_dashed()));
        }
        out
    }
}

fn check_params(wc: usize, wr: usize) -> Result<()> {
    if wc < 2 || wr < wc {
        return Err(Error::ParamsOutOfRange(format!(
            "w_c = {wc}, w_r = {wr}; need w_r >= w_c >= 2"
        )));
    }
    Ok(())
}

/// `(n, m)` of the final graph.
pub fn predicted_dims(wc: usize, wr: usize) -> Result<(usize, usize)> {
    check_params(wc, wr)?;
    let scale = wr.pow((wc - 2) as u32);
    let n = scale * (wr + wr * (wr - 1) * (wc - 1));
    let m = scale * (1 + wr * (wc - 1) + (wr - 1) * (wc - 1) * (wc - 1));
    Ok((n, m))
}

/// Graph under construction: column adjacency plus bookkeeping.
struct Builder {
    cols: Vec<Vec<usize>>,
    labels: Vec<CharacteristicArray>,
    roles: Vec<CheckRole>,
    /// Last-layer columns in position order.
    leaves: Vec<usize>,
}

impl Builder {
    fn add_check(&mut self, role: CheckRole, members: &[usize]) {
        let row = self.roles.len();
        self.roles.push(role);
        for &c in members {
            self.cols[c].push(row);
        }
    }

    fn base(wc: usize, wr: usize) -> Self {
        let leaves_per_branch = (wc - 1) * (wr - 1);
        let n = wr * (1 + leaves_per_branch);
        let mut b = Builder {
            cols: vec![Vec::new(); n],
            labels: Vec::with_capacity(n),
            roles: Vec::new(),
            leaves: Vec::with_capacity(wr * leaves_per_branch),
        };
        for ell in 1..=wr {
            for j in 0..=leaves_per_branch {
                if j > 0 {
                    b.leaves.push(b.labels.len());
                }
                b.labels.push(CharacteristicArray {
                    copies: Vec::new(),
                    ell,
                    j,
                });
            }
        }
        let col = |ell: usize, j: usize| (ell - 1) * (1 + leaves_per_branch) + j;
        let firsts: Vec<usize> = (1..=wr).map(|ell| col(ell, 0)).collect();
        b.add_check(CheckRole::Root, &firsts);
        for ell in 1..=wr {
            // child check `blk` owns last-layer positions blk*(w_r-1)+1 ..= (blk+1)*(w_r-1)
            for blk in 0..wc - 1 {
                let mut members = vec![col(ell, 0)];
                members.extend((1..wr).map(|k| col(ell, blk * (wr - 1) + k)));
                b.add_check(CheckRole::Child, &members);
            }
        }
        b
    }

    fn level2(&mut self, wc: usize, wr: usize) {
        let leaves_per_branch = (wc - 1) * (wr - 1);
        for j in 1..=leaves_per_branch {
            let members: Vec<usize> = (0..wr)
                .map(|branch| branch * (1 + leaves_per_branch) + j)
                .collect();
            self.add_check(CheckRole::Level2, &members);
        }
    }

    fn replicate(&mut self, wr: usize, stage: usize) {
        let n = self.cols.len();
        let m = self.roles.len();
        let mut cols = Vec::with_capacity(n * wr);
        let mut labels = Vec::with_capacity(n * wr);
        let mut roles = Vec::with_capacity(m * wr);
        let mut leaves = Vec::with_capacity(self.leaves.len() * wr);
        for t in 1..=wr {
            let row_off = (t - 1) * m;
            let col_off = (t - 1) * n;
            cols.extend(
                self.cols
                    .iter()
                    .map(|c| c.iter().map(|r| r + row_off).collect::<Vec<_>>()),
            );
            labels.extend(self.labels.iter().map(|l| {
                let mut l = l.clone();
                l.copies.push(t);
                l
            }));
            roles.extend_from_slice(&self.roles);
            leaves.extend(self.leaves.iter().map(|c| c + col_off));
        }
        let positions = self.leaves.clone();
        *self = Builder {
            cols,
            labels,
            roles,
            leaves,
        };
        for &p in &positions {
            let members: Vec<usize> = (0..wr).map(|t| t * n + p).collect();
            self.add_check(CheckRole::Level3(stage), &members);
        }
    }

    /// Reorders columns by label.
    fn finish(self, wc: usize, wr: usize, complete: bool) -> LabeledGraph {
        let mut order: Vec<usize> = (0..self.labels.len()).collect();
        order.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        let cols = order.iter().map(|&c| self.cols[c].clone()).collect();
        let labels = order.iter().map(|&c| self.labels[c].clone()).collect();
        let matrix = ParityCheckMatrix::from_columns(self.roles.len(), cols)
            .expect("construction emits valid adjacency");
        LabeledGraph {
            wc,
            wr,
            matrix,
            labels,
            check_roles: self.roles,
            complete,
        }
    }
}

/// The three-layer base tree with `w_r` branches.
pub fn build_h_base(wc: usize, wr: usize) -> Result<LabeledGraph> {
    check_params(wc, wr)?;
    Ok(Builder::base(wc, wr).finish(wc, wr, false))
}

/// The full `(w_c, w_r)`-regular girth-8 graph.
pub fn build_h_reg(wc: usize, wr: usize) -> Result<LabeledGraph> {
    check_params(wc, wr)?;
    let mut b = Builder::base(wc, wr);
    b.level2(wc, wr);
    for stage in 1..=wc - 2 {
        b.replicate(wr, stage);
    }
    Ok(b.finish(wc, wr, true))
}

/// A codeword of weight `2^{w_c}` for `w_c` in `{2, 3}` and `w_r >= 3`.
///
/// For `w_c = 2` it is `{v_{1,1}, v_{1,2}, v_{2,1}, v_{2,2}}`, where positions
/// 1 and 2 hang off the same child check. For `w_c = 3` the same four nodes
/// are taken in copies 1 and 2 of the replication stage.
pub fn canonical_min_weight_codeword(graph: &LabeledGraph) -> Result<BinaryVector> {
    let (wc, wr) = (graph.wc, graph.wr);
    if !graph.complete || !(2..=3).contains(&wc) || wr < 3 {
        return Err(Error::NoCanonicalCodeword { wc, wr });
    }
    let copy_sets: Vec<Vec<usize>> = if wc == 2 {
        vec![vec![]]
    } else {
        vec![vec![1], vec![2]]
    };
    let index: HashMap<&CharacteristicArray, usize> = graph
        .labels
        .iter()
        .enumerate()
        .map(|(c, l)| (l, c))
        .collect();
    let mut support = Vec::new();
    for copies in copy_sets {
        for ell in 1..=2 {
            for j in 1..=2 {
                let label = CharacteristicArray {
                    copies: copies.clone(),
                    ell,
                    j,
                };
                support.push(
                    *index
                        .get(&label)
                        .ok_or(Error::NoCanonicalCodeword { wc, wr })?,
                );
            }
        }
    }
    BinaryVector::new(graph.matrix.n(), support)
}
