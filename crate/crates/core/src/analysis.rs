//! Exact verifiers: girth, degree profile and minimum distance.
//!
//! All entry points are pure. Internal work is split across the current
//! rayon pool, and every reduction is order-independent, so results do not
//! depend on the number of threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow};
use crate::matrix::{BinaryVector, ParityCheckMatrix};

/// Largest nullity for which the whole code is enumerated.
pub const MAX_KERNEL_NULLITY: usize = 28;

/// Length of the shortest cycle of a Tanner graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Cycle(usize),
    Acyclic,
}

impl Girth {
    pub fn value(self) -> Option<usize> {
        match self {
            Girth::Cycle(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Cycle(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

/// Girth of the bipartite incidence graph of `h`.
///
/// BFS is started from every variable node; every cycle passes through one.
/// A non-tree edge `(u, w)` met during the search closes a walk of length
/// `d(u) + d(w) + 1` that contains a cycle, and from a root lying on a
/// shortest cycle this is exactly the girth.
pub fn girth(h: &ParityCheckMatrix) -> Girth {
    let best = AtomicUsize::new(usize::MAX);
    (0..h.n()).into_par_iter().for_each_init(
        || BfsScratch::new(h.n() + h.m()),
        |scratch, root| {
            let g = scratch.shortest_through(h, root, best.load(Ordering::Relaxed));
            best.fetch_min(g, Ordering::Relaxed);
        },
    );
    match best.into_inner() {
        usize::MAX => Girth::Acyclic,
        g => Girth::Cycle(g),
    }
}

struct BfsScratch {
    dist: Vec<usize>,
    parent: Vec<usize>,
    touched: Vec<usize>,
    queue: std::collections::VecDeque<usize>,
}

impl BfsScratch {
    fn new(vertices: usize) -> Self {
        BfsScratch {
            dist: vec![usize::MAX; vertices],
            parent: vec![usize::MAX; vertices],
            touched: Vec::new(),
            queue: Default::default(),
        }
    }

    /// Vertices `0..n` are columns, `n..n+m` rows. Returns the shortest
    /// closed walk found, or `bound` if none is shorter than it.
    fn shortest_through(&mut self, h: &ParityCheckMatrix, root: usize, bound: usize) -> usize {
        let n = h.n();
        let mut best = bound;
        self.dist[root] = 0;
        self.touched.push(root);
        self.queue.push_back(root);
        'bfs: while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u];
            if 2 * du + 1 >= best {
                break;
            }
            let nbrs: &[usize] = if u < n { h.col(u) } else { h.row(u - n) };
            let offset = if u < n { n } else { 0 };
            for &x in nbrs {
                let w = x + offset;
                if w == self.parent[u] {
                    continue;
                }
                if self.dist[w] == usize::MAX {
                    self.dist[w] = du + 1;
                    self.parent[w] = u;
                    self.touched.push(w);
                    self.queue.push_back(w);
                } else {
                    best = best.min(du + self.dist[w] + 1);
                    if 2 * du + 1 >= best {
                        break 'bfs;
                    }
                }
            }
        }
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
            self.parent[v] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();
        best
    }
}

/// Degree profile and girth of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub m: usize,
    pub n: usize,
    pub girth: Girth,
    pub column_degree_set: Vec<usize>,
    pub row_degree_set: Vec<usize>,
    /// `(w_c, w_r)` when every column has degree `w_c` and every row `w_r`.
    pub regular_pair: Option<(usize, usize)>,
}

pub fn stats(h: &ParityCheckMatrix) -> GraphStats {
    let cset: Vec<usize> = h
        .col_degrees()
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rset: Vec<usize> = h
        .row_degrees()
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let regular_pair = match (&cset[..], &rset[..]) {
        (&[wc], &[wr]) => Some((wc, wr)),
        _ => None,
    };
    GraphStats {
        m: h.m(),
        n: h.n(),
        girth: girth(h),
        column_degree_set: cset,
        row_degree_set: rset,
        regular_pair,
    }
}

/// How [`min_distance`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    /// Kernel enumeration when the nullity is at most [`MAX_KERNEL_NULLITY`],
    /// weight-capped search otherwise.
    #[default]
    Auto,
    KernelEnumeration,
    WeightCappedSearch,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Auto => "auto",
            Strategy::KernelEnumeration => "kernel_enumeration",
            Strategy::WeightCappedSearch => "weight_capped_search",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    Exact,
    LowerBound,
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceKind::Exact => "exact",
            DistanceKind::LowerBound => "lower_bound",
        })
    }
}

/// Outcome of a minimum-distance computation.
///
/// `Exact` carries a minimum-weight codeword (the lexicographically smallest
/// support among them). `LowerBound` means no nonzero codeword of weight
/// `<= cap` exists and `value == cap + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub kind: DistanceKind,
    pub value: usize,
    pub witness: Option<BinaryVector>,
    pub strategy: Strategy,
    pub cap: Option<usize>,
}

impl DistanceResult {
    fn exact(strategy: Strategy, witness: BinaryVector) -> Self {
        DistanceResult {
            kind: DistanceKind::Exact,
            value: witness.weight(),
            witness: Some(witness),
            strategy,
            cap: None,
        }
    }

    fn lower_bound(strategy: Strategy, cap: usize) -> Self {
        DistanceResult {
            kind: DistanceKind::LowerBound,
            value: cap + 1,
            witness: None,
            strategy,
            cap: Some(cap),
        }
    }
}

/// Minimum distance of the code with parity-check matrix `h`.
///
/// A code with no nonzero codewords is reported as a lower bound with
/// `cap = n`.
pub fn min_distance(
    h: &ParityCheckMatrix,
    weight_cap: usize,
    strategy: Strategy,
) -> Result<DistanceResult> {
    if weight_cap == 0 {
        return Err(Error::ParamsOutOfRange(
            "weight_cap must be at least 1".into(),
        ));
    }
    match strategy {
        Strategy::WeightCappedSearch => Ok(capped_search(h, weight_cap)),
        Strategy::KernelEnumeration => {
            let basis = gf2::nullspace_basis_packed(h);
            if basis.len() > MAX_KERNEL_NULLITY {
                return Err(Error::KernelTooLarge {
                    nullity: basis.len(),
                    limit: MAX_KERNEL_NULLITY,
                });
            }
            Ok(enumerate_kernel(h.n(), &basis))
        }
        Strategy::Auto => {
            let basis = gf2::nullspace_basis_packed(h);
            if basis.len() <= MAX_KERNEL_NULLITY {
                Ok(enumerate_kernel(h.n(), &basis))
            } else {
                Ok(capped_search(h, weight_cap))
            }
        }
    }
}

/// `true` if `a` has the lexicographically smaller support; `a` and `b`
/// must have equal weight.
fn support_less(a: &BitRow, b: &BitRow) -> bool {
    for (x, y) in a.words().iter().zip(b.words()) {
        let d = x ^ y;
        if d != 0 {
            return x & (d & d.wrapping_neg()) != 0;
        }
    }
    false
}

fn better(a: (usize, BitRow), b: (usize, BitRow)) -> (usize, BitRow) {
    if a.0 < b.0 || (a.0 == b.0 && support_less(&a.1, &b.1)) {
        a
    } else {
        b
    }
}

const CHUNK_BITS: u32 = 16;

fn enumerate_kernel(n: usize, basis: &[BitRow]) -> DistanceResult {
    let strategy = Strategy::KernelEnumeration;
    let k = basis.len();
    if k == 0 {
        return DistanceResult::lower_bound(strategy, n);
    }
    let total: u64 = 1 << k;
    let chunk: u64 = 1 << CHUNK_BITS.min(k as u32);
    let chunks = total / chunk;
    let best = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            // codeword for Gray index g(i) = i ^ (i >> 1)
            let gray = start ^ (start >> 1);
            let mut word = BitRow::zeros(n);
            for (b, v) in basis.iter().enumerate() {
                if gray >> b & 1 == 1 {
                    word.xor_assign(v);
                }
            }
            let mut best: Option<(usize, BitRow)> = None;
            let consider = |word: &BitRow, best: &mut Option<(usize, BitRow)>| {
                let w = word.count_ones();
                if w == 0 {
                    return;
                }
                let replace = match best {
                    None => true,
                    Some((bw, bv)) => w < *bw || (w == *bw && support_less(word, bv)),
                };
                if replace {
                    *best = Some((w, word.clone()));
                }
            };
            consider(&word, &mut best);
            for i in start + 1..start + chunk {
                word.xor_assign(&basis[i.trailing_zeros() as usize]);
                consider(&word, &mut best);
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (None, x) | (x, None) => x,
                (Some(a), Some(b)) => Some(better(a, b)),
            },
        );
    let (_, word) = best.expect("a nonzero kernel has nonzero codewords");
    DistanceResult::exact(strategy, word.to_vector())
}

/// Exhaustive search over column subsets of weight `1..=cap`, in increasing
/// weight and lexicographic order. The last column of each subset is looked
/// up by syndrome instead of enumerated.
fn capped_search(h: &ParityCheckMatrix, cap: usize) -> DistanceResult {
    let strategy = Strategy::WeightCappedSearch;
    let n = h.n();
    let cols = gf2::packed_columns(h);
    let mut by_syndrome: HashMap<Box<[u64]>, Vec<usize>> = HashMap::new();
    for (j, c) in cols.iter().enumerate() {
        by_syndrome.entry(c.words().into()).or_default().push(j);
    }
    let searcher = SubsetSearch {
        cols: &cols,
        by_syndrome: &by_syndrome,
        words: cols[0].words().len(),
        n,
    };
    for w in 1..=cap.min(n) {
        let found = if w == 1 {
            searcher
                .complete(&vec![0; searcher.words], 0)
                .map(|j| vec![j])
        } else {
            (0..=n - w)
                .into_par_iter()
                .find_map_first(|first| searcher.search_from(first, w))
        };
        if let Some(support) = found {
            let v = BinaryVector::new(n, support).expect("indices in range");
            return DistanceResult::exact(strategy, v);
        }
    }
    DistanceResult::lower_bound(strategy, cap)
}

struct SubsetSearch<'a> {
    cols: &'a [BitRow],
    by_syndrome: &'a HashMap<Box<[u64]>, Vec<usize>>,
    words: usize,
    n: usize,
}

impl SubsetSearch<'_> {
    /// Smallest column index `>= from` whose syndrome equals `target`.
    fn complete(&self, target: &[u64], from: usize) -> Option<usize> {
        let list = self.by_syndrome.get(target)?;
        let pos = list.partition_point(|&j| j < from);
        list.get(pos).copied()
    }

    /// Lexicographically first zero-syndrome subset of size `w` whose
    /// smallest element is `first`.
    fn search_from(&self, first: usize, w: usize) -> Option<Vec<usize>> {
        let words = self.words;
        // partial[d] = XOR of the first d + 1 chosen columns
        let mut partial = vec![0u64; words * w];
        partial[..words].copy_from_slice(self.cols[first].words());
        let mut chosen = vec![first];
        if w == 2 {
            return self
                .complete(&partial[..words], first + 1)
                .map(|j| vec![first, j]);
        }
        // depth-first over chosen[1..w-1]; the last index comes from the map
        let mut next = vec![first + 1];
        loop {
            let depth = chosen.len();
            let cand = *next.last().unwrap();
            // need room for this index plus (w - depth - 1) more
            if cand + (w - depth) > self.n {
                next.pop();
                chosen.pop();
                if chosen.is_empty() {
                    return None;
                }
                *next.last_mut().unwrap() += 1;
                continue;
            }
            let (prev, cur) = partial.split_at_mut(depth * words);
            let prev = &prev[(depth - 1) * words..];
            let cur = &mut cur[..words];
            for k in 0..words {
                cur[k] = prev[k] ^ self.cols[cand].words()[k];
            }
            if depth + 1 == w - 1 {
                if let Some(j) = self.complete(cur, cand + 1) {
                    let mut out = chosen.clone();
                    out.push(cand);
                    out.push(j);
                    return Some(out);
                }
                *next.last_mut().unwrap() += 1;
            } else {
                chosen.push(cand);
                next.push(cand + 1);
            }
        }
    }
}
