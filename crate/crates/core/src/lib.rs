//! Girth-8 bipartite Tanner graphs: constructions, exact verifiers and
//! lower bounds on the number of check nodes.
//!
//! * [`matrix`] holds the sparse parity-check matrix and binary vectors.
//! * [`gf2`] does word-packed elimination (rank, nullspace).
//! * [`io`] reads and writes alist, dense text and CSV edge lists.
//! * [`analysis`] computes girth, degree profile and minimum distance.
//! * [`bounds`] evaluates check-node lower bounds for girths 8 to 16.
//! * [`regular`] builds the `(w_c, w_r)`-regular girth-8 family.
//! * [`apfree`] and [`semiregular`] build the 3-AP-free column-weight-3 family.

pub mod analysis;
pub mod apfree;
pub mod bounds;
mod error;
pub mod gf2;
pub mod io;
pub mod matrix;
pub mod regular;
pub mod semiregular;

pub use analysis::{DistanceKind, DistanceResult, Girth, GraphStats, Strategy};
pub use apfree::ApFreeSequence;
pub use bounds::{BoundQuery, BoundReport, GirthPolynomial};
pub use error::{Error, Result};
pub use matrix::{BinaryVector, ParityCheckMatrix};
pub use regular::{CharacteristicArray, CheckRole, LabeledGraph};
pub use semiregular::SemiRegularSpec;
