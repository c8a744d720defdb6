//! Inconsistency of pairwise comparison matrices under group aggregation.
//!
//! * [`matrix`]: positive reciprocal matrices, priority vectors, and the
//!   transformations behind the axioms (permutation, intensification,
//!   single-entry perturbation).
//! * [`indices`]: CI, GCI, CI*, I_CD, K, RE, HCI, GW, NI and I_M.
//! * [`aggregation`]: weighted geometric mean of several matrices and
//!   two-matrix sweeps along the weight simplex.
//! * [`boundary`]: lower / upper / strong upper bound checks, randomized
//!   counterexample search, the spectral-radius inequality, and the summary
//!   table.
//! * [`axioms`]: sampled checks of the five axioms.
//!
//! Randomized suites run on rayon when the `parallel` feature is enabled
//! (the default). Every trial seeds its own generator stream, so results are
//! identical with and without the feature.

pub mod aggregation;
pub mod axioms;
pub mod boundary;
pub mod eigen;
pub mod error;
pub mod exec;
pub mod generate;
pub mod indices;
pub mod io;
pub mod matrix;
pub mod witnesses;

pub use aggregation::{aggregate, sweep_pair, SimplexWeights, SweepCurve};
pub use boundary::{BoundaryProperty, BoundaryVerdict, CounterexampleRecord, SearchConfig};
pub use error::{PcmError, Result};
pub use exec::Execution;
pub use indices::{evaluate, IndexKind, IndexValue};
pub use matrix::{PairwiseComparisonMatrix, Permutation, PositiveMatrix, PriorityVector, TriadProduct};
