//! Structural invariants of the graph on the nonzero nonunit residues of
//! Z_n for squarefree n, computed in closed form from the support-set
//! model and certified against brute-force oracles on the explicit
//! residue graph.
//!
//! - [`arithmetic`]: validated squarefree factorization and totients.
//! - [`support_model`]: layers, class sizes, degrees, connectivity,
//!   distances, and the linear connectivity recurrence.
//! - [`explicit_graph`]: the materialized residue graph (ground truth).
//! - [`oracles`]: max-flow connectivity, BFS metrics, cut certificates.
//! - [`cut_experiments`]: separator demonstrations and seeded deletion
//!   trials.
//! - [`report`] / [`cli`]: rendering and the command drivers.
//!
//! See the crate examples for one runnable program per capability.

#![forbid(unsafe_code)]

pub mod arithmetic;
pub mod cli;
pub mod cut_experiments;
pub mod explicit_graph;
pub mod oracles;
pub mod report;
pub mod support_model;

pub use arithmetic::{euler_phi, factor_squarefree, Modulus};
pub use explicit_graph::{build_graph, ExplicitGraph};
pub use support_model::{build_quotient, kappa, QuotientModel, SupportSet};
