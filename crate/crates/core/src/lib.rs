//! Exact shortest-path algorithms for structured graphs, instrumented with a
//! simulated quantum query-cost model.
//!
//! Every algorithm in this crate computes its result exactly on a classical
//! machine. What makes the crate a laboratory rather than a plain graph
//! library is the [`ledger::CostLedger`]: each inner minimum-finding or
//! search step is routed through [`qmodel`], which scans the domain
//! classically, returns the true answer, and charges the ledger the number of
//! queries an ideal Grover-style search would have spent (`ceil(c * sqrt(N))`
//! for a domain of size `N`). Coarser subroutines whose query bounds are
//! known in closed form (quantum Dijkstra, threshold products) charge those
//! bounds as labelled analytic entries instead of simulating every step.
//!
//! The point of the exercise is twofold. Correctness: every pipeline output
//! is checked against brute-force oracles in [`oracle`]. Complexity: the
//! charged query counts follow the predicted growth laws, which the
//! [`fitting`] module verifies by regressing `ln(queries)` on `ln(n)` over
//! geometric grids of instance sizes.
//!
//! Modules build on each other in roughly this order:
//!
//! * [`weight`], [`matrix`]: extended real weights, dense weight matrices,
//!   packed bit matrices with boolean multiplication kernels.
//! * [`graph`], [`gen`], [`oracle`]: weighted instances (optionally carrying
//!   point geometry), deterministic generators, brute-force reference
//!   implementations.
//! * [`ledger`], [`qmodel`]: cost accounting and the simulated Grover
//!   primitives (`qmin`, `qsearch`, `qmin_filtered`) with optional failure
//!   injection.
//! * [`partition`], [`matprod`], [`sssp`], [`hitting`], [`params`]: the
//!   structured matrix products (bucketed boolean-min, geometric star,
//!   threshold), single-source routines, hitting-set sampling, and closed-form
//!   parameter selection.
//! * [`apsp`]: the end-to-end pipelines (node-weighted, geometric,
//!   bounded-weight, few-distinct-weights, nondecreasing paths, minimum
//!   triangle).
//! * [`experiment`], [`fitting`], [`acceptance`]: run records, slope fits,
//!   and the acceptance checks wired into the test suite and the CLI.

pub mod acceptance;
pub mod apsp;
pub mod error;
pub mod experiment;
pub mod fitting;
pub mod gen;
pub mod graph;
pub mod hitting;
pub mod ledger;
pub mod matprod;
pub mod matrix;
pub mod oracle;
pub mod params;
pub mod partition;
pub mod qmodel;
pub mod sssp;
pub mod weight;

pub use error::{Error, Result};
pub use weight::Weight;
