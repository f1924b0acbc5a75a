//! Exact and asymptotic tools for induced regular subgraphs of the random
//! graph G(n, 1/2).
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bit-row graphs, degree sequences, graph6, seeded G(n, p).
//! * [`enumeration`]: exact big-integer counts of labeled graphs by degree
//!   sequence, the constrained count N(d), exact p_k and p_{k,i}, brute-force
//!   oracles and an exact-uniform regular graph sampler.
//! * [`asymptotics`]: log-domain closed-form estimates.
//! * [`moments`]: first/second moment computations and the tail sum.
//! * [`search`]: largest induced regular subgraph of a concrete graph.
//! * [`experiments`]: reproducible sweeps with CSV output.

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod math;
pub mod moments;
pub mod search;

pub use error::{Error, Result};
pub use graph::{DegreeSequence, Graph, Seed};
