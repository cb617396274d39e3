//! Component structure of the random digraph `D(n, p)` in the critical window
//! `p = 1/n + λ n^{-4/3}`.
//!
//! The crate is split along the lines of the underlying argument:
//!
//! * [`digraph`]: representation, sampling, strongly connected components,
//!   hearts, ear decompositions and cycle censuses.
//! * [`enumeration`]: exact and bounded counts of strongly connected digraphs
//!   by size and excess, truncated Poisson degrees and the preheart
//!   configuration model.
//! * [`exploration`]: the out-component exploration process and simulators for
//!   its auxiliary random walks.
//! * [`bounds`]: closed-form evaluators for every explicit bound and constant.
//! * [`montecarlo`]: trial-parallel experiments tying the above together.
//!
//! Every randomized entry point takes an explicit 64-bit seed. Trials draw from
//! independent counter-based streams (see [`rng`]), so results never depend on
//! the number of worker threads.

// `!(x > 0.0)` style guards reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod digraph;
pub mod enumeration;
mod error;
pub mod exploration;
pub mod montecarlo;
pub mod rng;
pub mod stats;

pub use digraph::{Digraph, MultiDigraph, SccDecomposition};
pub use error::{Error, Result};

/// Edge probability `1/n + λ n^{-4/3}` of the critical window.
pub fn critical_p(n: usize, lambda: f64) -> f64 {
    let n = n as f64;
    1.0 / n + lambda * n.powf(-4.0 / 3.0)
}
