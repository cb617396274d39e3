//! Counting strongly connected digraphs by size and excess, and the random
//! degree-sequence machinery used to bound those counts.

mod brute;
mod counting;
mod degrees;
mod poisson;
mod preheart;

pub use brute::{brute_force_scc_count, strong_digraph_census, MAX_BRUTE_FORCE_VERTICES};
pub use counting::{
    ear_bound, ear_bound_ln, enumeration_constant, ln_rational, preheart_count, rational_to_f64, refined_bound,
    RefinedBound,
};
pub use degrees::{
    estimate_sigma_probability, sample_degree_sequence, AcceptanceStats, DegreeSequence, SamplingMode,
    SigmaEstimate, DEFAULT_REJECTION_CAP,
};
pub use poisson::{TpMoments, TruncatedPoisson};
pub use preheart::{sample_preheart, PreheartConfig};
