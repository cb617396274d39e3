//! Counter-based random streams.
//!
//! A stream is a ChaCha8 keystream keyed by the experiment seed and selected by
//! a 64-bit stream id. Trial `i` of an experiment always reads stream `i`
//! (or a sub-stream derived from it), so the values a trial sees are a pure
//! function of `(seed, trial)` and never of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Random stream `stream` under key `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Stream for sub-task `lane` (< 16) of trial `trial`.
pub fn lane_rng(seed: u64, trial: u64, lane: u64) -> StreamRng {
    debug_assert!(lane < 16);
    stream_rng(seed, (trial << 4) | lane)
}
