use rayon::prelude::*;
use serde::Serialize;

use super::TruncatedPoisson;
use crate::rng::{stream_rng, StreamRng};
use crate::stats::wilson_radius;
use crate::{Error, Result};

pub const DEFAULT_REJECTION_CAP: u64 = 10_000_000;

/// In/out degree sequence on `m` vertices, every entry at least 1, with a
/// target excess `k`: the arc count is meant to be `m + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    pub m: usize,
    pub k: usize,
    pub d_out: Vec<u64>,
    pub d_in: Vec<u64>,
    /// Both sums equal `m + k`.
    pub sigma_holds: bool,
}

impl DegreeSequence {
    pub fn new(k: usize, d_out: Vec<u64>, d_in: Vec<u64>) -> Result<Self> {
        let m = d_out.len();
        if m == 0 || d_in.len() != m {
            return Err(Error::param("degree lists must be nonempty and of equal length"));
        }
        if let Some(i) = (0..m).find(|&i| d_out[i] == 0 || d_in[i] == 0) {
            return Err(Error::param(format!("vertex {i} has a zero degree")));
        }
        let target = (m + k) as u64;
        let sigma_holds = d_out.iter().sum::<u64>() == target && d_in.iter().sum::<u64>() == target;
        Ok(DegreeSequence { m, k, d_out, d_in, sigma_holds })
    }

    /// `T = { i : d⁺(i) + d⁻(i) >= 3 }`, ascending.
    pub fn heart_vertices(&self) -> Vec<usize> {
        (0..self.m).filter(|&i| self.d_out[i] + self.d_in[i] >= 3).collect()
    }

    pub fn m_prime(&self) -> usize {
        self.heart_vertices().len()
    }

    /// `∏ d⁺(i)! d⁻(i)!`: configurations per simple realization.
    pub fn configurations_per_digraph(&self) -> u64 {
        let fact = |d: u64| (1..=d).product::<u64>();
        self.d_out.iter().chain(&self.d_in).map(|&d| fact(d)).product()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SamplingMode {
    /// One i.i.d. draw; `sigma_holds` reports whether it landed on `m + k`.
    Raw,
    /// Rejection sampling until both sums equal `m + k`.
    Conditioned,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AcceptanceStats {
    pub attempts: u64,
    pub accepted: u64,
}

impl AcceptanceStats {
    /// Empirical `P(Σ(λ))`.
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.attempts as f64
    }
}

/// One attempt on its own stream. In-degrees are drawn first; if their sum
/// misses the target the out-degrees are not drawn.
fn attempt(tp: &TruncatedPoisson, m: usize, target: u64, rng: &mut StreamRng, full: bool) -> (Vec<u64>, Vec<u64>, bool) {
    let d_in: Vec<u64> = (0..m).map(|_| tp.sample(rng)).collect();
    let in_ok = d_in.iter().sum::<u64>() == target;
    if !in_ok && !full {
        return (Vec::new(), d_in, false);
    }
    let d_out: Vec<u64> = (0..m).map(|_| tp.sample(rng)).collect();
    let ok = in_ok && d_out.iter().sum::<u64>() == target;
    (d_out, d_in, ok)
}

/// Degrees i.i.d. `TP(λ)`. Attempt `i` reads stream `i` of `seed`.
pub fn sample_degree_sequence(
    m: usize,
    k: usize,
    lambda: f64,
    seed: u64,
    mode: SamplingMode,
    cap: u64,
) -> Result<(DegreeSequence, AcceptanceStats)> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    let tp = TruncatedPoisson::new(lambda)?;
    let target = (m + k) as u64;
    match mode {
        SamplingMode::Raw => {
            let (d_out, d_in, ok) = attempt(&tp, m, target, &mut stream_rng(seed, 0), true);
            let ds = DegreeSequence::new(k, d_out, d_in)?;
            Ok((ds, AcceptanceStats { attempts: 1, accepted: u64::from(ok) }))
        }
        SamplingMode::Conditioned => {
            for i in 0..cap {
                let (d_out, d_in, ok) = attempt(&tp, m, target, &mut stream_rng(seed, i), false);
                if ok {
                    let ds = DegreeSequence::new(k, d_out, d_in)?;
                    debug_assert!(ds.sigma_holds);
                    return Ok((ds, AcceptanceStats { attempts: i + 1, accepted: 1 }));
                }
            }
            Err(Error::Resource(format!("no degree sequence satisfied the sum condition in {cap} attempts")))
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SigmaEstimate {
    pub draws: u64,
    pub hits: u64,
    pub probability: f64,
    pub standard_error: f64,
    pub wilson_radius_99: f64,
}

/// Empirical `P(Σ(λ))` over `draws` independent raw draws, in parallel.
pub fn estimate_sigma_probability(m: usize, k: usize, lambda: f64, draws: u64, seed: u64) -> Result<SigmaEstimate> {
    if m == 0 || draws == 0 {
        return Err(Error::param("m and draws must be positive"));
    }
    let tp = TruncatedPoisson::new(lambda)?;
    let target = (m + k) as u64;
    let hits = (0..draws)
        .into_par_iter()
        .filter(|&i| attempt(&tp, m, target, &mut stream_rng(seed, i), false).2)
        .count() as u64;
    let p = hits as f64 / draws as f64;
    Ok(SigmaEstimate {
        draws,
        hits,
        probability: p,
        standard_error: (p * (1.0 - p) / draws as f64).sqrt(),
        wilson_radius_99: wilson_radius(hits, draws),
    })
}
