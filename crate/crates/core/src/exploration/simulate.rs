//! Abstract simulations of the exploration walk and the two comparison
//! processes used to bound its early death:
//!
//! * exact: `X_t = X_{t-1} - 1 + η_t`, `η_t ~ Bin(N_{t-1}, p)` (restarting
//!   from `η_t` after a zero),
//! * lower auxiliary: `X'_t = X'_{t-1} - 1 + W_t`, `W_t ~ Bin(n - t - 10m, p)`,
//! * upper martingale: `M_t = M_{t-1} - 1 + B_t`, `B_t ~ Bin(n, p)`.
//!
//! Binomial variates come from `rand_distr::Binomial`, which is exact
//! (inversion for small means, BTPE otherwise).

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;

use crate::rng::stream_rng;
use crate::stats::wilson_radius;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessVariant {
    /// Event: `τ₁ < ξ`.
    Exact,
    /// Event: `τ₁' < ξ`.
    LowerAux,
    /// Event: `τ₂' < ξ`, the first time `M_t > 10m`.
    UpperMartingale,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauEstimate {
    pub variant: ProcessVariant,
    pub m: u64,
    pub n: u64,
    pub p: f64,
    pub c: f64,
    /// `ξ = c sqrt(m n)`.
    pub xi: f64,
    pub trials: u64,
    pub hits: u64,
    pub probability: f64,
    pub wilson_radius_99: f64,
    /// Mean of `min(stopping time, ceil ξ)`.
    pub mean_stop_time: f64,
    /// Mean process value at the stop.
    pub mean_final_value: f64,
}

#[inline]
fn binomial<R: Rng + ?Sized>(trials: i64, p: f64, rng: &mut R) -> i64 {
    if trials <= 0 || p == 0.0 {
        return 0;
    }
    Binomial::new(trials as u64, p).expect("valid binomial").sample(rng) as i64
}

/// Runs one trial. Returns (event happened, stop time, value at stop).
fn run_trial<R: Rng + ?Sized>(variant: ProcessVariant, m: i64, n: i64, p: f64, xi: f64, rng: &mut R) -> (bool, u64, i64) {
    let mut x = m;
    let mut t: i64 = 0;
    loop {
        t += 1;
        if (t as f64) >= xi {
            return (false, t as u64 - 1, x);
        }
        match variant {
            ProcessVariant::Exact => {
                let zero = i64::from(x == 0);
                let potential = (n - x - (t - 1) - zero).max(0);
                let eta = binomial(potential, p, rng);
                x = if x > 0 { x - 1 + eta } else { eta };
                if x == 0 {
                    return (true, t as u64, x);
                }
            }
            ProcessVariant::LowerAux => {
                x += binomial(n - t - 10 * m, p, rng) - 1;
                if x <= 0 {
                    return (true, t as u64, x);
                }
            }
            ProcessVariant::UpperMartingale => {
                x += binomial(n, p, rng) - 1;
                if x > 10 * m {
                    return (true, t as u64, x);
                }
            }
        }
    }
}

/// Empirical probability that the chosen process stops before
/// `ξ = c sqrt(m n)`, over `trials` independent runs from `X_0 = m`.
pub fn simulate_process_tau(
    m: u64,
    n: u64,
    p: f64,
    variant: ProcessVariant,
    c: f64,
    trials: u64,
    seed: u64,
) -> Result<TauEstimate> {
    if !(c > 0.0 && c < std::f64::consts::SQRT_2) {
        return Err(Error::param(format!("c = {c} outside (0, sqrt 2)")));
    }
    if m < 1 || m > n {
        return Err(Error::param(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if trials < 1 {
        return Err(Error::param("trials must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p = {p} is not a probability")));
    }
    let xi = c * ((m as f64) * (n as f64)).sqrt();
    let (hits, stop_sum, value_sum) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let (hit, stop, value) = run_trial(variant, m as i64, n as i64, p, xi, &mut stream_rng(seed, i));
            (u64::from(hit), stop as f64, value as f64)
        })
        .reduce(|| (0, 0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let tf = trials as f64;
    Ok(TauEstimate {
        variant,
        m,
        n,
        p,
        c,
        xi,
        trials,
        hits,
        probability: hits as f64 / tf,
        wilson_radius_99: wilson_radius(hits, trials),
        mean_stop_time: stop_sum / tf,
        mean_final_value: value_sum / tf,
    })
}

/// `M_0, ..., M_steps` of the upper martingale.
pub fn martingale_path<R: Rng + ?Sized>(m: u64, n: u64, p: f64, steps: usize, rng: &mut R) -> Vec<i64> {
    let mut path = Vec::with_capacity(steps + 1);
    let mut x = m as i64;
    path.push(x);
    for _ in 0..steps {
        x += binomial(n as i64, p, rng) - 1;
        path.push(x);
    }
    path
}

/// Exact and auxiliary walks driven by shared variates.
#[derive(Clone, Debug)]
pub struct CoupledPath {
    pub exact: Vec<i64>,
    pub aux: Vec<i64>,
    /// First `t` with `X_t > 10m`, if reached.
    pub tau2: Option<usize>,
}

/// Couples the exact walk with the auxiliary walk by splitting
/// `η_t = W_t + W'_t`: `W_t ~ Bin(n - t - 10m, p)` drives both and
/// `W'_t ~ Bin(N_{t-1} - (n - t - 10m), p)` only the exact walk, so each
/// marginal law is exact and `X'_t <= X_t` while `X_{t-1} <= 10m`.
/// Stops after `steps` or at `τ₂`.
pub fn coupled_pair_path<R: Rng + ?Sized>(m: u64, n: u64, p: f64, steps: usize, rng: &mut R) -> CoupledPath {
    let (m, n) = (m as i64, n as i64);
    let mut x = m;
    let mut aux = m;
    let mut exact_path = vec![x];
    let mut aux_path = vec![aux];
    for t in 1..=steps as i64 {
        let potential = (n - x - (t - 1) - i64::from(x == 0)).max(0);
        let shared_trials = (n - t - 10 * m).clamp(0, potential);
        let w = binomial(shared_trials, p, rng);
        let w_extra = binomial(potential - shared_trials, p, rng);
        let eta = w + w_extra;
        x = if x > 0 { x - 1 + eta } else { eta };
        aux += w - 1;
        exact_path.push(x);
        aux_path.push(aux);
        if x > 10 * m {
            return CoupledPath { exact: exact_path, aux: aux_path, tau2: Some(t as usize) };
        }
    }
    CoupledPath { exact: exact_path, aux: aux_path, tau2: None }
}
