use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{check_cap, run_chunked, DEFAULT_VERTEX_TRIAL_CAP};
use crate::bounds::{cycle_window, expected_cycle_count, janson_delta_upper, janson_mu_lower, JansonVariant};
use crate::digraph::{count_cycles_in, count_cycles_up_to, for_each_cycle, largest_scc, sample_digraph_with, Digraph};
use crate::stats::{median_sorted, wilson_radius};
use crate::{critical_p, Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JansonComparison {
    pub mu_lower: f64,
    pub delta_literal: f64,
    pub delta_n_corrected: f64,
    /// `e^{-μ + Δ}` with each `Δ`.
    pub bound_literal: f64,
    pub bound_n_corrected: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleWindowReport {
    pub n: usize,
    pub delta: f64,
    pub lambda: f64,
    pub p: f64,
    pub window: (usize, usize),
    pub trials: u64,
    pub seed: u64,
    /// Trials with no cycle in the window.
    pub zero_hits: u64,
    pub p_zero: f64,
    pub p_zero_radius_99: f64,
    pub mean_x: f64,
    /// Standard error of `mean_x`.
    pub se_x: f64,
    /// `Σ C(n, m)(m-1)! p^m` over the window.
    pub exact_mean: f64,
    /// `2 δ^{1/2}`.
    pub theorem_bound: f64,
    pub janson: JansonComparison,
}

/// Counts cycles with length in `[⌈δ n^{1/3}⌉, ⌊δ^{1/2} n^{1/3}⌋]` per trial.
/// The lower end must be at least 2 (loops do not exist).
pub fn cycle_window_experiment(n: usize, delta: f64, lambda: f64, trials: u64, seed: u64) -> Result<CycleWindowReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta = {delta} outside (0, 1)")));
    }
    if trials < 1 {
        return Err(Error::param("trials must be at least 1"));
    }
    let (lo, hi) = cycle_window(delta, n as u64);
    if lo < 2 {
        return Err(Error::param(format!("window starts at {lo}; need ceil(delta n^(1/3)) >= 2")));
    }
    if lo > hi {
        return Err(Error::param(format!("cycle window [{lo}, {hi}] is empty")));
    }
    check_cap(n, trials, DEFAULT_VERTEX_TRIAL_CAP)?;
    let p = critical_p(n, lambda);
    let (lo, hi) = (lo as usize, hi as usize);
    let mut counts = Vec::with_capacity(trials as usize);
    run_chunked(
        trials,
        seed,
        None,
        |_, rng| {
            let d = sample_digraph_with(n, p, rng)?;
            Ok(count_cycles_up_to(&d, hi).in_range(lo, hi))
        },
        |_, chunk| {
            counts.extend(chunk);
            Ok(())
        },
    )?;
    let tf = trials as f64;
    let zero_hits = counts.iter().filter(|&&x| x == 0).count() as u64;
    let mean_x = counts.iter().sum::<u64>() as f64 / tf;
    let var = if trials > 1 {
        counts.iter().map(|&x| (x as f64 - mean_x).powi(2)).sum::<f64>() / (tf - 1.0)
    } else {
        0.0
    };
    let mu_lower = janson_mu_lower(delta, lambda, n as u64)?;
    let delta_literal = janson_delta_upper(delta, lambda, n as u64, JansonVariant::Literal)?;
    let delta_n_corrected = janson_delta_upper(delta, lambda, n as u64, JansonVariant::NCorrected)?;
    Ok(CycleWindowReport {
        n,
        delta,
        lambda,
        p,
        window: (lo, hi),
        trials,
        seed,
        zero_hits,
        p_zero: zero_hits as f64 / tf,
        p_zero_radius_99: wilson_radius(zero_hits, trials),
        mean_x,
        se_x: (var / tf).sqrt(),
        exact_mean: expected_cycle_count(n as u64, p, lo as u64, hi as u64),
        theorem_bound: 2.0 * delta.sqrt(),
        janson: JansonComparison {
            mu_lower,
            delta_literal,
            delta_n_corrected,
            bound_literal: (-mu_lower + delta_literal).exp(),
            bound_n_corrected: (-mu_lower + delta_n_corrected).exp(),
        },
    })
}

/// Unordered pairs of distinct cycles with length in `[lo, hi]` that share
/// at least one arc.
pub fn count_overlapping_cycle_pairs(d: &Digraph, lo: usize, hi: usize) -> u64 {
    let mut cycles: Vec<HashSet<(usize, usize)>> = Vec::new();
    let _ = for_each_cycle(d, hi, |c| {
        if c.len() >= lo {
            cycles.push((0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect());
        }
        ControlFlow::Continue(())
    });
    let mut pairs = 0;
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !cycles[i].is_disjoint(&cycles[j]) {
                pairs += 1;
            }
        }
    }
    pairs
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExcessReport {
    pub n: usize,
    pub lambda: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// `⌊n^{1/3} log log n⌋`.
    pub length_cap: usize,
    /// `n^{1/6}`.
    pub cycle_threshold: f64,
    /// Excess of a largest strongly connected component, per trial.
    pub largest_excess: Vec<i64>,
    /// Cycles of length at most `length_cap`, per trial.
    pub cycle_counts: Vec<u64>,
    pub cycles_over_hits: u64,
    pub p_cycles_over: f64,
    pub p_cycles_over_radius_99: f64,
    pub excess_over_hits: u64,
    pub p_excess_over: f64,
    pub median_excess: f64,
    pub mean_cycles: f64,
    /// Trials whose largest component of excess `k` had fewer than `k + 1`
    /// cycles. Always zero for a correct implementation.
    pub structural_violations: u64,
}

/// Per trial: the excess of the largest component, the number of cycles up
/// to the length cap, and a check that the largest component holds at least
/// `k + 1` cycles.
pub fn excess_experiment(n: usize, lambda: f64, trials: u64, seed: u64) -> Result<ExcessReport> {
    if n < 1000 {
        return Err(Error::param(format!("n = {n} < 1000")));
    }
    if trials < 1 {
        return Err(Error::param("trials must be at least 1"));
    }
    check_cap(n, trials, DEFAULT_VERTEX_TRIAL_CAP)?;
    let p = critical_p(n, lambda);
    let nf = n as f64;
    let length_cap = (nf.cbrt() * nf.ln().ln()).floor() as usize;
    let mut rows = Vec::with_capacity(trials as usize);
    run_chunked(
        trials,
        seed,
        None,
        |_, rng| {
            let d = sample_digraph_with(n, p, rng)?;
            let (comp, k) = largest_scc(&d);
            let ok = if k < 0 {
                true
            } else {
                let need = k as u64 + 1;
                count_cycles_in(&d, &comp, comp.len(), need) >= need
            };
            Ok((k, count_cycles_up_to(&d, length_cap).total(), ok))
        },
        |_, chunk| {
            rows.extend(chunk);
            Ok(())
        },
    )?;
    let tf = trials as f64;
    let cycle_threshold = nf.powf(1.0 / 6.0);
    let largest_excess: Vec<i64> = rows.iter().map(|r| r.0).collect();
    let cycle_counts: Vec<u64> = rows.iter().map(|r| r.1).collect();
    let cycles_over_hits = cycle_counts.iter().filter(|&&c| c as f64 > cycle_threshold).count() as u64;
    let excess_over_hits = largest_excess.iter().filter(|&&k| k as f64 >= cycle_threshold).count() as u64;
    let mut sorted: Vec<f64> = largest_excess.iter().map(|&k| k as f64).collect();
    sorted.sort_by(f64::total_cmp);
    Ok(ExcessReport {
        n,
        lambda,
        p,
        trials,
        seed,
        length_cap,
        cycle_threshold,
        cycles_over_hits,
        p_cycles_over: cycles_over_hits as f64 / tf,
        p_cycles_over_radius_99: wilson_radius(cycles_over_hits, trials),
        excess_over_hits,
        p_excess_over: excess_over_hits as f64 / tf,
        median_excess: median_sorted(&sorted),
        mean_cycles: cycle_counts.iter().sum::<u64>() as f64 / tf,
        structural_violations: rows.iter().filter(|r| !r.2).count() as u64,
        largest_excess,
        cycle_counts,
    })
}
