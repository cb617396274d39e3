//! Trial-parallel experiments on `D(n, p)` in the critical window.
//!
//! Trial `i` of an experiment with seed `s` draws from stream `(s, i)` (or
//! lanes of it), and per-trial results are gathered in trial order, so
//! every output is a function of `(seed, trials)` alone.

mod conjecture;
mod cycles;

pub use conjecture::{conjecture_experiment, ConjectureReport};
pub use cycles::{
    count_overlapping_cycle_pairs, cycle_window_experiment, excess_experiment, CycleWindowReport, ExcessReport,
    JansonComparison,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{largest_scc_size, sample_digraph_with, sample_marked};
use crate::rng::{stream_rng, StreamRng};
use crate::stats::{median_sorted, quantile_sorted, wilson_radius};
use crate::{critical_p, Error, Result};

/// Default cap on `n * trials`.
pub const DEFAULT_VERTEX_TRIAL_CAP: u64 = 10_000_000_000;

/// Trials are processed in chunks of this size; only one chunk of
/// per-trial results is in memory at a time when streaming.
pub const CHUNK: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    /// Thresholds in units of `n^{1/3}`, ascending.
    pub thresholds: Vec<f64>,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub max_vertex_trials: u64,
}

impl ExperimentConfig {
    pub fn new(n: usize, lambda: f64, trials: u64, seed: u64) -> Self {
        ExperimentConfig {
            n,
            lambda,
            trials,
            seed,
            thresholds: vec![0.5, 1.0, 2.0, 4.0],
            workers: None,
            max_vertex_trials: DEFAULT_VERTEX_TRIAL_CAP,
        }
    }

    pub fn with_thresholds(mut self, thresholds: Vec<f64>) -> Self {
        self.thresholds = thresholds;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers);
        self
    }

    pub fn p(&self) -> f64 {
        critical_p(self.n, self.lambda)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.n < 8 {
            return Err(Error::param(format!("n = {} < 8", self.n)));
        }
        if self.thresholds.windows(2).any(|w| !(w[0] <= w[1])) || self.thresholds.iter().any(|t| !t.is_finite()) {
            return Err(Error::param("thresholds must be finite and sorted ascending"));
        }
        if self.workers == Some(0) {
            return Err(Error::param("worker count must be positive"));
        }
        let p = self.p();
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param(format!("p = {p} is not a probability")));
        }
        check_cap(self.n, self.trials, self.max_vertex_trials)
    }
}

pub(crate) fn check_cap(n: usize, trials: u64, cap: u64) -> Result<()> {
    match (n as u64).checked_mul(trials) {
        Some(v) if v <= cap => Ok(()),
        _ => Err(Error::Resource(format!("n * trials = {n} * {trials} exceeds the cap of {cap} vertex-trials"))),
    }
}

/// Runs `f` on the configured pool.
pub(crate) fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates `trial(i, rng)` for every trial, handing results to `sink` in
/// trial order one chunk at a time.
pub(crate) fn run_chunked<T, F, S>(trials: u64, seed: u64, workers: Option<usize>, trial: F, mut sink: S) -> Result<()>
where
    T: Send,
    F: Fn(u64, &mut StreamRng) -> Result<T> + Sync + Send,
    S: FnMut(u64, Vec<T>) -> Result<()> + Send,
{
    in_pool(workers, || {
        let mut start = 0;
        while start < trials {
            let end = (start + CHUNK).min(trials);
            let chunk = (start..end)
                .into_par_iter()
                .map(|i| trial(i, &mut stream_rng(seed, i)))
                .collect::<Result<Vec<T>>>()?;
            sink(start, chunk)?;
            start = end;
        }
        Ok(())
    })?
}

/// `|C₁|` of one sample of `D(n, p)`.
pub fn sample_largest_scc_size(n: usize, p: f64, rng: &mut StreamRng) -> Result<usize> {
    Ok(largest_scc_size(&sample_digraph_with(n, p, rng)?))
}

/// Streams `(trial, |C₁|)` for every trial in order.
pub fn for_each_largest_scc<S>(cfg: &ExperimentConfig, mut sink: S) -> Result<()>
where
    S: FnMut(u64, usize) -> Result<()> + Send,
{
    cfg.validate()?;
    let (n, p) = (cfg.n, cfg.p());
    run_chunked(
        cfg.trials,
        cfg.seed,
        cfg.workers,
        |_, rng| sample_largest_scc_size(n, p, rng),
        |start, chunk| {
            for (offset, l1) in chunk.into_iter().enumerate() {
                sink(start + offset as u64, l1)?;
            }
            Ok(())
        },
    )
}

/// `|C₁|` for every trial, in trial order.
pub fn largest_scc_samples(cfg: &ExperimentConfig) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(cfg.trials as usize);
    for_each_largest_scc(cfg, |_, l1| {
        out.push(l1);
        Ok(())
    })?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailRecord {
    /// In units of `n^{1/3}`.
    pub threshold: f64,
    pub hits: u64,
    pub probability: f64,
    pub wilson_radius_99: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleSummary {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

impl SampleSummary {
    pub fn of(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        SampleSummary {
            min: sorted[0],
            q1: quantile_sorted(&sorted, 0.25),
            median: median_sorted(&sorted),
            q3: quantile_sorted(&sorted, 0.75),
            max: sorted[sorted.len() - 1],
            mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailEstimate {
    pub n: usize,
    pub lambda: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    /// `P(|C₁| >= A n^{1/3})` for each configured `A`.
    pub records: Vec<TailRecord>,
    /// Of `|C₁| n^{-1/3}`.
    pub summary: SampleSummary,
    /// `|C₁|` per trial, in trial order.
    #[serde(skip)]
    pub largest: Vec<usize>,
}

impl TailEstimate {
    fn scale(&self) -> f64 {
        (self.n as f64).cbrt()
    }

    /// `(hits, probability, radius)` for `|C₁| >= a n^{1/3}`.
    pub fn upper_tail(&self, a: f64) -> (u64, f64, f64) {
        let cut = a * self.scale();
        self.tally(|l| l as f64 >= cut)
    }

    /// `(hits, probability, radius)` for `|C₁| < δ n^{1/3}`.
    pub fn lower_tail(&self, delta: f64) -> (u64, f64, f64) {
        let cut = delta * self.scale();
        self.tally(|l| (l as f64) < cut)
    }

    fn tally(&self, hit: impl Fn(usize) -> bool) -> (u64, f64, f64) {
        let hits = self.largest.iter().filter(|&&l| hit(l)).count() as u64;
        (hits, hits as f64 / self.trials as f64, wilson_radius(hits, self.trials))
    }

    pub fn scaled(&self) -> Vec<f64> {
        let s = self.scale();
        self.largest.iter().map(|&l| l as f64 / s).collect()
    }
}

pub fn estimate_tail(cfg: &ExperimentConfig) -> Result<TailEstimate> {
    let largest = largest_scc_samples(cfg)?;
    Ok(tail_from_samples(cfg, largest))
}

pub fn tail_from_samples(cfg: &ExperimentConfig, largest: Vec<usize>) -> TailEstimate {
    let mut est = TailEstimate {
        n: cfg.n,
        lambda: cfg.lambda,
        p: cfg.p(),
        trials: cfg.trials,
        seed: cfg.seed,
        records: Vec::new(),
        summary: SampleSummary::of(&[0.0]),
        largest,
    };
    est.summary = SampleSummary::of(&est.scaled());
    est.records = cfg
        .thresholds
        .iter()
        .map(|&a| {
            let (hits, probability, wilson_radius_99) = est.upper_tail(a);
            TailRecord { threshold: a, hits, probability, wilson_radius_99 }
        })
        .collect();
    est
}

/// `|C₁|` at each `λ` for every trial, all thresholds of one marked sample
/// at the largest `p`. Row `i` is trial `i`; column `j` is `lambdas[j]`.
/// Since the thresholded digraphs are nested, each row is monotone in `λ`.
pub fn coupled_lambda_samples(n: usize, lambdas: &[f64], trials: u64, seed: u64, workers: Option<usize>) -> Result<Vec<Vec<usize>>> {
    if n < 8 || trials < 1 || lambdas.is_empty() {
        return Err(Error::param("need n >= 8, trials >= 1 and at least one lambda"));
    }
    check_cap(n, trials * lambdas.len() as u64, DEFAULT_VERTEX_TRIAL_CAP)?;
    let ps: Vec<f64> = lambdas.iter().map(|&l| critical_p(n, l)).collect();
    if ps.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::param("some lambda gives p outside [0, 1]"));
    }
    let p_max = ps.iter().copied().fold(0.0, f64::max);
    let mut rows = Vec::with_capacity(trials as usize);
    run_chunked(
        trials,
        seed,
        workers,
        |_, rng| {
            let marked = sample_marked(n, p_max, rng)?;
            ps.iter().map(|&p| Ok(largest_scc_size(&marked.threshold(p)?))).collect::<Result<Vec<_>>>()
        },
        |_, chunk| {
            rows.extend(chunk);
            Ok(())
        },
    )?;
    Ok(rows)
}

/// Medians of `|C₁| n^{-1/3}` per `λ` under the monotone coupling.
pub fn coupled_lambda_medians(n: usize, lambdas: &[f64], trials: u64, seed: u64, workers: Option<usize>) -> Result<Vec<f64>> {
    let rows = coupled_lambda_samples(n, lambdas, trials, seed, workers)?;
    let scale = (n as f64).cbrt();
    Ok((0..lambdas.len())
        .map(|j| {
            let mut col: Vec<f64> = rows.iter().map(|r| r[j] as f64 / scale).collect();
            col.sort_by(f64::total_cmp);
            median_sorted(&col)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::new(7, 0.0, 10, 1).validate().is_err());
        assert!(ExperimentConfig::new(8, 0.0, 0, 1).validate().is_err());
        assert!(ExperimentConfig::new(8, 0.0, 1, 1).with_thresholds(vec![2.0, 1.0]).validate().is_err());
        let mut cfg = ExperimentConfig::new(1000, 0.0, 100, 1);
        cfg.max_vertex_trials = 99_999;
        assert!(matches!(cfg.validate(), Err(Error::Resource(_))));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let cfg = ExperimentConfig::new(2000, 0.0, 300, 9);
        let one = estimate_tail(&cfg.clone().with_workers(1)).unwrap();
        let many = estimate_tail(&cfg.with_workers(4)).unwrap();
        assert_eq!(one, many);
        assert_eq!(one.largest, many.largest);
    }

    #[test]
    fn tail_records_monotone_and_exact() {
        let cfg = ExperimentConfig::new(1000, 0.0, 500, 3).with_thresholds(vec![0.0, 0.2, 0.5, 1.0, 3.0, 100.0]);
        let est = estimate_tail(&cfg).unwrap();
        assert_eq!(est.records[0].hits, 500);
        assert_eq!(est.records.last().unwrap().hits, 0);
        for w in est.records.windows(2) {
            assert!(w[0].probability >= w[1].probability);
        }
        for r in &est.records {
            assert!(r.hits <= est.trials);
            assert_eq!(r.probability, r.hits as f64 / est.trials as f64);
        }
    }

    #[test]
    fn coupled_rows_monotone() {
        let rows = coupled_lambda_samples(3000, &[-2.0, 0.0, 2.0], 200, 5, None).unwrap();
        for r in rows {
            assert!(r[0] <= r[1] && r[1] <= r[2]);
        }
    }
}
