use serde::Serialize;

use super::{check_cap, run_chunked, DEFAULT_VERTEX_TRIAL_CAP};
use crate::digraph::largest_component_size;
use crate::rng::lane_rng;
use crate::stats::{ks_statistic, median_sorted};
use crate::{critical_p, Error, Result};

/// Paired samples for comparing `|C₁(D)| n^{-1/3}` with the product of two
/// independent copies of `|C₁(G)| n^{-2/3}`. Exploratory only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub lambda: f64,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub ks: f64,
    pub directed_median: f64,
    pub product_median: f64,
    #[serde(skip)]
    pub directed: Vec<f64>,
    #[serde(skip)]
    pub products: Vec<f64>,
}

/// Lane 0 of each trial samples the digraph; lanes 1 and 2 sample the two
/// undirected graphs.
pub fn conjecture_experiment(n: usize, lambda: f64, trials: u64, seed: u64) -> Result<ConjectureReport> {
    if n < 10_000 {
        return Err(Error::param(format!("n = {n} < 10000")));
    }
    if trials < 1 {
        return Err(Error::param("trials must be at least 1"));
    }
    check_cap(n, 3 * trials, DEFAULT_VERTEX_TRIAL_CAP)?;
    let p = critical_p(n, lambda);
    let nf = n as f64;
    let mut pairs = Vec::with_capacity(trials as usize);
    run_chunked(
        trials,
        seed,
        None,
        |i, _| {
            let directed = super::sample_largest_scc_size(n, p, &mut lane_rng(seed, i, 0))? as f64 / nf.cbrt();
            let x1 = largest_component_size(n, p, &mut lane_rng(seed, i, 1))? as f64;
            let x2 = largest_component_size(n, p, &mut lane_rng(seed, i, 2))? as f64;
            Ok((directed, x1 * x2 / nf.powf(4.0 / 3.0)))
        },
        |_, chunk| {
            pairs.extend(chunk);
            Ok(())
        },
    )?;
    let (directed, products): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let median = |v: &[f64]| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        median_sorted(&s)
    };
    Ok(ConjectureReport {
        n,
        lambda,
        p,
        trials,
        seed,
        ks: ks_statistic(&directed, &products),
        directed_median: median(&directed),
        product_median: median(&products),
        directed,
        products,
    })
}
