mod common;

use common::{mutual_reach_components, ordered_pairs};
use dnp_core::bounds::{expected_cycles_of_length, upper_tail_bound, BoundParams};
use dnp_core::montecarlo::{
    conjecture_experiment, coupled_lambda_samples, cycle_window_experiment, estimate_tail, excess_experiment,
    ExperimentConfig,
};
use dnp_core::stats::ks_statistic;
use dnp_core::Digraph;
use serde_json::Value;

const PILOT: &str = include_str!("fixtures/tail_pilot_n46656_seed101.json");

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Probability that `D(n, p)` is acyclic, by inclusion-exclusion over the
/// set of vertices with no in-arcs.
fn acyclic_probability(n: usize, p: f64) -> f64 {
    let q = 1.0 - p;
    let mut a = vec![1.0f64; n + 1];
    for m in 1..=n {
        a[m] = (1..=m)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * binomial(m as u64, k as u64) * q.powi((k * (m - 1)) as i32) * a[m - k]
            })
            .sum();
    }
    a[n]
}

#[test]
fn acyclic_recurrence_matches_enumeration_at_three() {
    let (n, p) = (3, 1.0f64 / 3.0);
    let pairs = ordered_pairs(n);
    let mut cyclic = 0.0;
    for mask in 0u32..1 << pairs.len() {
        let k = mask.count_ones() as i32;
        let d = Digraph::from_arcs(n, (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i])).unwrap();
        if mutual_reach_components(&d).iter().any(|c| c.len() >= 2) {
            cyclic += p.powi(k) * (1.0 - p).powi(pairs.len() as i32 - k);
        }
    }
    assert!((cyclic - (1.0 - acyclic_probability(n, p))).abs() < 1e-14);
    assert!((acyclic_probability(2, 0.3) - (1.0 - 0.09)).abs() < 1e-15);
}

#[test]
fn small_tail_matches_exact_probability() {
    // n = 8: n^{1/3} = 2, so threshold 1 asks for a component of size >= 2.
    let cfg = ExperimentConfig::new(8, 0.0, 10_000, 31).with_thresholds(vec![1.0]);
    let est = estimate_tail(&cfg).unwrap();
    let exact = 1.0 - acyclic_probability(8, 1.0 / 8.0);
    let rec = &est.records[0];
    assert!((rec.probability - exact).abs() <= rec.wilson_radius_99, "{} vs {exact}", rec.probability);
}

fn pilot_band(key: &str, threshold: f64) -> (f64, f64) {
    let v: Value = serde_json::from_str(PILOT).unwrap();
    let rec = v["result"][key]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["threshold"].as_f64() == Some(threshold))
        .unwrap();
    (rec["probability"].as_f64().unwrap(), rec["wilson_radius_99"].as_f64().unwrap())
}

#[test]
fn window_occupancy_at_46656() {
    let run = |seed| {
        let cfg = ExperimentConfig::new(46_656, 0.0, 2000, seed).with_thresholds(vec![0.5, 1.0, 2.0, 4.0]);
        estimate_tail(&cfg).unwrap()
    };
    let est = run(202);

    // Regression bands: the pilot run and this run must agree within their
    // combined 99% radii.
    for rec in &est.records {
        let (p0, r0) = pilot_band("records", rec.threshold);
        assert!((rec.probability - p0).abs() <= r0 + rec.wilson_radius_99, "A = {}", rec.threshold);
    }
    for delta in [0.1, 0.5] {
        let (hits, prob, radius) = est.lower_tail(delta);
        let (p0, r0) = pilot_band("lower_records", delta);
        assert!((prob - p0).abs() <= r0 + radius, "delta = {delta}, hits {hits}");
    }

    let (_, low, low_r) = est.lower_tail(0.01);
    assert!(low <= 0.2 + 3.0 * low_r);
    let (_, high, high_r) = est.upper_tail(4.0);
    assert!(high <= 0.5 && high > 0.001, "{high}");
    let p = BoundParams::default();
    assert!(high <= upper_tail_bound(4.0, 0.0, p.zeta, p.eta) + 3.0 * high_r);

    // Two independent samples from one law.
    let other = run(303);
    let ks = ks_statistic(&est.scaled(), &other.scaled());
    assert!(ks < 0.06, "KS {ks}");
}

#[test]
fn cycle_window_mean_matches_exact_at_one_million() {
    let r = cycle_window_experiment(1_000_000, 0.04, 0.0, 500, 41).unwrap();
    assert_eq!(r.window, (4, 20));
    let harmonic: f64 = (4..=20).map(|m| 1.0 / m as f64).sum();
    assert!((r.exact_mean - harmonic).abs() < 1e-3, "{}", r.exact_mean);
    assert!((r.mean_x - r.exact_mean).abs() <= 3.0 * r.se_x, "{} vs {}", r.mean_x, r.exact_mean);
    assert!(r.p_zero <= 0.4 + 3.0 * r.p_zero_radius_99);
}

#[test]
fn single_length_expectation() {
    let (n, m) = (10_000u64, 5u64);
    let e = expected_cycles_of_length(n, 1.0 / n as f64, m);
    assert!(e >= (1.0 - (m * m) as f64 / n as f64) / m as f64);
    assert!(e <= 1.0 / m as f64);
}

#[test]
fn critical_components_are_barely_complex() {
    let r = excess_experiment(1_000_000, 0.0, 200, 43).unwrap();
    assert_eq!(r.structural_violations, 0);
    assert!(r.p_cycles_over <= 0.25, "{}", r.p_cycles_over);
    assert!(r.median_excess == 0.0 || r.median_excess == 1.0, "{}", r.median_excess);
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let in_pool = |threads: usize, f: &(dyn Fn() -> String + Sync)| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(f)
    };
    let cycles = || format!("{:?}", cycle_window_experiment(27_000, 0.1, 0.0, 300, 5).unwrap());
    let excess = || format!("{:?}", excess_experiment(5000, 1.0, 300, 6).unwrap());
    let conj = || format!("{:?}", conjecture_experiment(10_000, 0.0, 100, 7).unwrap().ks);
    let tail = || format!("{:?}", estimate_tail(&ExperimentConfig::new(5000, -1.0, 3000, 8)).unwrap().largest);
    for f in [&cycles as &(dyn Fn() -> String + Sync), &excess, &conj, &tail] {
        assert_eq!(in_pool(1, f), in_pool(4, f));
    }
    let one = coupled_lambda_samples(2000, &[-2.0, 0.0, 2.0], 500, 9, Some(1)).unwrap();
    let four = coupled_lambda_samples(2000, &[-2.0, 0.0, 2.0], 500, 9, Some(4)).unwrap();
    assert_eq!(one, four);
}

#[test]
fn coupled_sizes_grow_with_lambda_in_every_trial() {
    let rows = coupled_lambda_samples(3000, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1000, 10, None).unwrap();
    for row in &rows {
        assert!(row.windows(2).all(|w| w[0] <= w[1]), "{row:?}");
    }
}

#[test]
fn conjecture_report_is_a_distance() {
    let r = conjecture_experiment(10_000, 0.0, 200, 12).unwrap();
    assert!((0.0..=1.0).contains(&r.ks));
    assert_eq!(r.directed.len(), 200);
    assert!(r.products.iter().all(|&x| x > 0.0));
}
