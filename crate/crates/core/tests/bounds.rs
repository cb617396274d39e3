use dnp_core::bounds::{
    chernoff_g, component_prob_bound, cycle_window, expected_cycle_count, expected_cycles_of_length,
    expected_large_components, harmonic_cycle_bound, janson_delta_upper, janson_mu_lower, lower_tail_bound,
    tau1_bound, upper_tail_bound, JansonVariant, LargeComponentsMode,
};
use dnp_core::digraph::sample_digraph;
use dnp_core::montecarlo::count_overlapping_cycle_pairs;

const REFERENCE: &str = include_str!("fixtures/bounds_reference.csv");

fn evaluate_row(name: &str, a: &[f64]) -> f64 {
    match name {
        "lower_tail" => lower_tail_bound(a[0], 0.0).unwrap().0,
        "upper_tail" => upper_tail_bound(a[0], a[1], a[2], a[3]),
        "janson_literal" => janson_delta_upper(a[0], a[1], a[2] as u64, JansonVariant::Literal).unwrap(),
        "janson_corrected" => janson_delta_upper(a[0], a[1], a[2] as u64, JansonVariant::NCorrected).unwrap(),
        "janson_mu" => janson_mu_lower(a[0], a[1], a[2] as u64).unwrap(),
        "tau1" => tau1_bound(a[0] as u64, a[1] as u64, a[2]).unwrap().0,
        "chernoff" => chernoff_g(a[0], a[1]).unwrap(),
        "cycles_of_length" => expected_cycles_of_length(a[0] as u64, a[1], a[2] as u64),
        "large_closed" => {
            expected_large_components(a[0], 0, a[1], a[2], a[3], a[4], LargeComponentsMode::ClosedForm).unwrap().value
        }
        "harmonic" => harmonic_cycle_bound(a[0], a[1]).unwrap(),
        other => panic!("unknown evaluator {other}"),
    }
}

#[test]
fn evaluators_match_extended_precision_reference() {
    let mut per_name = std::collections::BTreeMap::<&str, usize>::new();
    for line in REFERENCE.lines().filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        let name = fields[0];
        let args: Vec<f64> = fields[1..fields.len() - 1].iter().map(|s| s.parse().unwrap()).collect();
        let want: f64 = fields[fields.len() - 1].parse().unwrap();
        let got = evaluate_row(name, &args);
        let rel = ((got - want) / want).abs();
        assert!(rel <= 1e-12, "{name}{args:?}: got {got}, want {want}, rel {rel:e}");
        *per_name.entry(name).or_default() += 1;
    }
    assert_eq!(per_name.len(), 10);
    assert!(per_name.values().all(|&c| c == 20), "{per_name:?}");
}

#[test]
fn tail_bounds_are_monotone() {
    let deltas: Vec<f64> = (1..=200).map(|i| i as f64 / 200.0 / 800.0).collect();
    for lambda in [-2.0, 0.0, 3.0] {
        let vals: Vec<f64> = deltas.iter().map(|&d| lower_tail_bound(d, lambda).unwrap().0).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }
    let (zeta, eta) = (1.968e7, 0.03);
    for lambda in [-2.0, 0.0] {
        let vals: Vec<f64> = (1..=400).map(|i| upper_tail_bound(i as f64 * 0.1, lambda, zeta, eta)).collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]), "lambda {lambda}");
    }
    // For λ > 0 the exponent -ηA^{3/2} + λA decreases once A > (2λ/(3η))².
    let lambda = 0.5;
    let turn = (2.0 * lambda / (3.0 * eta)).powi(2);
    let vals: Vec<f64> = (0..200).map(|i| upper_tail_bound(turn + i as f64, lambda, zeta, eta)).collect();
    assert!(vals.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn mu_lower_bound_is_below_exact_expectation() {
    // The lower end δ n^{1/3} is kept integral: the harmonic sum only
    // dominates log(b/a) when the window starts exactly at a.
    let mut checked = 0;
    for cube in [100u64, 400, 1000, 10_000] {
        let n = cube.pow(3);
        for a in [2u64, 3, 4, 9, 16, 25] {
            let delta = a as f64 / cube as f64;
            if delta >= 1.0 {
                continue;
            }
            for lambda in [-2.0, -0.5, 0.0, 0.5, 2.0] {
                let (lo, hi) = cycle_window(delta, n);
                assert_eq!(lo, a);
                let nf = n as f64;
                let p = 1.0 / nf + lambda * nf.powf(-4.0 / 3.0);
                let mu = janson_mu_lower(delta, lambda, n).unwrap();
                let exact = expected_cycle_count(n, p, lo, hi);
                assert!(mu <= exact, "n {n}, δ {delta}, λ {lambda}: {mu} > {exact}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn mu_lower_bound_can_fail_when_the_window_is_rounded() {
    // δ n^{1/3} = 1.44: the window [2, 7] misses part of [1.44, 7.2].
    let n = 46_656;
    assert_eq!(cycle_window(0.04, n), (2, 7));
    let exact = expected_cycle_count(n, 1.0 / n as f64, 2, 7);
    assert!(janson_mu_lower(0.04, 0.0, n).unwrap() > exact);
}

#[test]
fn janson_delta_dominates_sampled_overlaps() {
    let n = 300usize;
    let delta = 0.3;
    let (lo, hi) = cycle_window(delta, n as u64);
    assert!(lo >= 2 && lo <= hi);
    let trials = 2000;
    let total: u64 = (0..trials)
        .map(|seed| count_overlapping_cycle_pairs(&sample_digraph(n, 1.0 / n as f64, seed).unwrap(), lo as usize, hi as usize))
        .sum();
    // Ordered pairs, so twice the unordered count.
    let estimate = 2.0 * total as f64 / trials as f64;
    let bound = janson_delta_upper(delta, 0.0, n as u64, JansonVariant::NCorrected).unwrap();
    assert!(bound >= estimate, "{bound} < {estimate}");
}

#[test]
fn chernoff_quadratic_lower_bound() {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100 {
        let p = 0.02 + 0.96 * next();
        let x = p * (0.01 + 0.98 * next());
        let g = chernoff_g(x, p).unwrap();
        assert!(g >= p * (1.0 - x / p).powi(2) / 2.0 - 1e-15, "x {x}, p {p}");
    }
}

#[test]
fn component_bound_decreases_in_size() {
    let n = 1_000_000_000u64;
    let vals: Vec<f64> = (1..50).map(|i| component_prob_bound(i * 1000, n, 0.025, 45).unwrap().bound).collect();
    assert!(vals.windows(2).all(|w| w[0] > w[1]));
}
