mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use common::{all_digraphs, is_strong};
use dnp_core::digraph::for_each_cycle;
use dnp_core::enumeration::{
    brute_force_scc_count, ear_bound, ear_bound_ln, ln_rational, preheart_count, sample_preheart,
    strong_digraph_census, DegreeSequence,
};
use dnp_core::rng::stream_rng;
use num_bigint::BigUint;
use proptest::prelude::*;

#[test]
fn census_sums_to_all_strong_digraphs() {
    for m in 1..=4usize {
        let census = strong_digraph_census(m).unwrap();
        let direct = all_digraphs(m).filter(is_strong).count() as u64;
        assert_eq!(census.iter().sum::<u64>(), direct, "m = {m}");
        for (arcs, &c) in census.iter().enumerate() {
            let k = arcs as i64 - m as i64;
            if k >= -1 {
                assert_eq!(brute_force_scc_count(m, k).unwrap(), c, "m = {m}, k = {k}");
            } else {
                assert_eq!(c, 0);
            }
        }
    }
}

#[test]
fn cycle_pairs_covering_a_digraph_are_few() {
    let mut checked = 0;
    for m in 2..=4 {
        for d in all_digraphs(m).filter(|d| is_strong(d) && d.excess() >= 1) {
            let mut cycles: Vec<BTreeSet<(usize, usize)>> = Vec::new();
            let _ = for_each_cycle(&d, m, |c| {
                cycles.push((0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect());
                ControlFlow::Continue(())
            });
            let all: BTreeSet<(usize, usize)> = d.arcs().collect();
            let pairs = cycles
                .iter()
                .flat_map(|a| cycles.iter().map(move |b| (a, b)))
                .filter(|(a, b)| a.union(b).copied().collect::<BTreeSet<_>>() == all)
                .count() as u64;
            assert!(pairs <= 27u64.pow(d.excess() as u32), "{d:?}: {pairs} pairs");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn ear_bound_log_form_tracks_exact_at_scale() {
    for (m, k) in [(50u64, 3u64), (400, 10), (1000, 30)] {
        let exact = ln_rational(&ear_bound(m, k).unwrap());
        assert!((exact - ear_bound_ln(m, k)).abs() < 1e-9 * exact.abs(), "({m}, {k})");
    }
    // Stays finite far past the exact range.
    assert!(ear_bound_ln(10_000, 1000).is_finite());
}

#[test]
fn preheart_count_without_subdivisions_is_factorial() {
    for (m, k) in [(2u64, 1u64), (3, 2), (5, 4)] {
        let fact: BigUint = (1..=m + k).map(BigUint::from).product();
        assert_eq!(preheart_count(m, m, k).unwrap(), fact);
    }
}

/// Degree sequence on `m` vertices with both sums `m + k`: all ones plus
/// `k` extra stubs on each side at chosen vertices.
fn arb_degrees() -> impl Strategy<Value = DegreeSequence> {
    (1usize..8, 1usize..5).prop_flat_map(|(m, k)| {
        (Just(m), Just(k), proptest::collection::vec(0..m, k), proptest::collection::vec(0..m, k)).prop_map(
            |(m, k, outs, ins)| {
                let mut d_out = vec![1u64; m];
                let mut d_in = vec![1u64; m];
                outs.into_iter().for_each(|v| d_out[v] += 1);
                ins.into_iter().for_each(|v| d_in[v] += 1);
                DegreeSequence::new(k, d_out, d_in).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn preheart_realizations_have_prescribed_degrees(ds in arb_degrees(), seed in any::<u64>()) {
        prop_assert!(ds.sigma_holds);
        let cfg = sample_preheart(&ds, &mut stream_rng(seed, 0)).unwrap();
        let g = &cfg.realized;
        prop_assert_eq!(g.n(), ds.m);
        prop_assert_eq!(g.arcs.len(), ds.m + ds.k);
        let out: Vec<u64> = g.out_degrees().into_iter().map(|d| d as u64).collect();
        let inn: Vec<u64> = g.in_degrees().into_iter().map(|d| d as u64).collect();
        prop_assert_eq!(out, ds.d_out.clone());
        prop_assert_eq!(inn, ds.d_in.clone());
        // Every non-heart vertex sits on exactly one heart arc, once.
        let mut seen = vec![0; ds.m];
        for list in &cfg.arc_assignments {
            for &v in list {
                seen[v] += 1;
            }
        }
        let heart: BTreeSet<usize> = cfg.heart_vertices.iter().copied().collect();
        for (v, &s) in seen.iter().enumerate() {
            prop_assert_eq!(s, usize::from(!heart.contains(&v)));
        }
    }
}
