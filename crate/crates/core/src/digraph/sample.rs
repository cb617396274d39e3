//! `D(n, p)` sampling by geometric skipping.
//!
//! The `n(n-1)` ordered pairs are linearized row-major with the diagonal
//! removed: index `i` maps to tail `i / (n-1)` and the `(i % (n-1))`-th
//! vertex other than the tail. Gaps between successive present arcs are
//! geometric, so sampling costs `O(n + arcs)` expected time.

use rand::Rng;

use super::Digraph;
use crate::rng::stream_rng;
use crate::{Error, Result};

/// Decodes a linear pair index into an arc. Requires `n >= 2`.
#[inline]
pub fn pair_index_to_arc(n: usize, index: u64) -> (usize, usize) {
    let row = (n - 1) as u64;
    let u = (index / row) as usize;
    let j = (index % row) as usize;
    (u, if j >= u { j + 1 } else { j })
}

fn check(n: usize, p: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p = {p} is not a probability")));
    }
    Ok(())
}

/// Number of failures before the first success of a `p`-coin, by
/// inversion: `floor(ln U / ln(1 - p))`. rand_distr's `Geometric` is exact
/// as well but several times slower for small `p`, which dominates the
/// sampling cost at critical densities. Saturates at `u64::MAX`.
pub(crate) struct GeometricGap {
    inv_log_q: f64,
}

impl GeometricGap {
    /// Requires `0 < p < 1`.
    pub(crate) fn new(p: f64) -> Self {
        debug_assert!(p > 0.0 && p < 1.0);
        GeometricGap { inv_log_q: 1.0 / (-p).ln_1p() }
    }

    #[inline]
    pub(crate) fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = 1.0 - rng.random::<f64>();
        (u.ln() * self.inv_log_q).floor() as u64
    }
}

/// Visits the linear indices of the present pairs in increasing order.
fn skip_sample<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R, mut visit: impl FnMut(u64, &mut R)) {
    if n < 2 || p == 0.0 {
        return;
    }
    let total = n as u64 * (n as u64 - 1);
    if p == 1.0 {
        (0..total).for_each(|i| visit(i, rng));
        return;
    }
    let gap = GeometricGap::new(p);
    let mut next: u64 = 0;
    loop {
        let skip = gap.sample(rng);
        let Some(i) = next.checked_add(skip) else { break };
        if i >= total {
            break;
        }
        visit(i, rng);
        next = i + 1;
    }
}

/// Samples `D(n, p)` from stream 0 of `seed`.
pub fn sample_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    sample_digraph_with(n, p, &mut stream_rng(seed, 0))
}

pub fn sample_digraph_with<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Digraph> {
    check(n, p)?;
    let expected = (p * n as f64 * (n as f64 - 1.0)) as usize;
    let mut arcs = Vec::with_capacity(expected + expected / 8 + 16);
    skip_sample(n, p, rng, |i, _| arcs.push(pair_index_to_arc(n, i)));
    Ok(Digraph::from_sorted_unique(n, &arcs))
}

/// A sample of `D(n, p_max)` in which every present arc carries a uniform
/// mark in `[0, p_max)`.
///
/// Keeping the arcs whose mark is below `p` yields an exact sample of
/// `D(n, p)` for any `p <= p_max`, and the samples are nested in `p`: the
/// standard monotone coupling through one uniform per ordered pair.
#[derive(Clone, Debug)]
pub struct MarkedArcs {
    n: usize,
    p_max: f64,
    arcs: Vec<(usize, usize)>,
    marks: Vec<f64>,
}

pub fn sample_marked<R: Rng + ?Sized>(n: usize, p_max: f64, rng: &mut R) -> Result<MarkedArcs> {
    check(n, p_max)?;
    let mut arcs = Vec::new();
    let mut marks = Vec::new();
    skip_sample(n, p_max, rng, |i, rng| {
        arcs.push(pair_index_to_arc(n, i));
        marks.push(rng.random::<f64>() * p_max);
    });
    Ok(MarkedArcs { n, p_max, arcs, marks })
}

impl MarkedArcs {
    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn threshold(&self, p: f64) -> Result<Digraph> {
        if !(0.0..=self.p_max).contains(&p) {
            return Err(Error::param(format!("p = {p} outside [0, {}]", self.p_max)));
        }
        let kept: Vec<_> = self.arcs.iter().zip(&self.marks).filter(|(_, &u)| u < p).map(|(&a, _)| a).collect();
        Ok(Digraph::from_sorted_unique(self.n, &kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_gap_mean() {
        let p = 0.01;
        let gap = GeometricGap::new(p);
        let mut rng = stream_rng(4, 0);
        let k = 200_000;
        let mean = (0..k).map(|_| gap.sample(&mut rng) as f64).sum::<f64>() / k as f64;
        // Mean (1-p)/p = 99, sd = sqrt(1-p)/p ~ 99.5.
        assert!((mean - 99.0).abs() < 4.0 * 99.5 / (k as f64).sqrt(), "{mean}");
    }

    #[test]
    fn pair_index_skips_diagonal() {
        let n = 4;
        let arcs: Vec<_> = (0..12).map(|i| pair_index_to_arc(n, i)).collect();
        let expected: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        assert_eq!(arcs, expected);
    }

    #[test]
    fn degenerate_probabilities() {
        let d = sample_digraph(3, 0.0, 11).unwrap();
        assert_eq!(d.arc_count(), 0);
        assert_eq!(d.n(), 3);
        let d = sample_digraph(3, 1.0, 11).unwrap();
        assert_eq!(d, Digraph::complete(3));
        assert_eq!(sample_digraph(1, 0.5, 1).unwrap().arc_count(), 0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(sample_digraph(3, 1.5, 0), Err(Error::Parameter(_))));
        assert!(matches!(sample_digraph(3, -0.1, 0), Err(Error::Parameter(_))));
        assert!(matches!(sample_digraph(0, 0.5, 0), Err(Error::Parameter(_))));
    }

    #[test]
    fn same_seed_same_digraph() {
        let a = sample_digraph(500, 0.01, 42).unwrap();
        let b = sample_digraph(500, 0.01, 42).unwrap();
        let c = sample_digraph(500, 0.01, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn arc_count_near_binomial_mean() {
        // Bin(n(n-1), p) with n = 1e4, p = 1e-4: mean 9999, sd ~ 100.
        let n = 10_000;
        let p = 1e-4;
        let mean = (n * (n - 1)) as f64 * p;
        let sd = (mean * (1.0 - p)).sqrt();
        for seed in 0..100 {
            let d = sample_digraph(n, p, seed).unwrap();
            let z = (d.arc_count() as f64 - mean) / sd;
            assert!(z.abs() < 5.0, "seed {seed}: z = {z}");
        }
    }

    #[test]
    fn marked_thresholds_are_nested() {
        let mut rng = stream_rng(9, 0);
        let marked = sample_marked(300, 0.02, &mut rng).unwrap();
        let lo = marked.threshold(0.005).unwrap();
        let hi = marked.threshold(0.01).unwrap();
        assert!(lo.arcs().all(|(u, v)| hi.has_arc(u, v)));
        assert!(lo.arc_count() < hi.arc_count());
        assert!(marked.threshold(0.03).is_err());
    }
}
