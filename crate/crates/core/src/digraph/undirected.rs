//! Largest component of the undirected `G(n, p)`, sampled by the same
//! geometric skipping over the `n(n-1)/2` unordered pairs.

use petgraph::unionfind::UnionFind;
use rand::Rng;

use super::sample::GeometricGap;

use crate::rng::stream_rng;
use crate::{Error, Result};

/// Unordered pair index `i` in row-major order over `u < v`.
fn unordered_pair(n: usize, mut index: u64) -> (usize, usize) {
    let mut u = 0usize;
    let mut row = (n - 1) as u64;
    while index >= row {
        index -= row;
        u += 1;
        row -= 1;
    }
    (u, u + 1 + index as usize)
}

pub fn largest_component_size<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<usize> {
    if n == 0 {
        return Err(Error::param("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("p = {p} is not a probability")));
    }
    if n == 1 || p == 0.0 {
        return Ok(1);
    }
    if p == 1.0 {
        return Ok(n);
    }
    let mut uf = UnionFind::<usize>::new(n);
    let total = n as u64 * (n as u64 - 1) / 2;
    let gap = GeometricGap::new(p);
    // Walk rows incrementally instead of decoding each index from scratch.
    let (mut u, mut row_start, mut row_len) = (0usize, 0u64, (n - 1) as u64);
    let mut next = 0u64;
    while let Some(i) = next.checked_add(gap.sample(rng)).filter(|&i| i < total) {
        while i >= row_start + row_len {
            row_start += row_len;
            row_len -= 1;
            u += 1;
        }
        let v = u + 1 + (i - row_start) as usize;
        debug_assert!(n > 2000 || unordered_pair(n, i) == (u, v));
        uf.union(u, v);
        next = i + 1;
    }
    let mut sizes = vec![0usize; n];
    for v in 0..n {
        sizes[uf.find(v)] += 1;
    }
    Ok(sizes.into_iter().max().unwrap_or(0))
}

/// Largest component size of `G(n, p)` from stream 0 of `seed`.
pub fn undirected_largest_component(n: usize, p: f64, seed: u64) -> Result<usize> {
    largest_component_size(n, p, &mut stream_rng(seed, 0))
}
