//! The two-stage preheart configuration model.
//!
//! Stage 1 matches the out-stubs of the heart vertices `T` to their in-stubs
//! uniformly at random. Stage 2 inserts the remaining degree-(1,1) vertices
//! one at a time, each subdividing a uniformly chosen arc of the current
//! multidigraph; with `m' + k + i - 1` arcs available for the `i`-th insertion
//! this realizes every (heart, ordered assignment) pair with equal
//! probability.

use rand::seq::SliceRandom;
use rand::Rng;

use super::DegreeSequence;
use crate::digraph::MultiDigraph;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreheartConfig {
    /// `T`, ascending.
    pub heart_vertices: Vec<usize>,
    /// Out-stub `j` is matched to in-stub `heart_matching[j]`. Stubs are
    /// listed vertex by vertex in ascending label order.
    pub heart_matching: Vec<usize>,
    /// Heart arc `j` in original labels.
    pub heart_arcs: Vec<(usize, usize)>,
    /// Degree-(1,1) vertices subdividing heart arc `j`, tail to head.
    pub arc_assignments: Vec<Vec<usize>>,
    pub realized: MultiDigraph,
}

impl PreheartConfig {
    /// No loops or parallel arcs (antiparallel pairs allowed).
    pub fn is_simple(&self) -> bool {
        self.realized.is_simple()
    }
}

fn stubs(vertices: &[usize], degree: &[u64]) -> Vec<usize> {
    vertices.iter().flat_map(|&v| std::iter::repeat_n(v, degree[v] as usize)).collect()
}

/// Draws one preheart configuration for `ds`.
pub fn sample_preheart<R: Rng + ?Sized>(ds: &DegreeSequence, rng: &mut R) -> Result<PreheartConfig> {
    if !ds.sigma_holds {
        return Err(Error::param("degree sums must both equal m + k"));
    }
    let heart_vertices = ds.heart_vertices();
    if heart_vertices.is_empty() {
        return Err(Error::param("no vertex has total degree >= 3: a union of cycles is not a preheart"));
    }
    let m = ds.m;
    let mut in_heart = vec![false; m];
    for &t in &heart_vertices {
        in_heart[t] = true;
    }
    let out_stubs = stubs(&heart_vertices, &ds.d_out);
    let in_stubs = stubs(&heart_vertices, &ds.d_in);
    debug_assert_eq!(out_stubs.len(), heart_vertices.len() + ds.k);

    let mut heart_matching: Vec<usize> = (0..in_stubs.len()).collect();
    heart_matching.shuffle(rng);
    let heart_arcs: Vec<(usize, usize)> =
        out_stubs.iter().zip(&heart_matching).map(|(&u, &j)| (u, in_stubs[j])).collect();

    // Current arcs as (tail, head, heart arc).
    let mut arcs: Vec<(usize, usize, usize)> =
        heart_arcs.iter().enumerate().map(|(j, &(u, v))| (u, v, j)).collect();
    arcs.reserve(m - heart_vertices.len());
    let mut first = vec![usize::MAX; heart_arcs.len()];
    let mut succ = vec![usize::MAX; m];
    for v in (0..m).filter(|&v| !in_heart[v]) {
        let slot = rng.random_range(0..arcs.len());
        let (a, b, j) = arcs[slot];
        arcs[slot] = (a, v, j);
        arcs.push((v, b, j));
        if in_heart[a] {
            first[j] = v;
        } else {
            succ[a] = v;
        }
        succ[v] = b;
    }

    let arc_assignments = first
        .iter()
        .map(|&start| {
            let mut chain = Vec::new();
            let mut cur = start;
            while cur != usize::MAX && !in_heart[cur] {
                chain.push(cur);
                cur = succ[cur];
            }
            chain
        })
        .collect();
    let realized = MultiDigraph::with_identity_labels(m, arcs.iter().map(|&(u, v, _)| (u, v)).collect());
    Ok(PreheartConfig { heart_vertices, heart_matching, heart_arcs, arc_assignments, realized })
}
