//! Simple labeled digraphs and the structural machinery built on them.

mod cycles;
mod ears;
mod heart;
mod io;
mod sample;
mod scc;
mod undirected;

pub use cycles::{count_cycles_in, count_cycles_up_to, for_each_cycle, CycleCensus};
pub use ears::{ear_decomposition, Ear, EarDecomposition};
pub use heart::heart;
pub use sample::{pair_index_to_arc, sample_digraph, sample_digraph_with, sample_marked, MarkedArcs};
pub use scc::{is_strongly_connected, largest_scc, largest_scc_size, scc_decompose, SccDecomposition};
pub use undirected::{largest_component_size, undirected_largest_component};

use crate::{Error, Result};

/// A simple digraph on vertices `0..n`: no loops, no parallel arcs.
/// Antiparallel pairs are allowed.
///
/// Adjacency is stored twice, as sorted out-lists and sorted in-lists in
/// compressed-row form. The value is immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out_offsets: Vec<usize>,
    out_targets: Vec<usize>,
    in_offsets: Vec<usize>,
    in_sources: Vec<usize>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

impl Digraph {
    /// Builds a digraph, rejecting out-of-range endpoints, loops and
    /// duplicate arcs.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<(usize, usize)> = arcs.into_iter().collect();
        for &(u, v) in &arcs {
            if u >= n || v >= n {
                return Err(Error::param(format!("arc ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::param(format!("loop at vertex {u}")));
            }
        }
        arcs.sort_unstable();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::param(format!("duplicate arc ({}, {})", w[0].0, w[0].1)));
        }
        Ok(Self::from_sorted_unique(n, &arcs))
    }

    /// `arcs` must be sorted, duplicate free, loop free and in range.
    pub(crate) fn from_sorted_unique(n: usize, arcs: &[(usize, usize)]) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v) in arcs {
            out_offsets[u + 1] += 1;
            in_offsets[v + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets = arcs.iter().map(|&(_, v)| v).collect();
        // Filling in-lists in (u, v) order leaves every in-list sorted.
        let mut in_sources = vec![0usize; arcs.len()];
        let mut fill = in_offsets.clone();
        for &(u, v) in arcs {
            in_sources[fill[v]] = u;
            fill[v] += 1;
        }
        Digraph { n, out_offsets, out_targets, in_offsets, in_sources }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, &[])
    }

    /// Complete digraph: all `n(n-1)` ordered pairs.
    pub fn complete(n: usize) -> Self {
        let arcs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
        Self::from_sorted_unique(n, &arcs)
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`, `n >= 2`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 2, "a directed cycle needs at least two vertices");
        Self::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle arcs are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.out_targets.len()
    }

    #[inline]
    pub fn out_neighbors(&self, u: usize) -> &[usize] {
        &self.out_targets[self.out_offsets[u]..self.out_offsets[u + 1]]
    }

    #[inline]
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    #[inline]
    pub fn out_degree(&self, u: usize) -> usize {
        self.out_offsets[u + 1] - self.out_offsets[u]
    }

    #[inline]
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// All arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Subdigraph induced on `vertices`, relabeled `0..k` in the order given.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut index = std::collections::HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let mut arcs = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for v in self.out_neighbors(u) {
                if let Some(&j) = index.get(v) {
                    arcs.push((i, j));
                }
            }
        }
        arcs.sort_unstable();
        Digraph::from_sorted_unique(vertices.len(), &arcs)
    }

    /// Number of arcs with both ends in `vertices` (which must be duplicate free).
    pub fn arcs_within(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        vertices.iter().map(|&u| self.out_neighbors(u).iter().filter(|&&v| inside[v]).count()).sum()
    }

    /// Arcs minus vertices.
    pub fn excess(&self) -> i64 {
        self.arc_count() as i64 - self.n as i64
    }

    /// Vertices reachable from `sources` along directed paths, sources included.
    pub fn out_reachable(&self, sources: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in sources {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(u) = stack.pop() {
            for &v in self.out_neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// A directed multigraph: parallel arcs and loops allowed.
///
/// Vertices are `0..labels.len()`; `labels[i]` records the vertex of the
/// source object that vertex `i` stands for (identity for configuration-model
/// outputs, the surviving vertex for hearts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDigraph {
    pub labels: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
}

impl MultiDigraph {
    pub fn with_identity_labels(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        MultiDigraph { labels: (0..n).collect(), arcs }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn excess(&self) -> i64 {
        self.arcs.len() as i64 - self.n() as i64
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(u, _) in &self.arcs {
            d[u] += 1;
        }
        d
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(_, v) in &self.arcs {
            d[v] += 1;
        }
        d
    }

    /// No loops and no parallel arcs. Antiparallel pairs are fine.
    pub fn is_simple(&self) -> bool {
        let mut arcs = self.arcs.clone();
        arcs.sort_unstable();
        arcs.iter().all(|&(u, v)| u != v) && arcs.windows(2).all(|w| w[0] != w[1])
    }

    /// Arc multiset in labeled form, sorted.
    pub fn labeled_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(u, v)| (self.labels[u], self.labels[v])).collect();
        arcs.sort_unstable();
        arcs
    }

    /// Converts to a [`Digraph`] on `0..n` if simple.
    pub fn to_digraph(&self) -> Result<Digraph> {
        Digraph::from_arcs(self.n(), self.arcs.iter().copied())
    }
}
