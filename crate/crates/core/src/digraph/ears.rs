//! Ear decompositions of strongly connected digraphs.
//!
//! Construction is deterministic: ear 0 is a shortest cycle through vertex 0
//! (breadth-first, neighbours in ascending order). Each further ear starts
//! at the lowest-numbered covered vertex with an uncovered out-arc, leaves
//! along its smallest such arc and, if that arc enters new territory,
//! continues by a shortest path through uncovered vertices back to the
//! covered part.

use std::collections::VecDeque;

use super::{is_strongly_connected, Digraph};
use crate::{Error, Result};

/// One ear as its vertex sequence; consecutive vertices are its arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub vertices: Vec<usize>,
}

impl Ear {
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("ears are non-trivial")
    }

    pub fn internal(&self) -> &[usize] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
    pub vertices_covered: usize,
    pub arcs_covered: usize,
}

impl EarDecomposition {
    /// Checks the defining properties against `d`: ear 0 is a closed cycle,
    /// later ears attach at covered endpoints through fresh internal
    /// vertices, every arc is used exactly once and every vertex is covered.
    pub fn validate(&self, d: &Digraph) -> Result<()> {
        let fail = |msg: String| Err(Error::structure(msg));
        let Some(first) = self.ears.first() else { return fail("no ears".into()) };
        if first.start() != first.end() || first.vertices.len() < 3 {
            return fail("ear 0 is not a cycle".into());
        }
        let mut covered = vec![false; d.n()];
        let mut used = std::collections::HashSet::new();
        for &v in &first.vertices {
            covered[v] = true;
        }
        for (i, ear) in self.ears.iter().enumerate() {
            if i > 0 {
                if !covered[ear.start()] || !covered[ear.end()] {
                    return fail(format!("ear {i} has an uncovered endpoint"));
                }
                for &v in ear.internal() {
                    if covered[v] {
                        return fail(format!("ear {i} reuses covered vertex {v}"));
                    }
                    covered[v] = true;
                }
            } else if first.internal().iter().any(|&v| v == first.start()) {
                return fail("ear 0 is not a simple cycle".into());
            }
            for (u, v) in ear.arcs() {
                if !d.has_arc(u, v) {
                    return fail(format!("ear {i} uses missing arc ({u}, {v})"));
                }
                if !used.insert((u, v)) {
                    return fail(format!("arc ({u}, {v}) used twice"));
                }
            }
        }
        if used.len() != d.arc_count() || covered.iter().any(|&c| !c) {
            return fail("ears do not cover the digraph".into());
        }
        Ok(())
    }

    /// The union of the ears as a digraph on `n` vertices.
    pub fn reconstruct(&self, n: usize) -> Result<Digraph> {
        Digraph::from_arcs(n, self.ears.iter().flat_map(|e| e.arcs()))
    }
}

/// Breadth-first path from `from` through vertices with `allowed[v]` until
/// an out-neighbour satisfying `is_target` is reached. Returns the full
/// vertex sequence including the target.
fn bfs_path(
    d: &Digraph,
    from: usize,
    allowed: impl Fn(usize) -> bool,
    is_target: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; d.n()];
    let mut queue = VecDeque::from([from]);
    parent[from] = from;
    while let Some(u) = queue.pop_front() {
        for &v in d.out_neighbors(u) {
            if is_target(v) {
                let mut path = vec![v, u];
                let mut cur = u;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if allowed(v) && parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    None
}

/// Ear decomposition of a strongly connected digraph with at least one arc.
/// The result has exactly `excess(d) + 1` ears.
pub fn ear_decomposition(d: &Digraph) -> Result<EarDecomposition> {
    if d.arc_count() == 0 || !is_strongly_connected(d) {
        return Err(Error::structure("ear decomposition needs a strongly connected digraph with an arc"));
    }
    let n = d.n();
    let mut covered = vec![false; n];
    let mut cursor = vec![0usize; n];
    let mut used = std::collections::HashSet::with_capacity(d.arc_count());

    let cycle = bfs_path(d, 0, |v| v != 0, |v| v == 0).expect("strongly connected");
    let mut ears = vec![Ear { vertices: cycle }];

    let record = |ear: &Ear, covered: &mut Vec<bool>, used: &mut std::collections::HashSet<(usize, usize)>| {
        for &v in &ear.vertices {
            covered[v] = true;
        }
        for a in ear.arcs() {
            used.insert(a);
        }
    };
    record(&ears[0], &mut covered, &mut used);

    let mut low = 0;
    while used.len() < d.arc_count() {
        // Lowest covered vertex with an unused out-arc; covered vertices only
        // ever gain coverage, so the scan never needs to move backwards past
        // a vertex that has been exhausted.
        let (u, w) = loop {
            if low >= n {
                return Err(Error::Internal("ear construction stalled".into()));
            }
            if covered[low] {
                let out = d.out_neighbors(low);
                while cursor[low] < out.len() && used.contains(&(low, out[cursor[low]])) {
                    cursor[low] += 1;
                }
                if cursor[low] < out.len() {
                    break (low, out[cursor[low]]);
                }
            }
            low += 1;
        };
        let ear = if covered[w] {
            Ear { vertices: vec![u, w] }
        } else {
            let tail = bfs_path(d, w, |v| !covered[v], |v| covered[v]).expect("strongly connected");
            let mut vertices = Vec::with_capacity(tail.len() + 1);
            vertices.push(u);
            vertices.extend(tail);
            Ear { vertices }
        };
        record(&ear, &mut covered, &mut used);
        ears.push(ear);
        // A new ear can cover vertices below `low`.
        low = ears.last().unwrap().vertices.iter().copied().min().unwrap().min(low);
    }

    let vertices_covered = covered.iter().filter(|&&c| c).count();
    Ok(EarDecomposition { ears, vertices_covered, arcs_covered: used.len() })
}
