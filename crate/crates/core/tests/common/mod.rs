//! Oracles shared by the integration tests. Everything here is written
//! against the adjacency accessors only, never the library's own algorithms.
#![allow(dead_code)]

use std::collections::VecDeque;

use dnp_core::Digraph;

/// Vertices reachable from `sources` (sources included), by breadth-first
/// search over out-lists.
pub fn bfs_reach(d: &Digraph, sources: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; d.n()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &v in d.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Components by pairwise mutual reachability, each sorted, list sorted.
pub fn mutual_reach_components(d: &Digraph) -> Vec<Vec<usize>> {
    let reach: Vec<Vec<bool>> = (0..d.n()).map(|s| bfs_reach(d, &[s])).collect();
    let mut assigned = vec![false; d.n()];
    let mut comps = Vec::new();
    for u in 0..d.n() {
        if assigned[u] {
            continue;
        }
        let comp: Vec<usize> = (0..d.n()).filter(|&v| reach[u][v] && reach[v][u]).collect();
        for &v in &comp {
            assigned[v] = true;
        }
        comps.push(comp);
    }
    comps.sort();
    comps
}

/// Whether the subdigraph induced by `vertices` is strongly connected.
pub fn induces_strong(d: &Digraph, vertices: &[usize]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let sub = d.induced(vertices);
    let all = |r: Vec<bool>| r.into_iter().all(|x| x);
    let rev = Digraph::from_arcs(sub.n(), sub.arcs().map(|(u, v)| (v, u))).unwrap();
    all(bfs_reach(&sub, &[0])) && all(bfs_reach(&rev, &[0]))
}

/// Ordered pairs `(u, v)`, `u != v`, in row-major order.
pub fn ordered_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// Every digraph on `m <= 4` labeled vertices.
pub fn all_digraphs(m: usize) -> impl Iterator<Item = Digraph> {
    assert!(m <= 4);
    let pairs = ordered_pairs(m);
    (0u32..1 << pairs.len())
        .map(move |mask| Digraph::from_arcs(m, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a)).unwrap())
}

/// Whether `d` is strongly connected (the whole vertex set).
pub fn is_strong(d: &Digraph) -> bool {
    induces_strong(d, &(0..d.n()).collect::<Vec<_>>())
}
