use serde::Serialize;

use super::Digraph;

/// Partition of the vertex set into strongly connected components.
///
/// Components are listed in the order Tarjan's algorithm completes them
/// (reverse topological order of the condensation); each component's
/// vertices are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
    pub sizes: Vec<usize>,
    /// Arcs inside the component minus its vertex count.
    pub excesses: Vec<i64>,
    pub largest_size: usize,
    /// `component_of[v]` indexes into `components`.
    pub component_of: Vec<usize>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Index of a largest component (the first one found on ties).
    pub fn largest(&self) -> Option<usize> {
        (0..self.len()).max_by(|&a, &b| self.sizes[a].cmp(&self.sizes[b]).then(b.cmp(&a)))
    }

    /// Whether `vertices` (any order, no repeats) is exactly one component.
    pub fn is_component(&self, vertices: &[usize]) -> bool {
        let Some(&first) = vertices.first() else { return false };
        let c = self.component_of[first];
        self.sizes[c] == vertices.len() && vertices.iter().all(|&v| self.component_of[v] == c)
    }
}

/// Tarjan's algorithm with an explicit call stack; `O(n + arcs)`. Each
/// component is handed to `emit` (unsorted) as it completes.
fn tarjan(d: &Digraph, mut emit: impl FnMut(&mut [usize])) {
    const UNSEEN: usize = usize::MAX;
    let n = d.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    // (vertex, position in its out-list)
    let mut calls: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        calls.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&(u, pos)) = calls.last() {
            let out = d.out_neighbors(u);
            if pos < out.len() {
                let v = out[pos];
                calls.last_mut().expect("nonempty").1 += 1;
                if index[v] == UNSEEN {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    calls.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let mut k = stack.len();
                loop {
                    k -= 1;
                    on_stack[stack[k]] = false;
                    if stack[k] == u {
                        break;
                    }
                }
                emit(&mut stack[k..]);
                stack.truncate(k);
            }
        }
    }
}

pub fn scc_decompose(d: &Digraph) -> SccDecomposition {
    let mut component_of = vec![0usize; d.n()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    tarjan(d, |comp| {
        comp.sort_unstable();
        for &w in comp.iter() {
            component_of[w] = components.len();
        }
        components.push(comp.to_vec());
    });
    let mut inner_arcs = vec![0i64; components.len()];
    for (u, v) in d.arcs() {
        if component_of[u] == component_of[v] {
            inner_arcs[component_of[u]] += 1;
        }
    }
    let sizes: Vec<usize> = components.iter().map(Vec::len).collect();
    let excesses = sizes.iter().zip(&inner_arcs).map(|(&s, &a)| a - s as i64).collect();
    let largest_size = sizes.iter().copied().max().unwrap_or(0);
    SccDecomposition { components, sizes, excesses, largest_size, component_of }
}

/// Size of a largest strongly connected component, without building the
/// full decomposition.
pub fn largest_scc_size(d: &Digraph) -> usize {
    let mut best = 0;
    tarjan(d, |comp| best = best.max(comp.len()));
    best
}

/// Sorted vertices and excess of a largest strongly connected component (the
/// first completed on ties, as in [`SccDecomposition::largest`]).
pub fn largest_scc(d: &Digraph) -> (Vec<usize>, i64) {
    let mut best: Vec<usize> = Vec::new();
    tarjan(d, |comp| {
        if comp.len() > best.len() {
            best = comp.to_vec();
        }
    });
    best.sort_unstable();
    let excess = d.arcs_within(&best) as i64 - best.len() as i64;
    (best, excess)
}

pub fn is_strongly_connected(d: &Digraph) -> bool {
    d.n() > 0 && scc_decompose(d).len() == 1
}
