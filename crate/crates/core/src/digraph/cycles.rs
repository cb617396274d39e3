//! Bounded-length enumeration of directed cycles.
//!
//! A cycle is a rotation class of closed walks without repeated vertices; it
//! is reported once, rooted at its smallest vertex. Length-2 cycles
//! (antiparallel pairs) count. Every cycle lies inside one strongly
//! connected component, so the search runs per component, and a reverse
//! breadth-first distance to the root prunes branches that cannot close
//! within the length cap.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use serde::Serialize;

use super::{scc_decompose, Digraph};

/// Cycle counts by length; lengths with no cycles are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub counts: BTreeMap<usize, u64>,
}

impl CycleCensus {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Number of cycles with length in `lo..=hi`.
    pub fn in_range(&self, lo: usize, hi: usize) -> u64 {
        if lo > hi {
            return 0;
        }
        self.counts.range(lo..=hi).map(|(_, &c)| c).sum()
    }

    pub fn get(&self, len: usize) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }
}

/// Calls `visit` with the vertex sequence (root first) of every cycle of
/// length at most `max_len`, stopping early on `ControlFlow::Break`.
pub fn for_each_cycle<F>(d: &Digraph, max_len: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    const FAR: usize = usize::MAX;
    if max_len < 2 {
        return ControlFlow::Continue(());
    }
    let scc = scc_decompose(d);
    let n = d.n();
    let mut dist = vec![FAR; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];
    let mut queue = VecDeque::new();

    for (c, comp) in scc.components.iter().enumerate() {
        if comp.len() < 2 {
            continue;
        }
        let allowed = |v: usize, s: usize| v > s && scc.component_of[v] == c;
        for &s in comp {
            for &v in &touched {
                dist[v] = FAR;
            }
            touched.clear();
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                if dist[v] + 1 >= max_len {
                    continue;
                }
                for &u in d.in_neighbors(v) {
                    if allowed(u, s) && dist[u] == FAR {
                        dist[u] = dist[v] + 1;
                        touched.push(u);
                        queue.push_back(u);
                    }
                }
            }

            let mut path = vec![s];
            let mut stack = vec![(s, 0usize)];
            on_path[s] = true;
            while let Some(&(u, i)) = stack.last() {
                let out = d.out_neighbors(u);
                if i < out.len() {
                    stack.last_mut().expect("nonempty").1 += 1;
                    let v = out[i];
                    if v == s {
                        visit(&path)?;
                        continue;
                    }
                    if !allowed(v, s) || on_path[v] || dist[v] == FAR || path.len() + dist[v] > max_len {
                        continue;
                    }
                    on_path[v] = true;
                    path.push(v);
                    stack.push((v, 0));
                } else {
                    stack.pop();
                    on_path[u] = false;
                    path.pop();
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// Exact number of directed cycles of each length `1..=max_len`.
/// Length 1 never occurs because digraphs have no loops.
pub fn count_cycles_up_to(d: &Digraph, max_len: usize) -> CycleCensus {
    let mut census = CycleCensus::default();
    let _ = for_each_cycle(d, max_len, |cycle| {
        *census.counts.entry(cycle.len()).or_insert(0) += 1;
        ControlFlow::Continue(())
    });
    census
}

/// Number of cycles using only vertices of `vertices` with length at most
/// `max_len`, counting no further than `limit`.
pub fn count_cycles_in(d: &Digraph, vertices: &[usize], max_len: usize, limit: u64) -> u64 {
    let sub = d.induced(vertices);
    let mut count = 0;
    let _ = for_each_cycle(&sub, max_len, |_| {
        count += 1;
        if count >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}
