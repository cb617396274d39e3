use super::{Digraph, MultiDigraph};
use crate::{Error, Result};

/// The heart of a preheart: every maximal path through vertices of in- and
/// out-degree exactly one is contracted to a single arc.
///
/// The result keeps exactly the vertices with total degree at least 3, in
/// ascending label order, and has the same excess as `d`.
///
/// `d` must have minimum in- and out-degree at least 1 and no component that
/// is a bare directed cycle; otherwise a [`Error::Structure`] names the
/// offending vertex or cycle.
pub fn heart(d: &Digraph) -> Result<MultiDigraph> {
    let n = d.n();
    for v in 0..n {
        if d.out_degree(v) == 0 || d.in_degree(v) == 0 {
            return Err(Error::structure(format!(
                "vertex {v} has semi-degree 0 (in {}, out {}); not a preheart",
                d.in_degree(v),
                d.out_degree(v)
            )));
        }
    }
    let in_heart: Vec<bool> = (0..n).map(|v| d.in_degree(v) + d.out_degree(v) >= 3).collect();
    let labels: Vec<usize> = (0..n).filter(|&v| in_heart[v]).collect();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in labels.iter().enumerate() {
        position[v] = i;
    }

    let mut suppressed = vec![false; n];
    let mut arcs = Vec::with_capacity(d.arc_count());
    for (i, &t) in labels.iter().enumerate() {
        for &first in d.out_neighbors(t) {
            let mut cur = first;
            // Each suppressed vertex has in-degree 1, so a walk entered from
            // the heart cannot revisit itself and must end in the heart.
            while !in_heart[cur] {
                suppressed[cur] = true;
                cur = d.out_neighbors(cur)[0];
            }
            arcs.push((i, position[cur]));
        }
    }

    if let Some(start) = (0..n).find(|&v| !in_heart[v] && !suppressed[v]) {
        let mut cycle = vec![start];
        let mut cur = d.out_neighbors(start)[0];
        while cur != start {
            cycle.push(cur);
            cur = d.out_neighbors(cur)[0];
        }
        return Err(Error::structure(format!("cycle component {cycle:?}; not a preheart")));
    }
    Ok(MultiDigraph { labels, arcs })
}
