use crate::{Error, Result};

/// Largest vertex count the exhaustive counter accepts.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 5;

/// Ordered pairs of `0..m` without the diagonal, in row-major order.
fn ordered_pairs(m: usize) -> Vec<(usize, usize)> {
    (0..m).flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// Strong connectivity of the digraph whose arcs are the set bits of `mask`.
fn strongly_connected(m: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut out = [0u32; MAX_BRUTE_FORCE_VERTICES];
    let mut inn = [0u32; MAX_BRUTE_FORCE_VERTICES];
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let (u, v) = pairs[i];
        out[u] |= 1 << v;
        inn[v] |= 1 << u;
    }
    let full = (1u32 << m) - 1;
    let closure = |adj: &[u32; MAX_BRUTE_FORCE_VERTICES]| {
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    };
    closure(&out) == full && closure(&inn) == full
}

/// Exact number `Y(m, k)` of strongly connected digraphs on `m` labeled
/// vertices with `m + k` arcs, by testing every arc subset of that size.
///
/// Valid for `1 <= m <= 5` and `k >= -1`; excesses beyond `m(m-1) - m`
/// count zero.
pub fn brute_force_scc_count(m: usize, k: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::param("m must be at least 1"));
    }
    if m > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::Resource(format!(
            "exhaustive count limited to m <= {MAX_BRUTE_FORCE_VERTICES}, got m = {m}"
        )));
    }
    let slots = m * (m - 1);
    let max_k = slots as i64 - m as i64;
    if k < -1 {
        return Err(Error::param(format!("excess {k} is below -1")));
    }
    if k > max_k {
        // More arcs than ordered pairs: no digraph at all.
        return Ok(0);
    }
    let size = (m as i64 + k) as u32;
    if size == 0 {
        // A lone vertex is strongly connected.
        return Ok(u64::from(m == 1));
    }
    let pairs = ordered_pairs(m);
    let limit = 1u64 << slots;
    let mut count = 0;
    // Gosper's hack: all `slots`-bit masks with `size` bits set, ascending.
    let mut mask: u64 = (1 << size) - 1;
    while mask < limit {
        if strongly_connected(m, &pairs, mask as u32) {
            count += 1;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(count)
}

/// Strongly connected digraphs on `m <= 5` labeled vertices, tallied by arc
/// count, from one pass over all `2^(m(m-1))` digraphs.
pub fn strong_digraph_census(m: usize) -> Result<Vec<u64>> {
    if m == 0 || m > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::Resource(format!("census needs 1 <= m <= {MAX_BRUTE_FORCE_VERTICES}")));
    }
    let slots = m * (m - 1);
    let pairs = ordered_pairs(m);
    let mut census = vec![0u64; slots + 1];
    if m == 1 {
        census[0] = 1;
        return Ok(census);
    }
    for mask in 0u32..(1u32 << slots) {
        if strongly_connected(m, &pairs, mask) {
            census[mask.count_ones() as usize] += 1;
        }
    }
    Ok(census)
}
