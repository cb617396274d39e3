//! Exploration of a realized digraph from a start set `A₀`.
//!
//! Vertices are active, explored or unexplored. Vertices are ranked with
//! `A₀` first (ascending), then the rest ascending. At step `t` the
//! lowest-ranked active vertex `w_t` is explored: its `η_t` unexplored
//! out-neighbours become active and `X_t = X_{t-1} + η_t - 1`. The process
//! stops at `τ₁`, the first `t >= 1` with `X_t = 0`, when the explored set is
//! exactly the out-component of `A₀`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::io::Write;

use serde::Serialize;

use crate::digraph::{scc_decompose, Digraph};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplorationTrace {
    pub n: usize,
    /// `X_0, X_1, ..., X_{τ₁}`.
    pub x: Vec<usize>,
    /// `η_1, ..., η_{τ₁}`.
    pub eta: Vec<usize>,
    /// `w_1, ..., w_{τ₁}`.
    pub explored_order: Vec<usize>,
    pub tau1: usize,
    /// `E_{τ₁}`, ascending.
    pub explored_set: Vec<usize>,
    /// Arcs from `E_{τ₁} \ A₀` into `A₀`.
    pub back_edges: usize,
}

impl ExplorationTrace {
    /// `N_t = n - X_t - t - [X_t = 0]`.
    pub fn unexplored_potential(&self, t: usize) -> i64 {
        let x = self.x[t];
        self.n as i64 - x as i64 - t as i64 - i64::from(x == 0)
    }

    /// Checks the recurrence, `|E_t| = t` and `N_t >= 0` before the stop.
    pub fn check_invariants(&self) -> Result<()> {
        if self.tau1 < 1 || self.x.len() != self.tau1 + 1 || self.eta.len() != self.tau1 {
            return Err(Error::Internal("trace lengths inconsistent".into()));
        }
        for t in 1..=self.tau1 {
            let prev = self.x[t - 1];
            let expected = if prev > 0 { prev + self.eta[t - 1] - 1 } else { self.eta[t - 1] };
            if self.x[t] != expected {
                return Err(Error::Internal(format!("recurrence broken at t = {t}")));
            }
            if t < self.tau1 && self.unexplored_potential(t) < 0 {
                return Err(Error::Internal(format!("N_t negative at t = {t}")));
            }
            if t < self.tau1 && self.x[t] == 0 {
                return Err(Error::Internal(format!("process hit zero before tau1 at t = {t}")));
            }
        }
        if self.x[self.tau1] != 0 || self.explored_set.len() != self.tau1 {
            return Err(Error::Internal("explored set size differs from tau1".into()));
        }
        Ok(())
    }

    /// CSV `t,X_t,eta_t` (η empty at `t = 0`) followed by a
    /// `tau1,back_edges` footer.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,X_t,eta_t")?;
        writeln!(w, "0,{},", self.x[0])?;
        for t in 1..=self.tau1 {
            writeln!(w, "{t},{},{}", self.x[t], self.eta[t - 1])?;
        }
        writeln!(w, "tau1,back_edges")?;
        writeln!(w, "{},{}", self.tau1, self.back_edges)
    }
}

fn normalize_start(d: &Digraph, a0: &[usize]) -> Result<Vec<usize>> {
    if a0.is_empty() {
        return Err(Error::param("start set A0 must be nonempty"));
    }
    let mut start = a0.to_vec();
    start.sort_unstable();
    start.dedup();
    if let Some(&v) = start.iter().find(|&&v| v >= d.n()) {
        return Err(Error::param(format!("vertex {v} out of range for n = {}", d.n())));
    }
    Ok(start)
}

pub fn explore(d: &Digraph, a0: &[usize]) -> Result<ExplorationTrace> {
    let start = normalize_start(d, a0)?;
    let n = d.n();
    let mut in_start = vec![false; n];
    for &v in &start {
        in_start[v] = true;
    }
    // Rank: A₀ ascending, then everything else ascending.
    let mut rank = vec![0usize; n];
    let mut r = 0;
    for &v in &start {
        rank[v] = r;
        r += 1;
    }
    for v in (0..n).filter(|&v| !in_start[v]) {
        rank[v] = r;
        r += 1;
    }

    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Unexplored,
        Active,
        Explored,
    }
    let mut state = vec![State::Unexplored; n];
    let mut active = BinaryHeap::new();
    for &v in &start {
        state[v] = State::Active;
        active.push(Reverse((rank[v], v)));
    }

    let mut x = vec![start.len()];
    let mut eta = Vec::new();
    let mut order = Vec::new();
    while let Some(Reverse((_, w))) = active.pop() {
        state[w] = State::Explored;
        let mut fresh = 0;
        for &v in d.out_neighbors(w) {
            if state[v] == State::Unexplored {
                state[v] = State::Active;
                active.push(Reverse((rank[v], v)));
                fresh += 1;
            }
        }
        let prev = *x.last().expect("nonempty");
        x.push(prev + fresh - 1);
        eta.push(fresh);
        order.push(w);
        debug_assert_eq!(*x.last().unwrap(), active.len());
    }
    let tau1 = order.len();
    let mut explored_set = order.clone();
    explored_set.sort_unstable();
    let back_edges = explored_set
        .iter()
        .filter(|&&u| !in_start[u])
        .map(|&u| d.out_neighbors(u).iter().filter(|&&v| in_start[v]).count())
        .sum();
    let trace = ExplorationTrace { n, x, eta, explored_order: order, tau1, explored_set, back_edges };
    debug_assert!(trace.check_invariants().is_ok());
    Ok(trace)
}

/// Decides whether the strongly connected vertex set `h` is a whole
/// component: it is exactly when no explored vertex outside `h` has an arc
/// back into `h`.
pub fn certify_component(d: &Digraph, h: &[usize]) -> Result<(bool, usize)> {
    let start = normalize_start(d, h)?;
    if scc_decompose(&d.induced(&start)).len() != 1 {
        return Err(Error::structure(format!("{start:?} does not induce a strongly connected subdigraph")));
    }
    let trace = explore(d, &start)?;
    Ok((trace.back_edges == 0, trace.back_edges))
}
