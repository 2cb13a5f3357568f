//! Vertex connectivity of 1-skeleta.
//!
//! `vertex_connectivity` runs a vertex-split max-flow between every
//! nonadjacent pair (Menger); `vertex_connectivity_bruteforce` removes
//! subsets by ascending size and serves as its oracle. A graph is
//! m-connected when it has more than m vertices and no deletion of
//! fewer than m vertices leaves a disconnected survivor graph; trimming
//! a graph down to one vertex or none does not count as disconnecting,
//! so the complete graph K_n gets kappa = n - 1.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::graph::Graph;
use crate::vset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("vertex connectivity needs at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error("graph has {n} vertices, above the brute-force cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Largest cap the exhaustive connectivity oracle accepts.
pub const BRUTE_FORCE_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityResult {
    pub kappa: usize,
    /// A minimum vertex separator; empty for complete graphs (nothing
    /// disconnects them) and for already-disconnected graphs.
    pub min_separator: VertexSet,
}

/// Vertex connectivity via max-flow over all nonadjacent pairs.
pub fn vertex_connectivity(g: &Graph) -> Result<ConnectivityResult, ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::TooSmall(n));
    }
    let labels: Vec<usize> = g.vertices().iter().collect();
    let mut pairs = Vec::new();
    for (a, &u) in labels.iter().enumerate() {
        for &v in &labels[a + 1..] {
            if !g.is_adjacent(u, v) {
                pairs.push((u, v));
            }
        }
    }
    if pairs.is_empty() {
        return Ok(ConnectivityResult { kappa: n - 1, min_separator: VertexSet::EMPTY });
    }
    let best = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, &(u, v))| {
            let (flow, cut) = min_vertex_cut(g, u, v);
            (flow, idx, cut)
        })
        .min_by_key(|&(flow, idx, _)| (flow, idx))
        .unwrap();
    Ok(ConnectivityResult { kappa: best.0, min_separator: best.2 })
}

/// Exhaustive oracle: removes vertex subsets by ascending (size, mask)
/// and reports the first whose removal leaves a disconnected graph on
/// at least two vertices.
pub fn vertex_connectivity_bruteforce(
    g: &Graph,
) -> Result<ConnectivityResult, ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::TooSmall(n));
    }
    if n > BRUTE_FORCE_CAP {
        return Err(ConnectivityError::CapExceeded { n, cap: BRUTE_FORCE_CAP });
    }
    for size in 0..=n.saturating_sub(2) {
        for s in g.vertices().subsets() {
            if s.len() != size {
                continue;
            }
            let survivors = g.vertices() - s;
            if survivors.len() >= 2 && !g.is_connected_within(survivors) {
                return Ok(ConnectivityResult { kappa: size, min_separator: s });
            }
        }
    }
    Ok(ConnectivityResult { kappa: n - 1, min_separator: VertexSet::EMPTY })
}

/// Minimum vertex cut separating nonadjacent `s` from `t`: runs unit
/// capacity augmentation on the vertex-split digraph and reads the cut
/// off the final residual reachability.
fn min_vertex_cut(g: &Graph, s: usize, t: usize) -> (usize, VertexSet) {
    debug_assert!(!g.is_adjacent(s, t) && s != t);
    let labels: Vec<usize> = g.vertices().iter().collect();
    let n = labels.len();
    let mut pos = [usize::MAX; 65];
    for (i, &v) in labels.iter().enumerate() {
        pos[v] = i;
    }
    // Node 2i is v_in, 2i+1 is v_out; edge capacities live in a dense
    // residual matrix (n is tiny).
    let nodes = 2 * n;
    let big = n as i32;
    let mut cap = vec![0i32; nodes * nodes];
    for (i, &v) in labels.iter().enumerate() {
        let through = if v == s || v == t { big } else { 1 };
        cap[(2 * i) * nodes + (2 * i + 1)] = through;
        for w in g.neighbors(v).iter() {
            let j = pos[w];
            cap[(2 * i + 1) * nodes + 2 * j] = big;
        }
    }
    let source = 2 * pos[s] + 1;
    let sink = 2 * pos[t];
    let mut flow = 0usize;
    loop {
        // BFS for an augmenting path.
        let mut parent = vec![usize::MAX; nodes];
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for y in 0..nodes {
                if parent[y] == usize::MAX && cap[x * nodes + y] > 0 {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if parent[sink] == usize::MAX {
            break;
        }
        let mut bottleneck = i32::MAX;
        let mut y = sink;
        while y != source {
            let x = parent[y];
            bottleneck = bottleneck.min(cap[x * nodes + y]);
            y = x;
        }
        let mut y = sink;
        while y != source {
            let x = parent[y];
            cap[x * nodes + y] -= bottleneck;
            cap[y * nodes + x] += bottleneck;
            y = x;
        }
        flow += bottleneck as usize;
    }
    // Residual reachability from the source; a vertex is in the cut
    // when its in-node is reachable but its out-node is not.
    let mut reachable = vec![false; nodes];
    reachable[source] = true;
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for y in 0..nodes {
            if !reachable[y] && cap[x * nodes + y] > 0 {
                reachable[y] = true;
                queue.push_back(y);
            }
        }
    }
    let mut cut = VertexSet::EMPTY;
    for (i, &v) in labels.iter().enumerate() {
        if reachable[2 * i] && !reachable[2 * i + 1] {
            cut = cut.insert(v);
        }
    }
    debug_assert_eq!(cut.len(), flow, "cut size must equal max flow");
    (flow, cut)
}

/// Iterator over every subset `T` (|T| >= 2, |T| <= size_cap) whose
/// restriction has a disconnected 1-skeleton, counting isolated
/// vertices as components. Yields in ascending mask order.
pub struct DisconnectingSubsets {
    skeleton: Graph,
    inner: crate::vset::Subsets,
    size_cap: usize,
}

impl Iterator for DisconnectingSubsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        for t in self.inner.by_ref() {
            if t.len() >= 2
                && t.len() <= self.size_cap
                && !self.skeleton.is_connected_within(t)
            {
                return Some(t);
            }
        }
        None
    }
}

/// Streams the vertex subsets whose restriction `Δ|_T` is disconnected.
pub fn disconnecting_subsets(
    cx: &SimplicialComplex,
    size_cap: usize,
    enumeration_cap: usize,
) -> Result<DisconnectingSubsets, ConnectivityError> {
    let n = cx.vertex_count();
    if n > enumeration_cap {
        return Err(ConnectivityError::CapExceeded { n, cap: enumeration_cap });
    }
    Ok(DisconnectingSubsets {
        skeleton: cx.one_skeleton(),
        inner: cx.universe().subsets(),
        size_cap,
    })
}
