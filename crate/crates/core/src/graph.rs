//! Simple undirected graphs on vertex labels, with the induced-cycle
//! search used by the log-regularity bound hypotheses.

use crate::vset::{VertexSet, MAX_VERTICES};

/// An undirected simple graph. Vertices are a [`VertexSet`]; adjacency
/// is stored as one bitmask per label.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexSet,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an explicit edge list.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(vertices: VertexSet, edges: I) -> Graph {
        let mut adj = vec![0u64; MAX_VERTICES + 1];
        for (u, v) in edges {
            assert!(u != v, "loops are not allowed");
            assert!(vertices.contains(u) && vertices.contains(v), "edge endpoint outside vertex set");
            adj[u] |= 1 << (v - 1);
            adj[v] |= 1 << (u - 1);
        }
        Graph { vertices, adj }
    }

    pub(crate) fn from_adjacency(vertices: VertexSet, adj: Vec<u64>) -> Graph {
        Graph { vertices, adj }
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Neighbors of `v` as a vertex set.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        self.vertices.iter().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] & (1 << (v - 1)) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.iter().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices.iter() {
            for v in self.neighbors(u).iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| self.neighbors(v) & self.vertices == self.vertices.remove(v))
    }

    /// Connectivity of the subgraph induced on `within`, counting
    /// isolated vertices as components. The empty and one-vertex
    /// subgraphs count as connected.
    pub fn is_connected_within(&self, within: VertexSet) -> bool {
        self.component_count_within(within) <= 1
    }

    /// Number of connected components of the induced subgraph.
    pub fn component_count_within(&self, within: VertexSet) -> usize {
        let mut remaining = within.mask();
        let mut components = 0;
        while remaining != 0 {
            components += 1;
            let start = remaining & remaining.wrapping_neg();
            let mut seen = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize + 1;
                    f &= f - 1;
                    next |= self.adj[v] & within.mask() & !seen;
                }
                seen |= next;
                frontier = next;
            }
            remaining &= !seen;
        }
        components
    }

    /// Searches for a chordless cycle of length `m` with `4 <= m <= max_len`.
    ///
    /// Returns `None` when no such cycle exists; otherwise one witness
    /// cycle as its vertex labels in traversal order. The search walks
    /// chordless paths from each root in ascending label order, so the
    /// witness is deterministic.
    pub fn induced_cycle_up_to(&self, max_len: usize) -> Option<Vec<usize>> {
        assert!(max_len >= 4, "induced cycle search starts at length 4");
        for root in self.vertices.iter() {
            // Cycle vertices other than the root must have larger labels.
            let above_mask = if root >= 64 { 0 } else { !((1u64 << root) - 1) };
            let above = VertexSet::from_mask(above_mask) & self.vertices;
            for second in (self.neighbors(root) & above).iter() {
                let mut path = vec![root, second];
                if let Some(cycle) =
                    self.extend_chordless(&mut path, above, VertexSet::EMPTY, max_len)
                {
                    return Some(cycle);
                }
            }
        }
        None
    }

    /// True iff the graph has no induced m-cycle for any 4 <= m <= max_len;
    /// otherwise returns the witness cycle. Exhaustive.
    pub fn induced_cycle_free_up_to(&self, max_len: usize) -> (bool, Option<Vec<usize>>) {
        match self.induced_cycle_up_to(max_len) {
            Some(c) => (false, Some(c)),
            None => (true, None),
        }
    }

    /// Length of the shortest induced cycle of length >= 4 (a "hole"),
    /// if any. Chordal graphs return `None`.
    pub fn shortest_hole(&self) -> Option<usize> {
        let n = self.vertex_count();
        (4..=n).find(|&m| self.induced_cycle_up_to(m).is_some())
    }

    /// DFS step: `path` is a chordless path from the root whose interior
    /// avoids the root's neighborhood; `blocked` holds the neighbors of
    /// the path's interior vertices. Closing edges back to the root are
    /// tested before deeper extensions.
    fn extend_chordless(
        &self,
        path: &mut Vec<usize>,
        above: VertexSet,
        blocked: VertexSet,
        max_len: usize,
    ) -> Option<Vec<usize>> {
        let root = path[0];
        let second = path[1];
        let last = *path.last().unwrap();
        let path_set = VertexSet::from_labels(path.iter().copied());
        let candidates = (self.neighbors(last) & above) - path_set - blocked;

        if path.len() + 1 >= 4 && path.len() + 1 <= max_len {
            for w in (candidates & self.neighbors(root)).iter() {
                if w > second {
                    let mut cycle = path.clone();
                    cycle.push(w);
                    return Some(cycle);
                }
            }
        }
        if path.len() + 2 > max_len {
            return None;
        }
        for w in (candidates - self.neighbors(root)).iter() {
            path.push(w);
            let deeper = self.extend_chordless(path, above, blocked | self.neighbors(last), max_len);
            path.pop();
            if deeper.is_some() {
                return deeper;
            }
        }
        None
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(vertices {}, edges {:?})", self.vertices, self.edges())
    }
}

/// Cycle graph C_m on labels 1..=m; handy for tests and oracles.
pub fn cycle_graph(m: usize) -> Graph {
    let vertices = VertexSet::full(m);
    let edges = (1..m).map(|i| (i, i + 1)).chain(std::iter::once((m, 1)));
    Graph::new(vertices, edges)
}

/// Complete graph K_n on labels 1..=n.
pub fn complete_graph(n: usize) -> Graph {
    let vertices = VertexSet::full(n);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            edges.push((u, v));
        }
    }
    Graph::new(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle_is_its_own_hole() {
        let g = cycle_graph(5);
        let (free, witness) = g.induced_cycle_free_up_to(5);
        assert!(!free);
        let w = witness.unwrap();
        assert_eq!(w.len(), 5);
        // Witness really is a chordless cycle.
        for i in 0..5 {
            for j in i + 1..5 {
                let consecutive = j == i + 1 || (i == 0 && j == 4);
                assert_eq!(g.is_adjacent(w[i], w[j]), consecutive);
            }
        }
        // But there is no induced 4-cycle in C5.
        assert!(g.induced_cycle_free_up_to(4).0);
    }

    #[test]
    fn complete_graphs_and_trees_have_no_holes() {
        assert!(complete_graph(6).induced_cycle_free_up_to(6).0);
        let tree = Graph::new(
            VertexSet::full(6),
            [(1, 2), (2, 3), (2, 4), (4, 5), (4, 6)],
        );
        assert!(tree.induced_cycle_free_up_to(6).0);
        assert_eq!(tree.shortest_hole(), None);
    }

    #[test]
    fn octahedron_skeleton_has_induced_squares() {
        // K6 minus the perfect matching {1,2},{3,4},{5,6}.
        let vertices = VertexSet::full(6);
        let mut edges = Vec::new();
        for u in 1..=6 {
            for v in u + 1..=6 {
                let antipodal = (u, v) == (1, 2) || (u, v) == (3, 4) || (u, v) == (5, 6);
                if !antipodal {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(vertices, edges);
        assert_eq!(g.edge_count(), 12);
        let (free, witness) = g.induced_cycle_free_up_to(4);
        assert!(!free);
        assert_eq!(witness.unwrap().len(), 4);
        assert_eq!(g.shortest_hole(), Some(4));
    }

    #[test]
    fn six_cycle_hole_lengths() {
        let g = cycle_graph(6);
        assert!(g.induced_cycle_free_up_to(5).0);
        assert!(!g.induced_cycle_free_up_to(6).0);
        assert_eq!(g.shortest_hole(), Some(6));
    }

    #[test]
    fn component_counting() {
        let g = Graph::new(VertexSet::full(5), [(1, 2), (2, 3), (4, 5)]);
        assert_eq!(g.component_count_within(VertexSet::full(5)), 2);
        assert_eq!(g.component_count_within(VertexSet::from_labels([1, 3])), 2);
        assert_eq!(g.component_count_within(VertexSet::from_labels([1, 2])), 1);
        assert_eq!(g.component_count_within(VertexSet::EMPTY), 0);
        assert!(g.is_connected_within(VertexSet::from_labels([4])));
    }
}
