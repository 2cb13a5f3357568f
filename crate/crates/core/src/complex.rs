//! Simplicial complexes on a vertex universe, stored by their facets.
//!
//! Only the maximal faces are kept; every face query derives from them.
//! The universe of a complex built with [`SimplicialComplex::from_facets`]
//! is the contiguous label range `1..=n`; restrictions keep the original
//! labels and shrink the universe to the restricting set.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no generating faces given")]
    EmptyInput,
    #[error("vertices {} appear in no face; relabel or drop them", fmt_labels(.0))]
    GhostVertices(Vec<usize>),
    #[error("vertex label {0} exceeds declared count {1}")]
    LabelOutOfRange(usize, usize),
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("the complex is the full simplex; its Stanley-Reisner ideal is zero")]
    FullSimplex,
}

fn fmt_labels(labels: &[usize]) -> String {
    labels.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// A finite simplicial complex, represented by its facets.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// Vertex universe. Every facet is a subset; every universe vertex
    /// lies in some facet (so the universe equals the union of facets),
    /// except that the complex `{∅}` has an empty universe and no facets.
    vertices: VertexSet,
    /// Maximal faces: pairwise inclusion-incomparable, ascending by mask.
    facets: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// The complex `{∅}` whose only face is the empty set.
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex { vertices: VertexSet::EMPTY, facets: Vec::new() }
    }

    /// Builds the complex generated by `faces` on the universe `1..=n`.
    ///
    /// Duplicate and non-maximal faces are dropped. Every vertex of the
    /// universe must appear in some face; the leftover labels are
    /// reported as [`ComplexError::GhostVertices`] so the caller can
    /// decide between aborting and relabeling.
    pub fn from_facets(n: usize, faces: &[VertexSet]) -> Result<SimplicialComplex, ComplexError> {
        if n > MAX_VERTICES {
            return Err(ComplexError::TooManyVertices(n));
        }
        if faces.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let universe = VertexSet::full(n);
        let mut support = VertexSet::EMPTY;
        for f in faces {
            if !f.is_subset_of(universe) {
                let bad = (*f - universe).min_label().unwrap();
                return Err(ComplexError::LabelOutOfRange(bad, n));
            }
            support = support | *f;
        }
        if support != universe {
            return Err(ComplexError::GhostVertices(support.complement_in(universe).to_labels()));
        }
        Ok(SimplicialComplex { vertices: universe, facets: maximal_faces(faces) })
    }

    /// Like [`from_facets`](Self::from_facets) but compacts the labels
    /// that actually occur onto `1..=k` first. Returns the complex and
    /// the original label of each new vertex `i+1` at position `i`.
    pub fn from_facets_relabeled(
        faces: &[VertexSet],
    ) -> Result<(SimplicialComplex, Vec<usize>), ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let mut support = VertexSet::EMPTY;
        for f in faces {
            support = support | *f;
        }
        let old_labels = support.to_labels();
        let mut new_of_old = HashMap::new();
        for (i, &v) in old_labels.iter().enumerate() {
            new_of_old.insert(v, i + 1);
        }
        let relabeled: Vec<VertexSet> = faces
            .iter()
            .map(|f| f.iter().map(|v| new_of_old[&v]).collect())
            .collect();
        let cx = SimplicialComplex::from_facets(old_labels.len(), &relabeled)?;
        Ok((cx, old_labels))
    }

    /// Vertex universe of the complex.
    pub fn universe(&self) -> VertexSet {
        self.vertices
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// True when the universe is the contiguous range `1..=n`.
    pub fn is_contiguous(&self) -> bool {
        self.vertices == VertexSet::full(self.vertex_count())
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Dimension: one less than the largest facet size; `-1` for `{∅}`.
    pub fn dim(&self) -> i32 {
        self.facets.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    /// Face test. The empty set is a face of every complex.
    pub fn is_face(&self, sigma: VertexSet) -> bool {
        sigma.is_empty() || self.facets.iter().any(|f| sigma.is_subset_of(*f))
    }

    /// The restriction `Δ|_T`: all faces contained in `T`. The result's
    /// universe is `T` (so for `T = ∅` it is the complex `{∅}`).
    pub fn restriction(&self, t: VertexSet) -> SimplicialComplex {
        debug_assert!(t.is_subset_of(self.vertices), "restriction set must lie in the universe");
        let mut cut: Vec<VertexSet> = self.facets.iter().map(|f| *f & t).collect();
        cut.sort_unstable();
        cut.dedup();
        SimplicialComplex { vertices: t, facets: maximal_of_sorted(cut) }
    }

    /// Simplicial join. Both operands must live on contiguous universes;
    /// the right operand's labels are shifted up by `self.vertex_count()`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        assert!(
            self.is_contiguous() && other.is_contiguous(),
            "join operands must be on contiguous universes"
        );
        let n1 = self.vertex_count();
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f1 in &self.facets {
            for f2 in &other.facets {
                facets.push(*f1 | VertexSet::from_mask(f2.mask() << n1));
            }
        }
        // Unions of two antichains factor-wise stay an antichain.
        facets.sort_unstable();
        SimplicialComplex {
            vertices: VertexSet::full(n1 + other.vertex_count()),
            facets,
        }
    }

    /// Inclusion-minimal nonfaces, ascending by (cardinality, mask).
    ///
    /// These index the minimal monomial generators of the face ideal;
    /// the largest cardinality among them is the generator degree bound
    /// `s`. The full simplex has no nonfaces and is rejected.
    pub fn minimal_nonfaces(&self) -> Result<Vec<VertexSet>, ComplexError> {
        let list = self.minimal_nonfaces_unchecked();
        if list.is_empty() {
            return Err(ComplexError::FullSimplex);
        }
        Ok(list)
    }

    /// As [`minimal_nonfaces`](Self::minimal_nonfaces) but yields an
    /// empty list for the full simplex.
    pub fn minimal_nonfaces_unchecked(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for sigma in self.vertices.subsets() {
            if sigma.is_empty() {
                continue;
            }
            // Minimal nonface: not a face, every boundary facet is.
            let low = sigma.min_label().unwrap();
            if !self.is_face(sigma.remove(low)) || self.is_face(sigma) {
                continue;
            }
            if sigma.iter().skip(1).all(|v| self.is_face(sigma.remove(v))) {
                out.push(sigma);
            }
        }
        out.sort_unstable_by_key(|m| (m.len(), m.mask()));
        out
    }

    /// Largest cardinality of a minimal nonface.
    pub fn max_nonface_degree(&self) -> Result<usize, ComplexError> {
        Ok(self.minimal_nonfaces()?.last().unwrap().len())
    }

    /// The 1-skeleton: the graph of vertices and edges of the complex.
    pub fn one_skeleton(&self) -> Graph {
        let mut adj = vec![0u64; MAX_VERTICES + 1];
        for f in &self.facets {
            for v in f.iter() {
                adj[v] |= f.remove(v).mask();
            }
        }
        Graph::from_adjacency(self.vertices, adj)
    }

    /// Structural predicates used as theorem hypotheses.
    pub fn predicates(&self) -> ComplexPredicates {
        let dim = self.dim();
        let is_pure = self.facets.iter().all(|f| f.len() as i32 - 1 == dim);
        let is_flag = self.minimal_nonfaces_unchecked().iter().all(|m| m.len() == 2);
        let (ridge_degrees, is_strongly_connected) = if is_pure {
            (Some(self.ridge_degrees()), self.strongly_connected())
        } else {
            (None, false)
        };
        let is_pseudomanifold = is_pure
            && is_strongly_connected
            && !self.facets.is_empty()
            && ridge_degrees.as_ref().unwrap().iter().all(|&d| d == 2);
        ComplexPredicates {
            dim,
            is_pure,
            is_flag,
            is_strongly_connected,
            ridge_degrees,
            is_pseudomanifold,
        }
    }

    /// Facet-containment count of every ridge ((d-1)-face), sorted.
    /// Callers guarantee purity.
    fn ridge_degrees(&self) -> Vec<u32> {
        let d = self.dim();
        if d < 0 {
            return Vec::new();
        }
        let mut counts: HashMap<u64, u32> = HashMap::new();
        for f in &self.facets {
            if d == 0 {
                // Ridges are the empty face; every facet contains it.
                *counts.entry(0).or_insert(0) += 1;
            } else {
                for v in f.iter() {
                    *counts.entry(f.remove(v).mask()).or_insert(0) += 1;
                }
            }
        }
        let mut degs: Vec<u32> = counts.into_values().collect();
        degs.sort_unstable();
        degs
    }

    /// Connectivity of the facet dual graph, where two facets are
    /// adjacent when they share a face of dimension exactly `dim - 1`.
    fn strongly_connected(&self) -> bool {
        let k = self.facets.len();
        if k <= 1 {
            return true;
        }
        let d = self.dim() as usize; // pure, so every facet has d+1 vertices
        let mut seen = vec![false; k];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for j in 0..k {
                if !seen[j] && (self.facets[i] & self.facets[j]).len() == d {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        reached == k
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(universe {}, facets [", self.vertices)?;
        for (k, facet) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "])")
    }
}

/// Structural predicates of a complex. `ridge_degrees` is only defined
/// for pure complexes and is omitted otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexPredicates {
    pub dim: i32,
    pub is_pure: bool,
    pub is_flag: bool,
    pub is_strongly_connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ridge_degrees: Option<Vec<u32>>,
    pub is_pseudomanifold: bool,
}

/// Deduplicates and drops non-maximal faces; result ascending by mask.
fn maximal_faces(faces: &[VertexSet]) -> Vec<VertexSet> {
    let mut sorted: Vec<VertexSet> = faces.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    maximal_of_sorted(sorted)
}

fn maximal_of_sorted(sorted: Vec<VertexSet>) -> Vec<VertexSet> {
    // A proper subset always has a smaller mask, so dominators of a face
    // can only appear later in the ascending list. The empty face is
    // implicit in every complex and never stored as a facet.
    let mut out: Vec<VertexSet> = Vec::with_capacity(sorted.len());
    for (i, &f) in sorted.iter().enumerate() {
        if !f.is_empty() && !sorted[i + 1..].iter().any(|g| f.is_subset_of(*g)) {
            out.push(f);
        }
    }
    out
}
