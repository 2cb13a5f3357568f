//! Shared test support: an independent brute-force oracle for homology,
//! Hochster tables, minimal nonfaces and graph components, plus the
//! hand-written fixed corpus. Everything here works on plain
//! `BTreeSet<usize>` faces and dense `Vec<Vec<u64>>` matrices so that it
//! shares no code path with the library kernels it checks.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use srtk::complex::SimplicialComplex;
use srtk::regularity::GradedBettiTable;
use srtk::vset::VertexSet;

pub type Face = BTreeSet<usize>;

pub fn face(labels: &[usize]) -> Face {
    labels.iter().copied().collect()
}

/// All subsets of `vertices`, including the empty set.
pub fn powerset(vertices: &[usize]) -> Vec<Face> {
    let mut out = vec![Face::new()];
    for &v in vertices {
        let mut with_v: Vec<Face> = out
            .iter()
            .map(|f| {
                let mut g = f.clone();
                g.insert(v);
                g
            })
            .collect();
        out.append(&mut with_v);
    }
    out
}

/// Every face of the complex generated by `facets` (including ∅),
/// grouped by cardinality.
pub fn faces_by_cardinality(facets: &[Face]) -> BTreeMap<usize, Vec<Face>> {
    let mut all: BTreeSet<Face> = BTreeSet::new();
    for f in facets {
        let labels: Vec<usize> = f.iter().copied().collect();
        for sub in powerset(&labels) {
            all.insert(sub);
        }
    }
    let mut grouped: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for f in all {
        grouped.entry(f.len()).or_default().push(f);
    }
    grouped
}

/// Row-echelon rank of a dense matrix over GF(p); entries are reduced
/// mod p on entry.
pub fn naive_rank(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    for row in &mut m {
        for x in row.iter_mut() {
            *x = x.rem_euclid(p);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c] % p != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        // Scale pivot row to 1 by brute-force inverse search.
        let lead = m[rank][c];
        let inv = (1..p).find(|&x| lead * x % p == 1).expect("p is prime");
        for x in &mut m[rank] {
            *x = *x * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let factor = m[r][c];
                for cc in 0..cols {
                    m[r][cc] = (m[r][cc] - factor * m[rank][cc]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Boundary matrix from cardinality-k faces to cardinality-(k-1) faces
/// with alternating signs over the sorted vertex order.
fn naive_boundary(upper: &[Face], lower: &[Face]) -> Vec<Vec<i64>> {
    let index: BTreeMap<&Face, usize> = lower.iter().zip(0..).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (c, f) in upper.iter().enumerate() {
        for (pos, &v) in f.iter().enumerate() {
            let mut sub = f.clone();
            sub.remove(&v);
            let r = index[&sub];
            m[r][c] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Reduced Betti numbers (degree -> dimension, degree -1 included) of
/// the complex generated by `facets`, over GF(p). An empty facet list
/// denotes the complex `{∅}`.
pub fn naive_betti(facets: &[Face], p: i64) -> BTreeMap<i64, u64> {
    let mut grouped = faces_by_cardinality(facets);
    grouped.entry(0).or_insert_with(|| vec![Face::new()]);
    let max_k = *grouped.keys().max().unwrap();
    let empty = Vec::new();
    let level = |k: usize| grouped.get(&k).unwrap_or(&empty);
    let mut rank = vec![0usize; max_k + 2];
    for k in 1..=max_k {
        rank[k] = naive_rank(naive_boundary(level(k), level(k - 1)), p);
    }
    let mut out = BTreeMap::new();
    for k in 0..=max_k {
        let dim = level(k).len() - rank[k] - rank[k + 1];
        if dim > 0 {
            out.insert(k as i64 - 1, dim as u64);
        }
    }
    out
}

/// Restriction of a facet list to `t` (faces intersected with `t`).
pub fn naive_restriction(facets: &[Face], t: &Face) -> Vec<Face> {
    facets
        .iter()
        .map(|f| f.intersection(t).copied().collect::<Face>())
        .filter(|f| !f.is_empty())
        .collect()
}

/// Hochster's formula by recomputing the homology of every restriction
/// from scratch: beta_{i,j} = sum over |T| = j of dim H~_{j-i-1}(Δ|_T).
pub fn naive_hochster(n: usize, facets: &[Face], p: i64) -> BTreeMap<(usize, usize), u64> {
    let vertices: Vec<usize> = (1..=n).collect();
    let mut table = BTreeMap::new();
    for t in powerset(&vertices) {
        let j = t.len();
        let restricted = naive_restriction(facets, &t);
        for (deg, dim) in naive_betti(&restricted, p) {
            let i = (j as i64 - deg - 1) as usize;
            *table.entry((i, j)).or_insert(0) += dim;
        }
    }
    table
}

/// Inclusion-minimal nonfaces by scanning the powerset in ascending
/// size and keeping sets with no smaller nonface inside them.
pub fn naive_minimal_nonfaces(n: usize, facets: &[Face]) -> Vec<Face> {
    let vertices: Vec<usize> = (1..=n).collect();
    let is_face = |f: &Face| f.is_empty() || facets.iter().any(|g| f.is_subset(g));
    let mut subsets = powerset(&vertices);
    subsets.sort_by_key(|f| (f.len(), f.iter().copied().collect::<Vec<_>>()));
    let mut minimal: Vec<Face> = Vec::new();
    for f in subsets {
        if f.is_empty() || is_face(&f) {
            continue;
        }
        if !minimal.iter().any(|m| m.is_subset(&f)) {
            minimal.push(f);
        }
    }
    minimal
}

/// Connected components of a vertex set under an edge list, isolated
/// vertices counting as singleton components.
pub fn naive_component_count(vertices: &Face, edges: &[(usize, usize)]) -> usize {
    let mut parent: BTreeMap<usize, usize> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut BTreeMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            v
        } else {
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
    }
    for &(u, v) in edges {
        if vertices.contains(&u) && vertices.contains(&v) {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent.insert(ru, rv);
        }
    }
    let roots: BTreeSet<usize> = vertices.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len()
}

// ---------------------------------------------------------------------
// Fixed corpus, written out by hand (independent of the generators).
// ---------------------------------------------------------------------

pub fn octahedron_faces() -> Vec<Face> {
    [
        [1, 3, 5], [1, 3, 6], [1, 4, 5], [1, 4, 6],
        [2, 3, 5], [2, 3, 6], [2, 4, 5], [2, 4, 6],
    ]
    .iter()
    .map(|f| face(f))
    .collect()
}

/// The cube complex: both square rings of the 4-prism and its four side
/// quadrilaterals, each spanning a solid 3-simplex.
pub fn cube_prism_faces() -> Vec<Face> {
    vec![
        face(&[1, 2, 3, 4]),
        face(&[5, 6, 7, 8]),
        face(&[1, 2, 5, 6]),
        face(&[2, 3, 6, 7]),
        face(&[3, 4, 7, 8]),
        face(&[1, 4, 5, 8]),
    ]
}

pub fn cycle_faces(m: usize) -> Vec<Face> {
    let mut out: Vec<Face> = (1..m).map(|i| face(&[i, i + 1])).collect();
    out.push(face(&[m, 1]));
    out
}

pub fn simplex_boundary_faces(d: usize) -> Vec<Face> {
    (1..=d + 1)
        .map(|skip| (1..=d + 1).filter(|&v| v != skip).collect())
        .collect()
}

/// The fixed oracle corpus: (name, n, facets).
pub fn fixed_corpus() -> Vec<(&'static str, usize, Vec<Face>)> {
    let mut corpus = vec![
        ("C4", 4, cycle_faces(4)),
        ("C5", 5, cycle_faces(5)),
        ("octahedron", 6, octahedron_faces()),
        ("cube-prism", 8, cube_prism_faces()),
    ];
    for d in 2..=5 {
        corpus.push((
            match d {
                2 => "simplex-boundary:2",
                3 => "simplex-boundary:3",
                4 => "simplex-boundary:4",
                _ => "simplex-boundary:5",
            },
            d + 1,
            simplex_boundary_faces(d),
        ));
    }
    corpus
}

// ---------------------------------------------------------------------
// Conversions between oracle faces and library types.
// ---------------------------------------------------------------------

pub fn to_complex(n: usize, faces: &[Face]) -> SimplicialComplex {
    let sets: Vec<VertexSet> = faces
        .iter()
        .map(|f| VertexSet::from_labels(f.iter().copied()))
        .collect();
    SimplicialComplex::from_facets(n, &sets).expect("corpus complexes are well formed")
}

pub fn complex_faces(cx: &SimplicialComplex) -> Vec<Face> {
    cx.facets().iter().map(|f| f.iter().collect()).collect()
}

pub fn vset_to_face(v: VertexSet) -> Face {
    v.iter().collect()
}

pub fn table_to_map(table: &GradedBettiTable) -> BTreeMap<(usize, usize), u64> {
    table.entries().map(|(i, j, b)| ((i, j), b)).collect()
}

pub fn betti_to_map(b: &srtk::homology::BettiVector) -> BTreeMap<i64, u64> {
    b.nonzero().into_iter().map(|(d, x)| (d as i64, x)).collect()
}

// ---------------------------------------------------------------------
// Seeded random graphs for the connectivity oracle.
// ---------------------------------------------------------------------

pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }
}

/// Random simple graph on 1..=n with the given edge density.
pub fn random_graph(n: usize, density: f64, rng: &mut SplitMix) -> srtk::graph::Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.next_f64() < density {
                edges.push((u, v));
            }
        }
    }
    srtk::graph::Graph::new(VertexSet::full(n), edges)
}

pub fn petersen_graph() -> srtk::graph::Graph {
    let outer = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)];
    let spokes = [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)];
    let inner = [(6, 8), (8, 10), (10, 7), (7, 9), (9, 6)];
    let edges = outer.iter().chain(&spokes).chain(&inner).copied();
    srtk::graph::Graph::new(VertexSet::full(10), edges)
}
