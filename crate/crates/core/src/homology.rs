//! Reduced simplicial homology over a prime field, computed from
//! boundary-matrix ranks.
//!
//! Chain spaces are indexed by face cardinality `k` (homological degree
//! `k - 1`), with the empty face as the lone generator in cardinality 0.
//! That convention makes the augmentation map an ordinary boundary
//! matrix and gives the complex `{∅}` a one-dimensional homology in
//! degree -1, which is exactly what the Hochster sum needs at `T = ∅`.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::gf::{is_prime, Gf2Matrix, GfPrimeMatrix};
use crate::vset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("{0} is not prime")]
    NotPrime(u32),
}

/// The prime field GF(p) homology coefficients live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldSpec {
    p: u32,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec { p: 2 };
    pub const GF3: FieldSpec = FieldSpec { p: 3 };

    pub fn new(p: u32) -> Result<FieldSpec, HomologyError> {
        if is_prime(p) {
            Ok(FieldSpec { p })
        } else {
            Err(HomologyError::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        self.p
    }

    /// The default field list used when the caller does not pick one.
    pub fn default_list() -> Vec<FieldSpec> {
        vec![FieldSpec::GF2, FieldSpec::GF3]
    }
}

impl Default for FieldSpec {
    fn default() -> FieldSpec {
        FieldSpec::GF2
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u32(self.p)
    }
}

/// Reduced Betti numbers of one complex: `dims[k]` is the dimension of
/// the homology in degree `k - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    dims: Vec<u64>,
}

impl BettiVector {
    pub(crate) fn from_cardinality_dims(dims: Vec<u64>) -> BettiVector {
        BettiVector { dims }
    }

    /// Dimension of reduced homology in the given degree (-1 and up).
    pub fn get(&self, degree: i32) -> u64 {
        let k = degree + 1;
        if k < 0 {
            return 0;
        }
        self.dims.get(k as usize).copied().unwrap_or(0)
    }

    /// Largest degree with nonzero homology.
    pub fn top_nonzero_degree(&self) -> Option<i32> {
        self.dims
            .iter()
            .rposition(|&d| d > 0)
            .map(|k| k as i32 - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Nonzero entries as `(degree, dim)`, ascending by degree.
    pub fn nonzero(&self) -> Vec<(i32, u64)> {
        self.dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (k as i32 - 1, d))
            .collect()
    }

    /// Alternating sum over all degrees including -1 (the reduced Euler
    /// characteristic).
    pub fn euler(&self) -> i64 {
        let mut acc = 0i64;
        for (k, &d) in self.dims.iter().enumerate() {
            let degree = k as i32 - 1;
            let sign = if degree.rem_euclid(2) == 0 { 1 } else { -1 };
            acc += sign * d as i64;
        }
        acc
    }
}

impl Serialize for BettiVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            degree: i32,
            dim: u64,
        }
        let nz = self.nonzero();
        let mut seq = serializer.serialize_seq(Some(nz.len()))?;
        for (degree, dim) in nz {
            seq.serialize_element(&Entry { degree, dim })?;
        }
        seq.end()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (deg, dim)) in self.nonzero().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "b~{deg}={dim}")?;
        }
        Ok(())
    }
}

/// All faces of the restriction of `facets` to `t`, grouped by
/// cardinality and sorted ascending within each level. `levels[0]` is
/// always the singleton list holding the empty face.
pub(crate) fn face_levels(facets: &[VertexSet], t: u64) -> Vec<Vec<u64>> {
    let mut seeds: Vec<u64> = facets.iter().map(|f| f.mask() & t).collect();
    seeds.push(0);
    seeds.sort_unstable();
    seeds.dedup();
    let max_k = seeds.iter().map(|m| m.count_ones() as usize).max().unwrap();
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); max_k + 1];
    for m in seeds {
        levels[m.count_ones() as usize].push(m);
    }
    for k in (1..=max_k).rev() {
        levels[k].sort_unstable();
        levels[k].dedup();
        let mut children = Vec::with_capacity(levels[k].len() * k);
        for &face in &levels[k] {
            let mut bits = face;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                children.push(face ^ b);
                bits ^= b;
            }
        }
        levels[k - 1].extend(children);
    }
    levels[0].sort_unstable();
    levels[0].dedup();
    debug_assert_eq!(levels[0], vec![0]);
    levels
}

/// Rank of the boundary map from cardinality level `k` to `k - 1`.
fn level_rank(upper: &[u64], lower: &[u64], p: u32) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    if p == 2 {
        let mut m = Gf2Matrix::new(lower.len());
        let mut cols = Vec::with_capacity(8);
        for &face in upper {
            cols.clear();
            let mut bits = face;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                let idx = lower.binary_search(&(face ^ b)).expect("missing boundary face");
                cols.push(idx);
                bits ^= b;
            }
            m.push_row_sparse(&cols);
        }
        m.rank()
    } else {
        let mut m = GfPrimeMatrix::new(lower.len(), p);
        let mut entries = Vec::with_capacity(8);
        for &face in upper {
            entries.clear();
            let mut bits = face;
            let mut position = 0i64;
            while bits != 0 {
                let b = bits & bits.wrapping_neg();
                let idx = lower.binary_search(&(face ^ b)).expect("missing boundary face");
                let sign = if position % 2 == 0 { 1 } else { -1 };
                entries.push((idx, sign));
                position += 1;
                bits ^= b;
            }
            m.push_row_sparse(&entries);
        }
        m.rank()
    }
}

/// Reduced Betti numbers of the restriction to `t`; the crate-wide
/// homology kernel.
pub(crate) fn betti_of_restriction(facets: &[VertexSet], t: u64, field: FieldSpec) -> BettiVector {
    let levels = face_levels(facets, t);
    let max_k = levels.len() - 1;
    let mut ranks = vec![0usize; max_k + 2];
    for k in 1..=max_k {
        ranks[k] = level_rank(&levels[k], &levels[k - 1], field.characteristic());
    }
    let mut dims = Vec::with_capacity(max_k + 1);
    for k in 0..=max_k {
        let f_k = levels[k].len();
        dims.push((f_k - ranks[k] - ranks[k + 1]) as u64);
    }
    BettiVector::from_cardinality_dims(dims)
}

/// Reduced Betti numbers of a complex over GF(p).
pub fn reduced_betti(cx: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    betti_of_restriction(cx.facets(), cx.universe().mask(), field)
}

/// Reduced Betti numbers of the restriction `Δ|_T`.
pub fn reduced_betti_restricted(
    cx: &SimplicialComplex,
    t: VertexSet,
    field: FieldSpec,
) -> BettiVector {
    betti_of_restriction(cx.facets(), t.mask(), field)
}

/// A boundary matrix in its plain dense form: rows are the faces of
/// dimension `degree - 1` (the empty face for degree 0), columns the
/// faces of dimension `degree`, entries the alternating incidence signs
/// reduced mod p.
#[derive(Debug, Clone)]
pub struct BoundaryMatrix {
    pub degree: i32,
    pub field: FieldSpec,
    pub row_faces: Vec<VertexSet>,
    pub col_faces: Vec<VertexSet>,
    entries: Vec<u32>,
}

impl BoundaryMatrix {
    pub fn nrows(&self) -> usize {
        self.row_faces.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_faces.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.ncols() + col]
    }

    pub fn rank(&self) -> usize {
        let p = self.field.characteristic();
        if p == 2 {
            let mut m = Gf2Matrix::new(self.ncols());
            for r in 0..self.nrows() {
                let cols: Vec<usize> =
                    (0..self.ncols()).filter(|&c| self.entry(r, c) != 0).collect();
                m.push_row_sparse(&cols);
            }
            m.rank()
        } else {
            let mut m = GfPrimeMatrix::new(self.ncols(), p);
            for r in 0..self.nrows() {
                let entries: Vec<(usize, i64)> = (0..self.ncols())
                    .map(|c| (c, self.entry(r, c) as i64))
                    .collect();
                m.push_row_sparse(&entries);
            }
            m.rank()
        }
    }

    /// Matrix product `self * next` over GF(p), row-major.
    pub fn compose(&self, next: &BoundaryMatrix) -> Vec<u32> {
        assert_eq!(self.ncols(), next.nrows(), "boundary degrees must be consecutive");
        let p = self.field.characteristic() as u64;
        let (n, m, k) = (self.nrows(), next.ncols(), self.ncols());
        let mut out = vec![0u32; n * m];
        for r in 0..n {
            for x in 0..k {
                let a = self.entry(r, x) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..m {
                    let b = next.entry(x, c) as u64;
                    let cell = &mut out[r * m + c];
                    *cell = ((*cell as u64 + a * b) % p) as u32;
                }
            }
        }
        out
    }
}

/// The boundary matrix of a complex in homological degree `degree`,
/// with `0 <= degree <= dim + 1`. Degree 0 yields the augmentation row
/// onto the empty face.
pub fn boundary_matrix(cx: &SimplicialComplex, degree: i32, field: FieldSpec) -> BoundaryMatrix {
    assert!(
        degree >= 0 && degree <= cx.dim() + 1,
        "boundary degree {degree} outside 0..={}",
        cx.dim() + 1
    );
    let levels = face_levels(cx.facets(), cx.universe().mask());
    let k = (degree + 1) as usize;
    let empty = Vec::new();
    let upper = levels.get(k).unwrap_or(&empty);
    let lower = &levels[k - 1];
    let p = field.characteristic() as i64;
    let mut entries = vec![0u32; upper.len() * lower.len()];
    for (c, &face) in upper.iter().enumerate() {
        let mut bits = face;
        let mut position = 0i64;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            let r = lower.binary_search(&(face ^ b)).expect("missing boundary face");
            let sign: i64 = if position % 2 == 0 { 1 } else { -1 };
            entries[r * upper.len() + c] = sign.rem_euclid(p) as u32;
            position += 1;
            bits ^= b;
        }
    }
    BoundaryMatrix {
        degree,
        field,
        row_faces: lower.iter().map(|&m| VertexSet::from_mask(m)).collect(),
        col_faces: upper.iter().map(|&m| VertexSet::from_mask(m)).collect(),
        entries,
    }
}
