//! Graded Betti tables via Hochster's formula, Castelnuovo-Mumford
//! regularity, and the two restriction-stable ("suitable") upper bounds.
//!
//! The expensive object is [`SubsetHomologyTable`]: one pass over all
//! 2^n vertex subsets that records, per subset, which homology degrees
//! of the restriction are nonzero, folds the dimensions into the graded
//! Betti table, and closes the per-subset regularities over the subset
//! lattice. Everything downstream (regularity witnesses, suitability
//! sweeps, separator checks) reads from this one store.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::homology::{betti_of_restriction, FieldSpec};
use crate::vset::VertexSet;

/// Default ceiling for 2^n subset enumeration; beyond it callers must
/// opt in explicitly.
pub const DEFAULT_ENUMERATION_CAP: usize = 22;

/// Absolute ceiling, matching the CLI contract. Enumeration above this
/// is refused regardless of flags.
pub const HARD_ENUMERATION_CEILING: usize = 26;

/// Subsets are dispatched to worker threads in blocks of this many.
const CHUNK_BITS: usize = 14;

/// Slop absorbed when comparing an integer regularity against a bound
/// evaluated in floating point.
pub const REAL_COMPARISON_EPSILON: f64 = 9.094947017729282e-13; // 2^-40

#[derive(Debug, Error, PartialEq)]
pub enum RegularityError {
    #[error("complex has {n} vertices, above the enumeration cap {cap} (use --force to raise it)")]
    CapExceeded { n: usize, cap: usize },
    #[error("generator degree bound s = {0} is degenerate; bounds need s >= 2")]
    DegenerateS(usize),
    #[error("bound undefined: {0}")]
    DomainError(String),
    #[error("hypotheses not met: {0}")]
    HypothesisUnmet(String),
}

/// Graded Betti numbers of the Stanley-Reisner ring, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBettiTable {
    pub n: usize,
    pub field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

impl GradedBettiTable {
    fn new(n: usize, field: FieldSpec) -> GradedBettiTable {
        GradedBettiTable { n, field, entries: BTreeMap::new() }
    }

    fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, beta)` ascending by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// `max { j - i : beta_{i,j} != 0 }`.
    pub fn regularity(&self) -> usize {
        self.entries
            .keys()
            .map(|&(i, j)| j - i)
            .max()
            .expect("a Betti table always holds beta_{0,0}")
    }

    /// Text layout with one row per slope `j - i` and one column per
    /// homological degree `i`; entry at (row r, column i) is
    /// `beta_{i, i+r}`.
    pub fn render_text(&self) -> String {
        let max_i = self.projective_dimension();
        let max_r = self.regularity();
        let cell = |i: usize, r: usize| -> String {
            let b = self.get(i, i + r);
            if b == 0 {
                ".".to_string()
            } else {
                b.to_string()
            }
        };
        let total = |i: usize| -> u64 { (0..=max_r).map(|r| self.get(i, i + r)).sum() };
        let mut widths = vec![1usize; max_i + 1];
        for (w, i) in widths.iter_mut().zip(0..) {
            *w = (0..=max_r)
                .map(|r| cell(i, r).len())
                .chain([total(i).to_string().len(), format!("{i}").len()])
                .max()
                .unwrap();
        }
        let mut out = String::new();
        let label_w = format!("{max_r}").len().max("total".len());
        let _ = write!(out, "{:>label_w$}:", "");
        for (i, w) in widths.iter().enumerate() {
            let _ = write!(out, " {:>w$}", i);
        }
        out.push('\n');
        let _ = write!(out, "{:>label_w$}:", "total");
        for (i, w) in widths.iter().enumerate() {
            let _ = write!(out, " {:>w$}", total(i));
        }
        out.push('\n');
        for r in 0..=max_r {
            let _ = write!(out, "{:>label_w$}:", r);
            for (i, w) in widths.iter().enumerate() {
                let _ = write!(out, " {:>w$}", cell(i, r));
            }
            out.push('\n');
        }
        out
    }
}

impl Serialize for GradedBettiTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: usize,
            j: usize,
            beta: u64,
        }
        let mut st = serializer.serialize_struct("GradedBettiTable", 3)?;
        st.serialize_field("field", &self.field)?;
        st.serialize_field("n", &self.n)?;
        let entries: Vec<Entry> =
            self.entries().map(|(i, j, beta)| Entry { i, j, beta }).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

/// Regularity together with a witnessing restriction: `H~_h(Δ|_T) != 0`
/// and `h + 1 = reg`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityResult {
    pub reg: usize,
    pub witness_subset: VertexSet,
    pub witness_degree: i32,
}

/// Per-subset homology data for a whole complex over one field.
pub struct SubsetHomologyTable {
    n: usize,
    field: FieldSpec,
    /// Bit `deg + 1` of `nonzero[mask]` is set iff the restriction to
    /// `mask` has nonzero reduced homology in degree `deg`.
    nonzero: Vec<u32>,
    /// Regularity of `k[Δ|_T]` for every subset `T`, i.e. the maximum
    /// of `top_degree + 1` over all subsets of `T`.
    reg: Vec<u8>,
    table: GradedBettiTable,
}

impl SubsetHomologyTable {
    /// Runs the full 2^n scan. The complex must live on a contiguous
    /// universe `1..=n`, and `n` must not exceed `cap`.
    pub fn compute(
        cx: &SimplicialComplex,
        field: FieldSpec,
        cap: usize,
    ) -> Result<SubsetHomologyTable, RegularityError> {
        assert!(cx.is_contiguous(), "subset scan requires a contiguous vertex universe");
        let n = cx.vertex_count();
        let effective_cap = cap.min(HARD_ENUMERATION_CEILING);
        if n > effective_cap {
            return Err(RegularityError::CapExceeded { n, cap: effective_cap });
        }
        let total = 1usize << n;
        let chunk = 1usize << CHUNK_BITS.min(n);
        let facets = cx.facets().to_vec();

        let mut nonzero = vec![0u32; total];
        let side = n + 1;
        let chunk_tables: Vec<Vec<u64>> = nonzero
            .par_chunks_mut(chunk)
            .enumerate()
            .map(|(ci, slice)| {
                let base = ci * chunk;
                let mut acc = vec![0u64; side * side];
                for (off, cell) in slice.iter_mut().enumerate() {
                    let t = (base + off) as u64;
                    let bv = betti_of_restriction(&facets, t, field);
                    let j = t.count_ones() as usize;
                    let mut bits = 0u32;
                    for (deg, dim) in bv.nonzero() {
                        bits |= 1 << (deg + 1);
                        let i = j - (deg + 1) as usize;
                        acc[i * side + j] += dim;
                    }
                    *cell = bits;
                }
                acc
            })
            .collect();

        let mut table = GradedBettiTable::new(n, field);
        for acc in chunk_tables {
            for i in 0..side {
                for j in 0..side {
                    table.add(i, j, acc[i * side + j]);
                }
            }
        }

        // Close top degrees over the subset lattice: after the sweep,
        // reg[T] = max over U ⊆ T of (top nonzero degree of Δ|_U) + 1.
        let mut reg: Vec<u8> = nonzero
            .iter()
            .map(|&bits| if bits == 0 { 0 } else { (31 - bits.leading_zeros()) as u8 })
            .collect();
        for b in 0..n {
            let bit = 1usize << b;
            for m in 0..total {
                if m & bit != 0 && reg[m ^ bit] > reg[m] {
                    reg[m] = reg[m ^ bit];
                }
            }
        }

        Ok(SubsetHomologyTable { n, field, nonzero, reg, table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn betti_table(&self) -> &GradedBettiTable {
        &self.table
    }

    fn index(&self, t: VertexSet) -> usize {
        let m = t.mask() as usize;
        debug_assert!(m < self.nonzero.len());
        m
    }

    /// Is `H~_degree(Δ|_T)` nonzero?
    pub fn homology_nonzero(&self, t: VertexSet, degree: i32) -> bool {
        let bit = degree + 1;
        if bit < 0 || bit > 31 {
            return false;
        }
        self.nonzero[self.index(t)] & (1u32 << bit) != 0
    }

    /// Largest degree with nonzero homology in the restriction, if any.
    pub fn top_degree(&self, t: VertexSet) -> Option<i32> {
        let bits = self.nonzero[self.index(t)];
        if bits == 0 {
            None
        } else {
            Some((31 - bits.leading_zeros()) as i32 - 1)
        }
    }

    /// Regularity of `k[Δ|_T]`.
    pub fn restriction_regularity(&self, t: VertexSet) -> usize {
        self.reg[self.index(t)] as usize
    }

    /// Regularity of the whole complex, computed from the restriction
    /// scan, cross-checked against the Betti-table formula, and paired
    /// with a witness restriction.
    pub fn regularity(&self) -> RegularityResult {
        let full = VertexSet::full(self.n);
        let reg = self.restriction_regularity(full);
        let table_reg = self.table.regularity();
        assert_eq!(
            reg, table_reg,
            "restriction-homology and Betti-table regularity must agree"
        );
        let bit = 1u32 << reg; // degree reg - 1 sits at bit reg
        let mask = self
            .nonzero
            .iter()
            .position(|&bits| bits & bit != 0)
            .expect("a witness subset must exist at the top degree");
        RegularityResult {
            reg,
            witness_subset: VertexSet::from_mask(mask as u64),
            witness_degree: reg as i32 - 1,
        }
    }
}

/// `beta_{i,j} = sum over |T| = j of dim H~_{j-i-1}(Δ|_T)`, by full
/// subset enumeration.
pub fn hochster_table(
    cx: &SimplicialComplex,
    field: FieldSpec,
    cap: usize,
) -> Result<GradedBettiTable, RegularityError> {
    Ok(SubsetHomologyTable::compute(cx, field, cap)?.table)
}

/// Castelnuovo-Mumford regularity of `k[Δ]` with witness.
pub fn regularity(
    cx: &SimplicialComplex,
    field: FieldSpec,
    cap: usize,
) -> Result<RegularityResult, RegularityError> {
    Ok(SubsetHomologyTable::compute(cx, field, cap)?.regularity())
}

/// Outcome of the Taylor-resolution support test `j <= s * i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCheck {
    pub holds: bool,
    /// Entries `(i, j)` with `i >= 1`, `beta_{i,j} != 0` and `j > s*i`.
    pub violations: Vec<(usize, usize)>,
}

/// Checks that every nonzero `beta_{i,j}` with `i >= 1` satisfies
/// `j <= s * i`. A violation falsifies the computation, not the bound.
pub fn taylor_support_check(table: &GradedBettiTable, s: usize) -> SupportCheck {
    let violations: Vec<(usize, usize)> = table
        .entries()
        .filter(|&(i, j, _)| i >= 1 && j > s * i)
        .map(|(i, j, _)| (i, j))
        .collect();
    SupportCheck { holds: violations.is_empty(), violations }
}

/// The suitable bound `n (s - 1) / s` as an exact rational.
pub fn taylor_bound(n: usize, s: usize) -> Result<Ratio<i64>, RegularityError> {
    if s < 2 {
        return Err(RegularityError::DegenerateS(s));
    }
    Ok(Ratio::new(n as i64 * (s as i64 - 1), s as i64))
}

/// Both branches of the log-regularity bound for flag complexes without
/// short induced cycles, and their minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DhsBound {
    pub minimum: f64,
    pub branch1: f64,
    pub branch2: f64,
    pub first_branch_wins: bool,
}

/// Evaluates `min { log_b((n-1)/(k+1)) + 2,
/// log_b((n-1) ln b / (k+1) + 2/(k+4)) + 2 }` with `b = (k+4)/2`.
pub fn dhs_bound(n: usize, k: usize) -> Result<DhsBound, RegularityError> {
    if k < 1 {
        return Err(RegularityError::DomainError("k must be at least 1".into()));
    }
    if n < 2 {
        return Err(RegularityError::DomainError(format!(
            "log argument (n-1)/(k+1) is nonpositive for n = {n}"
        )));
    }
    let base = (k as f64 + 4.0) / 2.0;
    let ln_base = base.ln();
    let arg1 = (n as f64 - 1.0) / (k as f64 + 1.0);
    let arg2 = (n as f64 - 1.0) * ln_base / (k as f64 + 1.0) + 2.0 / (k as f64 + 4.0);
    let branch1 = arg1.ln() / ln_base + 2.0;
    let branch2 = arg2.ln() / ln_base + 2.0;
    Ok(DhsBound {
        minimum: branch1.min(branch2),
        branch1,
        branch2,
        first_branch_wins: branch1 <= branch2,
    })
}

/// Which suitable bound a sweep checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Taylor,
    Dhs,
}

impl std::str::FromStr for BoundKind {
    type Err = String;
    fn from_str(s: &str) -> Result<BoundKind, String> {
        match s {
            "taylor" => Ok(BoundKind::Taylor),
            "dhs" => Ok(BoundKind::Dhs),
            other => Err(format!("unknown bound '{other}' (expected taylor or dhs)")),
        }
    }
}

/// One restriction's slack against a bound; rational for the Taylor
/// bound, floating point for the log bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlackWitness {
    pub subset: VertexSet,
    pub reg: usize,
    pub bound: String,
    pub slack: f64,
}

/// Result of sweeping a suitable bound over every nonempty restriction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuitabilityReport {
    pub bound: BoundKind,
    /// Parameter the bound was instantiated with: for `dhs` the cycle
    /// exclusion parameter k (common to all restrictions); for `taylor`
    /// the generator degree bound s of the whole complex (restrictions
    /// use their own, never larger, s).
    pub parameter: usize,
    pub holds: bool,
    pub checked: u64,
    /// Restrictions skipped because the bound does not apply (zero face
    /// ideal for `taylor`, fewer than two vertices for `dhs`); their
    /// regularity is zero, so nothing is lost.
    pub skipped: u64,
    pub tightest: Option<SlackWitness>,
    pub violations: Vec<SlackWitness>,
}

/// Verifies `reg(k[Δ|_T]) <= bound(|T|, parameter)` for every nonempty
/// `T`, reporting the tightest restriction and any violations.
pub fn check_suitable(
    cx: &SimplicialComplex,
    bound: BoundKind,
    field: FieldSpec,
    cap: usize,
) -> Result<SuitabilityReport, RegularityError> {
    let scan = SubsetHomologyTable::compute(cx, field, cap)?;
    match bound {
        BoundKind::Taylor => check_suitable_taylor(cx, &scan),
        BoundKind::Dhs => check_suitable_dhs(cx, &scan),
    }
}

fn check_suitable_taylor(
    cx: &SimplicialComplex,
    scan: &SubsetHomologyTable,
) -> Result<SuitabilityReport, RegularityError> {
    let nonfaces = cx.minimal_nonfaces_unchecked();
    if nonfaces.is_empty() {
        return Err(RegularityError::HypothesisUnmet(
            "the Stanley-Reisner ideal is zero (full simplex), so s is undefined".into(),
        ));
    }
    let s_full = nonfaces.last().unwrap().len();
    let mut report = SuitabilityReport {
        bound: BoundKind::Taylor,
        parameter: s_full,
        holds: true,
        checked: 0,
        skipped: 0,
        tightest: None,
        violations: Vec::new(),
    };
    let mut best_slack = Ratio::new(i64::MAX, 1);
    for t in cx.universe().subsets().skip(1) {
        // Minimal nonfaces of the restriction are exactly the minimal
        // nonfaces of the complex that fit inside T.
        let s_t = nonfaces.iter().filter(|m| m.is_subset_of(t)).map(|m| m.len()).max();
        let reg_t = scan.restriction_regularity(t);
        let Some(s_t) = s_t else {
            debug_assert_eq!(reg_t, 0, "a full-simplex restriction has regularity 0");
            report.skipped += 1;
            continue;
        };
        let bound_val = taylor_bound(t.len(), s_t)?;
        report.checked += 1;
        let slack = bound_val - Ratio::new(reg_t as i64, 1);
        let witness = || SlackWitness {
            subset: t,
            reg: reg_t,
            bound: format_ratio(bound_val),
            slack: ratio_to_f64(slack),
        };
        if Ratio::new(reg_t as i64, 1) > bound_val {
            report.holds = false;
            report.violations.push(witness());
        }
        if slack < best_slack {
            best_slack = slack;
            report.tightest = Some(witness());
        }
    }
    Ok(report)
}

fn check_suitable_dhs(
    cx: &SimplicialComplex,
    scan: &SubsetHomologyTable,
) -> Result<SuitabilityReport, RegularityError> {
    let k = dhs_parameter(cx)?;
    let mut report = SuitabilityReport {
        bound: BoundKind::Dhs,
        parameter: k,
        holds: true,
        checked: 0,
        skipped: 0,
        tightest: None,
        violations: Vec::new(),
    };
    let mut best_slack = f64::INFINITY;
    for t in cx.universe().subsets().skip(1) {
        let reg_t = scan.restriction_regularity(t);
        if t.len() < 2 {
            debug_assert_eq!(reg_t, 0);
            report.skipped += 1;
            continue;
        }
        let b = dhs_bound(t.len(), k)?;
        report.checked += 1;
        let slack = b.minimum - reg_t as f64;
        let witness = || SlackWitness {
            subset: t,
            reg: reg_t,
            bound: format!("{:.6}", b.minimum),
            slack,
        };
        if (reg_t as f64) > floor_guarded(b.minimum) as f64 {
            report.holds = false;
            report.violations.push(witness());
        }
        if slack < best_slack {
            best_slack = slack;
            report.tightest = Some(witness());
        }
    }
    Ok(report)
}

/// Largest `k` for which the flag/no-short-hole hypotheses hold on the
/// complex. A chordal skeleton satisfies them for every `k`; the number
/// of vertices is used as a finite stand-in, which only weakens the
/// resulting bound.
pub fn dhs_parameter(cx: &SimplicialComplex) -> Result<usize, RegularityError> {
    let predicates = cx.predicates();
    if !predicates.is_flag {
        return Err(RegularityError::HypothesisUnmet(
            "the complex is not flag; the log bound needs a clique complex".into(),
        ));
    }
    let skeleton = cx.one_skeleton();
    match skeleton.shortest_hole() {
        Some(4) => Err(RegularityError::HypothesisUnmet(
            "the 1-skeleton has an induced 4-cycle, so no k >= 1 is admissible".into(),
        )),
        Some(hole) => Ok(hole - 4),
        None => Ok(cx.vertex_count().max(1)),
    }
}

/// `floor(x + eps)` with the crate's floating-point guard; compares an
/// integer quantity against a real-valued bound.
pub fn floor_guarded(x: f64) -> i64 {
    (x + REAL_COMPARISON_EPSILON).floor() as i64
}

/// `ceil(x - eps)`: the guarded ceiling for bound formulas whose exact
/// value may land on an integer.
pub fn ceil_guarded(x: f64) -> i64 {
    (x - REAL_COMPARISON_EPSILON).ceil() as i64
}

fn format_ratio(r: Ratio<i64>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
