//! Vertex-minimal cycle certificates and machine verification of the
//! separator-regularity theorem, the connectivity corollaries, and the
//! two worked families.
//!
//! Statement names follow the CLI vocabulary: `theorem3` (disconnecting
//! sets force regularity of the complementary restriction), `corollary5`
//! (the ceil(sh/(s-1)) connectivity bound), `dhs-corollary` (the
//! exponential bound under flag/no-short-hole hypotheses), `example6`
//! (the tightness family), `example2` (the prism family), and
//! `taylor-suitability`.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::connectivity::{disconnecting_subsets, vertex_connectivity};
use crate::generators::{nevo_complex, prism_complex};
use crate::homology::{betti_of_restriction, reduced_betti, FieldSpec};
use crate::regularity::{
    ceil_guarded, check_suitable, BoundKind, RegularityError, SubsetHomologyTable,
};
use crate::vset::VertexSet;

/// Proof that a complex is a vertex-minimal h-cycle over one field:
/// homology in degree h is nonzero at the full vertex set and vanishes
/// on every proper restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleCertificate {
    pub h: i32,
    pub field: FieldSpec,
    pub full_set_betti: u64,
    pub checked_subsets: u64,
}

/// Verdict of one statement verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerificationStatus {
    Pass,
    Fail,
    HypothesisUnmet,
}

/// Witness data attached to a report; every numeric claim in a report
/// can be recomputed from these.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Certificate {
        h: i32,
        field: FieldSpec,
        full_set_betti: u64,
        checked_subsets: u64,
    },
    Connectivity {
        kappa: usize,
        min_separator: VertexSet,
    },
    GeneratorDegree {
        s: usize,
    },
    SeparatorSweep {
        disconnecting_sets: u64,
        min_regularity_slack: Option<i64>,
        all_nonvanishing: bool,
    },
    ConnectivityOutcome {
        s: usize,
        h: i32,
        kappa: usize,
        bound: u64,
        tight: bool,
    },
    DhsOutcome {
        k: usize,
        h: i32,
        kappa: usize,
        m: i64,
        guaranteed_floor: i64,
    },
    GridPoint {
        s: usize,
        h: usize,
        n: usize,
        expected_n: usize,
        r: usize,
        kappa: usize,
        bound: u64,
        sphere: bool,
        max_nonface_degree: usize,
        poles_nonadjacent: bool,
        pass: bool,
    },
    PrismInstance {
        d: usize,
        dim: i32,
        certified: bool,
        pure: bool,
        strongly_connected: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        ridge_degrees_all_one: Option<bool>,
    },
    Suitability {
        bound: BoundKind,
        parameter: usize,
        checked: u64,
        skipped: u64,
        violations: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        tightest_subset: Option<VertexSet>,
        #[serde(skip_serializing_if = "Option::is_none")]
        tightest_slack: Option<f64>,
    },
    Failure {
        subset: VertexSet,
        detail: String,
    },
    Note {
        text: String,
    },
}

/// Structured pass/fail record for one statement on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub statement: String,
    pub instance: String,
    pub status: VerificationStatus,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<std::collections::BTreeMap<String, f64>>,
}

impl VerificationReport {
    fn new(statement: &str, instance: &str) -> VerificationReport {
        VerificationReport {
            statement: statement.to_string(),
            instance: instance.to_string(),
            status: VerificationStatus::Pass,
            witnesses: Vec::new(),
            timings: None,
        }
    }

    fn unmet(mut self, reason: String) -> VerificationReport {
        self.status = VerificationStatus::HypothesisUnmet;
        self.witnesses.push(Witness::Note { text: reason });
        self
    }

    pub fn passed(&self) -> bool {
        self.status == VerificationStatus::Pass
    }
}

impl From<CycleCertificate> for Witness {
    fn from(c: CycleCertificate) -> Witness {
        Witness::Certificate {
            h: c.h,
            field: c.field,
            full_set_betti: c.full_set_betti,
            checked_subsets: c.checked_subsets,
        }
    }
}

/// Checks the vertex-minimal h-cycle property over each field in turn
/// and returns the first certifying field, if any. The scan over the
/// 2^n - 1 proper subsets exits early on the first violation.
pub fn is_vertex_minimal_cycle(
    cx: &SimplicialComplex,
    h: i32,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<Option<CycleCertificate>, RegularityError> {
    assert!(cx.is_contiguous(), "certification requires a contiguous universe");
    assert!(h >= 0, "cycle certificates live in degree >= 0");
    let n = cx.vertex_count();
    if n > cap {
        return Err(RegularityError::CapExceeded { n, cap });
    }
    let facets = cx.facets().to_vec();
    let full = (1u64 << n) - 1;
    for &field in fields {
        let full_set_betti = betti_of_restriction(&facets, full, field).get(h);
        if full_set_betti == 0 {
            continue;
        }
        const CHUNK: u64 = 1 << 14;
        let mut violated = false;
        let mut start = 0u64;
        while start < full && !violated {
            let end = (start + CHUNK).min(full);
            violated = (start..end)
                .into_par_iter()
                .any(|t| betti_of_restriction(&facets, t, field).get(h) != 0);
            start = end;
        }
        if !violated {
            return Ok(Some(CycleCertificate {
                h,
                field,
                full_set_betti,
                checked_subsets: full,
            }));
        }
    }
    Ok(None)
}

/// Certifies against an existing subset-homology scan (no extra
/// homology work). The scan's field is the certifying field.
pub fn certify_with_scan(
    cx: &SimplicialComplex,
    scan: &SubsetHomologyTable,
    h: i32,
) -> Option<CycleCertificate> {
    let full = VertexSet::full(scan.n());
    if !scan.homology_nonzero(full, h) {
        return None;
    }
    let violated = full
        .subsets()
        .take((1usize << scan.n()) - 1)
        .any(|t| scan.homology_nonzero(t, h));
    if violated {
        return None;
    }
    let full_set_betti = reduced_betti(cx, scan.field()).get(h);
    Some(CycleCertificate {
        h,
        field: scan.field(),
        full_set_betti,
        checked_subsets: (1u64 << scan.n()) - 1,
    })
}

/// Looks for a certificate at the top nonzero homology degree, trying
/// each field in order. Returns the certificate and the scan of the
/// certifying field for reuse.
pub fn find_certificate(
    cx: &SimplicialComplex,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<Option<(CycleCertificate, SubsetHomologyTable)>, RegularityError> {
    for &field in fields {
        let scan = SubsetHomologyTable::compute(cx, field, cap)?;
        let Some(h) = scan.top_degree(VertexSet::full(scan.n())) else {
            continue;
        };
        if h < 0 {
            continue;
        }
        if let Some(cert) = certify_with_scan(cx, &scan, h) {
            return Ok(Some((cert, scan)));
        }
    }
    Ok(None)
}

/// `ceil(s * h / (s - 1))`: the connectivity bound for a vertex-minimal
/// h-cycle whose face ideal is generated in degrees up to s.
pub fn balbarath_bound(s: usize, h: usize) -> Result<u64, RegularityError> {
    if s < 2 {
        return Err(RegularityError::DegenerateS(s));
    }
    Ok(((s * h) as u64).div_ceil(s as u64 - 1))
}

/// Both ceiling expressions of the exponential connectivity bound, their
/// maximum M, and the simplified floor guarantee `ceil((k/2)^(h-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DhsConnectivity {
    pub m: i64,
    pub first_term: i64,
    pub second_term: i64,
    pub guaranteed_floor: i64,
}

/// `M = max { ceil((k+1) b^(h-2) + 1),
/// ceil((k+1)/ln(b) (b^(h-2) - 2/(k+4)) + 1) }`, with `b = (k+4)/2`.
pub fn dhs_connectivity_m(k: usize, h: i32) -> Result<DhsConnectivity, RegularityError> {
    if k < 1 {
        return Err(RegularityError::DomainError("k must be at least 1".into()));
    }
    if h < 2 {
        return Err(RegularityError::DomainError(format!(
            "exponent h - 2 is negative for h = {h}; the bound is stated for h >= 2"
        )));
    }
    let kf = k as f64;
    let base = (kf + 4.0) / 2.0;
    let power = base.powi(h - 2);
    let first = ceil_guarded((kf + 1.0) * power + 1.0);
    let second = ceil_guarded((kf + 1.0) / base.ln() * (power - 2.0 / (kf + 4.0)) + 1.0);
    let m = first.max(second);
    let guaranteed_floor = ceil_guarded((kf / 2.0).powi(h - 1)).max(0);
    assert!(
        m >= guaranteed_floor,
        "the simplified guarantee can never exceed M (k={k}, h={h})"
    );
    Ok(DhsConnectivity { m, first_term: first, second_term: second, guaranteed_floor })
}

/// Statement `theorem3`: for a certified vertex-minimal h-cycle, every
/// vertex set T with a disconnected restriction forces
/// `reg(k[Δ|_complement]) >= h`, and the proof's stronger consequence
/// `H~_(h-1)(Δ|_complement) != 0`.
pub fn verify_separator_regularity(
    cx: &SimplicialComplex,
    instance: &str,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let mut report = VerificationReport::new("theorem3", instance);
    let Some((cert, scan)) = find_certificate(cx, fields, cap)? else {
        return Ok(report.unmet(format!(
            "no vertex-minimal cycle certificate over {}",
            field_list(fields)
        )));
    };
    report.witnesses.push(cert.into());
    let h = cert.h;
    let universe = cx.universe();
    let mut checked = 0u64;
    let mut min_slack: Option<i64> = None;
    let mut all_nonvanishing = true;
    for t in disconnecting_subsets(cx, cx.vertex_count(), cap)
        .map_err(|_| RegularityError::CapExceeded { n: cx.vertex_count(), cap })?
    {
        checked += 1;
        let complement = t.complement_in(universe);
        let reg = scan.restriction_regularity(complement) as i64;
        let slack = reg - h as i64;
        if slack < 0 {
            report.status = VerificationStatus::Fail;
            report.witnesses.push(Witness::Failure {
                subset: t,
                detail: format!("complement regularity {reg} is below h = {h}"),
            });
        }
        if !scan.homology_nonzero(complement, h - 1) {
            all_nonvanishing = false;
            report.status = VerificationStatus::Fail;
            report.witnesses.push(Witness::Failure {
                subset: t,
                detail: format!("complement has vanishing homology in degree {}", h - 1),
            });
        }
        min_slack = Some(min_slack.map_or(slack, |m| m.min(slack)));
    }
    report.witnesses.push(Witness::SeparatorSweep {
        disconnecting_sets: checked,
        min_regularity_slack: min_slack,
        all_nonvanishing,
    });
    Ok(report)
}

/// Statement `corollary5`: the 1-skeleton of a certified vertex-minimal
/// h-cycle with generator degree bound s is ceil(sh/(s-1))-connected.
pub fn verify_connectivity_bound(
    cx: &SimplicialComplex,
    instance: &str,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let mut report = VerificationReport::new("corollary5", instance);
    let Ok(s) = cx.max_nonface_degree() else {
        return Ok(report.unmet("the face ideal is zero (full simplex)".into()));
    };
    let Some((cert, _)) = find_certificate(cx, fields, cap)? else {
        return Ok(report.unmet(format!(
            "no vertex-minimal cycle certificate over {}",
            field_list(fields)
        )));
    };
    report.witnesses.push(cert.into());
    report.witnesses.push(Witness::GeneratorDegree { s });
    let conn = vertex_connectivity(&cx.one_skeleton())
        .map_err(|e| RegularityError::DomainError(e.to_string()))?;
    let bound = balbarath_bound(s, cert.h.max(0) as usize)?;
    let tight = conn.kappa as u64 == bound;
    if (conn.kappa as u64) < bound {
        report.status = VerificationStatus::Fail;
    }
    report.witnesses.push(Witness::Connectivity {
        kappa: conn.kappa,
        min_separator: conn.min_separator,
    });
    report.witnesses.push(Witness::ConnectivityOutcome {
        s,
        h: cert.h,
        kappa: conn.kappa,
        bound,
        tight,
    });
    Ok(report)
}

/// Statement `dhs-corollary`: under flag/no-short-hole hypotheses the
/// skeleton of a certified vertex-minimal h-cycle (h >= 2) is
/// M-connected for the exponential bound M.
pub fn verify_dhs_connectivity(
    cx: &SimplicialComplex,
    instance: &str,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let mut report = VerificationReport::new("dhs-corollary", instance);
    let k = match crate::regularity::dhs_parameter(cx) {
        Ok(k) => k,
        Err(RegularityError::HypothesisUnmet(reason)) => return Ok(report.unmet(reason)),
        Err(e) => return Err(e),
    };
    let Some((cert, _)) = find_certificate(cx, fields, cap)? else {
        return Ok(report.unmet(format!(
            "no vertex-minimal cycle certificate over {}",
            field_list(fields)
        )));
    };
    report.witnesses.push(cert.into());
    if cert.h < 2 {
        return Ok(report.unmet(format!(
            "certificate degree h = {} is below 2; the exponent h - 2 would be negative",
            cert.h
        )));
    }
    let bound = dhs_connectivity_m(k, cert.h)?;
    let conn = vertex_connectivity(&cx.one_skeleton())
        .map_err(|e| RegularityError::DomainError(e.to_string()))?;
    if (conn.kappa as i64) < bound.m {
        report.status = VerificationStatus::Fail;
    }
    report.witnesses.push(Witness::Connectivity {
        kappa: conn.kappa,
        min_separator: conn.min_separator,
    });
    report.witnesses.push(Witness::DhsOutcome {
        k,
        h: cert.h,
        kappa: conn.kappa,
        m: bound.m,
        guaranteed_floor: bound.guaranteed_floor,
    });
    Ok(report)
}

/// One grid point of statement `example6`: the generated complex has
/// exactly ceil(sh/(s-1)) + 2 vertices, is an h-sphere, has generator
/// degrees bounded by (and attaining) s, remainder r != 1, and its
/// skeleton connectivity equals the bound exactly.
pub fn verify_tightness_point(
    s: usize,
    h: usize,
    field: FieldSpec,
) -> Result<(Witness, bool), RegularityError> {
    let (cx, params) =
        nevo_complex(s, h).map_err(|e| RegularityError::DomainError(e.to_string()))?;
    let n = cx.vertex_count();
    let expected_n = params.vertex_count();
    let betti = reduced_betti(&cx, field);
    let sphere = betti.nonzero() == vec![(h as i32, 1)];
    let max_nonface_degree = cx.max_nonface_degree().unwrap_or(0);
    let bound = balbarath_bound(s, h)?;
    let conn = vertex_connectivity(&cx.one_skeleton())
        .map_err(|e| RegularityError::DomainError(e.to_string()))?;
    // The two join poles are the only nonadjacent pair guaranteed by
    // construction; removing everything else disconnects them.
    let skeleton = cx.one_skeleton();
    let poles_nonadjacent = !skeleton.is_adjacent(1, 2);
    let pass = n == expected_n
        && params.r != 1
        && sphere
        && max_nonface_degree == s
        && conn.kappa as u64 == bound
        && poles_nonadjacent;
    Ok((
        Witness::GridPoint {
            s,
            h,
            n,
            expected_n,
            r: params.r,
            kappa: conn.kappa,
            bound,
            sphere,
            max_nonface_degree,
            poles_nonadjacent,
            pass,
        },
        pass,
    ))
}

/// Statement `example6` over a parameter grid.
pub fn verify_tightness_family(
    grid: &[(usize, usize)],
    field: FieldSpec,
) -> Result<VerificationReport, RegularityError> {
    let instance = format!("nevo grid ({} points)", grid.len());
    let mut report = VerificationReport::new("example6", &instance);
    for &(s, h) in grid {
        let (witness, pass) = verify_tightness_point(s, h, field)?;
        if !pass {
            report.status = VerificationStatus::Fail;
        }
        report.witnesses.push(witness);
    }
    Ok(report)
}

/// Statement `example2`: the prism complex is a vertex-minimal 2-cycle;
/// for d = 3 it is pure but not strongly connected with all ridge
/// degrees 1, and for d >= 4 it is not pure.
pub fn verify_prism_family(
    d: usize,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let instance = format!("prism:{d}");
    let mut report = VerificationReport::new("example2", &instance);
    let cx = prism_complex(d).map_err(|e| RegularityError::DomainError(e.to_string()))?;
    let cert = is_vertex_minimal_cycle(&cx, 2, fields, cap)?;
    let predicates = cx.predicates();
    let ridge_degrees_all_one = predicates
        .ridge_degrees
        .as_ref()
        .map(|degs| degs.iter().all(|&x| x == 1));
    let mut pass = cert.is_some();
    match d {
        3 => {
            pass &= predicates.is_pure
                && !predicates.is_strongly_connected
                && ridge_degrees_all_one == Some(true);
        }
        _ if d >= 4 => pass &= !predicates.is_pure,
        _ => {}
    }
    if d == 2 {
        report.witnesses.push(Witness::Note {
            text: format!(
                "literal construction has dimension {} (quadrilateral faces span 3-simplices)",
                cx.dim()
            ),
        });
    }
    if let Some(cert) = cert {
        report.witnesses.push(cert.into());
    }
    report.witnesses.push(Witness::PrismInstance {
        d,
        dim: cx.dim(),
        certified: cert.is_some(),
        pure: predicates.is_pure,
        strongly_connected: predicates.is_strongly_connected,
        ridge_degrees_all_one,
    });
    if !pass {
        report.status = VerificationStatus::Fail;
    }
    Ok(report)
}

/// Statement `taylor-suitability`: the restriction sweep of the
/// n(s-1)/s bound.
pub fn verify_taylor_suitability(
    cx: &SimplicialComplex,
    instance: &str,
    field: FieldSpec,
    cap: usize,
) -> Result<VerificationReport, RegularityError> {
    let mut report = VerificationReport::new("taylor-suitability", instance);
    let sweep = match check_suitable(cx, BoundKind::Taylor, field, cap) {
        Ok(s) => s,
        Err(RegularityError::HypothesisUnmet(reason)) => return Ok(report.unmet(reason)),
        Err(e) => return Err(e),
    };
    if !sweep.holds {
        report.status = VerificationStatus::Fail;
        for v in &sweep.violations {
            report.witnesses.push(Witness::Failure {
                subset: v.subset,
                detail: format!("regularity {} exceeds bound {}", v.reg, v.bound),
            });
        }
    }
    report.witnesses.push(Witness::Suitability {
        bound: sweep.bound,
        parameter: sweep.parameter,
        checked: sweep.checked,
        skipped: sweep.skipped,
        violations: sweep.violations.len() as u64,
        tightest_subset: sweep.tightest.as_ref().map(|t| t.subset),
        tightest_slack: sweep.tightest.as_ref().map(|t| t.slack),
    });
    Ok(report)
}

fn field_list(fields: &[FieldSpec]) -> String {
    fields.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}
