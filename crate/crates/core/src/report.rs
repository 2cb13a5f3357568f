//! The one-shot analysis report: everything the toolkit knows about a
//! single complex, in text or JSON form.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{ComplexPredicates, SimplicialComplex};
use crate::connectivity::vertex_connectivity;
use crate::homology::{reduced_betti, BettiVector, FieldSpec};
use crate::regularity::{GradedBettiTable, RegularityError, RegularityResult, SubsetHomologyTable};
use crate::theorems::{certify_with_scan, CycleCertificate};
use crate::vset::VertexSet;

/// Homological data over one coefficient field.
#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    pub field: FieldSpec,
    pub reduced_betti: BettiVector,
    pub betti_table: GradedBettiTable,
    pub regularity: RegularityResult,
}

/// Full analysis of one complex.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub input: String,
    pub n: usize,
    pub dim: i32,
    pub facet_count: usize,
    pub predicates: ComplexPredicates,
    /// `None` when the face ideal is zero (full simplex).
    pub max_nonface_degree: Option<usize>,
    pub minimal_nonfaces: Vec<VertexSet>,
    pub fields: Vec<FieldReport>,
    /// `None` when the skeleton has fewer than two vertices.
    pub kappa: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_separator: Option<VertexSet>,
    pub certificate: Option<CycleCertificate>,
    pub notes: Vec<String>,
}

/// Runs the whole pipeline on one complex.
pub fn analyze(
    cx: &SimplicialComplex,
    input: &str,
    fields: &[FieldSpec],
    cap: usize,
) -> Result<AnalyzeReport, RegularityError> {
    let predicates = cx.predicates();
    let minimal_nonfaces = cx.minimal_nonfaces_unchecked();
    let max_nonface_degree = minimal_nonfaces.last().map(|m| m.len());
    let mut notes = Vec::new();
    if max_nonface_degree.is_none() {
        notes.push("the face ideal is zero (full simplex); s is undefined".to_string());
    }

    let mut field_reports = Vec::new();
    let mut certificate = None;
    for &field in fields {
        let scan = SubsetHomologyTable::compute(cx, field, cap)?;
        let betti = reduced_betti(cx, field);
        if certificate.is_none() {
            if let Some(h) = betti.top_nonzero_degree().filter(|&h| h >= 0) {
                certificate = certify_with_scan(cx, &scan, h);
            }
        }
        field_reports.push(FieldReport {
            field,
            reduced_betti: betti,
            regularity: scan.regularity(),
            betti_table: scan.betti_table().clone(),
        });
    }
    if certificate.is_none() {
        let list: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        notes.push(format!(
            "no vertex-minimal cycle certificate over {{{}}}; other fields were not tried",
            list.join(", ")
        ));
    }

    let (kappa, min_separator) = if cx.vertex_count() >= 2 {
        let conn = vertex_connectivity(&cx.one_skeleton())
            .expect("connectivity is defined for >= 2 vertices");
        (Some(conn.kappa), Some(conn.min_separator))
    } else {
        (None, None)
    };

    Ok(AnalyzeReport {
        input: input.to_string(),
        n: cx.vertex_count(),
        dim: cx.dim(),
        facet_count: cx.facet_count(),
        predicates,
        max_nonface_degree,
        minimal_nonfaces,
        fields: field_reports,
        kappa,
        min_separator,
        certificate,
        notes,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Human-readable rendering of an analysis report.
pub fn render_analyze_text(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input: {}", r.input);
    let _ = writeln!(out, "n: {}  dim: {}  facets: {}", r.n, r.dim, r.facet_count);
    let _ = writeln!(
        out,
        "pure: {}  flag: {}  strongly connected: {}  pseudomanifold: {}",
        yes_no(r.predicates.is_pure),
        yes_no(r.predicates.is_flag),
        yes_no(r.predicates.is_strongly_connected),
        yes_no(r.predicates.is_pseudomanifold),
    );
    match &r.predicates.ridge_degrees {
        Some(degs) if degs.is_empty() => {
            let _ = writeln!(out, "ridge degrees: none");
        }
        Some(degs) => {
            let all = degs[0];
            if degs.iter().all(|&d| d == all) {
                let _ = writeln!(out, "ridge degrees: all {} ({} ridges)", all, degs.len());
            } else {
                let list: Vec<String> = degs.iter().map(|d| d.to_string()).collect();
                let _ = writeln!(out, "ridge degrees: {}", list.join(","));
            }
        }
        None => {
            let _ = writeln!(out, "ridge degrees: undefined (not pure)");
        }
    }
    match r.max_nonface_degree {
        Some(s) => {
            let sets: Vec<String> = r.minimal_nonfaces.iter().map(|m| m.to_string()).collect();
            let _ = writeln!(
                out,
                "minimal nonfaces ({}, s = {}): {}",
                r.minimal_nonfaces.len(),
                s,
                sets.join(" ")
            );
        }
        None => {
            let _ = writeln!(out, "minimal nonfaces: none (full simplex)");
        }
    }
    for f in &r.fields {
        let _ = writeln!(out, "field {}:", f.field);
        let _ = writeln!(out, "  reduced betti: {}", f.reduced_betti);
        let _ = writeln!(
            out,
            "  regularity: {}  witness: T = {}, h = {}",
            f.regularity.reg, f.regularity.witness_subset, f.regularity.witness_degree
        );
        let _ = writeln!(out, "  betti table:");
        for line in f.betti_table.render_text().lines() {
            let _ = writeln!(out, "    {line}");
        }
    }
    match (r.kappa, &r.min_separator) {
        (Some(k), Some(sep)) if !sep.is_empty() => {
            let _ = writeln!(out, "vertex connectivity: kappa = {k}  min separator: {sep}");
        }
        (Some(k), _) => {
            let _ = writeln!(out, "vertex connectivity: kappa = {k}");
        }
        _ => {
            let _ = writeln!(out, "vertex connectivity: undefined (fewer than 2 vertices)");
        }
    }
    match &r.certificate {
        Some(c) => {
            let _ = writeln!(
                out,
                "certificate: vertex-minimal {}-cycle over {} (betti = {}, proper subsets checked: {})",
                c.h, c.field, c.full_set_betti, c.checked_subsets
            );
        }
        None => {
            let _ = writeln!(out, "certificate: none");
        }
    }
    for note in &r.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::octahedron;

    #[test]
    fn octahedron_report() {
        let report = analyze(
            &octahedron(),
            "octahedron",
            &[FieldSpec::GF2, FieldSpec::GF3],
            22,
        )
        .unwrap();
        assert_eq!(report.n, 6);
        assert_eq!(report.dim, 2);
        assert_eq!(report.max_nonface_degree, Some(2));
        assert_eq!(report.minimal_nonfaces.len(), 3);
        assert_eq!(report.kappa, Some(4));
        assert_eq!(report.fields.len(), 2);
        for f in &report.fields {
            assert_eq!(f.regularity.reg, 3);
        }
        let cert = report.certificate.expect("octahedron certifies");
        assert_eq!(cert.h, 2);

        let text = render_analyze_text(&report);
        assert!(text.contains("pure: yes"));
        assert!(text.contains("pseudomanifold: yes"));
        assert!(text.contains("regularity: 3"));
        assert!(text.contains("kappa = 4"));
        assert!(text.contains("vertex-minimal 2-cycle over GF(2)"));

        // JSON form is serializable and stable in field order.
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(json.contains("\"input\": \"octahedron\""));
    }

    #[test]
    fn point_report_has_no_connectivity() {
        let cx = SimplicialComplex::from_facets(1, &[VertexSet::from_labels([1])]).unwrap();
        let report = analyze(&cx, "point", &[FieldSpec::GF2], 22).unwrap();
        assert_eq!(report.kappa, None);
        assert!(report.certificate.is_none());
        let text = render_analyze_text(&report);
        assert!(text.contains("undefined (fewer than 2 vertices)"));
    }
}
