//! The facet file format: one facet per line as whitespace-separated
//! positive integers, `#` starting a comment anywhere, and an optional
//! leading header `n <count>` (otherwise the vertex count defaults to
//! the largest label seen).

use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::vset::{VertexSet, MAX_VERTICES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FacetParseError {
    #[error("line {line}: '{token}' is not a positive vertex label")]
    BadToken { line: usize, token: String },
    #[error("line {line}: vertex labels start at 1")]
    ZeroVertex { line: usize },
    #[error("line {line}: vertex label {label} exceeds the supported maximum {MAX_VERTICES}")]
    LabelTooLarge { line: usize, label: usize },
    #[error("line {line}: malformed header (expected `n <count>`)")]
    BadHeader { line: usize },
    #[error("no facets found")]
    NoFaces,
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Parsed facet file: declared vertex count (if a header was present)
/// and the face list in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetFile {
    pub declared_n: Option<usize>,
    pub faces: Vec<VertexSet>,
}

pub fn parse_facet_text(text: &str) -> Result<FacetFile, FacetParseError> {
    let mut declared_n = None;
    let mut faces = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let first = tokens.next().unwrap();
        if first == "n" {
            if faces.is_empty() && declared_n.is_none() {
                let count = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or(FacetParseError::BadHeader { line })?;
                if tokens.next().is_some() {
                    return Err(FacetParseError::BadHeader { line });
                }
                declared_n = Some(count);
                continue;
            }
            return Err(FacetParseError::BadHeader { line });
        }
        let mut face = VertexSet::EMPTY;
        for token in std::iter::once(first).chain(tokens) {
            let label: usize = token
                .parse()
                .map_err(|_| FacetParseError::BadToken { line, token: token.to_string() })?;
            if label == 0 {
                return Err(FacetParseError::ZeroVertex { line });
            }
            if label > MAX_VERTICES {
                return Err(FacetParseError::LabelTooLarge { line, label });
            }
            face = face.insert(label);
        }
        faces.push(face);
    }
    if faces.is_empty() {
        return Err(FacetParseError::NoFaces);
    }
    Ok(FacetFile { declared_n, faces })
}

/// Builds a complex from facet text. With `relabel` set, labels that
/// skip values are compacted onto `1..=k` (the returned map lists the
/// original label of each new vertex); otherwise gaps are ghost-vertex
/// errors.
pub fn complex_from_facet_text(
    text: &str,
    relabel: bool,
) -> Result<(SimplicialComplex, Option<Vec<usize>>), FacetParseError> {
    let parsed = parse_facet_text(text)?;
    let max_seen = parsed
        .faces
        .iter()
        .filter_map(|f| f.to_labels().last().copied())
        .max()
        .unwrap_or(0);
    let n = parsed.declared_n.unwrap_or(max_seen);
    if relabel {
        let (cx, map) = SimplicialComplex::from_facets_relabeled(&parsed.faces)?;
        Ok((cx, Some(map)))
    } else {
        let cx = SimplicialComplex::from_facets(n, &parsed.faces)?;
        Ok((cx, None))
    }
}

/// Renders a complex in the facet file format, with an optional
/// provenance comment.
pub fn render_facet_text(cx: &SimplicialComplex, provenance: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(p) = provenance {
        out.push_str(&format!("# generated-by: {p}\n"));
    }
    out.push_str(&format!("n {}\n", cx.vertex_count()));
    for f in cx.facets() {
        let labels: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}
