//! Constructors for every complex family the verification harness uses:
//! simplex boundaries, joins and cross-polytopes, cycle complexes, the
//! prism family, the euclidean-division tightness family, and seeded
//! random complexes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::vset::VertexSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("bad parameters for {family}: {reason}")]
    BadParameters { family: &'static str, reason: String },
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("generator spec '{0}' is malformed (expected name or name:arg,arg)")]
    MalformedSpec(String),
}

fn bad(family: &'static str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::BadParameters { family, reason: reason.into() }
}

/// Boundary of the d-simplex: all d+1 facets of size d on d+1 vertices;
/// a (d-1)-sphere. Needs `d >= 1` (d = 1 gives two isolated points).
pub fn simplex_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1, "simplex boundary needs dimension >= 1");
    let n = d + 1;
    let facets: Vec<VertexSet> = (1..=n)
        .map(|skip| VertexSet::from_labels((1..=n).filter(|&v| v != skip)))
        .collect();
    SimplicialComplex::from_facets(n, &facets).expect("simplex boundary is well formed")
}

/// The m-cycle as a 1-dimensional complex.
pub fn cycle_complex(m: usize) -> Result<SimplicialComplex, GeneratorError> {
    if m < 3 {
        return Err(bad("cycle", format!("need at least 3 vertices, got {m}")));
    }
    let mut facets: Vec<VertexSet> = (1..m).map(|i| VertexSet::from_labels([i, i + 1])).collect();
    facets.push(VertexSet::from_labels([m, 1]));
    Ok(SimplicialComplex::from_facets(m, &facets).expect("cycle is well formed"))
}

/// Join of `m` copies of the 0-sphere: the boundary of the m-dimensional
/// cross-polytope, an (m-1)-sphere on 2m vertices.
pub fn cross_polytope(m: usize) -> SimplicialComplex {
    assert!(m >= 1, "cross polytope needs at least one factor");
    let mut cx = simplex_boundary(1);
    for _ in 1..m {
        cx = cx.join(&simplex_boundary(1));
    }
    cx
}

/// The octahedron boundary (3-fold join of 0-spheres).
pub fn octahedron() -> SimplicialComplex {
    cross_polytope(3)
}

/// Parameters of the two euclidean divisions behind the tightness
/// family: `sh = (s-1) q' + r'` and `ceil(sh/(s-1)) = s q + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NevoParameters {
    pub s: usize,
    pub h: usize,
    pub q_prime: usize,
    pub r_prime: usize,
    pub q: usize,
    pub r: usize,
}

impl NevoParameters {
    /// Number of vertices of the resulting complex.
    pub fn vertex_count(self) -> usize {
        ceil_div(self.s * self.h, self.s - 1) + 2
    }
}

pub fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Computes and validates the division parameters for `s >= 2`,
/// `h >= s - 1`.
pub fn nevo_parameters(s: usize, h: usize) -> Result<NevoParameters, GeneratorError> {
    if s < 2 {
        return Err(bad("nevo", format!("s must be at least 2, got {s}")));
    }
    if h + 1 < s {
        return Err(bad("nevo", format!("h must be at least s - 1 = {}, got {h}", s - 1)));
    }
    let q_prime = (s * h) / (s - 1);
    let r_prime = (s * h) % (s - 1);
    let target = ceil_div(s * h, s - 1);
    let q = target / s;
    let r = target % s;
    let params = NevoParameters { s, h, q_prime, r_prime, q, r };
    // Facts the construction relies on; violations are construction bugs.
    assert!(r_prime <= s - 2);
    assert_eq!(r_prime == 0, r == 0, "the two divisions are exact together");
    assert_ne!(r, 1, "remainder 1 is impossible for the second division");
    Ok(params)
}

/// The tightness family: a vertex-minimal h-cycle on
/// `ceil(sh/(s-1)) + 2` vertices whose minimal nonfaces have cardinality
/// at most `s`, built as a join of simplex boundaries.
pub fn nevo_complex(
    s: usize,
    h: usize,
) -> Result<(SimplicialComplex, NevoParameters), GeneratorError> {
    let params = nevo_parameters(s, h)?;
    let mut cx = simplex_boundary(1);
    for _ in 0..params.q {
        cx = cx.join(&simplex_boundary(s - 1));
    }
    if params.r > 0 {
        // r >= 2 here, so this factor is a genuine sphere.
        cx = cx.join(&simplex_boundary(params.r - 1));
    }
    debug_assert_eq!(cx.vertex_count(), params.vertex_count());
    debug_assert_eq!(cx.dim(), h as i32, "the join must be an h-sphere");
    Ok((cx, params))
}

/// Vertices of a (d+1)-prism (two (d+1)-gon rings), faces generated by
/// the two ring vertex sets and the d+1 side quadrilaterals. The
/// construction is taken literally; its dimension is max(d, 3), and for
/// d = 3 it is the cube complex.
pub fn prism_complex(d: usize) -> Result<SimplicialComplex, GeneratorError> {
    if d < 2 {
        return Err(bad("prism", format!("need d >= 2, got {d}")));
    }
    let ring = d + 1;
    // Ring a is 1..=d+1, ring b is d+2..=2d+2.
    let a = |i: usize| 1 + (i % ring);
    let b = |i: usize| 1 + ring + (i % ring);
    let mut faces = vec![
        VertexSet::from_labels((0..ring).map(a)),
        VertexSet::from_labels((0..ring).map(b)),
    ];
    for i in 0..ring {
        faces.push(VertexSet::from_labels([a(i), a(i + 1), b(i), b(i + 1)]));
    }
    Ok(SimplicialComplex::from_facets(2 * ring, &faces).expect("prism is well formed"))
}

/// Seeded random complex: faces of each size `2..=dim_cap+1` are kept
/// independently with probability `density`; all singletons are always
/// present so no vertex is a ghost. Deterministic for a fixed seed.
pub fn random_complex(
    n: usize,
    dim_cap: usize,
    density: f64,
    seed: u64,
) -> Result<SimplicialComplex, GeneratorError> {
    if n == 0 || n > 12 {
        return Err(bad("random", format!("vertex count must be in 1..=12, got {n}")));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(bad("random", format!("density must be in [0,1], got {density}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<VertexSet> = (1..=n).map(|v| VertexSet::from_labels([v])).collect();
    let universe = VertexSet::full(n);
    for size in 2..=(dim_cap + 1).min(n) {
        for t in universe.subsets() {
            if t.len() == size && rng.gen::<f64>() < density {
                faces.push(t);
            }
        }
    }
    Ok(SimplicialComplex::from_facets(n, &faces).expect("random complex is well formed"))
}

/// A generator invocation parsed from the `name:arg,arg` mini-language.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Octahedron,
    SimplexBoundary { d: usize },
    Cycle { m: usize },
    CrossPolytope { m: usize },
    Nevo { s: usize, h: usize },
    Prism { d: usize },
    Random { n: usize, dim_cap: usize, density: f64, seed: u64 },
}

impl GeneratorSpec {
    /// Parses specs such as `octahedron`, `simplex-boundary:3`,
    /// `cycle:5`, `cross-polytope:4`, `nevo:3,3`, `prism:3`,
    /// `random:8,2,0.4,42`.
    pub fn parse(spec: &str) -> Result<GeneratorSpec, GeneratorError> {
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (spec.trim(), ""),
        };
        let parts: Vec<&str> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(str::trim).collect()
        };
        let want = |k: usize| -> Result<(), GeneratorError> {
            if parts.len() == k {
                Ok(())
            } else {
                Err(GeneratorError::MalformedSpec(spec.to_string()))
            }
        };
        let int = |s: &str| -> Result<usize, GeneratorError> {
            s.parse().map_err(|_| GeneratorError::MalformedSpec(spec.to_string()))
        };
        match name {
            "octahedron" => {
                want(0)?;
                Ok(GeneratorSpec::Octahedron)
            }
            "simplex-boundary" => {
                want(1)?;
                Ok(GeneratorSpec::SimplexBoundary { d: int(parts[0])? })
            }
            "cycle" => {
                want(1)?;
                Ok(GeneratorSpec::Cycle { m: int(parts[0])? })
            }
            "cross-polytope" => {
                want(1)?;
                Ok(GeneratorSpec::CrossPolytope { m: int(parts[0])? })
            }
            "nevo" => {
                want(2)?;
                Ok(GeneratorSpec::Nevo { s: int(parts[0])?, h: int(parts[1])? })
            }
            "prism" => {
                want(1)?;
                Ok(GeneratorSpec::Prism { d: int(parts[0])? })
            }
            "random" => {
                want(4)?;
                let density: f64 = parts[2]
                    .parse()
                    .map_err(|_| GeneratorError::MalformedSpec(spec.to_string()))?;
                let seed: u64 = parts[3]
                    .parse()
                    .map_err(|_| GeneratorError::MalformedSpec(spec.to_string()))?;
                Ok(GeneratorSpec::Random {
                    n: int(parts[0])?,
                    dim_cap: int(parts[1])?,
                    density,
                    seed,
                })
            }
            other => Err(GeneratorError::UnknownGenerator(other.to_string())),
        }
    }

    /// Canonical provenance string, embedded in reports and file headers.
    pub fn provenance(&self) -> String {
        match self {
            GeneratorSpec::Octahedron => "octahedron".into(),
            GeneratorSpec::SimplexBoundary { d } => format!("simplex-boundary:{d}"),
            GeneratorSpec::Cycle { m } => format!("cycle:{m}"),
            GeneratorSpec::CrossPolytope { m } => format!("cross-polytope:{m}"),
            GeneratorSpec::Nevo { s, h } => format!("nevo:{s},{h}"),
            GeneratorSpec::Prism { d } => format!("prism:{d}"),
            GeneratorSpec::Random { n, dim_cap, density, seed } => {
                format!("random:{n},{dim_cap},{density},{seed}")
            }
        }
    }

    pub fn build(&self) -> Result<SimplicialComplex, GeneratorError> {
        match *self {
            GeneratorSpec::Octahedron => Ok(octahedron()),
            GeneratorSpec::SimplexBoundary { d } => {
                if d < 1 {
                    return Err(bad("simplex-boundary", "need d >= 1"));
                }
                Ok(simplex_boundary(d))
            }
            GeneratorSpec::Cycle { m } => cycle_complex(m),
            GeneratorSpec::CrossPolytope { m } => {
                if m < 1 {
                    return Err(bad("cross-polytope", "need m >= 1"));
                }
                Ok(cross_polytope(m))
            }
            GeneratorSpec::Nevo { s, h } => Ok(nevo_complex(s, h)?.0),
            GeneratorSpec::Prism { d } => prism_complex(d),
            GeneratorSpec::Random { n, dim_cap, density, seed } => {
                random_complex(n, dim_cap, density, seed)
            }
        }
    }
}
