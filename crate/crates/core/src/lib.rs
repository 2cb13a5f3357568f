//! Stanley-Reisner toolkit.
//!
//! A library and CLI for homological and connectivity invariants of
//! simplicial complexes: reduced homology over prime fields, graded
//! Betti tables via Hochster's formula, Castelnuovo-Mumford regularity
//! with two restriction-stable upper bounds, vertex connectivity of
//! 1-skeleta, and machine verification of the separator/connectivity
//! statements those invariants satisfy on vertex-minimal cycles.

pub mod cli;
pub mod complex;
pub mod connectivity;
pub mod generators;
pub mod gf;
pub mod graph;
pub mod homology;
pub mod io;
pub mod regularity;
pub mod report;
pub mod theorems;
pub mod vset;

pub use connectivity::{ConnectivityError, ConnectivityResult};
pub use generators::{GeneratorError, GeneratorSpec, NevoParameters};
pub use theorems::{CycleCertificate, VerificationReport, VerificationStatus, Witness};

pub use complex::{ComplexError, ComplexPredicates, SimplicialComplex};
pub use graph::Graph;
pub use homology::{BettiVector, FieldSpec, HomologyError};
pub use regularity::{GradedBettiTable, RegularityError, RegularityResult, SubsetHomologyTable};
pub use vset::VertexSet;
