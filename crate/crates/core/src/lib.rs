//! Hydra numbers of graphs: the fewest hyperarcs `u,v -> w` whose forward
//! chaining closes every edge of a graph to the whole vertex set while leaving
//! every non-edge closed.
//!
//! The crate provides the data model and verifier ([`graph`], [`hypergraph`]),
//! an exact solver ([`solver`]), bounds and constructions ([`bounds`]), graph
//! families ([`families`]), the k-subset generalization ([`kclosure`]) and the
//! Horn-formula view ([`horn`]).

pub mod bounds;
pub mod corpus;
pub mod error;
pub mod families;
pub mod graph;
pub mod horn;
pub mod hypergraph;
pub mod io;
pub mod kclosure;
mod mask;
pub mod solver;

pub use error::{HydraError, Result};
pub use graph::{edge, Edge, Graph};
pub use hypergraph::{
    certificate_profile, normalize, represents, CertificateProfile, DirectedHypergraph, EdgeHeadClass, Hyperarc,
    RepresentationReport, Violation, ViolationKind,
};
pub use solver::{HydraResult, SearchStats, SolverOptions};
