//! Cayley graphs, induced low-degree subgraphs and sensitivity parameters.

pub mod cert;
pub mod constructions;
pub mod coxeter;
pub mod error;
pub mod graph;
pub mod incidence;
pub mod solver;
pub mod spectral;
pub mod group;

pub use cert::{verify_certificate, CertKind, Certificate, VerificationReport};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder};
pub use group::{cayley_graph, group_make, ConnectionSet, FiniteGroup};
