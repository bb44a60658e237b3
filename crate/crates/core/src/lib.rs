pub mod dag;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod io;
pub mod lattice;
pub mod layerings;
pub mod mutation;
pub mod oracle;
pub mod reduction;
pub mod routes;
pub mod triangulation;
pub mod validate;

pub use dag::{unit_netflow, EdgeId, EmbeddedDag, NetflowVector, VertexId};
pub use error::{Error, Result};
pub use validate::{check_nondegenerate, validate_strong_planarity, ValidationReport};
