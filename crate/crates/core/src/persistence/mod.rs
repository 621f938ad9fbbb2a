//! Persistent homology over Z/pZ.
//!
//! Two routes produce identical diagrams: explicit boundary reduction of a
//! [`FilteredComplex`](crate::filtration::FilteredComplex), and implicit
//! cohomology of a [`FlagFiltration`](crate::filtration::FlagFiltration) for
//! clouds too large to expand.

mod boundary;
mod cohomology;
mod diagram;
mod field;
mod oracle;

pub use boundary::{extract_diagram, order_simplices, persistence_of_complex, reduce, BoundaryMatrix, Reduction, SimplexOrdering};
pub use cohomology::flag_persistence;
pub use diagram::{DiagramPoint, PersistenceDiagram};
pub use field::{is_prime, PrimeField};
pub use oracle::{betti_at, ORACLE_LIMIT};

/// Coefficient field used unless another prime is requested.
pub const DEFAULT_FIELD: u32 = 11;
