//! Finite convex geometries as closure systems on `{1, …, n}`.
//!
//! Closure systems are generated from tuples of linear orders, checked
//! against the convex-geometry axioms, and taken apart again into the
//! orders read off their maximal chains.

mod chains;
mod closure;
mod orders;
mod subset;

pub use chains::{
    chain_elements, convex_dimension, maximal_chains, maximal_chains_with_limit,
    minimal_generating_orders, orderings_from_geometry, Chain, DEFAULT_CHAIN_LIMIT,
};
pub use closure::{
    closure_from_orderings, restrict_system, verify_convex_geometry,
    verify_convex_geometry_with_limit, ClosureSystem, GeometryJson, GeometryReport, Restriction,
    DEFAULT_EXHAUSTIVE_LIMIT, MAX_WITNESSES,
};
pub use orders::{backward_rank, LinearOrderTuple, OrdersJson};
pub use subset::{Subset, MAX_ELEMENTS};

/// Largest ground set accepted by closure systems and order tuples.
pub const MAX_GROUND: usize = 20;
