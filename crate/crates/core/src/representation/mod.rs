//! Convex geometries as families of concentric almost-circles.
//!
//! Element `e` becomes the curve whose arc in sector `(i, j)` uses the
//! parameter `a_{i, j, r(j, e)}`, where `r(j, e)` counts from the top of the
//! `j`-th order. Lower elements get larger parameters and hence arcs closer to
//! the centre, which is what makes hull membership follow the orders.

mod family;
mod params;

pub use family::{
    affine_disjoint_families, build_family, combinatorial_membership, cross_family_matches,
    multiplicity_for_accuracy, pad_orders, parameter_matrix, represent_orders, verify_isomorphism,
    verify_isomorphism_with, within_family_matches, IsomorphismReport, RepresentationFamily,
    MIN_SECTORS,
};
pub use params::{
    allocate_parameters, family_slot, fnv1a64, ParameterSet, FAMILY_SLOTS, MAX_PARAMETERS,
};
