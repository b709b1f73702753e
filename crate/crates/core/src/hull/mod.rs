//! The convex-hull operator on finite curve families, decided through support
//! functions on a direction grid.

mod engine;
mod support;

pub use engine::{
    closure_system_from_table, closure_system_of_family, closure_system_with, hull_membership,
    hull_membership_with, hull_operator, local_anti_exchange_from_table,
    verify_local_anti_exchange, CurveFamily, HullConfig, HullDecision, HullEngine,
    LocalAntiExchangeReport, MAX_EXHAUSTIVE_FAMILY,
};
pub use support::{
    arc_support, arc_support_argmax, curve_support, curve_support_exhaustive, direction,
    PlaneCurve,
};
