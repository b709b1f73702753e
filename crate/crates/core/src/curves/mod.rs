//! Good functions `f_α`, affine maps, almost-circles and affine canonical forms.

mod affine;
mod almost_circle;
mod good;
mod rigidity;

pub use affine::{AffineMap, Point};
pub use almost_circle::{
    accuracy, build_almost_circle, circle_point, sector_affine_map, AccuracyReport, AlmostCircle,
    CurveJson, PolynomialArc, DEFAULT_SAMPLES_PER_ARC,
};
pub use good::{
    auxiliary, auxiliary_max_check, derivative_f64, eval_f64, eval_good_function, gap_weight,
    good_function_derivatives, standard_triangle, GoodFunction,
};
pub use rigidity::{
    arcs_affinely_equivalent, canonical_arc_parameters, canonical_frame, fit_residual,
    ArcSamples, CanonicalArc, EquivalenceReport, BISECTION_TOLERANCE,
    DEFAULT_EQUIVALENCE_TOLERANCE, RESIDUAL_TOLERANCE,
};
