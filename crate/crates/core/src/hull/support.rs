use std::f64::consts::TAU;

use crate::curves::{AlmostCircle, Point, PolynomialArc};
use crate::poly::{maximize_on_interval, Polynomial};

/// A member of a curve family: a point, an almost-circle, or the boundary of
/// the convex hull of finitely many vertices.
#[derive(Clone, Debug, PartialEq)]
pub enum PlaneCurve {
    Point(Point),
    Curve(Box<AlmostCircle>),
    Polygon(Vec<Point>),
}

impl PlaneCurve {
    pub fn curve(c: AlmostCircle) -> Self {
        PlaneCurve::Curve(Box::new(c))
    }

    /// Upper bound on the distance of the curve from the origin.
    pub fn radius_bound(&self) -> f64 {
        match self {
            PlaneCurve::Point(p) => p[0].hypot(p[1]),
            PlaneCurve::Curve(c) => c.circumradius_bound(),
            PlaneCurve::Polygon(v) => v.iter().map(|p| p[0].hypot(p[1])).fold(0.0, f64::max),
        }
    }

    /// Upper bound on the radius of curvature; zero for points.
    pub fn curvature_radius_bound(&self) -> f64 {
        match self {
            PlaneCurve::Curve(c) => c.curvature_radius_bound(),
            _ => 0.0,
        }
    }
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// `(x*, ⟨u, ψ(x*, f(x*))⟩)` maximising over `x ∈ [0, 1]`, ties toward larger `x`.
///
/// With `(c₁, c₂) = Aᵀu` the objective is the degree-7 polynomial
/// `c₁x + c₂f_α(x)`; its critical points are isolated with a Sturm chain.
pub fn arc_support_argmax(arc: &PolynomialArc, u: Point) -> (f64, f64) {
    let [c1, c2] = arc.map.transpose_linear(u);
    let a = arc.alpha_f64();
    let p = Polynomial::new(vec![
        0.0,
        c1 + c2,
        -c2,
        0.0,
        0.0,
        -c2 * a,
        2.0 * c2 * a,
        -c2 * a,
    ]);
    let (x, v) = maximize_on_interval(&p, 0.0, 1.0);
    (x, v + dot(u, arc.map.translation_part()))
}

pub fn arc_support(arc: &PolynomialArc, u: Point) -> f64 {
    arc_support_argmax(arc, u).1
}

/// Index of the arc whose outward normals contain `u`.
fn sector_for(c: &AlmostCircle, u: Point) -> usize {
    // h_{A·K+b}(u) = ⟨u, b⟩ + h_K(Aᵀu), and sector k of the unit construction
    // has outward normals at angles [2πk/mt, 2π(k+1)/mt]
    let v = c.outer_map().transpose_linear(u);
    let count = c.sector_count();
    let phi = v[1].atan2(v[0]).rem_euclid(TAU);
    ((phi / TAU * count as f64) as usize).min(count - 1)
}

/// `h(u) = max over the curve of ⟨u, p⟩`.
pub fn curve_support(c: &PlaneCurve, u: Point) -> f64 {
    match c {
        PlaneCurve::Point(p) => dot(u, *p),
        PlaneCurve::Polygon(v) => v.iter().map(|p| dot(u, *p)).fold(f64::NEG_INFINITY, f64::max),
        PlaneCurve::Curve(c) => arc_support(&c.arcs()[sector_for(c, u)], u),
    }
}

/// Support as the maximum over every arc, without the normal-cone lookup.
pub fn curve_support_exhaustive(c: &PlaneCurve, u: Point) -> f64 {
    match c {
        PlaneCurve::Curve(c) => c
            .arcs()
            .iter()
            .map(|a| arc_support(a, u))
            .fold(f64::NEG_INFINITY, f64::max),
        _ => curve_support(c, u),
    }
}

pub fn direction(phi: f64) -> Point {
    [phi.cos(), phi.sin()]
}
