use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::affine::{AffineMap, Point};
use super::good::{standard_triangle, GoodFunction};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default number of sample points per arc.
pub const DEFAULT_SAMPLES_PER_ARC: usize = 256;

/// `ψ(graph f_α)`: the image of the graph of a good function over `[0, 1]`.
/// The arc starts at `ψ(0,0)` and ends at `ψ(1,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialArc {
    pub good: GoodFunction,
    pub map: AffineMap,
}

impl PolynomialArc {
    pub fn new(good: GoodFunction, map: AffineMap) -> Self {
        PolynomialArc { good, map }
    }

    pub fn alpha_f64(&self) -> f64 {
        self.good.alpha_f64()
    }

    pub fn point(&self, x: f64) -> Point {
        self.map.apply([x, self.good.eval_f64(x)])
    }

    /// Velocity for increasing `x`.
    pub fn tangent(&self, x: f64) -> Point {
        self.map.linear([1.0, self.good.derivative_f64(x)])
    }

    pub fn start(&self) -> Point {
        self.map.apply([0.0, 0.0])
    }

    pub fn end(&self) -> Point {
        self.map.apply([1.0, 0.0])
    }

    /// `count ≥ 2` points at `x = k/(count − 1)`.
    pub fn samples(&self, count: usize) -> Vec<Point> {
        let count = count.max(2);
        (0..count)
            .map(|k| self.point(k as f64 / (count - 1) as f64))
            .collect()
    }

    /// The image of `Δ(U, V, W)`; the arc lies inside it.
    pub fn triangle(&self) -> [Point; 3] {
        standard_triangle().map(|p| self.map.apply(p))
    }
}

/// Endpoint of sector boundary `k` among `count` on the unit circle.
pub fn circle_point(k: usize, count: usize) -> Point {
    let theta = 2.0 * PI * k as f64 / count as f64;
    [theta.cos(), theta.sin()]
}

/// The affine map taking `Δ(U, V, W)` onto the isosceles triangle over sector
/// `k = t(i − 1) + (j − 1)` of the unit circle cut into `mt` equal arcs.
///
/// `U ↦ P_{k+1}`, `W ↦ P_k` and `V` goes to the intersection of the circle's
/// tangents at those points, so the arc runs clockwise from `P_{k+1}` to `P_k`.
pub fn sector_affine_map(m: usize, t: usize, i: usize, j: usize) -> Result<AffineMap> {
    if t < 3 {
        return Err(Error::TooFewSectors(t));
    }
    if m == 0 || i == 0 || i > m || j == 0 || j > t {
        return Err(Error::Domain(format!(
            "sector ({i}, {j}) outside 1..={m} × 1..={t}"
        )));
    }
    let count = m * t;
    let k = t * (i - 1) + (j - 1);
    Ok(sector_map_by_index(k, count))
}

fn sector_map_by_index(k: usize, count: usize) -> AffineMap {
    let half = PI / count as f64;
    let mid = 2.0 * PI * (k as f64 + 0.5) / count as f64;
    let r = 1.0 / half.cos();
    let apex = [r * mid.cos(), r * mid.sin()];
    let dst = [circle_point(k + 1, count), apex, circle_point(k, count)];
    AffineMap::from_triangles(standard_triangle(), dst).expect("sector triangles are non-degenerate")
}

/// A closed convex curve made of `mt` good-function arcs, one per sector.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostCircle {
    m: usize,
    t: usize,
    s: Vec<Vec<Rational>>,
    outer_map: AffineMap,
    arcs: Vec<PolynomialArc>,
}

/// Curve JSON: `{ "m", "t", "S": [["p/q", …], …], "outer_map": [a11,a12,a21,a22,b1,b2] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub m: usize,
    pub t: usize,
    #[serde(rename = "S", with = "rational::matrix_serde")]
    pub s: Vec<Vec<Rational>>,
    #[serde(default)]
    pub outer_map: AffineMap,
}

/// Builds `C(S)` for an `m × t` matrix with entries in `(0, 1)` and `t ≥ 3`.
pub fn build_almost_circle(s: Vec<Vec<Rational>>) -> Result<AlmostCircle> {
    AlmostCircle::with_outer_map(s, AffineMap::IDENTITY)
}

impl AlmostCircle {
    pub fn with_outer_map(s: Vec<Vec<Rational>>, outer_map: AffineMap) -> Result<Self> {
        let m = s.len();
        if m == 0 {
            return Err(Error::Domain("parameter matrix has no rows".into()));
        }
        let t = s[0].len();
        if t < 3 {
            return Err(Error::TooFewSectors(t));
        }
        if let Some(row) = s.iter().position(|r| r.len() != t) {
            return Err(Error::Domain(format!("row {} has {} entries, expected {t}", row + 1, s[row].len())));
        }
        let mut arcs = Vec::with_capacity(m * t);
        for (i, row) in s.iter().enumerate() {
            for (j, alpha) in row.iter().enumerate() {
                let good = GoodFunction::new(alpha.clone())?;
                let map = outer_map.compose(&sector_affine_map(m, t, i + 1, j + 1)?);
                arcs.push(PolynomialArc::new(good, map));
            }
        }
        Ok(AlmostCircle {
            m,
            t,
            s,
            outer_map,
            arcs,
        })
    }

    pub fn from_json(json: &CurveJson) -> Result<Self> {
        if json.s.len() != json.m || json.s.first().is_some_and(|r| r.len() != json.t) {
            return Err(Error::Domain(format!(
                "S is not {} × {}",
                json.m, json.t
            )));
        }
        AlmostCircle::with_outer_map(json.s.clone(), json.outer_map)
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            m: self.m,
            t: self.t,
            s: self.s.clone(),
            outer_map: self.outer_map,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn sector_count(&self) -> usize {
        self.m * self.t
    }

    pub fn parameters(&self) -> &[Vec<Rational>] {
        &self.s
    }

    pub fn outer_map(&self) -> &AffineMap {
        &self.outer_map
    }

    /// Arcs in sector order `k = t(i − 1) + (j − 1)`.
    pub fn arcs(&self) -> &[PolynomialArc] {
        &self.arcs
    }

    /// Arc `(i, j)`, one-based.
    pub fn arc(&self, i: usize, j: usize) -> &PolynomialArc {
        &self.arcs[self.t * (i - 1) + (j - 1)]
    }

    /// Closed polyline following the sectors counterclockwise (before the
    /// outer map), `per_arc` points per arc, no point repeated.
    pub fn sample_closed(&self, per_arc: usize) -> Vec<Point> {
        let per_arc = per_arc.max(2);
        let mut out = Vec::with_capacity(self.arcs.len() * (per_arc - 1));
        for arc in &self.arcs {
            for k in 0..per_arc - 1 {
                let x = 1.0 - k as f64 / (per_arc - 1) as f64;
                out.push(arc.point(x));
            }
        }
        out
    }

    /// Largest angle in radians between the one-sided tangents at a joint.
    pub fn joint_tangency_deviation(&self) -> f64 {
        let count = self.arcs.len();
        (0..count)
            .map(|k| {
                let here = self.arcs[k].tangent(0.0);
                let next = self.arcs[(k + 1) % count].tangent(1.0);
                let cross = here[0] * next[1] - here[1] * next[0];
                let dot = here[0] * next[0] + here[1] * next[1];
                cross.atan2(dot).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Largest endpoint mismatch between consecutive arcs.
    pub fn joint_gap(&self) -> f64 {
        let count = self.arcs.len();
        (0..count)
            .map(|k| {
                let a = self.arcs[k].start();
                let b = self.arcs[(k + 1) % count].end();
                (a[0] - b[0]).hypot(a[1] - b[1])
            })
            .fold(0.0, f64::max)
    }

    /// Upper bound on the distance from the origin: every arc lies in its
    /// sector triangle.
    pub fn circumradius_bound(&self) -> f64 {
        self.arcs
            .iter()
            .flat_map(|a| a.triangle())
            .map(|p| p[0].hypot(p[1]))
            .fold(0.0, f64::max)
    }

    /// Upper bound on the radius of curvature along the curve.
    ///
    /// For `ψ(x, f(x))` the radius is `|A(1, f′)|³ / (|det A|·|f″|)`, with
    /// `|f′| ≤ 1` and `|f″| ≥ 2 − α` on `[0, 1]`.
    pub fn curvature_radius_bound(&self) -> f64 {
        self.arcs
            .iter()
            .map(|a| {
                let stretch = a.map.operator_norm() * std::f64::consts::SQRT_2;
                stretch.powi(3) / (a.map.det().abs() * (2.0 - a.alpha_f64()))
            })
            .fold(0.0, f64::max)
    }
}

/// Inscribed and circumscribed radii of an almost-circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub r1: f64,
    pub r2: f64,
    pub ratio: f64,
    pub bound: f64,
    /// Smallest and largest sampled distance from the origin.
    pub measured_min_radius: f64,
    pub measured_max_radius: f64,
}

/// `r1 = cos(π/mt)` (incircle of the chord polygon), `r2 = 1/cos(π/mt)`
/// (circle through the sector apexes), `ratio = cos²(π/mt) ≥ 1 − (π/mt)²`.
pub fn accuracy(circle: &AlmostCircle) -> Result<AccuracyReport> {
    if !circle.outer_map.is_identity() {
        return Err(Error::Domain(
            "accuracy is defined for the unit construction only".into(),
        ));
    }
    let count = circle.sector_count() as f64;
    let c = (PI / count).cos();
    let radii: Vec<f64> = circle
        .sample_closed(64)
        .iter()
        .map(|p| p[0].hypot(p[1]))
        .collect();
    Ok(AccuracyReport {
        r1: c,
        r2: 1.0 / c,
        ratio: c * c,
        bound: 1.0 - (PI / count).powi(2),
        measured_min_radius: radii.iter().copied().fold(f64::INFINITY, f64::min),
        measured_max_radius: radii.iter().copied().fold(0.0, f64::max),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn matrix(rows: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect())
            .collect()
    }

    fn close(a: Point, b: Point, tol: f64) -> bool {
        (a[0] - b[0]).abs() < tol && (a[1] - b[1]).abs() < tol
    }

    #[test]
    fn sector_maps_hit_circle_points() {
        for (i, j) in [(1, 1), (1, 3), (2, 2)] {
            let map = sector_affine_map(2, 3, i, j).unwrap();
            let k = 3 * (i - 1) + (j - 1);
            assert!(close(map.apply([0.0, 0.0]), circle_point(k + 1, 6), 1e-15));
            assert!(close(map.apply([1.0, 0.0]), circle_point(k, 6), 1e-15));
            assert!(map.det() != 0.0);
        }
        assert!(matches!(sector_affine_map(1, 2, 1, 1), Err(Error::TooFewSectors(2))));
        assert!(sector_affine_map(2, 3, 3, 1).is_err());
    }

    #[test]
    fn apex_lies_on_both_circle_tangents() {
        let map = sector_affine_map(1, 5, 1, 2).unwrap();
        let apex = map.apply([0.5, 0.5]);
        for k in [1, 2] {
            let p = circle_point(k, 5);
            // tangent at p is orthogonal to p
            let d = [apex[0] - p[0], apex[1] - p[1]];
            assert!((d[0] * p[0] + d[1] * p[1]).abs() < 1e-14);
        }
    }

    #[test]
    fn sector_triangles_do_not_overlap() {
        // consecutive sector triangles meet only along the common boundary ray
        let count = 6;
        for k in 0..count {
            let m = sector_map_by_index(k, count);
            let c = m.apply([0.5, 0.25]);
            let angle = c[1].atan2(c[0]).rem_euclid(2.0 * PI);
            let lo = 2.0 * PI * k as f64 / count as f64;
            let hi = 2.0 * PI * (k + 1) as f64 / count as f64;
            assert!(lo < angle && angle < hi, "sector {k}");
        }
    }

    #[test]
    fn closed_and_smooth() {
        let c = build_almost_circle(matrix(&[&[(1, 3), (1, 3), (2, 3)], &[(1, 3), (2, 3), (2, 3)]])).unwrap();
        assert_eq!(c.arcs().len(), 6);
        assert!(c.joint_gap() < 1e-14);
        assert!(c.joint_tangency_deviation() < 1e-9);
        assert_eq!(c.arc(2, 1).alpha_f64(), 1.0 / 3.0);
    }

    #[test]
    fn outer_map_preserves_joints() {
        let outer = AffineMap::new(2.0, 0.5, -0.3, 0.7, 1.0, -4.0).unwrap();
        let s = matrix(&[&[(1, 4), (1, 2), (3, 4), (1, 5)]]);
        let c = AlmostCircle::with_outer_map(s, outer).unwrap();
        assert!(c.joint_gap() < 1e-13);
        assert!(c.joint_tangency_deviation() < 1e-9);
        assert!(accuracy(&c).is_err());
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(build_almost_circle(vec![]).is_err());
        assert!(matches!(
            build_almost_circle(matrix(&[&[(1, 2), (1, 2)]])),
            Err(Error::TooFewSectors(2))
        ));
        assert!(build_almost_circle(matrix(&[&[(1, 2), (1, 2), (3, 2)]])).is_err());
        assert!(build_almost_circle(matrix(&[&[(1, 2), (1, 2), (1, 2)], &[(1, 2)]])).is_err());
    }

    #[test]
    fn accuracy_values() {
        let c = build_almost_circle(matrix(&[&[(1, 3), (1, 3), (2, 3)], &[(1, 3), (2, 3), (2, 3)]])).unwrap();
        let r = accuracy(&c).unwrap();
        assert!((r.ratio - 0.75).abs() < 1e-12);
        assert!(r.ratio >= r.bound);
        assert!((r.bound - (1.0 - (PI / 6.0).powi(2))).abs() < 1e-15);
        assert!(r.measured_min_radius >= r.r1 - 1e-12);
        assert!(r.measured_max_radius <= r.r2 + 1e-12);
    }

    #[test]
    fn larger_parameters_give_inner_curve() {
        let outer = build_almost_circle(matrix(&[&[(1, 5), (1, 5), (1, 5)]])).unwrap();
        let inner = build_almost_circle(matrix(&[&[(4, 5), (4, 5), (4, 5)]])).unwrap();
        for (a, b) in outer.arcs().iter().zip(inner.arcs()) {
            for k in 1..20 {
                let x = k as f64 / 20.0;
                let (p, q) = (a.point(x), b.point(x));
                assert!(q[0].hypot(q[1]) < p[0].hypot(p[1]));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = build_almost_circle(matrix(&[&[(1, 3), (1, 2), (2, 3)]])).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert!(text.contains("\"S\":[[\"1/3\",\"1/2\",\"2/3\"]]"));
        let back: CurveJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AlmostCircle::from_json(&back).unwrap(), c);
    }
}
