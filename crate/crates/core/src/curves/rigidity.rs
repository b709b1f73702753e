use serde::{Deserialize, Serialize};

use super::affine::{AffineMap, Point};
use super::almost_circle::PolynomialArc;
use super::good::{eval_f64, gap_weight, standard_triangle};
use crate::error::{Error, Result};

/// Fits are rejected when the normalised samples leave every `f_α` by more
/// than this, measured in units of `α`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-3;
/// Bisection tolerance when solving for `α`.
pub const BISECTION_TOLERANCE: f64 = 1e-12;
/// Default tolerance on `|α₁ − α₂|` for equivalence.
pub const DEFAULT_EQUIVALENCE_TOLERANCE: f64 = 1e-9;
/// Samples where the gap weight falls below this carry no information on `α`.
const WEIGHT_FLOOR: f64 = 1e-3;
const MIN_SAMPLES: usize = 20;

/// A curve segment known only through points and its two endpoint tangents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcSamples {
    pub points: Vec<Point>,
    pub start_tangent: Point,
    pub end_tangent: Point,
}

impl ArcSamples {
    pub fn from_arc(arc: &PolynomialArc, count: usize) -> Self {
        ArcSamples {
            points: arc.samples(count),
            start_tangent: arc.tangent(0.0),
            end_tangent: arc.tangent(1.0),
        }
    }

    /// Samples of any parametrised curve `γ: [0, 1] → ℝ²`.
    pub fn from_fn(count: usize, gamma: impl Fn(f64) -> Point, start_tangent: Point, end_tangent: Point) -> Self {
        let count = count.max(2);
        ArcSamples {
            points: (0..count).map(|k| gamma(k as f64 / (count - 1) as f64)).collect(),
            start_tangent,
            end_tangent,
        }
    }

    pub fn transformed(&self, map: &AffineMap) -> Self {
        ArcSamples {
            points: self.points.iter().map(|p| map.apply(*p)).collect(),
            start_tangent: map.linear(self.start_tangent),
            end_tangent: map.linear(self.end_tangent),
        }
    }
}

/// The standard position of a sampled arc: `arc = map(graph f_α)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalArc {
    pub alpha: f64,
    pub map: AffineMap,
    pub residual: f64,
}

/// Frame of a sampled arc: the affine map sending `Δ(U, V, W)` onto the
/// triangle of its endpoints and the meeting point of the endpoint tangents.
pub fn canonical_frame(samples: &ArcSamples) -> Result<AffineMap> {
    if samples.points.len() < MIN_SAMPLES {
        return Err(Error::Domain(format!(
            "{} samples given, at least {MIN_SAMPLES} needed",
            samples.points.len()
        )));
    }
    let p0 = samples.points[0];
    let p1 = *samples.points.last().expect("nonempty");
    let (t0, t1) = (samples.start_tangent, samples.end_tangent);
    // p0 + s·t0 = p1 + r·t1
    let det = t0[0] * (-t1[1]) - (-t1[0]) * t0[1];
    let scale = t0[0].hypot(t0[1]) * t1[0].hypot(t1[1]);
    if det.abs() <= 1e-12 * scale || !det.is_finite() {
        return Err(Error::Degenerate("endpoint tangents are parallel".into()));
    }
    let rhs = [p1[0] - p0[0], p1[1] - p0[1]];
    let s = (rhs[0] * (-t1[1]) - (-t1[0]) * rhs[1]) / det;
    let apex = [p0[0] + s * t0[0], p0[1] + s * t0[1]];
    AffineMap::from_triangles(standard_triangle(), [p0, apex, p1])
}

/// Largest `|y − f_α(x)| / w(x)` over normalised samples with informative weight.
pub fn fit_residual(normalised: &[Point], alpha: f64) -> f64 {
    normalised
        .iter()
        .filter(|p| gap_weight(p[0].clamp(0.0, 1.0)) >= WEIGHT_FLOOR)
        .map(|p| (p[1] - eval_f64(alpha, p[0])).abs() / gap_weight(p[0]))
        .fold(0.0, f64::max)
}

fn bisect_alpha(x: f64, y: f64) -> f64 {
    // f_α(x) decreases strictly in α for x ∈ (0, 1)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if y >= eval_f64(lo, x) {
        return lo;
    }
    if y <= eval_f64(hi, x) {
        return hi;
    }
    while hi - lo > BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if eval_f64(mid, x) > y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Recovers `(α, ψ)` with `arc = ψ(graph f_α)` from samples alone.
///
/// `ψ` is pinned by the endpoints and endpoint tangents; `α` comes from
/// bisection at the sample closest to `x = 1/2`. Samples that then miss
/// `graph f_α` by more than [`RESIDUAL_TOLERANCE`] make the arc a non-member.
pub fn canonical_arc_parameters(samples: &ArcSamples) -> Result<CanonicalArc> {
    let (alpha, map, residual) = recover(samples)?;
    if !(alpha > 0.0 && alpha < 1.0) || residual > RESIDUAL_TOLERANCE {
        return Err(Error::NonMember { residual });
    }
    Ok(CanonicalArc {
        alpha,
        map,
        residual,
    })
}

fn normalise(samples: &ArcSamples, map: &AffineMap) -> Result<Vec<Point>> {
    let inv = map.inverse()?;
    Ok(samples.points.iter().map(|p| inv.apply(*p)).collect())
}

fn recover(samples: &ArcSamples) -> Result<(f64, AffineMap, f64)> {
    let map = canonical_frame(samples)?;
    let normalised = normalise(samples, &map)?;
    let probe = normalised
        .iter()
        .min_by(|a, b| (a[0] - 0.5).abs().total_cmp(&(b[0] - 0.5).abs()))
        .expect("nonempty");
    let alpha = bisect_alpha(probe[0], probe[1]);
    let residual = if normalised.iter().any(|p| !(-1e-9..=1.0 + 1e-9).contains(&p[0])) {
        f64::INFINITY
    } else {
        fit_residual(&normalised, alpha)
    };
    Ok((alpha, map, residual))
}

/// Outcome of comparing two sampled arcs up to affine maps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Misfit of the second arc against `f_{α₁}` in its canonical frame.
    pub residual: f64,
    /// `ψ₂ ∘ ψ₁⁻¹`, carrying the first arc onto the second when equivalent.
    pub map: AffineMap,
}

/// Whether the arcs are affine images of the same good-function graph.
pub fn arcs_affinely_equivalent(arc1: &ArcSamples, arc2: &ArcSamples, tol: f64) -> Result<EquivalenceReport> {
    let c1 = canonical_arc_parameters(arc1)?;
    let c2 = canonical_arc_parameters(arc2)?;
    let map = c2.map.compose(&c1.map.inverse()?);
    let residual = fit_residual(&normalise(arc2, &c2.map)?, c1.alpha);
    let non_degenerate = AffineMap::from_array(map.to_array()).is_ok();
    Ok(EquivalenceReport {
        equivalent: (c1.alpha - c2.alpha).abs() <= tol && non_degenerate,
        alpha1: c1.alpha,
        alpha2: c2.alpha,
        residual,
        map,
    })
}
