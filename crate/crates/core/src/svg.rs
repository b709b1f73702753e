//! SVG drawings of curve families.

use std::fmt::Write as _;

use crate::curves::{eval_f64, Point};
use crate::hull::PlaneCurve;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SvgOptions {
    /// Width and height of the picture in pixels.
    pub size: f64,
    pub samples_per_arc: usize,
    /// Draw `x(1 − x) − k·α·w(x)` instead of `f_α` to make small gaps visible.
    /// `1` draws the true curves.
    pub gap_scale: f64,
    /// Overlay the sector triangles of the first almost-circle.
    pub sector_triangles: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 600.0,
            samples_per_arc: 64,
            gap_scale: 1.0,
            sector_triangles: false,
        }
    }
}

fn outline(curve: &PlaneCurve, opts: &SvgOptions) -> Vec<Point> {
    match curve {
        PlaneCurve::Point(p) => vec![*p],
        PlaneCurve::Polygon(v) => v.clone(),
        PlaneCurve::Curve(c) => {
            let per_arc = opts.samples_per_arc.max(2);
            let mut out = Vec::new();
            for arc in c.arcs() {
                let alpha = opts.gap_scale * arc.alpha_f64();
                for k in 0..per_arc - 1 {
                    let x = 1.0 - k as f64 / (per_arc - 1) as f64;
                    out.push(arc.map.apply([x, eval_f64(alpha, x)]));
                }
            }
            out
        }
    }
}

struct Frame {
    min: Point,
    scale: f64,
    size: f64,
    pad: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = Point>, size: f64) -> Frame {
        let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for a in 0..2 {
                lo[a] = lo[a].min(p[a]);
                hi[a] = hi[a].max(p[a]);
            }
        }
        if !lo[0].is_finite() {
            (lo, hi) = ([-1.0, -1.0], [1.0, 1.0]);
        }
        let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
        let pad = 0.05 * size;
        Frame {
            min: [lo[0], hi[1]],
            scale: (size - 2.0 * pad) / extent,
            size,
            pad,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            self.pad + (p[0] - self.min[0]) * self.scale,
            self.pad + (self.min[1] - p[1]) * self.scale,
        )
    }
}

fn path(frame: &Frame, points: &[Point], closed: bool) -> String {
    let mut d = String::new();
    for (k, p) in points.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let _ = write!(d, "{}{x:.3} {y:.3} ", if k == 0 { "M" } else { "L" });
    }
    if closed {
        d.push('Z');
    }
    d.trim_end().to_owned()
}

/// One path per curve, one dot per point; `label` is shown as a tooltip.
pub fn render_family(curves: &[(usize, PlaneCurve)], opts: &SvgOptions) -> String {
    let outlines: Vec<Vec<Point>> = curves.iter().map(|(_, c)| outline(c, opts)).collect();
    let triangles: Vec<[Point; 3]> = if opts.sector_triangles {
        curves
            .iter()
            .find_map(|(_, c)| match c {
                PlaneCurve::Curve(c) => Some(c.arcs().iter().map(|a| a.triangle()).collect()),
                _ => None,
            })
            .unwrap_or_default()
    } else {
        Vec::new()
    };
    let frame = Frame::fit(
        outlines.iter().flatten().copied().chain(triangles.iter().flatten().copied()),
        opts.size,
    );

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = frame.size
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for tri in &triangles {
        let _ = writeln!(
            svg,
            r##"<path d="{}" fill="none" stroke="#999999" stroke-width="0.5" stroke-dasharray="3 2"/>"##,
            path(&frame, tri, true)
        );
    }
    for (k, ((label, curve), points)) in curves.iter().zip(&outlines).enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        match curve {
            PlaneCurve::Point(_) => {
                let (x, y) = frame.map(points[0]);
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{colour}"><title>{label}</title></circle>"#
                );
            }
            _ => {
                let _ = writeln!(
                    svg,
                    r#"<path d="{}" fill="none" stroke="{colour}" stroke-width="1.2"><title>{label}</title></path>"#,
                    path(&frame, points, true)
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::build_almost_circle;
    use crate::rational::ratio;

    fn ring() -> PlaneCurve {
        PlaneCurve::curve(build_almost_circle(vec![vec![ratio(1, 3); 3]]).unwrap())
    }

    #[test]
    fn one_path_per_curve() {
        let svg = render_family(&[(1, ring()), (2, ring())], &SvgOptions::default());
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<path").count(), 2);
        assert!(svg.contains("<title>2</title>"));
    }

    #[test]
    fn points_become_dots() {
        let svg = render_family(
            &[(1, PlaneCurve::Point([0.0, 0.0])), (2, PlaneCurve::Point([1.0, 2.0]))],
            &SvgOptions::default(),
        );
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<path").count(), 0);
    }

    #[test]
    fn overlay_and_exaggeration() {
        let opts = SvgOptions {
            sector_triangles: true,
            gap_scale: 20.0,
            ..SvgOptions::default()
        };
        let svg = render_family(&[(1, ring())], &opts);
        assert_eq!(svg.matches("stroke-dasharray").count(), 3);
        assert_ne!(svg, render_family(&[(1, ring())], &SvgOptions { sector_triangles: true, ..SvgOptions::default() }));
    }
}
