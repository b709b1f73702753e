//! Deterministic battery over the good functions, canonical-form recovery and
//! accuracy, as run by the `props` command.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::curves::{
    accuracy, arcs_affinely_equivalent, auxiliary_max_check, build_almost_circle,
    canonical_arc_parameters, sector_affine_map, AffineMap, ArcSamples, GoodFunction,
    PolynomialArc, DEFAULT_EQUIVALENCE_TOLERANCE, RESIDUAL_TOLERANCE,
};
use crate::rational::{self, integer, ratio, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropsConfig {
    /// `α = k/(alphas + 1)` for `k = 1..=alphas`.
    pub alphas: usize,
    /// Interior sample points `x = k/(samples + 1)`.
    pub samples: usize,
}

impl Default for PropsConfig {
    fn default() -> Self {
        PropsConfig {
            alphas: 24,
            samples: 63,
        }
    }
}

fn grid(count: usize) -> Vec<Rational> {
    (1..=count)
        .map(|k| ratio(k as i64, count as i64 + 1))
        .collect()
}

fn check(name: &'static str, failures: Vec<String>, ok_detail: String) -> PropCheck {
    PropCheck {
        name,
        passed: failures.is_empty(),
        detail: failures.into_iter().next().unwrap_or(ok_detail),
    }
}

pub fn run_property_suite(cfg: &PropsConfig) -> Vec<PropCheck> {
    let alphas: Vec<GoodFunction> = grid(cfg.alphas)
        .into_iter()
        .map(|a| GoodFunction::new(a).expect("grid lies in (0, 1)"))
        .collect();
    let xs = grid(cfg.samples);
    let mut out = Vec::new();

    let mut fails = Vec::new();
    for g in &alphas {
        let (d0, _) = g.derivatives(&Rational::zero()).expect("in domain");
        let (d1, _) = g.derivatives(&Rational::one()).expect("in domain");
        let ok = g.eval(&Rational::zero()).expect("in domain").is_zero()
            && g.eval(&Rational::one()).expect("in domain").is_zero()
            && d0 == integer(1)
            && d1 == integer(-1);
        if !ok {
            fails.push(format!("endpoint identity fails for alpha = {}", rational::format(g.alpha())));
        }
    }
    out.push(check(
        "endpoints f(0)=f(1)=0, f'(0)=1, f'(1)=-1",
        fails,
        format!("{} parameters, exact", alphas.len()),
    ));

    let mut fails = Vec::new();
    for g in &alphas {
        let d2 = g.polynomial().derivative().derivative();
        if d2.sturm_chain().count_roots(&integer(0), &integer(1)) != 0 || !d2.eval(&integer(0)).lt(&Rational::zero()) {
            fails.push(format!("f'' changes sign for alpha = {}", rational::format(g.alpha())));
        }
        for x in &xs {
            if g.derivatives(x).expect("in domain").1 >= Rational::zero() {
                fails.push(format!("f''({}) >= 0", rational::format(x)));
            }
        }
    }
    out.push(check(
        "strict concavity f'' < 0",
        fails,
        format!("{} samples per parameter and Sturm count on [0,1]", xs.len()),
    ));

    let mut fails = Vec::new();
    let half = ratio(1, 2);
    for g in &alphas {
        for x in &xs {
            let v = g.eval(x).expect("in domain");
            let tent = &half - (x - &half).abs();
            if !(v > Rational::zero() && v < tent) {
                fails.push(format!("bound fails at x = {}", rational::format(x)));
            }
        }
    }
    out.push(check("0 < f(x) < 1/2 - |x - 1/2|", fails, "exact".into()));

    let mut fails = Vec::new();
    for pair in alphas.windows(2) {
        for x in &xs {
            if pair[0].eval(x).expect("in domain") <= pair[1].eval(x).expect("in domain") {
                fails.push(format!("monotonicity fails at x = {}", rational::format(x)));
            }
        }
    }
    out.push(check("alpha < beta implies f_alpha > f_beta", fails, "exact".into()));

    let a = auxiliary_max_check();
    out.push(PropCheck {
        name: "a(4/5) = 1.6384",
        passed: a == rational::parse("1.6384").expect("literal"),
        detail: rational::format(&a),
    });

    let mut fails = Vec::new();
    let mut worst = 0.0f64;
    for (k, g) in alphas.iter().enumerate() {
        let map = sector_affine_map(4, 3, 1 + k % 4, 1 + k % 3).expect("valid sector");
        let outer = AffineMap::new(1.3, -0.4, 0.2, 0.9, 0.5, -2.0).expect("non-degenerate");
        for psi in [map, outer.compose(&map)] {
            let arc = PolynomialArc::new(g.clone(), psi);
            match canonical_arc_parameters(&ArcSamples::from_arc(&arc, 257)) {
                Ok(c) => {
                    let err = (c.alpha - g.alpha_f64()).abs().max(c.map.distance(&psi));
                    worst = worst.max(err);
                    if err > 1e-9 {
                        fails.push(format!("recovery error {err:e}"));
                    }
                }
                Err(e) => fails.push(e.to_string()),
            }
        }
    }
    out.push(check(
        "canonical form round trip within 1e-9",
        fails,
        format!("worst error {worst:.2e}"),
    ));

    let mut fails = Vec::new();
    let mut smallest = f64::INFINITY;
    for g in &alphas {
        for h in &alphas {
            if (g.alpha_f64() - h.alpha_f64()).abs() < 0.05 {
                continue;
            }
            let a = ArcSamples::from_arc(&PolynomialArc::new(g.clone(), AffineMap::IDENTITY), 129);
            let psi = sector_affine_map(2, 3, 2, 1).expect("valid sector");
            let b = ArcSamples::from_arc(&PolynomialArc::new(h.clone(), psi), 129);
            match arcs_affinely_equivalent(&a, &b, DEFAULT_EQUIVALENCE_TOLERANCE) {
                Ok(r) => {
                    smallest = smallest.min(r.residual);
                    if r.equivalent || r.residual <= RESIDUAL_TOLERANCE {
                        fails.push(format!(
                            "alphas {} and {} fit each other (residual {:e})",
                            g.alpha_f64(),
                            h.alpha_f64(),
                            r.residual
                        ));
                    }
                }
                Err(e) => fails.push(e.to_string()),
            }
        }
    }
    out.push(check(
        "distinct alphas (gap >= 0.05) never fit",
        fails,
        format!("smallest residual {smallest:.4}"),
    ));

    let mut fails = Vec::new();
    let mut ratios = Vec::new();
    for mt in [6usize, 12, 24] {
        let s = vec![vec![ratio(1, 2); 3]; mt / 3];
        let c = build_almost_circle(s).expect("valid matrix");
        let r = accuracy(&c).expect("unit construction");
        let expected = (PI / mt as f64).cos().powi(2);
        if (r.ratio - expected).abs() > 1e-12 || r.ratio < r.bound {
            fails.push(format!("mt = {mt}: ratio {} bound {}", r.ratio, r.bound));
        }
        ratios.push(format!("mt={mt}: {:.6}", r.ratio));
    }
    out.push(check("accuracy cos^2(pi/mt) >= 1 - (pi/mt)^2", fails, ratios.join(", ")));

    out
}
