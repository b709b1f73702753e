//! Self-contained records of a representation run, and their re-verification.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    closure_from_orderings, orderings_from_geometry, verify_convex_geometry, ClosureSystem,
    GeometryJson, LinearOrderTuple, OrdersJson,
};
use crate::curves::{accuracy, AccuracyReport, AlmostCircle};
use crate::error::{Error, Result};
use crate::hull::{CurveFamily, HullConfig, PlaneCurve};
use crate::rational::{self, Rational};
use crate::representation::{
    allocate_parameters, build_family, multiplicity_for_accuracy, pad_orders, parameter_matrix,
    verify_isomorphism_with, ParameterSet, MIN_SECTORS,
};

pub const CERTIFICATE_VERSION: u32 = 1;
pub const DEFAULT_EPSILON: f64 = 0.5;
pub const DEFAULT_FAMILY_ID: &str = "default";
const ACCURACY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberJson {
    pub element: usize,
    #[serde(rename = "S", with = "rational::matrix_serde")]
    pub s: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub isomorphic: bool,
    /// First `(X, y)` where hull membership and the geometry disagree.
    pub mismatch: Option<(Vec<usize>, usize)>,
    pub local_anti_exchange: bool,
    pub accuracy_ok: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub geometry: GeometryJson,
    /// One order per maximal chain of the geometry.
    pub orders: OrdersJson,
    /// `orders` repeated cyclically up to at least three.
    pub padded_orders: OrdersJson,
    /// Target accuracy `1 − ε` used to choose `m`; absent when `m` was given.
    pub epsilon: Option<f64>,
    pub m: usize,
    pub t: usize,
    pub directions: usize,
    pub params: ParameterSet,
    pub members: Vec<MemberJson>,
    pub accuracy: AccuracyReport,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentOptions {
    pub epsilon: f64,
    pub multiplicity: Option<usize>,
    pub family_id: String,
    pub directions: usize,
}

impl Default for RepresentOptions {
    fn default() -> Self {
        RepresentOptions {
            epsilon: DEFAULT_EPSILON,
            multiplicity: None,
            family_id: DEFAULT_FAMILY_ID.to_owned(),
            directions: HullConfig::default().directions,
        }
    }
}

fn hull_config(directions: usize) -> HullConfig {
    HullConfig {
        directions,
        ..HullConfig::default()
    }
}

/// Fails with [`Error::NotConvexGeometry`] carrying the first anti-exchange
/// witness, or a closure-axiom error.
pub fn require_convex_geometry(sys: &ClosureSystem) -> Result<()> {
    let report = verify_convex_geometry(sys)?;
    if let Some(&(set, x, y)) = report.witnesses.first() {
        return Err(Error::NotConvexGeometry { set, x, y });
    }
    if !report.is_convex_geometry() {
        return Err(Error::Domain("closure operator axioms fail".into()));
    }
    Ok(())
}

/// Builds the representation of `sys` and records the outcome of verifying it.
pub fn represent(sys: &ClosureSystem, opts: &RepresentOptions) -> Result<Certificate> {
    require_convex_geometry(sys)?;
    if sys.n() == 0 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    let orders = orderings_from_geometry(sys)?;
    let padded = pad_orders(&orders);
    let t = padded.len();
    let (m, epsilon) = match opts.multiplicity {
        Some(0) => return Err(Error::Domain("multiplicity must be positive".into())),
        Some(m) => (m, None),
        None => (multiplicity_for_accuracy(t, opts.epsilon)?, Some(opts.epsilon)),
    };
    let params = allocate_parameters(sys.n(), t, m, &opts.family_id)?;
    let family = build_family(&padded, m, &params)?;
    let report = verify_isomorphism_with(sys, &family.curve_family(), Some(&padded), hull_config(opts.directions))?;
    let acc = family.accuracy();
    let accuracy_ok = accuracy_holds(&acc, epsilon);
    let members = (1..=sys.n())
        .map(|e| MemberJson {
            element: e,
            s: family.member(e).parameters().to_vec(),
        })
        .collect();
    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        geometry: sys.to_json(),
        orders: orders.to_json(),
        padded_orders: padded.to_json(),
        epsilon,
        m,
        t,
        directions: opts.directions,
        params,
        members,
        accuracy: acc,
        verdict: Verdict {
            isomorphic: report.isomorphic,
            mismatch: report.mismatch.map(|(x, y)| (x.to_vec(), y)),
            local_anti_exchange: report.local_anti_exchange.holds,
            accuracy_ok,
            pass: report.isomorphic && report.local_anti_exchange.holds && accuracy_ok,
        },
    })
}

fn accuracy_holds(acc: &AccuracyReport, epsilon: Option<f64>) -> bool {
    acc.ratio + ACCURACY_TOLERANCE >= acc.bound
        && acc.measured_min_radius + ACCURACY_TOLERANCE >= acc.r1
        && acc.measured_max_radius <= acc.r2 + ACCURACY_TOLERANCE
        && epsilon.is_none_or(|e| acc.bound + ACCURACY_TOLERANCE >= 1.0 - e)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, name: &'static str, outcome: std::result::Result<(), String>) -> bool {
        let passed = outcome.is_ok();
        self.0.push(CheckResult {
            name,
            passed,
            detail: outcome.err().unwrap_or_else(|| "ok".into()),
        });
        passed
    }
}

/// Re-derives everything from the geometry, the orders, `m`, `ε` and the
/// family id, and re-checks the stored matrices geometrically. Stored
/// verdicts and accuracy figures are compared against fresh ones, never
/// trusted.
pub fn verify(cert: &Certificate, directions: Option<usize>) -> VerifyReport {
    let mut checks = Checks(Vec::new());
    let directions = directions.unwrap_or(cert.directions);

    let version_ok = cert.version == CERTIFICATE_VERSION;
    checks.record(
        "version",
        if version_ok { Ok(()) } else { Err(format!("unsupported version {}", cert.version)) },
    );

    let sys = match ClosureSystem::from_json(&cert.geometry).and_then(|s| require_convex_geometry(&s).map(|_| s)) {
        Ok(s) => {
            checks.record("geometry", Ok(()));
            s
        }
        Err(e) => {
            checks.record("geometry", Err(e.to_string()));
            return finish(checks);
        }
    };

    let orders = LinearOrderTuple::from_json(&cert.orders);
    let orders_ok = checks.record(
        "orders",
        match &orders {
            Ok(o) => match (closure_from_orderings(o), orderings_from_geometry(&sys)) {
                (Ok(g), Ok(expected)) if g == sys && *o == expected => Ok(()),
                (Ok(g), Ok(_)) if g != sys => Err("orders do not generate the geometry".into()),
                (Ok(_), Ok(_)) => Err("orders differ from the maximal chains of the geometry".into()),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            },
            Err(e) => Err(e.to_string()),
        },
    );
    if !orders_ok {
        return finish(checks);
    }
    let orders = orders.expect("checked above");
    let padded = pad_orders(&orders);
    let padding_ok = checks.record(
        "padding",
        if LinearOrderTuple::from_json(&cert.padded_orders).ok().as_ref() != Some(&padded) {
            Err("padded orders are not the cyclic repetition of the orders".into())
        } else if cert.t != padded.len() || padded.len() < MIN_SECTORS {
            Err(format!("t = {} but {} padded orders", cert.t, padded.len()))
        } else {
            Ok(())
        },
    );
    if !padding_ok {
        return finish(checks);
    }

    checks.record(
        "multiplicity",
        match cert.epsilon {
            None if cert.m >= 1 => Ok(()),
            None => Err("multiplicity must be positive".into()),
            Some(eps) => match multiplicity_for_accuracy(cert.t, eps) {
                Ok(m) if m == cert.m => Ok(()),
                Ok(m) => Err(format!("epsilon {eps} needs m = {m}, certificate has {}", cert.m)),
                Err(e) => Err(e.to_string()),
            },
        },
    );

    let expected_params = allocate_parameters(sys.n(), cert.t, cert.m, &cert.params.family_id);
    let params_ok = checks.record(
        "parameters",
        match &expected_params {
            Ok(p) if p == &cert.params => Ok(()),
            Ok(_) => Err("parameters differ from a fresh allocation".into()),
            Err(e) => Err(e.to_string()),
        },
    );

    checks.record("matrices", check_matrices(cert, &padded, expected_params.ok().filter(|_| params_ok)));

    // geometric checks use the stored matrices and element labels as given
    match stored_curves(cert) {
        Ok(curves) => match verify_isomorphism_with(&sys, &curves, None, hull_config(directions)) {
            Ok(report) => {
                checks.record(
                    "isomorphism",
                    match report.mismatch {
                        None if report.isomorphic => Ok(()),
                        None => Err("geometric closure system differs".into()),
                        Some((x, y)) => Err(format!("hull membership of {y} over {x} disagrees with the geometry")),
                    },
                );
                checks.record(
                    "local_anti_exchange",
                    match report.local_anti_exchange.violation {
                        None => Ok(()),
                        Some((x, d, d2)) => Err(format!("Hull({x} + {d}) = Hull({x} + {d2})")),
                    },
                );
            }
            Err(e) => {
                checks.record("isomorphism", Err(e.to_string()));
            }
        },
        Err(e) => {
            checks.record("isomorphism", Err(e.to_string()));
        }
    }

    checks.record("accuracy", check_accuracy(cert));
    let verdict = check_verdict(&cert.verdict, &checks.0);
    checks.record("verdict", verdict);
    finish(checks)
}

fn check_verdict(stored: &Verdict, checks: &[CheckResult]) -> std::result::Result<(), String> {
    let passed = |name: &str| checks.iter().any(|c| c.name == name && c.passed);
    let fresh = [
        ("isomorphic", passed("isomorphism"), stored.isomorphic),
        ("local_anti_exchange", passed("local_anti_exchange"), stored.local_anti_exchange),
        ("accuracy_ok", passed("accuracy"), stored.accuracy_ok),
        ("pass", checks.iter().all(|c| c.passed), stored.pass),
        ("mismatch", passed("isomorphism"), stored.mismatch.is_none()),
    ];
    match fresh.iter().find(|(_, now, then)| now != then) {
        None => Ok(()),
        Some((field, now, _)) => Err(format!("stored verdict field {field} contradicts the recomputed outcome ({now})")),
    }
}

fn finish(checks: Checks) -> VerifyReport {
    VerifyReport {
        pass: checks.0.iter().all(|c| c.passed),
        checks: checks.0,
    }
}

fn check_matrices(cert: &Certificate, padded: &LinearOrderTuple, params: Option<ParameterSet>) -> std::result::Result<(), String> {
    let params = params.ok_or("no trusted parameters to compare against")?;
    let n = padded.n();
    let mut elements: Vec<usize> = cert.members.iter().map(|m| m.element).collect();
    elements.sort_unstable();
    if elements != (1..=n).collect::<Vec<_>>() {
        return Err(format!("member elements {elements:?} are not 1..={n}"));
    }
    for member in &cert.members {
        let expected = parameter_matrix(cert.m, padded, &params, member.element).map_err(|e| e.to_string())?;
        if expected != member.s {
            return Err(format!("S of element {} differs from S(e)", member.element));
        }
    }
    Ok(())
}

fn stored_curves(cert: &Certificate) -> Result<CurveFamily> {
    let mut curves = Vec::with_capacity(cert.members.len());
    let mut labels = Vec::with_capacity(cert.members.len());
    for member in &cert.members {
        curves.push(PlaneCurve::curve(AlmostCircle::with_outer_map(member.s.clone(), Default::default())?));
        labels.push(member.element);
    }
    CurveFamily::new(curves, labels)
}

fn check_accuracy(cert: &Certificate) -> std::result::Result<(), String> {
    let first = cert.members.first().ok_or("no members")?;
    let curve = AlmostCircle::with_outer_map(first.s.clone(), Default::default()).map_err(|e| e.to_string())?;
    if curve.m() != cert.m || curve.t() != cert.t {
        return Err(format!("S is {} × {}, certificate says {} × {}", curve.m(), curve.t(), cert.m, cert.t));
    }
    let fresh = accuracy(&curve).map_err(|e| e.to_string())?;
    if !accuracy_holds(&fresh, cert.epsilon) {
        return Err(format!("ratio {} below the required bound", fresh.ratio));
    }
    let stored = &cert.accuracy;
    let same = [
        (stored.r1, fresh.r1),
        (stored.r2, fresh.r2),
        (stored.ratio, fresh.ratio),
        (stored.bound, fresh.bound),
    ]
    .iter()
    .all(|(a, b)| (a - b).abs() <= ACCURACY_TOLERANCE);
    if !same {
        return Err("stored accuracy figures differ from recomputed ones".into());
    }
    Ok(())
}

impl Certificate {
    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Member curves with their element labels, built from the stored matrices.
    pub fn curves(&self) -> Result<Vec<(usize, AlmostCircle)>> {
        self.members
            .iter()
            .map(|m| Ok((m.element, AlmostCircle::with_outer_map(m.s.clone(), Default::default())?)))
            .collect()
    }
}
