use std::f64::consts::TAU;

use super::support::{curve_support, direction, PlaneCurve};
use crate::combinatorics::{ClosureSystem, Subset};
use crate::curves::Point;
use crate::error::{Error, Result};

/// Largest family accepted by the exhaustive subset procedures.
pub const MAX_EXHAUSTIVE_FAMILY: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct HullConfig {
    /// Number of equally spaced test directions.
    pub directions: usize,
    /// Margins in `[−tie_tolerance, 0)` still count as contained.
    pub tie_tolerance: f64,
    /// Golden-section steps spent on each refined grid neighbourhood.
    pub refine_iterations: usize,
}

impl Default for HullConfig {
    fn default() -> Self {
        HullConfig {
            directions: 4096,
            tie_tolerance: 1e-9,
            refine_iterations: 40,
        }
    }
}

/// Whether a curve lies in the convex hull of a set of curves.
#[derive(Clone, Debug, PartialEq)]
pub struct HullDecision {
    pub member: bool,
    /// `min_u (max_{c∈X} h_c(u) − h_d(u))` over the tested directions;
    /// `−∞` for an empty `X`.
    pub margin: f64,
    /// A direction with negative margin when `member` is false.
    pub witness_direction: Option<Point>,
    /// `|margin|` fell below the tie tolerance.
    pub near_tie: bool,
}

/// A finite list of curves labelled by a permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveFamily {
    members: Vec<PlaneCurve>,
    labels: Vec<usize>,
}

impl CurveFamily {
    pub fn new(members: Vec<PlaneCurve>, labels: Vec<usize>) -> Result<Self> {
        let n = members.len();
        if labels.len() != n {
            return Err(Error::Domain(format!(
                "{} labels for {n} members",
                labels.len()
            )));
        }
        if n > crate::combinatorics::MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge {
                n,
                max: crate::combinatorics::MAX_ELEMENTS,
            });
        }
        let mut seen = vec![false; n];
        for &l in &labels {
            if l == 0 || l > n || seen[l - 1] {
                return Err(Error::Domain(format!(
                    "labels must be a permutation of 1..={n}"
                )));
            }
            seen[l - 1] = true;
        }
        Ok(CurveFamily { members, labels })
    }

    /// Member `k` gets label `k + 1`.
    pub fn with_identity_labels(members: Vec<PlaneCurve>) -> Result<Self> {
        let labels = (1..=members.len()).collect();
        CurveFamily::new(members, labels)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[PlaneCurve] {
        &self.members
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// The member carrying label `e`.
    pub fn member(&self, e: usize) -> &PlaneCurve {
        &self.members[self.index_of(e)]
    }

    fn index_of(&self, e: usize) -> usize {
        self.labels
            .iter()
            .position(|&l| l == e)
            .expect("label in range")
    }
}

/// Support values of every member on a fixed direction grid.
pub struct HullEngine<'a> {
    family: &'a CurveFamily,
    config: HullConfig,
    grid: Vec<Point>,
    // tables[e - 1][k] = h_{member e}(grid[k])
    tables: Vec<Vec<f64>>,
    radius: Vec<f64>,
    rho: Vec<f64>,
}

impl<'a> HullEngine<'a> {
    pub fn new(family: &'a CurveFamily, config: HullConfig) -> Result<Self> {
        if config.directions < 8 {
            return Err(Error::Domain(format!(
                "{} directions are too few",
                config.directions
            )));
        }
        let grid: Vec<Point> = (0..config.directions)
            .map(|k| direction(TAU * k as f64 / config.directions as f64))
            .collect();
        let n = family.len();
        let mut tables = Vec::with_capacity(n);
        let mut radius = Vec::with_capacity(n);
        let mut rho = Vec::with_capacity(n);
        for e in 1..=n {
            let c = family.member(e);
            tables.push(grid.iter().map(|&u| curve_support(c, u)).collect());
            radius.push(c.radius_bound());
            rho.push(c.curvature_radius_bound());
        }
        Ok(HullEngine {
            family,
            config,
            grid,
            tables,
            radius,
            rho,
        })
    }

    pub fn family(&self) -> &CurveFamily {
        self.family
    }

    pub fn config(&self) -> &HullConfig {
        &self.config
    }

    fn step(&self) -> f64 {
        TAU / self.config.directions as f64
    }

    /// Whether member `d` lies in the convex hull of the members labelled by `x`.
    pub fn membership(&self, d: usize, x: Subset) -> HullDecision {
        let xs: Vec<usize> = x.elements().collect();
        if xs.is_empty() {
            return empty_decision();
        }
        match self.family.member(d) {
            PlaneCurve::Polygon(vertices) => {
                // a polygon is contained iff all its vertices are
                let mut worst: Option<HullDecision> = None;
                for &v in vertices {
                    let grid: Vec<f64> = self.grid.iter().map(|u| u[0] * v[0] + u[1] * v[1]).collect();
                    let target = Target {
                        grid: &grid,
                        curve: &PlaneCurve::Point(v),
                        radius: v[0].hypot(v[1]),
                        rho: 0.0,
                    };
                    let dec = self.decide(&target, &xs);
                    if worst.as_ref().is_none_or(|w| dec.margin < w.margin) {
                        worst = Some(dec);
                    }
                }
                worst.unwrap_or_else(empty_decision)
            }
            curve => {
                let target = Target {
                    grid: &self.tables[d - 1],
                    curve,
                    radius: self.radius[d - 1],
                    rho: self.rho[d - 1],
                };
                self.decide(&target, &xs)
            }
        }
    }

    fn decide(&self, d: &Target<'_>, xs: &[usize]) -> HullDecision {
        let count = self.grid.len();
        let tol = self.config.tie_tolerance;
        let gap: Vec<f64> = (0..count)
            .map(|k| {
                xs.iter()
                    .map(|&c| self.tables[c - 1][k])
                    .fold(f64::NEG_INFINITY, f64::max)
                    - d.grid[k]
            })
            .collect();
        let (mut best_k, mut margin) = (0, f64::INFINITY);
        for (k, &g) in gap.iter().enumerate() {
            if g < margin {
                best_k = k;
                margin = g;
            }
        }
        let mut witness = self.grid[best_k];

        // g″ ≥ −(R_X + R_d + ρ_d), so between grid points g drops at most this
        // far below the chord
        let r_x = xs.iter().map(|&c| self.radius[c - 1]).fold(0.0, f64::max);
        let safety = (r_x + d.radius + d.rho) * self.step() * self.step() / 8.0;
        if margin >= -tol {
            for k in self.refinement_seeds(&gap, safety + tol) {
                let (phi, g) = self.golden_minimum(d.curve, xs, k);
                if g < margin {
                    margin = g;
                    witness = direction(phi);
                }
            }
        }

        let member = margin >= -tol;
        let near_tie = margin.abs() < tol;
        if near_tie {
            log::debug!("near tie in hull membership: margin {margin:e}");
        }
        HullDecision {
            member,
            margin,
            witness_direction: (!member).then_some(witness),
            near_tie,
        }
    }

    /// Grid local minima below `threshold`; long runs contribute their two
    /// ends and their lowest point.
    fn refinement_seeds(&self, gap: &[f64], threshold: f64) -> Vec<usize> {
        let count = gap.len();
        let below: Vec<bool> = gap.iter().map(|&g| g < threshold).collect();
        if below.iter().all(|&b| b) {
            let lowest = (0..count).min_by(|&a, &b| gap[a].total_cmp(&gap[b])).unwrap_or(0);
            return vec![lowest];
        }
        let start = below.iter().position(|&b| !b).expect("some grid point above threshold");
        let mut seeds = Vec::new();
        let mut run: Vec<usize> = Vec::new();
        let flush = |run: &mut Vec<usize>, seeds: &mut Vec<usize>| {
            if run.is_empty() {
                return;
            }
            let lowest = *run
                .iter()
                .min_by(|&&a, &&b| gap[a].total_cmp(&gap[b]))
                .expect("nonempty run");
            seeds.push(run[0]);
            seeds.push(lowest);
            seeds.push(*run.last().expect("nonempty run"));
            run.clear();
        };
        for offset in 1..=count {
            let k = (start + offset) % count;
            if below[k] {
                run.push(k);
            } else {
                flush(&mut run, &mut seeds);
            }
        }
        flush(&mut run, &mut seeds);
        seeds.sort_unstable();
        seeds.dedup();
        seeds
    }

    fn gap_at(&self, d: &PlaneCurve, xs: &[usize], phi: f64) -> f64 {
        let u = direction(phi);
        xs.iter()
            .map(|&c| curve_support(self.family.member(c), u))
            .fold(f64::NEG_INFINITY, f64::max)
            - curve_support(d, u)
    }

    /// Golden-section search for a minimum of the gap on the two grid cells
    /// around `k`.
    fn golden_minimum(&self, d: &PlaneCurve, xs: &[usize], k: usize) -> (f64, f64) {
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let h = self.step();
        let centre = h * k as f64;
        let (mut a, mut b) = (centre - h, centre + h);
        let mut c = b - INV_PHI * (b - a);
        let mut e = a + INV_PHI * (b - a);
        let mut gc = self.gap_at(d, xs, c);
        let mut ge = self.gap_at(d, xs, e);
        let mut best = (centre, self.gap_at(d, xs, centre));
        for _ in 0..self.config.refine_iterations {
            if gc < ge {
                b = e;
                e = c;
                ge = gc;
                c = b - INV_PHI * (b - a);
                gc = self.gap_at(d, xs, c);
            } else {
                a = c;
                c = e;
                gc = ge;
                e = a + INV_PHI * (b - a);
                ge = self.gap_at(d, xs, e);
            }
        }
        for cand in [(c, gc), (e, ge)] {
            if cand.1 < best.1 {
                best = cand;
            }
        }
        best
    }

    /// `X ∪ {d ∉ X : d ∈ Hull(X)}` in labels.
    pub fn hull_operator(&self, x: Subset) -> Subset {
        let mut out = x;
        for d in 1..=self.family.len() {
            if !x.contains(d) && self.membership(d, x).member {
                out = out.with(d);
            }
        }
        out
    }

    /// `table[X.bits()] = hull_operator(X)` for every subset of the labels.
    pub fn closure_table(&self) -> Result<Vec<Subset>> {
        let n = self.family.len();
        if n > MAX_EXHAUSTIVE_FAMILY {
            return Err(Error::GroundSetTooLarge {
                n,
                max: MAX_EXHAUSTIVE_FAMILY,
            });
        }
        let subsets: Vec<Subset> = Subset::all(n).collect();
        let workers = std::thread::available_parallelism().map_or(1, |p| p.get()).min(subsets.len());
        let chunk = subsets.len().div_ceil(workers);
        let parts: Vec<Vec<Subset>> = std::thread::scope(|scope| {
            let handles: Vec<_> = subsets
                .chunks(chunk)
                .map(|part| scope.spawn(move || part.iter().map(|&x| self.hull_operator(x)).collect::<Vec<_>>()))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("hull worker panicked"))
                .collect()
        });
        Ok(parts.into_iter().flatten().collect())
    }
}

struct Target<'t> {
    grid: &'t [f64],
    curve: &'t PlaneCurve,
    radius: f64,
    rho: f64,
}

fn empty_decision() -> HullDecision {
    HullDecision {
        member: false,
        margin: f64::NEG_INFINITY,
        witness_direction: None,
        near_tie: false,
    }
}

/// Whether `d` lies in the convex hull of the curves `x`.
pub fn hull_membership(d: &PlaneCurve, x: &[PlaneCurve]) -> HullDecision {
    hull_membership_with(d, x, &HullConfig::default())
}

pub fn hull_membership_with(d: &PlaneCurve, x: &[PlaneCurve], config: &HullConfig) -> HullDecision {
    if x.is_empty() {
        return empty_decision();
    }
    let mut members = x.to_vec();
    members.push(d.clone());
    let family = CurveFamily::with_identity_labels(members).expect("identity labels are valid");
    let engine = HullEngine::new(&family, config.clone()).expect("valid configuration");
    engine.membership(x.len() + 1, Subset::full(x.len()))
}

/// `{d : d ∈ Hull(X)}` for `X` given by labels.
pub fn hull_operator(family: &CurveFamily, x: Subset) -> Subset {
    HullEngine::new(family, HullConfig::default())
        .expect("default configuration is valid")
        .hull_operator(x)
}

/// The sets fixed by the hull operator, as a closure system on the labels.
pub fn closure_system_of_family(family: &CurveFamily) -> Result<ClosureSystem> {
    closure_system_with(family, HullConfig::default())
}

pub fn closure_system_with(family: &CurveFamily, config: HullConfig) -> Result<ClosureSystem> {
    let engine = HullEngine::new(family, config)?;
    closure_system_from_table(family.len(), &engine.closure_table()?)
}

pub fn closure_system_from_table(n: usize, table: &[Subset]) -> Result<ClosureSystem> {
    let closed = table
        .iter()
        .enumerate()
        .filter(|(bits, c)| c.bits() == *bits as u32)
        .map(|(_, c)| *c);
    ClosureSystem::new(n, closed)
}

/// Outcome of the exhaustive local anti-exchange check.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalAntiExchangeReport {
    pub holds: bool,
    /// `(X, d, d′)` with `d ≠ d′ ∉ Hull(X)` and `Hull(X ∪ {d}) = Hull(X ∪ {d′})`.
    pub violation: Option<(Subset, usize, usize)>,
    pub checked: usize,
}

pub fn verify_local_anti_exchange(family: &CurveFamily) -> Result<LocalAntiExchangeReport> {
    let engine = HullEngine::new(family, HullConfig::default())?;
    Ok(local_anti_exchange_from_table(family.len(), &engine.closure_table()?))
}

pub fn local_anti_exchange_from_table(n: usize, table: &[Subset]) -> LocalAntiExchangeReport {
    let full = Subset::full(n);
    let mut checked = 0;
    for bits in 0..table.len() {
        let x = Subset(bits as u32);
        let outside: Vec<usize> = full.difference(table[bits]).elements().collect();
        for (a, &d) in outside.iter().enumerate() {
            for &d2 in &outside[a + 1..] {
                checked += 1;
                if table[x.with(d).bits() as usize] == table[x.with(d2).bits() as usize] {
                    return LocalAntiExchangeReport {
                        holds: false,
                        violation: Some((x, d, d2)),
                        checked,
                    };
                }
            }
        }
    }
    LocalAntiExchangeReport {
        holds: true,
        violation: None,
        checked,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::build_almost_circle;
    use crate::rational::ratio;

    fn triangle() -> Vec<PlaneCurve> {
        vec![
            PlaneCurve::Point([0.0, 0.0]),
            PlaneCurve::Point([4.0, 0.0]),
            PlaneCurve::Point([0.0, 4.0]),
        ]
    }

    fn ring(p: i64, q: i64) -> PlaneCurve {
        let a = ratio(p, q);
        PlaneCurve::curve(build_almost_circle(vec![vec![a.clone(), a.clone(), a]]).unwrap())
    }

    #[test]
    fn point_in_triangle() {
        let d = hull_membership(&PlaneCurve::Point([1.0, 1.0]), &triangle());
        assert!(d.member && d.witness_direction.is_none());
        // distance to the nearest edge
        assert!((d.margin - 1.0).abs() < 1e-9);
    }

    #[test]
    fn point_outside_triangle() {
        let d = hull_membership(&PlaneCurve::Point([5.0, 5.0]), &triangle());
        assert!(!d.member);
        let w = d.witness_direction.unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((w[0] - s).abs() < 1e-6 && (w[1] - s).abs() < 1e-6);
        assert!((d.margin + 6.0 / 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn boundary_point_is_member() {
        let d = hull_membership(&PlaneCurve::Point([2.0, 2.0]), &triangle());
        assert!(d.member && d.near_tie);
    }

    #[test]
    fn empty_hull() {
        let d = hull_membership(&PlaneCurve::Point([0.0, 0.0]), &[]);
        assert!(!d.member && d.witness_direction.is_none() && d.margin == f64::NEG_INFINITY);
    }

    #[test]
    fn nested_almost_circles() {
        let outer = ring(1, 5);
        let inner = ring(4, 5);
        let d = hull_membership(&inner, std::slice::from_ref(&outer));
        assert!(d.member, "{d:?}");
        let d = hull_membership(&outer, std::slice::from_ref(&inner));
        assert!(!d.member && d.margin < -1e-6);
    }

    #[test]
    fn hull_operator_on_chain() {
        let fam = CurveFamily::with_identity_labels(vec![ring(4, 5), ring(1, 2), ring(1, 5)]).unwrap();
        let engine = HullEngine::new(&fam, HullConfig::default()).unwrap();
        assert_eq!(engine.hull_operator(Subset::EMPTY), Subset::EMPTY);
        assert_eq!(engine.hull_operator(Subset::singleton(3)), Subset::full(3));
        assert_eq!(engine.hull_operator(Subset::singleton(2)), Subset::from_elements([1, 2]));
        let sys = closure_system_of_family(&fam).unwrap();
        assert_eq!(sys, ClosureSystem::chain(3).unwrap());
    }

    #[test]
    fn generic_points_are_free() {
        let fam = CurveFamily::with_identity_labels(triangle()).unwrap();
        assert_eq!(closure_system_of_family(&fam).unwrap(), ClosureSystem::powerset(3).unwrap());
        assert!(verify_local_anti_exchange(&fam).unwrap().holds);
    }

    #[test]
    fn polygon_counterexample_is_flagged() {
        let square = PlaneCurve::Polygon(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]);
        let d = PlaneCurve::Polygon(vec![[0.0, 3.0], [-0.5, 0.0], [0.5, 0.0]]);
        let d2 = PlaneCurve::Polygon(vec![[0.0, 3.0], [0.2, 0.5], [-0.2, 0.5]]);
        let fam = CurveFamily::with_identity_labels(vec![square, d, d2]).unwrap();
        let r = verify_local_anti_exchange(&fam).unwrap();
        assert!(!r.holds);
        assert_eq!(r.violation, Some((Subset::singleton(1), 2, 3)));
    }

    #[test]
    fn labels_are_validated() {
        assert!(CurveFamily::new(triangle(), vec![1, 1, 2]).is_err());
        assert!(CurveFamily::new(triangle(), vec![1, 2]).is_err());
        let fam = CurveFamily::new(triangle(), vec![3, 1, 2]).unwrap();
        assert_eq!(fam.member(3), &PlaneCurve::Point([0.0, 0.0]));
    }
}
