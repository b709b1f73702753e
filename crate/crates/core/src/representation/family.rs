use std::f64::consts::PI;

use super::params::{allocate_parameters, family_slot, ParameterSet};
use crate::combinatorics::{backward_rank, orderings_from_geometry, ClosureSystem, LinearOrderTuple, Subset};
use crate::curves::{
    accuracy, arcs_affinely_equivalent, build_almost_circle, AccuracyReport, AlmostCircle, ArcSamples,
    DEFAULT_EQUIVALENCE_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::hull::{
    closure_system_from_table, local_anti_exchange_from_table, CurveFamily, HullConfig, HullEngine,
    LocalAntiExchangeReport, PlaneCurve, MAX_EXHAUSTIVE_FAMILY,
};
use crate::rational::Rational;

/// Fewest sectors the curve construction accepts.
pub const MIN_SECTORS: usize = 3;

/// `S(e)`: entry `(i, j)` is `a_{i, j, r(j, e)}`.
pub fn parameter_matrix(m: usize, orders: &LinearOrderTuple, params: &ParameterSet, e: usize) -> Result<Vec<Vec<Rational>>> {
    let (t, n) = (orders.len(), orders.n());
    if params.m != m || params.t != t || params.n != n {
        return Err(Error::Dimension(format!(
            "parameters allocated for (m, t, n) = ({}, {}, {}), needed ({m}, {t}, {n})",
            params.m, params.t, params.n
        )));
    }
    if e == 0 || e > n {
        return Err(Error::ElementOutOfRange { element: e, n });
    }
    let ranks: Vec<usize> = (0..t)
        .map(|j| backward_rank(orders.order(j), e))
        .collect::<Result<_>>()?;
    Ok((1..=m)
        .map(|i| {
            (1..=t)
                .map(|j| params.get(i, j, ranks[j - 1]).clone())
                .collect()
        })
        .collect())
}

/// The almost-circles `H(e) = C(S(e))` for `e = 1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentationFamily {
    pub orders: LinearOrderTuple,
    pub m: usize,
    pub params: ParameterSet,
    /// `members[e - 1] = H(e)`.
    pub members: Vec<AlmostCircle>,
}

/// Builds the family for `t ≥ 3` orders; see [`pad_orders`] for fewer.
pub fn build_family(orders: &LinearOrderTuple, m: usize, params: &ParameterSet) -> Result<RepresentationFamily> {
    if orders.len() < MIN_SECTORS {
        return Err(Error::TooFewSectors(orders.len()));
    }
    let members = (1..=orders.n())
        .map(|e| build_almost_circle(parameter_matrix(m, orders, params, e)?))
        .collect::<Result<_>>()?;
    Ok(RepresentationFamily {
        orders: orders.clone(),
        m,
        params: params.clone(),
        members,
    })
}

/// Repeats orders until there are at least three; the generated closure
/// system is unchanged.
pub fn pad_orders(orders: &LinearOrderTuple) -> LinearOrderTuple {
    orders.padded(MIN_SECTORS)
}

/// Pads, allocates and builds in one step.
pub fn represent_orders(orders: &LinearOrderTuple, m: usize, family_id: &str) -> Result<RepresentationFamily> {
    let padded = pad_orders(orders);
    let params = allocate_parameters(padded.n(), padded.len(), m, family_id)?;
    build_family(&padded, m, &params)
}

impl RepresentationFamily {
    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn t(&self) -> usize {
        self.orders.len()
    }

    pub fn member(&self, e: usize) -> &AlmostCircle {
        &self.members[e - 1]
    }

    pub fn curve_family(&self) -> CurveFamily {
        CurveFamily::with_identity_labels(
            self.members.iter().cloned().map(PlaneCurve::curve).collect(),
        )
        .expect("identity labels are valid")
    }

    pub fn accuracy(&self) -> AccuracyReport {
        accuracy(&self.members[0]).expect("family members use the unit construction")
    }
}

/// `H(y) ∈ Hull(H(X))` iff no order puts all of `X` below `y`.
pub fn combinatorial_membership(orders: &LinearOrderTuple, x: Subset, y: usize) -> bool {
    !(0..orders.len()).any(|j| orders.set_below(j, x, y))
}

/// Geometric closure system of a family against a combinatorial one.
#[derive(Clone, Debug, PartialEq)]
pub struct IsomorphismReport {
    pub isomorphic: bool,
    /// First `(X, y)` in increasing order of `X` then `y` where the geometric
    /// and combinatorial answers differ.
    pub mismatch: Option<(Subset, usize)>,
    pub geometric: ClosureSystem,
    pub local_anti_exchange: LocalAntiExchangeReport,
}

pub fn verify_isomorphism(sys: &ClosureSystem, fam: &RepresentationFamily) -> Result<IsomorphismReport> {
    verify_isomorphism_with(sys, &fam.curve_family(), Some(&fam.orders), HullConfig::default())
}

/// Compares the hull operator of `curves` (labels as elements) with `sys` and,
/// when given, with [`combinatorial_membership`] for `orders`.
pub fn verify_isomorphism_with(
    sys: &ClosureSystem,
    curves: &CurveFamily,
    orders: Option<&LinearOrderTuple>,
    config: HullConfig,
) -> Result<IsomorphismReport> {
    let n = sys.n();
    if curves.len() != n {
        return Err(Error::Dimension(format!(
            "{} curves for a ground set of {n}",
            curves.len()
        )));
    }
    if n > MAX_EXHAUSTIVE_FAMILY {
        return Err(Error::GroundSetTooLarge {
            n,
            max: MAX_EXHAUSTIVE_FAMILY,
        });
    }
    let engine = HullEngine::new(curves, config)?;
    let table = engine.closure_table()?;
    let mut mismatch = None;
    'outer: for x in Subset::all(n) {
        let closed = sys.closure_of(x);
        for y in Subset::full(n).difference(x).elements() {
            let geometric = table[x.bits() as usize].contains(y);
            let expected = closed.contains(y);
            let combinatorial = orders.map_or(expected, |o| combinatorial_membership(o, x, y));
            if geometric != expected || geometric != combinatorial {
                mismatch = Some((x, y));
                break 'outer;
            }
        }
    }
    let geometric = closure_system_from_table(n, &table)
        .or_else(|_| ClosureSystem::new(n, [Subset::EMPTY, Subset::full(n)]))?;
    Ok(IsomorphismReport {
        isomorphic: mismatch.is_none() && geometric == *sys,
        mismatch,
        geometric,
        local_anti_exchange: local_anti_exchange_from_table(n, &table),
    })
}

/// Smallest `m ≥ 1` with `m ≥ π/(t√ε)`, giving accuracy `1 − (π/mt)² ≥ 1 − ε`.
pub fn multiplicity_for_accuracy(t: usize, epsilon: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if t < MIN_SECTORS {
        return Err(Error::TooFewSectors(t));
    }
    let m = (PI / (t as f64 * epsilon.sqrt())).ceil().max(1.0) as usize;
    Ok(m)
}

/// `count` families for `sys` from parameter sets in pairwise distinct slots.
pub fn affine_disjoint_families(sys: &ClosureSystem, count: usize, m: usize) -> Result<Vec<RepresentationFamily>> {
    if count < 2 {
        return Err(Error::Domain("at least two families are needed".into()));
    }
    let orders = orderings_from_geometry(sys)?;
    let mut used = Vec::new();
    let mut families = Vec::with_capacity(count);
    let mut next = 0usize;
    while families.len() < count {
        let id = format!("family-{next}");
        next += 1;
        let slot = family_slot(&id);
        if used.contains(&slot) {
            continue;
        }
        used.push(slot);
        families.push(represent_orders(&orders, m, &id)?);
    }
    Ok(families)
}

fn arc_samples(fam: &RepresentationFamily, samples: usize) -> Vec<ArcSamples> {
    fam.members
        .iter()
        .flat_map(|c| c.arcs().iter().map(|a| ArcSamples::from_arc(a, samples)).collect::<Vec<_>>())
        .collect()
}

/// Number of arc pairs, one from each family, found affinely equivalent.
pub fn cross_family_matches(a: &RepresentationFamily, b: &RepresentationFamily, samples: usize) -> Result<usize> {
    let left = arc_samples(a, samples);
    let right = arc_samples(b, samples);
    let mut matches = 0;
    for p in &left {
        for q in &right {
            if arcs_affinely_equivalent(p, q, DEFAULT_EQUIVALENCE_TOLERANCE)?.equivalent {
                matches += 1;
            }
        }
    }
    Ok(matches)
}

/// Number of distinct arc pairs inside one family found affinely equivalent.
pub fn within_family_matches(fam: &RepresentationFamily, samples: usize) -> Result<usize> {
    let arcs = arc_samples(fam, samples);
    let mut matches = 0;
    for (k, p) in arcs.iter().enumerate() {
        for q in &arcs[k + 1..] {
            if arcs_affinely_equivalent(p, q, DEFAULT_EQUIVALENCE_TOLERANCE)?.equivalent {
                matches += 1;
            }
        }
    }
    Ok(matches)
}
