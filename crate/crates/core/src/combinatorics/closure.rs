use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{LinearOrderTuple, Subset, MAX_GROUND};
use crate::error::{Error, Result};

/// Default bound on `n` for operations that enumerate every subset.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 12;

/// A zero-preserving closure system on `{1, …, n}`: contains `∅` and the
/// ground set and is closed under pairwise intersection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosureSystem {
    n: usize,
    // sorted by bitmask, deduplicated
    sets: Vec<Subset>,
}

/// JSON geometry format: `{ "n": 2, "closed_sets": [[], [1], [1,2]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometryJson {
    pub n: usize,
    pub closed_sets: Vec<Vec<usize>>,
}

/// Outcome of checking the convex-geometry axioms exhaustively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub is_closure_operator: bool,
    pub is_zero_preserving: bool,
    pub anti_exchange_holds: bool,
    /// Counterexamples `(A, x, y)` with `x < y`, capped at [`MAX_WITNESSES`].
    pub witnesses: Vec<(Subset, usize, usize)>,
}

pub const MAX_WITNESSES: usize = 32;

impl GeometryReport {
    pub fn is_convex_geometry(&self) -> bool {
        self.is_closure_operator && self.is_zero_preserving && self.anti_exchange_holds
    }
}

/// Restriction of a closure system to a subset `E0`, relabelled onto
/// `{1, …, |E0|}`. `labels[k]` is the original element behind new element `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub system: ClosureSystem,
    pub labels: Vec<usize>,
}

impl ClosureSystem {
    /// Validates and builds a closure system. Ill-formed families are rejected.
    pub fn new<I: IntoIterator<Item = Subset>>(n: usize, sets: I) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
        }
        let full = Subset::full(n);
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        for s in &sets {
            if !s.is_subset_of(full) {
                let element = s.difference(full).elements().next().unwrap_or(0);
                return Err(Error::ElementOutOfRange { element, n });
            }
        }
        sets.sort();
        sets.dedup();
        if sets.binary_search(&Subset::EMPTY).is_err() {
            return Err(Error::MissingBound("empty"));
        }
        if sets.binary_search(&full).is_err() {
            return Err(Error::MissingBound("full"));
        }
        let lookup: HashSet<Subset> = sets.iter().copied().collect();
        for (i, &a) in sets.iter().enumerate() {
            for &b in &sets[i + 1..] {
                if !lookup.contains(&a.intersection(b)) {
                    return Err(Error::NotIntersectionClosed { a, b });
                }
            }
        }
        Ok(ClosureSystem { n, sets })
    }

    /// The powerset of `{1, …, n}` (the free convex geometry).
    pub fn powerset(n: usize) -> Result<Self> {
        ClosureSystem::new(n, Subset::all(n))
    }

    /// The chain `∅ ⊂ {1} ⊂ {1,2} ⊂ … ⊂ {1..n}`.
    pub fn chain(n: usize) -> Result<Self> {
        ClosureSystem::new(n, (0..=n).map(Subset::full))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn closed_sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_closed(&self, x: Subset) -> bool {
        self.sets.binary_search(&x).is_ok()
    }

    /// `Φ(X)`: the intersection of all closed sets containing `X`.
    pub fn closure_of(&self, x: Subset) -> Subset {
        self.sets
            .iter()
            .filter(|c| x.is_subset_of(**c))
            .fold(self.full().union(x), |acc, c| acc.intersection(*c))
    }

    /// `Φ` tabulated over all `2^n` subsets, indexed by bitmask.
    ///
    /// Computed by a superset sweep: `Φ(X) = X` when `X` is closed, else the
    /// meet of `Φ(X ∪ {e})` over `e ∉ X`.
    pub fn closure_table(&self) -> Vec<Subset> {
        let size = 1usize << self.n;
        let full = self.full();
        let mut table = vec![full; size];
        for bits in (0..size).rev() {
            let x = Subset(bits as u32);
            if self.is_closed(x) {
                table[bits] = x;
                continue;
            }
            let mut acc = full;
            for e in full.difference(x).elements() {
                acc = acc.intersection(table[x.with(e).bits() as usize]);
            }
            table[bits] = acc;
        }
        table
    }

    pub fn to_json(&self) -> GeometryJson {
        let mut sets: Vec<Vec<usize>> = self.sets.iter().map(|s| s.to_vec()).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        GeometryJson {
            n: self.n,
            closed_sets: sets,
        }
    }

    pub fn from_json(json: &GeometryJson) -> Result<Self> {
        if json.n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge {
                n: json.n,
                max: MAX_GROUND,
            });
        }
        let mut sets = Vec::with_capacity(json.closed_sets.len());
        for set in &json.closed_sets {
            for &e in set {
                if e == 0 || e > json.n {
                    return Err(Error::ElementOutOfRange {
                        element: e,
                        n: json.n,
                    });
                }
            }
            sets.push(Subset::from_elements(set.iter().copied()));
        }
        ClosureSystem::new(json.n, sets)
    }
}

fn check_exhaustive(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::GroundSetTooLarge { n, max: limit })
    } else {
        Ok(())
    }
}

/// The Edelman–Jamison closure system of an ordering tuple:
/// `{∅} ∪ {X : ∀ y ∉ X ∃ i, X <_i y}`.
pub fn closure_from_orderings(orders: &LinearOrderTuple) -> Result<ClosureSystem> {
    let n = orders.n();
    let full = Subset::full(n);
    // below[i][y-1]: elements preceding y in order i
    let below: Vec<Vec<Subset>> = (0..orders.len())
        .map(|i| (1..=n).map(|y| orders.below(i, y)).collect())
        .collect();
    let sets = Subset::all(n).filter(|&x| {
        x.is_empty()
            || full
                .difference(x)
                .elements()
                .all(|y| below.iter().any(|b| x.is_subset_of(b[y - 1])))
    });
    ClosureSystem::new(n, sets)
}

/// Exhaustively checks the convex-geometry axioms on `{1, …, n}`, `n <= limit`.
pub fn verify_convex_geometry_with_limit(sys: &ClosureSystem, limit: usize) -> Result<GeometryReport> {
    let n = sys.n();
    check_exhaustive(n, limit)?;
    let table = sys.closure_table();
    let phi = |x: Subset| table[x.bits() as usize];
    let full = sys.full();

    let mut is_closure_operator = true;
    for x in Subset::all(n) {
        let c = phi(x);
        if !x.is_subset_of(c) || phi(c) != c {
            is_closure_operator = false;
            break;
        }
        if full
            .difference(x)
            .elements()
            .any(|e| !c.is_subset_of(phi(x.with(e))))
        {
            is_closure_operator = false;
            break;
        }
    }
    let is_zero_preserving = phi(Subset::EMPTY).is_empty();

    let mut witnesses = Vec::new();
    'outer: for a in Subset::all(n) {
        let ca = phi(a);
        let outside: Vec<usize> = full.difference(ca).elements().collect();
        for (i, &x) in outside.iter().enumerate() {
            let cx = phi(a.with(x));
            for &y in &outside[i + 1..] {
                if cx == phi(a.with(y)) {
                    witnesses.push((a, x, y));
                    if witnesses.len() >= MAX_WITNESSES {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(GeometryReport {
        is_closure_operator,
        is_zero_preserving,
        anti_exchange_holds: witnesses.is_empty(),
        witnesses,
    })
}

pub fn verify_convex_geometry(sys: &ClosureSystem) -> Result<GeometryReport> {
    verify_convex_geometry_with_limit(sys, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Restricts `sys` to `e0` with closure `X ↦ E0 ∩ Φ(X)`; the closed sets are
/// the traces `E0 ∩ C` of closed sets `C`.
pub fn restrict_system(sys: &ClosureSystem, e0: Subset) -> Result<Restriction> {
    if !e0.is_subset_of(sys.full()) {
        let element = e0.difference(sys.full()).elements().next().unwrap_or(0);
        return Err(Error::ElementOutOfRange { element, n: sys.n() });
    }
    let labels: Vec<usize> = e0.to_vec();
    let relabel = |s: Subset| {
        Subset::from_elements(
            labels
                .iter()
                .enumerate()
                .filter(|(_, &e)| s.contains(e))
                .map(|(k, _)| k + 1),
        )
    };
    let traces: HashSet<Subset> = sys
        .closed_sets()
        .iter()
        .map(|c| relabel(c.intersection(e0)))
        .collect();
    let system = ClosureSystem::new(labels.len(), traces)?;
    Ok(Restriction { system, labels })
}
