use super::{ClosureSystem, LinearOrderTuple, Subset};
use crate::error::{Error, Result};

/// Upper bound on the number of maximal chains enumerated before giving up.
pub const DEFAULT_CHAIN_LIMIT: usize = 200_000;

/// A maximal chain `∅ = C_0 ⊂ C_1 ⊂ … ⊂ C_n = E` of closed sets.
pub type Chain = Vec<Subset>;

/// Elements added along a chain, in order of appearance.
pub fn chain_elements(chain: &[Subset]) -> Vec<usize> {
    chain
        .windows(2)
        .map(|w| {
            w[1].difference(w[0])
                .as_singleton()
                .expect("maximal chain steps are singletons")
        })
        .collect()
}

/// Covers of the closed set `c`: the minimal closed strict supersets.
fn covers(sys: &ClosureSystem, c: Subset) -> Vec<Subset> {
    let candidates: Vec<Subset> = sys
        .full()
        .difference(c)
        .elements()
        .map(|e| sys.closure_of(c.with(e)))
        .collect();
    let mut out: Vec<Subset> = candidates
        .iter()
        .copied()
        .filter(|d| !candidates.iter().any(|o| o != d && o.is_subset_of(*d)))
        .collect();
    out.sort_by_key(|d| d.difference(c).elements().next());
    out.dedup();
    out
}

pub fn maximal_chains_with_limit(sys: &ClosureSystem, limit: usize) -> Result<Vec<Chain>> {
    let mut chains = Vec::new();
    let mut stack = vec![Subset::EMPTY];
    walk(sys, &mut stack, &mut chains, limit)?;
    Ok(chains)
}

fn walk(sys: &ClosureSystem, stack: &mut Vec<Subset>, out: &mut Vec<Chain>, limit: usize) -> Result<()> {
    let top = *stack.last().expect("nonempty");
    if top == sys.full() {
        if out.len() >= limit {
            return Err(Error::TooManyChains { limit });
        }
        out.push(stack.clone());
        return Ok(());
    }
    for d in covers(sys, top) {
        if d.difference(top).len() != 1 {
            return Err(Error::CoverNotSingleton { lower: top, upper: d });
        }
        stack.push(d);
        walk(sys, stack, out, limit)?;
        stack.pop();
    }
    Ok(())
}

/// All maximal chains of the lattice of closed sets, in lexicographic order of
/// the sequence of added elements. Fails if some cover adds two or more
/// elements, which happens exactly when `sys` is not a convex geometry.
pub fn maximal_chains(sys: &ClosureSystem) -> Result<Vec<Chain>> {
    maximal_chains_with_limit(sys, DEFAULT_CHAIN_LIMIT)
}

/// One linear order per maximal chain, listing elements as they appear.
pub fn orderings_from_geometry(sys: &ClosureSystem) -> Result<LinearOrderTuple> {
    if sys.n() == 0 {
        return Err(Error::Domain("ground set must be nonempty".into()));
    }
    let chains = maximal_chains(sys)?;
    let orders = chains.iter().map(|c| chain_elements(c)).collect();
    LinearOrderTuple::new(sys.n(), orders)
}

struct Cover {
    words: Vec<u64>,
}

impl Cover {
    fn empty(bits: usize) -> Self {
        Cover {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn first_set(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn minus(&self, other: &Cover) -> Cover {
        Cover {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }
}

/// Minimum number of linear orders whose Edelman–Jamison system is `sys`,
/// together with one minimal tuple.
///
/// Every generating order has all its initial segments closed, so candidates
/// are restricted to the maximal chains; the search is an exact set cover of
/// the pairs `(X, y)` (`X` closed and nonempty, `y ∉ X`) by iterative deepening.
pub fn minimal_generating_orders(sys: &ClosureSystem) -> Result<LinearOrderTuple> {
    let candidates = orderings_from_geometry(sys)?;
    let full = sys.full();
    let pairs: Vec<(Subset, usize)> = sys
        .closed_sets()
        .iter()
        .filter(|x| !x.is_empty())
        .flat_map(|&x| full.difference(x).elements().map(move |y| (x, y)))
        .collect();
    let covers: Vec<Cover> = (0..candidates.len())
        .map(|i| {
            let mut c = Cover::empty(pairs.len());
            for (p, &(x, y)) in pairs.iter().enumerate() {
                if candidates.set_below(i, x, y) {
                    c.set(p);
                }
            }
            c
        })
        .collect();
    let mut all = Cover::empty(pairs.len());
    for p in 0..pairs.len() {
        all.set(p);
    }

    fn search(uncovered: &Cover, covers: &[Cover], depth: usize, chosen: &mut Vec<usize>) -> bool {
        let Some(p) = uncovered.first_set() else {
            return true;
        };
        if depth == 0 {
            return false;
        }
        for (i, c) in covers.iter().enumerate() {
            if c.contains(p) {
                chosen.push(i);
                if search(&uncovered.minus(c), covers, depth - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    for t in 1..=candidates.len() {
        let mut chosen = Vec::new();
        if search(&all, &covers, t, &mut chosen) {
            if chosen.is_empty() {
                // only the chain geometry on one element needs no pair covered
                chosen.push(0);
            }
            chosen.sort_unstable();
            chosen.dedup();
            let orders = chosen.iter().map(|&i| candidates.order(i).to_vec()).collect();
            return LinearOrderTuple::new(sys.n(), orders);
        }
    }
    unreachable!("the full set of maximal chains always generates the geometry")
}

pub fn convex_dimension(sys: &ClosureSystem) -> Result<usize> {
    Ok(minimal_generating_orders(sys)?.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::closure_from_orderings;

    #[test]
    fn chain_geometry_has_one_chain() {
        let sys = ClosureSystem::chain(2).unwrap();
        let chains = maximal_chains(&sys).unwrap();
        assert_eq!(chains, vec![vec![Subset(0), Subset(1), Subset(3)]]);
    }

    #[test]
    fn boolean_lattice_chain_counts() {
        assert_eq!(maximal_chains(&ClosureSystem::powerset(2).unwrap()).unwrap().len(), 2);
        assert_eq!(maximal_chains(&ClosureSystem::powerset(3).unwrap()).unwrap().len(), 6);
        assert_eq!(maximal_chains(&ClosureSystem::powerset(4).unwrap()).unwrap().len(), 24);
    }

    #[test]
    fn non_singleton_cover_is_reported() {
        let sys = ClosureSystem::new(2, [Subset::EMPTY, Subset::full(2)]).unwrap();
        assert!(matches!(
            maximal_chains(&sys),
            Err(Error::CoverNotSingleton { .. })
        ));
        assert!(orderings_from_geometry(&sys).is_err());
    }

    #[test]
    fn orderings_round_trip() {
        let chain = ClosureSystem::chain(3).unwrap();
        let o = orderings_from_geometry(&chain).unwrap();
        assert_eq!(o.orders(), &[vec![1, 2, 3]]);
        assert_eq!(closure_from_orderings(&o).unwrap(), chain);

        let p2 = ClosureSystem::powerset(2).unwrap();
        let o = orderings_from_geometry(&p2).unwrap();
        assert_eq!(o.orders(), &[vec![1, 2], vec![2, 1]]);
        assert_eq!(closure_from_orderings(&o).unwrap(), p2);
    }

    #[test]
    fn dimensions() {
        assert_eq!(convex_dimension(&ClosureSystem::chain(3).unwrap()).unwrap(), 1);
        assert_eq!(convex_dimension(&ClosureSystem::powerset(2).unwrap()).unwrap(), 2);
        assert_eq!(convex_dimension(&ClosureSystem::powerset(3).unwrap()).unwrap(), 3);
        assert_eq!(convex_dimension(&ClosureSystem::chain(1).unwrap()).unwrap(), 1);
        let p3 = ClosureSystem::powerset(3).unwrap();
        let minimal = minimal_generating_orders(&p3).unwrap();
        assert_eq!(closure_from_orderings(&minimal).unwrap(), p3);
    }
}
