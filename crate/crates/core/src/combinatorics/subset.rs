use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest ground set a bitmask subset can address.
pub const MAX_ELEMENTS: usize = 32;

/// A subset of `{1, …, n}` stored as a bitmask; bit `e - 1` marks element `e`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{1, …, n}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        debug_assert!((1..=MAX_ELEMENTS).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, e| acc.with(e))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !Subset::singleton(e).0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_ELEMENTS)
            .filter(move |i| bits & (1 << i) != 0)
            .map(|i| i + 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// The single element of a singleton, if it is one.
    pub fn as_singleton(self) -> Option<usize> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// All subsets of `{1, …, n}` in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_ELEMENTS, "cannot enumerate subsets of {n} elements");
        (0u32..(1u32 << n)).map(Subset)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_elements() {
        let s = Subset::from_elements([3, 1]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert_eq!(Subset::EMPTY.to_string(), "{}");
        assert_eq!(Subset::full(3), Subset::from_elements([1, 2, 3]));
    }

    #[test]
    fn set_operations() {
        let a = Subset::from_elements([1, 2]);
        let b = Subset::from_elements([2, 3]);
        assert_eq!(a.intersection(b), Subset::singleton(2));
        assert_eq!(a.union(b), Subset::full(3));
        assert_eq!(a.difference(b), Subset::singleton(1));
        assert!(Subset::singleton(2).is_subset_of(a));
        assert_eq!(Subset::singleton(5).as_singleton(), Some(5));
        assert_eq!(a.as_singleton(), None);
        assert_eq!(Subset::all(3).count(), 8);
    }
}
