use serde::{Deserialize, Serialize};

use super::{Subset, MAX_GROUND};
use crate::error::{Error, Result};

/// A tuple of strict linear orders on `{1, …, n}`.
///
/// Order `i` lists the elements from its minimum to its maximum, so
/// `orders[i][0] <_i orders[i][1] <_i …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearOrderTuple {
    n: usize,
    orders: Vec<Vec<usize>>,
    // positions[i][e - 1] = index of e in orders[i]
    positions: Vec<Vec<usize>>,
}

/// JSON ordering format: `{ "n": 3, "orders": [[1,2,3],[3,2,1]] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdersJson {
    pub n: usize,
    pub orders: Vec<Vec<usize>>,
}

impl LinearOrderTuple {
    pub fn new(n: usize, orders: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("ground set must be nonempty".into()));
        }
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
        }
        if orders.is_empty() {
            return Err(Error::EmptyOrderTuple);
        }
        let mut positions = Vec::with_capacity(orders.len());
        for (index, order) in orders.iter().enumerate() {
            if order.len() != n {
                return Err(Error::MalformedOrder {
                    index,
                    n,
                    detail: format!("has {} entries", order.len()),
                });
            }
            let mut pos = vec![usize::MAX; n];
            for (p, &e) in order.iter().enumerate() {
                if e == 0 || e > n {
                    return Err(Error::MalformedOrder {
                        index,
                        n,
                        detail: format!("element {e} out of range"),
                    });
                }
                if pos[e - 1] != usize::MAX {
                    return Err(Error::MalformedOrder {
                        index,
                        n,
                        detail: format!("element {e} repeated"),
                    });
                }
                pos[e - 1] = p;
            }
            positions.push(pos);
        }
        Ok(LinearOrderTuple {
            n,
            orders,
            positions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of orders, `t`.
    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn order(&self, i: usize) -> &[usize] {
        &self.orders[i]
    }

    /// Zero-based position of `e` in order `i`.
    pub fn position(&self, i: usize, e: usize) -> usize {
        self.positions[i][e - 1]
    }

    /// `x <_i y`.
    pub fn less(&self, i: usize, x: usize, y: usize) -> bool {
        self.position(i, x) < self.position(i, y)
    }

    /// Elements strictly below `y` in order `i`.
    pub fn below(&self, i: usize, y: usize) -> Subset {
        let p = self.position(i, y);
        Subset::from_elements(self.orders[i][..p].iter().copied())
    }

    /// `X <_i y`: every element of `X` precedes `y` in order `i`.
    pub fn set_below(&self, i: usize, x: Subset, y: usize) -> bool {
        x.is_subset_of(self.below(i, y))
    }

    /// Repeats orders cyclically until there are at least `min_len` of them.
    /// Duplicated orders do not change the generated closure system.
    pub fn padded(&self, min_len: usize) -> LinearOrderTuple {
        let mut orders = self.orders.clone();
        let mut i = 0;
        while orders.len() < min_len {
            orders.push(self.orders[i % self.orders.len()].clone());
            i += 1;
        }
        LinearOrderTuple::new(self.n, orders).expect("padding preserves validity")
    }

    pub fn to_json(&self) -> OrdersJson {
        OrdersJson {
            n: self.n,
            orders: self.orders.clone(),
        }
    }

    pub fn from_json(json: &OrdersJson) -> Result<Self> {
        LinearOrderTuple::new(json.n, json.orders.clone())
    }
}

/// Backward rank `r(j, e)`: the number of elements `x` with `e <=_j x`.
/// The maximum of the order has rank 1, the minimum rank `n`.
pub fn backward_rank(order: &[usize], e: usize) -> Result<usize> {
    let n = order.len();
    if e == 0 || e > n {
        return Err(Error::ElementOutOfRange { element: e, n });
    }
    let p = order
        .iter()
        .position(|&x| x == e)
        .ok_or_else(|| Error::Parse(format!("element {e} missing from order")))?;
    Ok(n - p)
}
