use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, ratio, Rational};

/// Number of family slots addressed by hashing a family id.
pub const FAMILY_SLOTS: u64 = 1 << 16;
/// Largest `m·t·n` accepted by the allocator.
pub const MAX_PARAMETERS: usize = 1_000_000;
/// The Mersenne prime `2⁶¹ − 1`; slot offsets are multiples of `⌊P/2²⁸⌋/P`.
const PRIME: u64 = (1 << 61) - 1;

/// `m·t·n` strictly increasing parameters in `(0, 1)`, indexed as `a_{i,j,k}`
/// in lexicographic order of `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterSet {
    pub m: usize,
    pub t: usize,
    pub n: usize,
    pub family_id: String,
    pub slot: u64,
    #[serde(with = "rational::vec_serde")]
    pub values: Vec<Rational>,
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Slot of a family id in `0..FAMILY_SLOTS`.
pub fn family_slot(family_id: &str) -> u64 {
    fnv1a64(family_id.as_bytes()) % FAMILY_SLOTS
}

/// `a_p = 1/10 + (4/5)(p + 1)/(N + 2) + (s + 1)·⌊P/2²⁸⌋/P` for `p < N = mtn`,
/// with `s` the slot of `family_id`.
///
/// The slot offset is below `2⁻¹²` and the spacing inside a family is
/// `(4/5)/(N + 2)`, so all values stay in `(1/10, 0.91)`. Since `P` is prime
/// and larger than `5(N + 2)²`, families in different slots share no value,
/// and any two of their values differ by at least `⌊P/2²⁸⌋/P ≈ 3.7·10⁻⁹`
/// once `N` is below about 3000.
pub fn allocate_parameters(n: usize, t: usize, m: usize, family_id: &str) -> Result<ParameterSet> {
    if n == 0 || t == 0 || m == 0 {
        return Err(Error::Domain("n, t and m must be positive".into()));
    }
    let total = n
        .checked_mul(t)
        .and_then(|x| x.checked_mul(m))
        .filter(|&x| x <= MAX_PARAMETERS)
        .ok_or_else(|| Error::Domain(format!("m·t·n exceeds {MAX_PARAMETERS}")))?;
    let slot = family_slot(family_id);
    let step = PRIME / (1 << 28);
    let offset = Rational::new(
        BigInt::from(slot + 1) * BigInt::from(step),
        BigInt::from(PRIME),
    );
    let base = ratio(1, 10) + offset;
    let denom = total as i64 + 2;
    let values = (0..total)
        .map(|p| &base + ratio(4 * (p as i64 + 1), 5 * denom))
        .collect();
    Ok(ParameterSet {
        m,
        t,
        n,
        family_id: family_id.to_owned(),
        slot,
        values,
    })
}

impl ParameterSet {
    /// Validates externally supplied values.
    pub fn from_values(m: usize, t: usize, n: usize, family_id: &str, values: Vec<Rational>) -> Result<Self> {
        if values.len() != m * t * n {
            return Err(Error::Domain(format!(
                "{} values given, expected m·t·n = {}",
                values.len(),
                m * t * n
            )));
        }
        if let Some(v) = values.iter().find(|v| !rational::in_open_unit(v)) {
            return Err(Error::Domain(format!(
                "parameter {} outside (0, 1)",
                rational::format(v)
            )));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("parameters must strictly increase".into()));
        }
        Ok(ParameterSet {
            m,
            t,
            n,
            family_id: family_id.to_owned(),
            slot: family_slot(family_id),
            values,
        })
    }

    /// `a_{i,j,k}`, all indices one-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.values[((i - 1) * self.t + (j - 1)) * self.n + (k - 1)]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_disjoint_from(&self, other: &ParameterSet) -> bool {
        // both lists are sorted
        let (mut a, mut b) = (0, 0);
        while a < self.values.len() && b < other.values.len() {
            match self.values[a].cmp(&other.values[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}
