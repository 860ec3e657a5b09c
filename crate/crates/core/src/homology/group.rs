use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::snf::invariant_factors;

/// A finitely generated abelian group `Z^rank + Z/d_1 + ... + Z/d_k` in
/// invariant-factor form: every `d_i >= 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbelianGroup {
    /// Builds the group `Z^rank + ⊕ Z/c` for arbitrary positive cyclic orders
    /// `c`; the list is brought into invariant-factor form. Orders `0` stand for
    /// a free summand and orders `1` are dropped.
    pub fn new(rank: usize, cyclic_orders: impl IntoIterator<Item = BigUint>) -> Self {
        let mut rank = rank;
        let mut orders = Vec::new();
        for c in cyclic_orders {
            if c.is_zero() {
                rank += 1;
            } else if !c.is_one() {
                orders.push(BigInt::from(c));
            }
        }
        let torsion = invariant_factors(orders)
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("invariant factors are positive"))
            .collect();
        FgAbelianGroup { rank, torsion }
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { rank, torsion: Vec::new() }
    }

    /// `Z/n`; `cyclic(0)` is `Z` and `cyclic(1)` is trivial.
    pub fn cyclic(n: u64) -> Self {
        Self::new(0, [BigUint::from(n)])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Least `n > 0` with `n·g = 0` for all `g`; `None` for infinite groups.
    pub fn exponent(&self) -> Option<BigUint> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.last().cloned().unwrap_or_else(BigUint::one))
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        Self::new(self.rank + other.rank, self.torsion.iter().chain(&other.torsion).cloned())
    }

    /// Whether multiplication by `m` kills every element.
    pub fn is_killed_by(&self, m: &BigUint) -> bool {
        self.rank == 0 && self.torsion.iter().all(|d| m.is_multiple_of(d))
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Torsion coefficients serialise as JSON numbers when they fit in `u64`, as
/// decimal strings otherwise.
#[derive(Serialize)]
#[serde(untagged)]
enum Coefficient {
    Small(u64),
    Big(String),
}

impl Coefficient {
    fn of(d: &BigUint) -> Self {
        d.to_u64().map_or_else(|| Coefficient::Big(d.to_string()), Coefficient::Small)
    }
}

pub(crate) fn serialize_optional_coefficient<S: Serializer>(
    d: &Option<BigUint>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    d.as_ref().map(Coefficient::of).serialize(serializer)
}

impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<Coefficient> = self
            .torsion
            .iter()
            .map(Coefficient::of)
            .collect();
        let mut s = serializer.serialize_struct("FgAbelianGroup", 3)?;
        s.serialize_field("rank", &self.rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}
