//! Tensor/Tor arithmetic, the Künneth band evaluator and dimension bounds for
//! products and free products.
//!
//! A band records, degree by degree, what is known about the compactly
//! supported cohomology of a factor: the top degree carries a known finite
//! group and everything below is unknown. Unknown entries may carry an
//! annihilator (an integer killing the group), which is what lets the
//! evaluator certify vanishing when the top groups have coprime exponents.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{serialize_optional_coefficient, FgAbelianGroup};

/// `a ⊗ b`.
pub fn tensor(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut orders: Vec<BigUint> = Vec::new();
    for d in b.torsion() {
        orders.extend(std::iter::repeat_n(d.clone(), a.rank()));
    }
    for d in a.torsion() {
        orders.extend(std::iter::repeat_n(d.clone(), b.rank()));
        orders.extend(b.torsion().iter().map(|e| d.gcd(e)));
    }
    FgAbelianGroup::new(a.rank() * b.rank(), orders)
}

/// `Tor_1^Z(a, b)`; free summands contribute nothing.
pub fn tor1(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    FgAbelianGroup::new(0, a.torsion().iter().flat_map(|d| b.torsion().iter().map(move |e| d.gcd(e))))
}

/// One degree of a band.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BandEntry {
    Zero,
    Known { group: FgAbelianGroup },
    /// Unknown group, killed by `killed_by` when that is present.
    Unknown {
        #[serde(serialize_with = "serialize_optional_coefficient")]
        killed_by: Option<BigUint>,
    },
}

impl BandEntry {
    pub fn known(group: FgAbelianGroup) -> Self {
        if group.is_trivial() {
            BandEntry::Zero
        } else {
            BandEntry::Known { group }
        }
    }

    pub fn unknown(killed_by: Option<BigUint>) -> Self {
        match killed_by {
            Some(n) if n.is_one() => BandEntry::Zero,
            k => BandEntry::Unknown { killed_by: k },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BandEntry::Zero)
    }

    /// An integer killing the entry, if one is known.
    pub fn annihilator(&self) -> Option<BigUint> {
        match self {
            BandEntry::Zero => Some(BigUint::one()),
            BandEntry::Known { group } => group.exponent(),
            BandEntry::Unknown { killed_by } => killed_by.clone(),
        }
    }

    /// An integer killing the torsion subgroup, which is all `Tor` sees.
    fn torsion_annihilator(&self) -> Option<BigUint> {
        match self {
            BandEntry::Known { group } => Some(group.torsion().last().cloned().unwrap_or_else(BigUint::one)),
            other => other.annihilator(),
        }
    }
}

impl fmt::Display for BandEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BandEntry::Zero => write!(f, "0"),
            BandEntry::Known { group } => write!(f, "{group}"),
            BandEntry::Unknown { killed_by: Some(n) } => write!(f, "?[{n}]"),
            BandEntry::Unknown { killed_by: None } => write!(f, "?"),
        }
    }
}

fn gcd_bound(a: Option<BigUint>, b: Option<BigUint>) -> Option<BigUint> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.gcd(&y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn lcm_bound(a: Option<BigUint>, b: Option<BigUint>) -> Option<BigUint> {
    Some(a?.lcm(&b?))
}

fn tensor_entry(x: &BandEntry, y: &BandEntry) -> BandEntry {
    match (x, y) {
        (BandEntry::Zero, _) | (_, BandEntry::Zero) => BandEntry::Zero,
        (BandEntry::Known { group: a }, BandEntry::Known { group: b }) => BandEntry::known(tensor(a, b)),
        _ => BandEntry::unknown(gcd_bound(x.annihilator(), y.annihilator())),
    }
}

fn tor_entry(x: &BandEntry, y: &BandEntry) -> BandEntry {
    match (x, y) {
        (BandEntry::Zero, _) | (_, BandEntry::Zero) => BandEntry::Zero,
        (BandEntry::Known { group: a }, BandEntry::Known { group: b }) => BandEntry::known(tor1(a, b)),
        _ => BandEntry::unknown(gcd_bound(x.torsion_annihilator(), y.torsion_annihilator())),
    }
}

/// Direct sum of entries; `None` for the annihilator means unbounded.
struct Accumulator {
    group: FgAbelianGroup,
    unknown: bool,
    annihilator: Option<BigUint>,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { group: FgAbelianGroup::trivial(), unknown: false, annihilator: Some(BigUint::one()) }
    }

    fn add(&mut self, e: BandEntry) {
        self.annihilator = lcm_bound(self.annihilator.take(), e.annihilator());
        match e {
            BandEntry::Zero => {}
            BandEntry::Known { group } => self.group = self.group.direct_sum(&group),
            BandEntry::Unknown { .. } => self.unknown = true,
        }
    }
}

/// Degree-indexed entries `0..=top`; every degree above `top` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandedGradedGroup {
    entries: Vec<BandEntry>,
}

impl BandedGradedGroup {
    pub fn new(entries: Vec<BandEntry>) -> Self {
        let entries = entries
            .into_iter()
            .map(|e| match e {
                BandEntry::Known { group } => BandEntry::known(group),
                BandEntry::Unknown { killed_by } => BandEntry::unknown(killed_by),
                BandEntry::Zero => BandEntry::Zero,
            })
            .collect();
        BandedGradedGroup { entries }
    }

    /// A factor whose top group sits in degree `d` with unknown groups below.
    pub fn factor(d: usize, top: FgAbelianGroup) -> Self {
        let mut entries = vec![BandEntry::unknown(None); d];
        entries.push(BandEntry::known(top));
        Self::new(entries)
    }

    /// The band that is zero in every degree.
    pub fn zero() -> Self {
        BandedGradedGroup { entries: vec![BandEntry::Zero] }
    }

    pub fn top(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn entry(&self, n: usize) -> &BandEntry {
        self.entries.get(n).unwrap_or(&BandEntry::Zero)
    }

    pub fn entries(&self) -> &[BandEntry] {
        &self.entries
    }

    /// Highest degree not certified zero.
    pub fn top_nonzero(&self) -> Option<usize> {
        self.entries.iter().rposition(|e| !e.is_zero())
    }

    pub fn is_fully_known(&self) -> bool {
        self.entries.iter().all(|e| !matches!(e, BandEntry::Unknown { .. }))
    }
}

impl fmt::Display for BandedGradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().enumerate().map(|(n, e)| format!("{n}:{e}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for BandedGradedGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BandedGradedGroup", 2)?;
        s.serialize_field("entries", &self.entries)?;
        s.serialize_field("display", &self.to_string())?;
        s.end()
    }
}

/// The Künneth formula for a product: degree `n` collects `a_p ⊗ b_q` with
/// `p + q = n` and `Tor(a_p, b_q)` with `p + q = n + 1`. Known pieces are
/// summed as if the sequence split; an unknown entry is killed by the product
/// of the annihilators of the tensor part and the Tor part.
pub fn kunneth_step(a: &BandedGradedGroup, b: &BandedGradedGroup) -> BandedGradedGroup {
    let top = a.top() + b.top();
    let entries = (0..=top)
        .map(|n| {
            let mut tensor_side = Accumulator::new();
            let mut tor_side = Accumulator::new();
            for p in 0..=n.min(a.top()) {
                if n - p <= b.top() {
                    tensor_side.add(tensor_entry(a.entry(p), b.entry(n - p)));
                }
            }
            for p in 0..=(n + 1).min(a.top()) {
                if n + 1 - p <= b.top() {
                    tor_side.add(tor_entry(a.entry(p), b.entry(n + 1 - p)));
                }
            }
            if tensor_side.unknown || tor_side.unknown {
                let ann = tensor_side.annihilator.zip(tor_side.annihilator).map(|(t, s)| t * s);
                BandEntry::unknown(ann)
            } else {
                BandEntry::known(tensor_side.group.direct_sum(&tor_side.group))
            }
        })
        .collect();
    BandedGradedGroup::new(entries)
}

/// A factor class: `e` copies of a group whose compactly supported cohomology
/// is a nontrivial finite group in the top degree `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    pub d: usize,
    pub top_group: FgAbelianGroup,
    pub multiplicity: usize,
}

impl FactorProfile {
    pub fn new(d: usize, top_group: FgAbelianGroup, multiplicity: usize) -> Result<Self> {
        if d == 0 || multiplicity == 0 {
            return Err(Error::Input("factor profiles need d >= 1 and multiplicity >= 1".into()));
        }
        if top_group.is_trivial() || !top_group.is_finite() {
            return Err(Error::Input(format!("top group must be finite and nontrivial, got {top_group}")));
        }
        Ok(FactorProfile { d, top_group, multiplicity })
    }

    /// `Z/exponent` in degree `d`.
    pub fn cyclic(d: usize, exponent: u64, multiplicity: usize) -> Result<Self> {
        Self::new(d, FgAbelianGroup::cyclic(exponent), multiplicity)
    }

    pub fn exponent(&self) -> BigUint {
        self.top_group.exponent().expect("finite by construction")
    }
}

/// Input form `{"d": 3, "exponent": 3, "mult": 1}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorProfileJson {
    pub d: usize,
    pub exponent: u64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl TryFrom<FactorProfileJson> for FactorProfile {
    type Error = Error;

    fn try_from(j: FactorProfileJson) -> Result<Self> {
        FactorProfile::cyclic(j.d, j.exponent, j.mult)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Exponents pairwise coprime across factor classes.
    Coprime,
    /// All exponents share a common divisor.
    CommonDivisor,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub classes: usize,
    pub regime: Regime,
    pub bredon_cd: usize,
    pub vcd_upper: usize,
    pub vcd_exact: Option<usize>,
    /// The band's entry in degree `vcd_upper` when it is known.
    pub top_group: Option<FgAbelianGroup>,
    /// Highest degree the band evaluator does not certify as zero.
    pub band_threshold: usize,
    pub band: BandedGradedGroup,
}

/// The band of the full product, multiplicities included.
pub fn product_band(profiles: &[FactorProfile]) -> BandedGradedGroup {
    let mut band: Option<BandedGradedGroup> = None;
    for f in profiles {
        let factor = BandedGradedGroup::factor(f.d, f.top_group.clone());
        for _ in 0..f.multiplicity {
            band = Some(match band {
                None => factor.clone(),
                Some(b) => kunneth_step(&b, &factor),
            });
        }
    }
    band.unwrap_or_else(BandedGradedGroup::zero)
}

pub fn regime(profiles: &[FactorProfile]) -> Regime {
    let exps: Vec<BigUint> = profiles.iter().map(FactorProfile::exponent).collect();
    let common = exps.iter().fold(BigUint::from(0u32), |g, e| g.gcd(e));
    if !common.is_one() {
        return Regime::CommonDivisor;
    }
    let coprime = exps.iter().enumerate().all(|(i, a)| exps[i + 1..].iter().all(|b| a.gcd(b).is_one()));
    if coprime {
        Regime::Coprime
    } else {
        Regime::Mixed
    }
}

pub fn product_dimension_report(profiles: &[FactorProfile]) -> Result<ProductReport> {
    if profiles.is_empty() {
        return Err(Error::Input("at least one factor profile is required".into()));
    }
    let r = profiles.len();
    let bredon_cd: usize = profiles.iter().map(|f| f.d * f.multiplicity).sum();
    let band = product_band(profiles);
    let band_threshold = band.top_nonzero().unwrap_or(0);
    let regime = regime(profiles);
    let (vcd_upper, vcd_exact) = match regime {
        Regime::Coprime => (bredon_cd - r + 1, None),
        Regime::CommonDivisor => (bredon_cd, Some(bredon_cd)),
        Regime::Mixed => (band_threshold, None),
    };
    let top_group = match band.entry(vcd_upper) {
        BandEntry::Known { group } => Some(group.clone()),
        _ => None,
    };
    if regime == Regime::CommonDivisor && top_group.is_none() {
        return Err(Error::Internal(format!("band does not determine the top group in degree {bredon_cd}")));
    }
    Ok(ProductReport { classes: r, regime, bredon_cd, vcd_upper, vcd_exact, top_group, band_threshold, band })
}

/// `gd` of an iterated free product: `max(gds ∪ {1})`.
pub fn free_product_gd(gds: &[usize]) -> Result<usize> {
    if gds.is_empty() {
        return Err(Error::Input("free product of no factors".into()));
    }
    Ok(gds.iter().fold(1, |acc, &g| acc.max(g)))
}
