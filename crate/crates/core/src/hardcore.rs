//! Independent-set states, hard-core weights and balance classes.

use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Parity};
use crate::scalar::{ExactParam, Scalar};
use crate::torus::TorusGraph;

/// A vertex subset with cached parity-class counts.
#[derive(Clone, Debug)]
pub struct OccupancySet {
    bits: FixedBitSet,
    count_even: usize,
    count_odd: usize,
}

impl PartialEq for OccupancySet {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits
    }
}

impl Eq for OccupancySet {}

impl Hash for OccupancySet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl OccupancySet {
    pub fn empty(n: usize) -> Self {
        OccupancySet {
            bits: FixedBitSet::with_capacity(n),
            count_even: 0,
            count_odd: 0,
        }
    }

    pub fn from_bits<G: BipartiteGraph + ?Sized>(g: &G, bits: FixedBitSet) -> Result<Self> {
        if bits.len() != g.vertex_count() {
            return Err(Error::SizeMismatch {
                expected: g.vertex_count(),
                found: bits.len(),
            });
        }
        let count_even = bits.ones().filter(|&v| g.parity(v) == Parity::Even).count();
        let count_odd = bits.count_ones(..) - count_even;
        Ok(OccupancySet {
            bits,
            count_even,
            count_odd,
        })
    }

    pub fn from_vertices<G, I>(g: &G, vertices: I) -> Result<Self>
    where
        G: BipartiteGraph + ?Sized,
        I: IntoIterator<Item = usize>,
    {
        let n = g.vertex_count();
        let mut bits = FixedBitSet::with_capacity(n);
        for v in vertices {
            if v >= n {
                return Err(Error::InvalidVertex {
                    vertex: v,
                    count: n,
                });
            }
            bits.insert(v);
        }
        Self::from_bits(g, bits)
    }

    /// Every vertex of one parity class; the two maximum independent sets
    /// of the even torus for L ≥ 4.
    pub fn parity_class<G: BipartiteGraph + ?Sized>(g: &G, parity: Parity) -> Self {
        let bits = crate::graph::parity_class(g, parity);
        Self::from_bits(g, bits).expect("sized to graph")
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    pub fn len(&self) -> usize {
        self.count_even + self.count_odd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn count_even(&self) -> usize {
        self.count_even
    }

    pub fn count_odd(&self) -> usize {
        self.count_odd
    }

    pub fn count(&self, parity: Parity) -> usize {
        match parity {
            Parity::Even => self.count_even,
            Parity::Odd => self.count_odd,
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    /// Inserts `v`; returns false if it was already present.
    pub fn insert(&mut self, parity: Parity, v: usize) -> bool {
        if self.bits.put(v) {
            return false;
        }
        match parity {
            Parity::Even => self.count_even += 1,
            Parity::Odd => self.count_odd += 1,
        }
        true
    }

    /// Removes `v`; returns false if it was absent.
    pub fn remove(&mut self, parity: Parity, v: usize) -> bool {
        if !self.bits.contains(v) {
            return false;
        }
        self.bits.set(v, false);
        match parity {
            Parity::Even => self.count_even -= 1,
            Parity::Odd => self.count_odd -= 1,
        }
        true
    }

    /// Size of the symmetric difference.
    pub fn symmetric_difference_len(&self, other: &OccupancySet) -> usize {
        self.bits.symmetric_difference_count(&other.bits)
    }

    /// The single vertex in which the two sets differ, if exactly one.
    pub fn single_difference(&self, other: &OccupancySet) -> Option<usize> {
        let mut diff = self.bits.symmetric_difference(&other.bits);
        let v = diff.next()?;
        diff.next().is_none().then_some(v)
    }

    pub fn is_subset(&self, other: &OccupancySet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Canonical ordering key: cardinality, then sorted vertex list.
    pub fn order_key(&self) -> (usize, Vec<usize>) {
        (self.len(), self.bits.ones().collect())
    }

    /// Little-endian hex: byte `k`, bit `j` holds vertex `8k + j`.
    pub fn to_hex(&self) -> String {
        let n_bytes = self.bits.len().div_ceil(8);
        let bytes: Vec<u8> = self
            .bits
            .as_slice()
            .iter()
            .flat_map(|block| block.to_le_bytes())
            .take(n_bytes)
            .collect();
        hex::encode(bytes)
    }

    pub fn from_hex<G: BipartiteGraph + ?Sized>(g: &G, text: &str) -> Result<Self> {
        let n = g.vertex_count();
        let bytes = hex::decode(text.trim()).map_err(|e| Error::Parse(format!("hex: {e}")))?;
        if bytes.len() != n.div_ceil(8) {
            return Err(Error::SizeMismatch {
                expected: n.div_ceil(8),
                found: bytes.len(),
            });
        }
        let mut bits = FixedBitSet::with_capacity(n);
        for (k, byte) in bytes.iter().enumerate() {
            for j in 0..8 {
                if byte >> j & 1 == 1 {
                    let v = 8 * k + j;
                    if v >= n {
                        return Err(Error::Parse(format!("bit {v} set beyond {n} vertices")));
                    }
                    bits.insert(v);
                }
            }
        }
        Self::from_bits(g, bits)
    }
}

impl fmt::Display for OccupancySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.bits.ones().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// JSON form of a state on a torus: `(L, d)` header plus hex bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OccupancyRecord {
    #[serde(rename = "L")]
    pub side: usize,
    pub d: usize,
    pub bits: String,
}

impl OccupancyRecord {
    pub fn new(g: &TorusGraph, set: &OccupancySet) -> Self {
        OccupancyRecord {
            side: g.side(),
            d: g.dim(),
            bits: set.to_hex(),
        }
    }

    pub fn decode(&self) -> Result<(TorusGraph, OccupancySet)> {
        let g = TorusGraph::new(self.side, self.d)?;
        let set = OccupancySet::from_hex(&g, &self.bits)?;
        Ok((g, set))
    }
}

fn check_size<G: BipartiteGraph + ?Sized>(g: &G, set: &OccupancySet) -> Result<()> {
    if set.capacity() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            expected: g.vertex_count(),
            found: set.capacity(),
        });
    }
    Ok(())
}

/// First occupied adjacent pair, if any.
pub fn conflict<G: BipartiteGraph + ?Sized>(
    g: &G,
    set: &OccupancySet,
) -> Result<Option<(usize, usize)>> {
    check_size(g, set)?;
    for v in set.vertices() {
        if let Some(u) = g
            .neighbors(v)
            .into_iter()
            .find(|&u| u > v && set.contains(u))
        {
            return Ok(Some((v, u)));
        }
    }
    Ok(None)
}

pub fn is_independent<G: BipartiteGraph + ?Sized>(g: &G, set: &OccupancySet) -> Result<bool> {
    Ok(conflict(g, set)?.is_none())
}

/// Errors with a witnessing edge when `set` is not independent.
pub fn require_independent<G: BipartiteGraph + ?Sized>(g: &G, set: &OccupancySet) -> Result<()> {
    match conflict(g, set)? {
        Some((u, v)) => Err(Error::NotIndependent(u, v)),
        None => Ok(()),
    }
}

/// True if `v` can be added to `set` without creating an edge.
#[inline]
pub fn can_insert<G: BipartiteGraph + ?Sized>(g: &G, set: &OccupancySet, v: usize) -> bool {
    g.neighbors(v).iter().all(|&u| !set.contains(u))
}

/// Hard-core weight `λ^{|I|}`.
pub fn weight<S: Scalar>(set: &OccupancySet, lambda: &S) -> Result<S> {
    if *lambda <= S::zero() {
        return Err(Error::NonPositiveActivity);
    }
    Ok(lambda.powu(set.len()))
}

/// `||I∩E| − |I∩O||`.
pub fn balance_statistic(set: &OccupancySet) -> usize {
    set.count_even.abs_diff(set.count_odd)
}

/// Imbalance threshold `ρ ∈ [0, 1]`, kept rational so the `ρL^d/2`
/// comparisons are exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rho(Ratio<i64>);

impl Rho {
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidRho(format!("{numer}/{denom}")));
        }
        let r = Ratio::new(numer, denom);
        if r < Ratio::from_integer(0) || r > Ratio::from_integer(1) {
            return Err(Error::InvalidRho(r.to_string()));
        }
        Ok(Rho(r))
    }

    pub fn zero() -> Self {
        Rho(Ratio::from_integer(0))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }

    /// `diff ≤ ρN/2`, evaluated exactly as `2·diff·q ≤ p·N`.
    pub fn within(&self, diff: usize, n: usize) -> bool {
        let lhs = 2 * diff as i128 * *self.0.denom() as i128;
        let rhs = *self.0.numer() as i128 * n as i128;
        lhs <= rhs
    }
}

impl std::str::FromStr for Rho {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p: ExactParam = s.parse()?;
        let r = p.ratio();
        use num_traits::ToPrimitive;
        let (n, d) = (r.numer().to_i64(), r.denom().to_i64());
        match (n, d) {
            (Some(n), Some(d)) => Rho::new(n, d),
            _ => Err(Error::InvalidRho(s.to_string())),
        }
    }
}

impl From<Rho> for String {
    fn from(r: Rho) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Rho {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BalanceClass {
    Balanced,
    EvenHeavy,
    OddHeavy,
}

impl BalanceClass {
    pub fn label(self) -> &'static str {
        match self {
            BalanceClass::Balanced => "balanced",
            BalanceClass::EvenHeavy => "even_heavy",
            BalanceClass::OddHeavy => "odd_heavy",
        }
    }
}

impl fmt::Display for BalanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Classifies by counts alone; ties at the threshold are Balanced.
pub fn classify_counts(count_even: usize, count_odd: usize, n: usize, rho: Rho) -> BalanceClass {
    let diff = count_even.abs_diff(count_odd);
    if rho.within(diff, n) {
        BalanceClass::Balanced
    } else if count_even > count_odd {
        BalanceClass::EvenHeavy
    } else {
        BalanceClass::OddHeavy
    }
}

pub fn classify<G: BipartiteGraph + ?Sized>(g: &G, set: &OccupancySet, rho: Rho) -> BalanceClass {
    classify_counts(set.count_even, set.count_odd, g.vertex_count(), rho)
}
