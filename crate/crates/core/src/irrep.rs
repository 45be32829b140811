//! Irreducible representations of `G(de,e,r)` indexed by necklaces of
//! partitions.
//!
//! `Irr G(m,1,r)` is in bijection with `m`-multipartitions of total size
//! `r`. Tensoring with the linear character `ε` of `G(m,1,r)/G(m,e,r)`
//! rotates a multipartition by `d`, so `Irr G(de,e,r)` is read off the orbits
//! of `Γ' = dZ/mZ`: an orbit whose multipartitions have `s` rotations in
//! `Γ'` fixing them contributes `s` irreducibles, each of dimension `D/s`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::necklace::Necklace;
use crate::partition::{factorial, Partition};

pub type MultiPartition = Necklace<Partition>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    pub d: usize,
    pub e: usize,
    pub r: usize,
}

impl GroupParams {
    pub fn new(d: usize, e: usize, r: usize) -> Result<Self> {
        if d == 0 || e == 0 {
            return Err(Error::InvalidParams(format!(
                "d and e must be positive, got d={d} e={e}"
            )));
        }
        Ok(GroupParams { d, e, r })
    }

    pub fn m(&self) -> usize {
        self.d * self.e
    }

    /// `m^r r! / e`, or 1 when `r = 0`.
    pub fn order(&self) -> u128 {
        if self.r == 0 {
            return 1;
        }
        (self.m() as u128).pow(self.r as u32) * factorial(self.r) / self.e as u128
    }

    pub fn with_rank(&self, r: usize) -> Self {
        GroupParams { r, ..*self }
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},{})", self.m(), self.e, self.r)
    }
}

/// A `Γ'`-orbit of multipartitions, keyed by its smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrbitLabel {
    pub canonical: MultiPartition,
    /// `s = #Aut_{Γ'}(c)`.
    pub stabilizer_order: usize,
    /// `e / s`, except for the empty multipartition.
    pub orbit_size: usize,
}

impl OrbitLabel {
    /// The orbit of `c` under rotation by multiples of `d`. The empty
    /// multipartition labels the trivial group's only irreducible, so it is
    /// given `s = 1`.
    pub fn of(c: &MultiPartition, p: &GroupParams) -> Self {
        let (canonical, _) = c.canonical_rotation(p.d);
        if canonical.total_size() == 0 {
            return OrbitLabel {
                canonical,
                stabilizer_order: 1,
                orbit_size: 1,
            };
        }
        let stabilizer_order = (0..p.e)
            .filter(|&j| canonical.rotate((j * p.d) as i64) == canonical)
            .count();
        OrbitLabel {
            orbit_size: p.e / stabilizer_order,
            canonical,
            stabilizer_order,
        }
    }

    /// The distinct members of the orbit, sorted.
    pub fn members(&self, p: &GroupParams) -> Vec<MultiPartition> {
        let mut out: Vec<MultiPartition> = (0..self.orbit_size)
            .map(|j| self.canonical.rotate((j * p.d) as i64))
            .collect();
        out.sort();
        out
    }

    pub fn total_size(&self) -> usize {
        self.canonical.total_size()
    }

    /// Dimension `D` of the irreducibles of `G(m,1,r)` in this orbit.
    pub fn wreath_dim(&self) -> u128 {
        let parts = self.canonical.values();
        let r = self.total_size();
        let denom: u128 = parts.iter().map(|q| factorial(q.size())).product();
        let syt: u128 = parts.iter().map(Partition::syt_count).product();
        factorial(r) / denom * syt
    }
}

impl Ord for OrbitLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_size()
            .cmp(&other.total_size())
            .then_with(|| self.canonical.cmp(&other.canonical))
    }
}

impl PartialOrd for OrbitLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One irreducible of `G(de,e,r)`: an orbit and a constituent index
/// `j < s`. The index is an abstract tag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrrepLabel {
    pub orbit: OrbitLabel,
    pub j: usize,
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.orbit.canonical;
        for (i, q) in c.values().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "#{}", self.j)
    }
}

/// All `m`-multipartitions of total size `r`.
pub fn multipartitions(m: usize, r: usize) -> Vec<MultiPartition> {
    let by_size: Vec<Vec<Partition>> = (0..=r).map(Partition::all).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fill(m, r, &by_size, &mut current, &mut out);
    out
}

fn fill(
    m: usize,
    rest: usize,
    by_size: &[Vec<Partition>],
    current: &mut Vec<Partition>,
    out: &mut Vec<MultiPartition>,
) {
    if current.len() == m {
        if rest == 0 {
            out.push(Necklace::new(current.clone()).expect("m >= 1"));
        }
        return;
    }
    for size in 0..=rest {
        for q in &by_size[size] {
            current.push(q.clone());
            fill(m, rest - size, by_size, current, out);
            current.pop();
        }
    }
}

/// The `Γ'`-orbits of multipartitions of size `p.r`, sorted.
pub fn enumerate_orbits(p: &GroupParams) -> Vec<OrbitLabel> {
    let mut out: Vec<OrbitLabel> = multipartitions(p.m(), p.r)
        .into_iter()
        .filter(|c| c.canonical_rotation(p.d).0 == *c)
        .map(|c| OrbitLabel::of(&c, p))
        .collect();
    out.sort();
    out
}

/// One label per irreducible of `G(de,e,r)`, sorted by
/// `(size, canonical multipartition, j)`.
pub fn enumerate_irreps(p: &GroupParams) -> Vec<IrrepLabel> {
    enumerate_orbits(p)
        .into_iter()
        .flat_map(|orbit| {
            (0..orbit.stabilizer_order).map(move |j| IrrepLabel {
                orbit: orbit.clone(),
                j,
            })
        })
        .collect()
}

/// `D / s`.
pub fn dim(label: &IrrepLabel) -> Result<u128> {
    let d = label.orbit.wreath_dim();
    let s = label.orbit.stabilizer_order as u128;
    if !d.is_multiple_of(s) {
        return Err(Error::Invariant(format!(
            "dimension {d} of {label} is not divisible by {s}"
        )));
    }
    Ok(d / s)
}

/// The label is the restriction of a single irreducible of `G(de,1,r)`.
pub fn extends_to_full(label: &IrrepLabel) -> bool {
    label.orbit.stabilizer_order == 1
}

/// Rotation by `d`: the effect of tensoring with `ε`.
pub fn tensor_by_epsilon(c: &MultiPartition, p: &GroupParams) -> MultiPartition {
    c.rotate(p.d as i64)
}
