//! `G(de,e,r)` as monomial matrices, stored as a permutation and an
//! exponent vector over `Z/m`.
//!
//! An element `(σ, a)` sends the basis vector `e_i` to `ζ^{a_i} e_{σ(i)}`,
//! with `ζ` a primitive `m`-th root of unity. It lies in `G(de,e,r)` when
//! the product of its entries lies in `μ_d`, i.e. `Σ a_i ≡ 0 (mod e)`; this
//! is the subgroup of index `e` in `G(de,1,r)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{conjugacy_classes as classes_of, IndexedGroup};
use crate::irrep::GroupParams;

/// Default cap on the number of elements enumerated.
pub const DEFAULT_GROUP_CAP: u128 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialElement {
    /// `perm[i] = σ(i)`, zero-based.
    pub perm: Vec<usize>,
    pub exps: Vec<usize>,
}

impl MonomialElement {
    pub fn identity(r: usize) -> Self {
        MonomialElement {
            perm: (0..r).collect(),
            exps: vec![0; r],
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_member(&self, p: &GroupParams) -> bool {
        let m = p.m();
        let mut seen = vec![false; self.rank()];
        for &x in &self.perm {
            if x >= self.rank() || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.exps.len() == self.rank()
            && self.rank() == p.r
            && self.exps.iter().all(|&a| a < m)
            && self.exps.iter().sum::<usize>() % p.e == 0
    }

    /// `g·h = (σ∘τ, c)` with `c_i = b_i + a_{τ(i)}`.
    pub fn multiply(&self, h: &Self, m: usize) -> Result<Self> {
        if self.rank() != h.rank() {
            return Err(Error::InvalidParams(format!(
                "cannot multiply ranks {} and {}",
                self.rank(),
                h.rank()
            )));
        }
        Ok(self.mul_unchecked(h, m))
    }

    fn mul_unchecked(&self, h: &Self, m: usize) -> Self {
        let perm = h.perm.iter().map(|&t| self.perm[t]).collect();
        let exps = h
            .perm
            .iter()
            .zip(&h.exps)
            .map(|(&t, &b)| (b + self.exps[t]) % m)
            .collect();
        MonomialElement { perm, exps }
    }

    pub fn inverse(&self, m: usize) -> Self {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut exps = vec![0; r];
        for i in 0..r {
            perm[self.perm[i]] = i;
            exps[self.perm[i]] = (m - self.exps[i] % m) % m;
        }
        MonomialElement { perm, exps }
    }

    /// The image in rank `r+1`, fixing the last coordinate.
    pub fn parabolic_embed(&self) -> Self {
        let mut perm = self.perm.clone();
        perm.push(self.rank());
        let mut exps = self.exps.clone();
        exps.push(0);
        MonomialElement { perm, exps }
    }
}

impl fmt::Display for MonomialElement {
    /// `(cycles; exps)` with one-based cycles, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        let mut seen = vec![false; self.rank()];
        let mut any = false;
        for start in 0..self.rank() {
            if seen[start] || self.perm[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.perm[x];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "id")?;
        }
        write!(f, "; ")?;
        for (i, a) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All permutations of `0..r` in lexicographic order.
fn permutations(r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // Next permutation.
        let Some(i) = (1..r).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..r)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("exists");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

fn check_cap(p: &GroupParams, cap: u128) -> Result<()> {
    if p.order() > cap {
        return Err(Error::CapExceeded {
            size: p.order(),
            cap,
        });
    }
    Ok(())
}

/// Every element of `G(de,e,r)`, identity first.
pub fn enumerate(p: &GroupParams) -> Result<Vec<MonomialElement>> {
    enumerate_with_cap(p, crate::cap_override().unwrap_or(DEFAULT_GROUP_CAP))
}

pub fn enumerate_with_cap(p: &GroupParams, cap: u128) -> Result<Vec<MonomialElement>> {
    check_cap(p, cap)?;
    let (m, r) = (p.m(), p.r);
    let mut exponent_vectors = Vec::new();
    let total = m.pow(r as u32);
    for mut idx in 0..total {
        let mut v = vec![0; r];
        for a in v.iter_mut() {
            *a = idx % m;
            idx /= m;
        }
        if v.iter().sum::<usize>() % p.e == 0 {
            exponent_vectors.push(v);
        }
    }
    let mut out = Vec::with_capacity(p.order() as usize);
    for perm in permutations(r) {
        for exps in &exponent_vectors {
            out.push(MonomialElement {
                perm: perm.clone(),
                exps: exps.clone(),
            });
        }
    }
    Ok(out)
}

/// An enumerated monomial group with index lookup.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    params: GroupParams,
    elements: Vec<MonomialElement>,
    index: HashMap<MonomialElement, usize>,
}

impl MonomialGroup {
    pub fn new(p: &GroupParams) -> Result<Self> {
        Self::with_cap(p, crate::cap_override().unwrap_or(DEFAULT_GROUP_CAP))
    }

    pub fn with_cap(p: &GroupParams, cap: u128) -> Result<Self> {
        let elements = enumerate_with_cap(p, cap)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        Ok(MonomialGroup {
            params: *p,
            elements,
            index,
        })
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn elements(&self) -> &[MonomialElement] {
        &self.elements
    }

    pub fn index_of(&self, g: &MonomialElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Indices in `self` of the parabolic image of `lower`, listed in the
    /// order of `lower`'s elements.
    pub fn embedding_of(&self, lower: &MonomialGroup) -> Result<Vec<usize>> {
        if lower.params.r + 1 != self.params.r
            || lower.params.d != self.params.d
            || lower.params.e != self.params.e
        {
            return Err(Error::InvalidParams(format!(
                "{} is not the parabolic subgroup of {}",
                lower.params, self.params
            )));
        }
        lower
            .elements
            .iter()
            .map(|g| {
                self.index_of(&g.parabolic_embed())
                    .ok_or_else(|| Error::Invariant(format!("{g} does not embed")))
            })
            .collect()
    }
}

impl IndexedGroup for MonomialGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let g = self.elements[a].mul_unchecked(&self.elements[b], self.params.m());
        self.index[&g]
    }

    fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse(self.params.m())]
    }

    /// Adjacent transpositions, `diag(ζ^e, 1, …)` when `d > 1`, and
    /// `diag(ζ, ζ⁻¹, 1, …)`.
    fn generators(&self) -> Vec<usize> {
        let p = &self.params;
        let (m, r) = (p.m(), p.r);
        let mut gens = Vec::new();
        for i in 0..r.saturating_sub(1) {
            let mut g = MonomialElement::identity(r);
            g.perm.swap(i, i + 1);
            gens.push(g);
        }
        if r >= 1 && p.d > 1 {
            let mut g = MonomialElement::identity(r);
            g.exps[0] = p.e % m;
            gens.push(g);
        }
        if r >= 2 && m > 1 {
            let mut g = MonomialElement::identity(r);
            g.exps[0] = 1;
            g.exps[1] = m - 1;
            gens.push(g);
        }
        gens.iter().map(|g| self.index[g]).collect()
    }
}

/// Conjugacy classes as lists of element indices into [`enumerate`]'s
/// order.
pub fn conjugacy_classes(p: &GroupParams) -> Result<Vec<Vec<usize>>> {
    Ok(classes_of(&MonomialGroup::new(p)?))
}
