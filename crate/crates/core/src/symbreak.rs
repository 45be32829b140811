//! Symmetry breaking on finite groups: a function `α: G → X` with nontrivial
//! stabilizer loses every symmetry when one of its values is changed.
//!
//! `G` acts on functions by `(g.α)(h) = α(g⁻¹h)`.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{element_order, IndexedGroup};
use crate::laws::{LawReport, Witness};

/// A finite group given by its Cayley table, with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, checking the
    /// axioms in full.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let fail = |msg: String| Err(Error::GroupAxioms(format!("{name}: {msg}")));
        if order == 0 || table.len() != order * order {
            return fail(format!(
                "table has {} entries for order {order}",
                table.len()
            ));
        }
        if table.iter().any(|&x| x >= order) {
            return fail("table entry out of range".into());
        }
        let at = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| at(0, a) != a || at(a, 0) != a) {
            return fail("element 0 is not the identity".into());
        }
        let mut inverse = vec![0; order];
        for a in 0..order {
            match (0..order).find(|&b| at(a, b) == 0) {
                Some(b) if at(b, a) == 0 => inverse[a] = b,
                _ => return fail(format!("element {a} has no two-sided inverse")),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return fail(format!("({a}{b}){c} != {a}({b}{c})"));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            inverse,
        })
    }

    /// Builds a group from elements and a multiplication closure; the
    /// identity must be listed first.
    pub fn from_elements<T: PartialEq>(
        name: impl Into<String>,
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self> {
        let name = name.into();
        let order = elements.len();
        let mut table = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                let p = mul(a, b);
                let idx = elements
                    .iter()
                    .position(|x| *x == p)
                    .ok_or_else(|| Error::GroupAxioms(format!("{name}: not closed")))?;
                table.push(idx);
            }
        }
        Self::from_table(name, order, table)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let elements: Vec<usize> = (0..n).collect();
        Self::from_elements(format!("Z/{n}"), &elements, |a, b| (a + b) % n)
    }

    pub fn product(a: usize, b: usize) -> Result<Self> {
        let elements: Vec<(usize, usize)> =
            (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
        Self::from_elements(format!("Z/{a}xZ/{b}"), &elements, |p, q| {
            ((p.0 + q.0) % a, (p.1 + q.1) % b)
        })
    }

    /// The dihedral group of order `2n`, as pairs `(s, k)` meaning `f^s r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let elements: Vec<(usize, usize)> =
            (0..2).flat_map(|s| (0..n).map(move |k| (s, k))).collect();
        Self::from_elements(format!("D{}", 2 * n), &elements, |p, q| {
            // r^k f = f r^-k
            let k = if q.0 == 1 { (n - p.1) % n } else { p.1 };
            ((p.0 + q.0) % 2, (k + q.1) % n)
        })
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Result<Self> {
        // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k.
        let elements: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
        Self::from_elements("Q8", &elements, |p, q| {
            let (s, u) = unit_product(p.1, q.1);
            (p.0 ^ q.0 ^ s, u)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn stabilizer_direct(&self, alpha: &[u8]) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| {
                let gi = self.inverse[g];
                (0..self.order).all(|h| alpha[self.mul(gi, h)] == alpha[h])
            })
            .collect()
    }

    /// The stabilizer as the intersection of the set-wise stabilizers of the
    /// fibres of `alpha` under left multiplication.
    fn stabilizer_by_fibres(&self, alpha: &[u8]) -> Vec<usize> {
        let mut values: Vec<u8> = alpha.to_vec();
        values.sort_unstable();
        values.dedup();
        (0..self.order)
            .filter(|&g| {
                values.iter().all(|&v| {
                    (0..self.order)
                        .filter(|&f| alpha[f] == v)
                        .all(|f| alpha[self.mul(g, f)] == v)
                })
            })
            .collect()
    }
}

fn unit_product(a: usize, b: usize) -> (bool, usize) {
    match (a, b) {
        (0, u) | (u, 0) => (false, u),
        (x, y) if x == y => (true, 0),
        (1, 2) => (false, 3),
        (2, 3) => (false, 1),
        (3, 1) => (false, 2),
        (2, 1) => (true, 3),
        (3, 2) => (true, 1),
        (1, 3) => (true, 2),
        _ => unreachable!("units are 0..4"),
    }
}

impl IndexedGroup for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.order).collect()
    }
}

/// Cyclic groups, non-cyclic products `Z/a × Z/b` with `a | b`, dihedral
/// groups and `Q8`, of order at most `max_order`.
pub fn builtin_groups(max_order: usize) -> Result<Vec<FiniteGroup>> {
    if max_order > 24 {
        return Err(Error::Precondition(format!(
            "builtin groups go up to order 24, asked for {max_order}"
        )));
    }
    let mut out = Vec::new();
    for order in 1..=max_order {
        out.push(FiniteGroup::cyclic(order)?);
        for a in 2..=order {
            if order % (a * a) == 0 && a * a <= order && (order / a) % a == 0 {
                out.push(FiniteGroup::product(a, order / a)?);
            }
        }
        if order >= 6 && order % 2 == 0 {
            out.push(FiniteGroup::dihedral(order / 2)?);
        }
        if order == 8 {
            out.push(FiniteGroup::quaternion()?);
        }
    }
    Ok(out)
}

/// Functions `G → {0..pearls}` with nontrivial stabilizer: those constant
/// on the right cosets `Hx` of some subgroup `H` of prime order.
fn symmetric_functions(g: &FiniteGroup, pearls: usize) -> Vec<Vec<u8>> {
    let n = g.order;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    for x in 1..n {
        let k = element_order(g, x);
        if (2..k).any(|p| k % p == 0) {
            continue;
        }
        let mut h = vec![0usize];
        let mut y = x;
        while y != 0 {
            h.push(y);
            y = g.mul(y, x);
        }
        h.sort_unstable();
        if !subgroups.contains(&h) {
            subgroups.push(h);
        }
    }
    for h in &subgroups {
        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = 0;
        for x in 0..n {
            if coset_of[x] == usize::MAX {
                for &y in h {
                    coset_of[g.mul(y, x)] = cosets;
                }
                cosets += 1;
            }
        }
        let total = (pearls as u64).pow(cosets as u32);
        for mut idx in 0..total {
            let mut colours = vec![0u8; cosets];
            for c in colours.iter_mut() {
                *c = (idx % pearls as u64) as u8;
                idx /= pearls as u64;
            }
            let alpha: Vec<u8> = (0..n).map(|x| colours[coset_of[x]]).collect();
            if seen.insert(alpha.clone()) {
                out.push(alpha);
            }
        }
    }
    out.sort();
    out
}

/// Checks that every one-value change of every `α` with nontrivial
/// stabilizer has trivial stabilizer, computing stabilizers two ways.
pub fn check_symmetry_breaking(g: &FiniteGroup, pearls: usize) -> Result<LawReport> {
    if pearls < 2 {
        return Err(Error::Precondition(format!(
            "need at least 2 pearls, got {pearls}"
        )));
    }
    if pearls > u8::MAX as usize {
        return Err(Error::Precondition("too many pearls".into()));
    }
    let alphas = symmetric_functions(g, pearls);
    let render = |a: &[u8]| a.iter().map(|&v| (b'a' + v) as char).collect::<String>();
    let counterexamples: Vec<Witness> = alphas
        .par_iter()
        .flat_map_iter(|alpha| {
            let mut bad = Vec::new();
            let stab = g.stabilizer_direct(alpha);
            if stab != g.stabilizer_by_fibres(alpha) || stab.len() < 2 {
                bad.push(Witness {
                    system: render(alpha),
                    others: vec![],
                    rotations: stab.clone(),
                    detail: "stabilizer routes disagree or stabilizer is trivial".into(),
                });
            }
            for pos in 0..g.order {
                for v in (0..pearls as u8).filter(|&v| v != alpha[pos]) {
                    let mut beta = alpha.clone();
                    beta[pos] = v;
                    let direct = g.stabilizer_direct(&beta);
                    let fibres = g.stabilizer_by_fibres(&beta);
                    if direct != fibres || direct != [0] {
                        bad.push(Witness {
                            system: render(alpha),
                            others: vec![render(&beta)],
                            rotations: direct,
                            detail: format!(
                                "changing position {pos} leaves a nontrivial stabilizer"
                            ),
                        });
                    }
                }
            }
            bad
        })
        .collect();
    Ok(LawReport::from_parts(
        "symmetry_breaking",
        format!("group={} pearls={pearls}", g.name),
        alphas.len() as u64,
        counterexamples,
    ))
}
