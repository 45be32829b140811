//! Bounded exhaustive verifiers for the necklace lemmas.
//!
//! Each verifier enumerates a finite search space and returns a
//! [`LawReport`] whose counterexample list is empty exactly when the law held
//! everywhere. Pearls are the integers `0..alphabet` with their natural order,
//! rendered as letters `a < b < c < d` in witnesses.

pub mod packed;

use std::collections::HashMap;

use num_integer::{gcd, lcm};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use packed::{Shape, Word};

/// Default cap on the raw search space `alphabet^(n * orbits)`; it admits
/// `n = 8` with 3 pearls and 2 orbits, and `n = 10` with 2 pearls and 2 orbits.
pub const DEFAULT_SPACE_CAP: u128 = 43_046_721;

/// Witnesses kept per report; enumeration continues past this point.
const MAX_WITNESSES: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The necklace system the law quantifies over.
    pub system: String,
    /// Further necklaces involved (α's, β's, children).
    pub others: Vec<String>,
    /// Rotation amounts involved.
    pub rotations: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub params: String,
    /// Number of top-level objects enumerated.
    pub space: u64,
    pub counterexamples: Vec<Witness>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub(crate) fn from_parts(
        law: &str,
        params: String,
        space: u64,
        mut counterexamples: Vec<Witness>,
    ) -> Self {
        counterexamples.truncate(MAX_WITNESSES);
        LawReport {
            law: law.to_string(),
            params,
            space,
            counterexamples,
        }
    }
}

/// How necklace systems are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Enumeration {
    /// Every raw system.
    Exhaustive,
    /// One system per class under per-orbit rotation and orbit permutation.
    #[default]
    Reduced,
}

/// Search bounds shared by the necklace verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n: usize,
    pub alphabet: usize,
    pub orbits: usize,
}

impl Bounds {
    pub fn new(n: usize, alphabet: usize, orbits: usize) -> Self {
        Bounds {
            n,
            alphabet,
            orbits,
        }
    }

    fn params(&self) -> String {
        format!(
            "n={} alphabet={} orbits={}",
            self.n, self.alphabet, self.orbits
        )
    }
}

/// Verifier configuration: enumeration mode and search-space cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawConfig {
    pub enumeration: Enumeration,
    pub space_cap: u128,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            enumeration: Enumeration::Reduced,
            space_cap: crate::cap_override().unwrap_or(DEFAULT_SPACE_CAP),
        }
    }
}

impl LawConfig {
    pub fn exhaustive() -> Self {
        LawConfig {
            enumeration: Enumeration::Exhaustive,
            ..Self::default()
        }
    }

    fn systems(&self, b: Bounds) -> Result<(Shape, Vec<Word>)> {
        let shape = Shape::new(b.n, b.alphabet, b.orbits)?;
        if shape.raw_count() > self.space_cap {
            return Err(Error::CapExceeded {
                size: shape.raw_count(),
                cap: self.space_cap,
            });
        }
        let systems = match self.enumeration {
            Enumeration::Exhaustive => shape.all_systems(),
            Enumeration::Reduced => shape.reduced_systems(),
        };
        Ok((shape, systems))
    }
}

fn require_lemma_bounds(b: Bounds) -> Result<()> {
    if b.n < 2 || b.alphabet < 2 {
        return Err(Error::Precondition(format!(
            "need n >= 2 and at least 2 pearls, got {}",
            b.params()
        )));
    }
    Ok(())
}

fn run<F>(law: &str, b: Bounds, cfg: &LawConfig, check: F) -> Result<LawReport>
where
    F: Fn(&Shape, Word) -> Vec<Witness> + Sync,
{
    let (shape, systems) = cfg.systems(b)?;
    let counterexamples: Vec<Witness> = systems
        .par_iter()
        .flat_map_iter(|&c| check(&shape, c))
        .collect();
    Ok(LawReport::from_parts(
        law,
        b.params(),
        systems.len() as u64,
        counterexamples,
    ))
}

fn witness(
    shape: &Shape,
    c: Word,
    others: &[Word],
    rotations: &[usize],
    detail: impl Into<String>,
) -> Witness {
    Witness {
        system: shape.render(c),
        others: others.iter().map(|&w| shape.render(w)).collect(),
        rotations: rotations.to_vec(),
        detail: detail.into(),
    }
}

/// Condition (b) for the `⟨γ⟩`-orbit `orbit` (listed along `γ`): there are
/// `u ≠ v` in it with `c` constant on `[v,u]_γ` and on its complement.
fn two_arc_condition(shape: &Shape, c: Word, orbit: &[usize]) -> bool {
    let len = orbit.len();
    (0..len).any(|v| (1..len).any(|t| arcs_constant(shape, c, orbit, v, t)))
}

/// `c` is constant on `{v, …, v+t}` and on `{v+t+1, …, v+len-1}` (indices
/// along the orbit).
fn arcs_constant(shape: &Shape, c: Word, orbit: &[usize], v: usize, t: usize) -> bool {
    let len = orbit.len();
    let at = |j: usize| shape.get(c, orbit[(v + j) % len]);
    let head = at(0);
    if !(1..=t).all(|j| at(j) == head) {
        return false;
    }
    if t + 1 >= len {
        return true;
    }
    let tail = at(t + 1);
    (t + 2..len).all(|j| at(j) == tail)
}

/// Condition (ii): some `⟨k⟩`-orbit `O` satisfies (b) and `c` is constant on
/// every other `⟨k⟩`-orbit.
fn special_orbit_exists(shape: &Shape, c: Word, k: usize) -> bool {
    let orbits = shape.suborbits(k);
    let nonconstant: Vec<&Vec<usize>> = orbits
        .iter()
        .filter(|o| !shape.is_constant_on(c, o))
        .collect();
    match nonconstant.len() {
        0 => true,
        1 => two_arc_condition(shape, c, nonconstant[0]),
        _ => false,
    }
}

/// The basic lemma: for every rotation `k`, a pair `α ≠ β`, `α ⊥ c`,
/// `β ⊥ c`, `β = k.α` exists iff `c` has the special-orbit shape; plus the
/// addenda on `Aut(c)`, the positions `u, v` and `|α(O)| = |β(O)|`.
pub fn verify_basic_lemma(b: Bounds, cfg: &LawConfig) -> Result<LawReport> {
    require_lemma_bounds(b)?;
    run("basic_lemma", b, cfg, |shape, c| {
        let mut bad = Vec::new();
        let neighbors = shape.perp_neighbors(c);
        let aut = shape.aut(c);
        for k in 1..shape.n {
            let orbits = shape.suborbits(k);
            let mut found = false;
            for &(u, alpha) in &neighbors {
                let beta = shape.rotate(alpha, k);
                if beta == alpha || !Shape::perp(beta, c) {
                    continue;
                }
                found = true;
                let v = Shape::first_diff(beta, c).expect("β ⊥ c");
                let special = orbits
                    .iter()
                    .find(|o| o.contains(&u))
                    .expect("orbits cover X");
                let mut problems = Vec::new();
                if !special.contains(&v) {
                    problems.push("v is not in the orbit of u");
                }
                if orbits
                    .iter()
                    .any(|o| !std::ptr::eq(o, special) && !shape.is_constant_on(c, o))
                {
                    problems.push("c is not constant off the special orbit");
                }
                if let (Some(iv), Some(iu)) = (
                    special.iter().position(|&x| x == v),
                    special.iter().position(|&x| x == u),
                ) {
                    let len = special.len();
                    let t = (iu + len - iv) % len;
                    if t == 0 || !arcs_constant(shape, c, special, iv, t) {
                        problems.push("c is not constant on [v,u] and its complement");
                    }
                    let single_value = shape.value_count_on(c, special) == 1;
                    let v_is_next = special[(iu + 1) % len] == v;
                    if aut.contains(k) != single_value || single_value != v_is_next {
                        problems.push("γ ∈ Aut(c), |c(O)| = 1 and v = γ.u disagree");
                    }
                }
                if shape.value_count_on(alpha, special) != shape.value_count_on(beta, special) {
                    problems.push("|α(O)| ≠ |β(O)|");
                }
                if !problems.is_empty() {
                    bad.push(witness(shape, c, &[alpha, beta], &[k], problems.join("; ")));
                }
            }
            if found != special_orbit_exists(shape, c, k) {
                bad.push(witness(
                    shape,
                    c,
                    &[],
                    &[k],
                    format!("(i) is {found} but (ii) is {}", !found),
                ));
            }
        }
        bad
    })
}

/// Every `Γ₁`-coset meets every `Γ₂`-coset in `Z/lcm(n1, n2)`, where `Γᵢ` is
/// the subgroup of order `nᵢ`.
pub fn verify_coset_lemma(n1: usize, n2: usize) -> Result<LawReport> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Precondition(
            "subgroup orders must be positive".into(),
        ));
    }
    let n = lcm(n1, n2);
    let (i1, i2) = (n / n1, n / n2);
    let mut bad = Vec::new();
    for a in 0..i1 {
        for b in 0..i2 {
            let meets = (0..n1).any(|j| (a + j * i1) % i2 == b);
            if !meets {
                bad.push(Witness {
                    system: format!("Z/{n}"),
                    others: vec![format!("{a}+Γ1"), format!("{b}+Γ2")],
                    rotations: vec![],
                    detail: "cosets do not meet".into(),
                });
            }
        }
    }
    Ok(LawReport::from_parts(
        "coset_lemma",
        format!("n1={n1} n2={n2}"),
        (i1 * i2) as u64,
        bad,
    ))
}

/// Bijective affine maps `x ↦ a + bx` of `Z/n` preserving `I_m = {0..m}`
/// have the classified form.
pub fn verify_affine_lemma(n: usize) -> Result<LawReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {n}")));
    }
    let mut bad = Vec::new();
    let mut space = 0u64;
    for b in (1..n).filter(|&b| gcd(b, n) == 1) {
        for a in 0..n {
            for m in 0..=n - 2 {
                space += 1;
                let preserves = (0..=m).all(|x| (a + b * x) % n <= m);
                if !preserves {
                    continue;
                }
                let conforms = if m == 0 {
                    a == 0
                } else if m == n - 2 {
                    a == (b + n - 1) % n
                } else {
                    (a == 0 && b == 1) || (a == m && b == n - 1)
                };
                if !conforms {
                    bad.push(Witness {
                        system: format!("Z/{n}"),
                        others: vec![format!("x -> {a} + {b}x"), format!("I_{m}")],
                        rotations: vec![],
                        detail: "preserves I_m but is not of the classified form".into(),
                    });
                }
            }
        }
    }
    Ok(LawReport::from_parts(
        "affine_lemma",
        format!("n={n}"),
        space,
        bad,
    ))
}

/// If `Aut(c) ≠ 1`, `α ⊥ c` and `k.α ⊥ c`, then `k ∈ Aut(c)`.
pub fn verify_restricted_symmetry(b: Bounds, cfg: &LawConfig) -> Result<LawReport> {
    require_lemma_bounds(b)?;
    run("restricted_symmetry", b, cfg, |shape, c| {
        let aut = shape.aut(c);
        if aut.is_trivial() {
            return Vec::new();
        }
        let mut bad = Vec::new();
        for (_, alpha) in shape.perp_neighbors(c) {
            for k in (1..shape.n).filter(|&k| !aut.contains(k)) {
                let beta = shape.rotate(alpha, k);
                if Shape::perp(beta, c) {
                    bad.push(witness(shape, c, &[alpha, beta], &[k], "k ∉ Aut(c)"));
                }
            }
        }
        bad
    })
}

/// No triplets: `α₁, α₂, β ⊥ c` with `β = k₁.α₁ = k₂.α₂`, `kᵢ ∉ Aut(c)`,
/// forces `α₁ = α₂`.
pub fn verify_no_triplets(b: Bounds, cfg: &LawConfig) -> Result<LawReport> {
    require_lemma_bounds(b)?;
    run("no_triplets", b, cfg, |shape, c| {
        let aut = shape.aut(c);
        let mut preimage: HashMap<Word, (Word, usize)> = HashMap::new();
        let mut bad = Vec::new();
        for (_, alpha) in shape.perp_neighbors(c) {
            for k in (1..shape.n).filter(|&k| !aut.contains(k)) {
                let beta = shape.rotate(alpha, k);
                if !Shape::perp(beta, c) {
                    continue;
                }
                match preimage.get(&beta) {
                    Some(&(other, k0)) if other != alpha => {
                        bad.push(witness(
                            shape,
                            c,
                            &[other, alpha, beta],
                            &[k0, k],
                            "two distinct α rotate onto the same β",
                        ));
                    }
                    Some(_) => {}
                    None => {
                        preimage.insert(beta, (alpha, k));
                    }
                }
            }
        }
        bad
    })
}

/// At most one child of `c` has a nontrivial stabilizer.
pub fn verify_one_child(b: Bounds, cfg: &LawConfig) -> Result<LawReport> {
    require_lemma_bounds(b)?;
    run("one_child", b, cfg, |shape, c| {
        let symmetric: Vec<Word> = shape
            .children(c)
            .into_iter()
            .map(|(_, a)| a)
            .filter(|&a| !shape.aut(a).is_trivial())
            .collect();
        if symmetric.len() > 1 {
            vec![witness(
                shape,
                c,
                &symmetric,
                &[],
                "several children with nontrivial stabilizer",
            )]
        } else {
            Vec::new()
        }
    })
}

/// Which relation defines the children considered by the twins verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChildRelation {
    /// `α < c`: one pearl faded.
    Fade,
    /// `α ⊥ c`: one pearl changed arbitrarily. Used as a negative control.
    Perp,
}

/// Structure of necklaces with two twin pairs: for twin pairs `(α₁, β₁)`,
/// `(α₂, β₂)` with four distinct children and `Γ' = ⟨k₁, k₂⟩`, exactly one
/// `Γ'`-orbit `O` has `c` at its maximum on `|O| - 1` positions, `c` is
/// constant on the other `Γ'`-orbits, all four children agree with `c` off
/// `O`, and `|O| >= 5`.
pub fn verify_twins_structure(
    b: Bounds,
    relation: ChildRelation,
    cfg: &LawConfig,
) -> Result<LawReport> {
    require_lemma_bounds(b)?;
    let law = match relation {
        ChildRelation::Fade => "twins_structure",
        ChildRelation::Perp => "twins_structure_perp_control",
    };
    run(law, b, cfg, |shape, c| {
        let children: Vec<(usize, Word)> = match relation {
            ChildRelation::Fade => shape.children(c),
            ChildRelation::Perp => shape.perp_neighbors(c),
        };
        let aut = shape.aut(c);
        let mut twins: Vec<(usize, Word, usize, Word, usize)> = Vec::new();
        for &(pa, alpha) in &children {
            for k in (1..shape.n).filter(|&k| !aut.contains(k)) {
                let beta = shape.rotate(alpha, k);
                if beta == alpha {
                    continue;
                }
                if let Some(&(pb, _)) = children.iter().find(|&&(_, w)| w == beta) {
                    twins.push((pa, alpha, pb, beta, k));
                }
            }
        }
        let mut bad = Vec::new();
        for (i, &(pa1, a1, pb1, b1, k1)) in twins.iter().enumerate() {
            for &(pa2, a2, pb2, b2, k2) in &twins[i + 1..] {
                let four = [a1, b1, a2, b2];
                let distinct = (0..4).all(|x| (x + 1..4).all(|y| four[x] != four[y]));
                if !distinct {
                    continue;
                }
                let g = gcd(gcd(k1, k2), shape.n);
                if let Some(problem) = twins_shape_problem(shape, c, g, &[pa1, pb1, pa2, pb2]) {
                    bad.push(witness(shape, c, &four, &[k1, k2], problem));
                    if bad.len() >= 4 {
                        return bad;
                    }
                }
            }
        }
        bad
    })
}

fn twins_shape_problem(shape: &Shape, c: Word, step: usize, changed: &[usize]) -> Option<String> {
    let orbits = shape.suborbits(step);
    let mut special = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        if shape.is_constant_on(c, o) {
            continue;
        }
        let max = o.iter().map(|&p| shape.get(c, p)).max().expect("nonempty");
        let at_max = o.iter().filter(|&&p| shape.get(c, p) == max).count();
        if at_max + 1 != o.len() {
            return Some(format!(
                "Γ'-orbit {i} is neither constant nor at its maximum on all but one position"
            ));
        }
        special.push(i);
    }
    if special.len() != 1 {
        return Some(format!(
            "{} special Γ'-orbits instead of one",
            special.len()
        ));
    }
    let o = &orbits[special[0]];
    if changed.iter().any(|p| !o.contains(p)) {
        return Some("a child differs from c outside the special orbit".into());
    }
    if o.len() < 5 {
        return Some(format!("special orbit has size {} < 5", o.len()));
    }
    None
}

/// Runs every necklace verifier on `b` (the twins verifier with `<`).
pub fn verify_necklace_suite(b: Bounds, cfg: &LawConfig) -> Result<Vec<LawReport>> {
    Ok(vec![
        verify_basic_lemma(b, cfg)?,
        verify_restricted_symmetry(b, cfg)?,
        verify_no_triplets(b, cfg)?,
        verify_one_child(b, cfg)?,
        verify_twins_structure(b, ChildRelation::Fade, cfg)?,
    ])
}
