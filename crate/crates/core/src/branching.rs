//! Restriction multiplicities from `G(de,e,r+1)` to `G(de,e,r)`.
//!
//! For `ρ₁` over the orbit of `c₁` and `ρ₂` over the orbit `O₂`,
//! `(Res ρ₁ | ρ₂) = #{α ∈ O₂ : α ↗ c₁} / #Aut_{Γ'}(c₁)`.
//! The count does not depend on the constituent indices, so tables are
//! computed per orbit pair and then replicated across `j`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::irrep::{
    dim, enumerate_irreps, enumerate_orbits, extends_to_full, GroupParams, IrrepLabel,
    MultiPartition, OrbitLabel,
};
use crate::laws::{LawReport, Witness};
use crate::necklace::Necklace;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingTable {
    pub upper: GroupParams,
    pub lower: GroupParams,
    pub rows: Vec<IrrepLabel>,
    pub cols: Vec<IrrepLabel>,
    /// `entries[i][j]` is the multiplicity of `cols[j]` in the restriction
    /// of `rows[i]`.
    pub entries: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub upper: GroupParams,
    pub lower: GroupParams,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<u32>>,
}

fn check_pair(rho1: &IrrepLabel, rho2: &IrrepLabel) -> Result<()> {
    if rho1.orbit.total_size() != rho2.orbit.total_size() + 1 {
        return Err(Error::Precondition(format!(
            "ranks of {rho1} and {rho2} do not differ by one"
        )));
    }
    if rho1.orbit.canonical.n() != rho2.orbit.canonical.n() {
        return Err(Error::Precondition(format!(
            "{rho1} and {rho2} live on different m"
        )));
    }
    Ok(())
}

fn divide(count: usize, s1: usize, what: &dyn std::fmt::Display) -> Result<u32> {
    if !count.is_multiple_of(s1) {
        return Err(Error::Invariant(format!(
            "{count} children of {what} are not divisible by the stabilizer order {s1}"
        )));
    }
    Ok((count / s1) as u32)
}

/// Multiplicity of `rho2` in the restriction of `rho1`, from the counting
/// formula over the orbit members of `rho2`.
pub fn restriction_mult(rho1: &IrrepLabel, rho2: &IrrepLabel, p: &GroupParams) -> Result<u32> {
    check_pair(rho1, rho2)?;
    let c1 = &rho1.orbit.canonical;
    let mut count = 0;
    for alpha in rho2.orbit.members(p) {
        if alpha.step_relation(c1)? {
            count += 1;
        }
    }
    divide(count, rho1.orbit.stabilizer_order, rho1)
}

/// Multiplicities of every lower orbit in the restriction of an upper orbit,
/// keyed by the lower orbit's canonical multipartition.
pub fn orbit_row(c1: &OrbitLabel, p: &GroupParams) -> Result<HashMap<MultiPartition, u32>> {
    let mut counts: HashMap<MultiPartition, usize> = HashMap::new();
    for alpha in c1.canonical.step_children() {
        let (key, _) = alpha.canonical_rotation(p.d);
        *counts.entry(key).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(k, v)| Ok((k, divide(v, c1.stabilizer_order, &c1.canonical)?)))
        .collect()
}

/// The table for `G(de,e,r+1) → G(de,e,r)` where `upper.r = r+1`.
/// Entries above 2 are reported as an invariant violation.
pub fn induction_table(upper: &GroupParams) -> Result<BranchingTable> {
    let table = assemble(upper)?;
    if let Some(bad) = table.entries.iter().flatten().find(|&&x| x > 2) {
        return Err(Error::Invariant(format!(
            "{} has an entry {bad} above 2",
            table.upper
        )));
    }
    Ok(table)
}

fn assemble(upper: &GroupParams) -> Result<BranchingTable> {
    if upper.r == 0 {
        return Err(Error::Precondition(
            "the upper rank must be at least 1".into(),
        ));
    }
    let lower = upper.with_rank(upper.r - 1);
    let rows = enumerate_irreps(upper);
    let cols = enumerate_irreps(&lower);
    let mut col_start: HashMap<&MultiPartition, usize> = HashMap::new();
    for (i, c) in cols.iter().enumerate() {
        col_start.entry(&c.orbit.canonical).or_insert(i);
    }
    let upper_orbits = enumerate_orbits(upper);
    let orbit_rows: Vec<Vec<u32>> = upper_orbits
        .par_iter()
        .map(|o| {
            let mut row = vec![0u32; cols.len()];
            for (key, mult) in orbit_row(o, upper)? {
                let start = *col_start.get(&key).ok_or_else(|| {
                    Error::Invariant(format!("child orbit {key} missing from the lower group"))
                })?;
                let s = cols[start].orbit.stabilizer_order;
                for x in &mut row[start..start + s] {
                    *x = mult;
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let mut entries = Vec::with_capacity(rows.len());
    for (o, row) in upper_orbits.iter().zip(&orbit_rows) {
        for _ in 0..o.stabilizer_order {
            entries.push(row.clone());
        }
    }
    Ok(BranchingTable {
        upper: *upper,
        lower,
        rows,
        cols,
        entries,
    })
}

impl BranchingTable {
    pub fn row_dims(&self) -> Result<Vec<u128>> {
        self.rows.iter().map(dim).collect()
    }

    pub fn col_dims(&self) -> Result<Vec<u128>> {
        self.cols.iter().map(dim).collect()
    }

    /// Rows whose weighted sum of column dimensions differs from their own
    /// dimension.
    pub fn dimension_defects(&self) -> Result<Vec<usize>> {
        let rd = self.row_dims()?;
        let cd = self.col_dims()?;
        Ok((0..self.rows.len())
            .filter(|&i| {
                let sum: u128 = self.entries[i]
                    .iter()
                    .zip(&cd)
                    .map(|(&x, &d)| x as u128 * d)
                    .sum();
                sum != rd[i]
            })
            .collect())
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            upper: self.upper,
            lower: self.lower,
            rows: self.rows.iter().map(ToString::to_string).collect(),
            cols: self.cols.iter().map(ToString::to_string).collect(),
            entries: self.entries.clone(),
        }
    }

    /// CSV with column labels in the first row and row labels in the first
    /// column.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
        let mut header = vec![String::new()];
        header.extend(self.cols.iter().map(ToString::to_string));
        w.write_record(&header).map_err(csv_err)?;
        for (label, row) in self.rows.iter().zip(&self.entries) {
            let mut record = vec![label.to_string()];
            record.extend(row.iter().map(ToString::to_string));
            w.write_record(&record).map_err(csv_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Invariant(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("labels are UTF-8"))
    }
}

fn tables_up_to(d: usize, e: usize, r_max: usize) -> Result<Vec<BranchingTable>> {
    (1..=r_max)
        .map(|r| induction_table(&GroupParams::new(d, e, r)?))
        .collect()
}

fn table_witness(t: &BranchingTable, i: usize, j: Option<usize>, detail: String) -> Witness {
    Witness {
        system: t.rows[i].to_string(),
        others: j.map(|j| vec![t.cols[j].to_string()]).unwrap_or_default(),
        rotations: vec![],
        detail: format!("{}: {detail}", t.upper),
    }
}

/// Every entry is at most 2, and rows with an entry 2 extend.
pub fn verify_theorem_bound(d: usize, e: usize, r_max: usize) -> Result<LawReport> {
    let mut bad = Vec::new();
    let mut space = 0u64;
    for r in 1..=r_max {
        let upper = GroupParams::new(d, e, r)?;
        let t = assemble(&upper)?;
        for (i, row) in t.entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                space += 1;
                if x > 2 || (x == 2 && !extends_to_full(&t.rows[i])) {
                    bad.push(table_witness(&t, i, Some(j), format!("entry {x}")));
                }
            }
        }
    }
    Ok(LawReport::from_parts(
        "theorem_bound",
        format!("d={d} e={e} rmax={r_max}"),
        space,
        bad,
    ))
}

/// Components of restrictions and extension: a non-extending row has only
/// extending components, a row with a non-extending component extends, and
/// the non-extending components of a row have multiplicity 1 and come from a
/// single orbit.
pub fn verify_nonextending_components(d: usize, e: usize, r_max: usize) -> Result<LawReport> {
    let mut bad = Vec::new();
    let mut space = 0u64;
    for t in tables_up_to(d, e, r_max)? {
        for (i, row) in t.entries.iter().enumerate() {
            space += 1;
            let rho = &t.rows[i];
            let components: Vec<usize> = (0..row.len()).filter(|&j| row[j] > 0).collect();
            let nonext: Vec<usize> = components
                .iter()
                .copied()
                .filter(|&j| !extends_to_full(&t.cols[j]))
                .collect();
            if !extends_to_full(rho) {
                for &j in &nonext {
                    bad.push(table_witness(
                        &t,
                        i,
                        Some(j),
                        "row and component both fail to extend".into(),
                    ));
                }
            }
            if !nonext.is_empty() && !extends_to_full(rho) {
                bad.push(table_witness(
                    &t,
                    i,
                    None,
                    "a non-extending component but the row does not extend".into(),
                ));
            }
            for &j in &nonext {
                if row[j] != 1 {
                    bad.push(table_witness(
                        &t,
                        i,
                        Some(j),
                        format!("non-extending component with multiplicity {}", row[j]),
                    ));
                }
                if t.cols[j].orbit != t.cols[nonext[0]].orbit {
                    bad.push(table_witness(
                        &t,
                        i,
                        Some(j),
                        "non-extending components from two orbits".into(),
                    ));
                }
            }
        }
    }
    Ok(LawReport::from_parts(
        "nonextending_components",
        format!("d={d} e={e} rmax={r_max}"),
        space,
        bad,
    ))
}

/// The multipartition `c` on `Z/e` with `c(0) = mu0`, `c = lambda0` on the
/// rest of the subgroup `Γ₀` of order `u`, and `fillers[i-1]` on the coset
/// `i + Γ₀` for `i` in `1..e/u`.
pub fn build_mult2_family(
    e: usize,
    u: usize,
    fillers: &[Partition],
    lambda0: &Partition,
    mu0: &Partition,
) -> Result<MultiPartition> {
    if u == 0 || e == 0 || !e.is_multiple_of(u) {
        return Err(Error::Precondition(format!("u={u} does not divide e={e}")));
    }
    if !mu0.covers(lambda0) {
        return Err(Error::Precondition(format!(
            "{mu0} does not cover into {lambda0}"
        )));
    }
    let index = e / u;
    if fillers.len() != index - 1 {
        return Err(Error::Precondition(format!(
            "need {} fillers, got {}",
            index - 1,
            fillers.len()
        )));
    }
    let values = (0..e)
        .map(|x| match (x % index, x) {
            (0, 0) => mu0.clone(),
            (0, _) => lambda0.clone(),
            (coset, _) => fillers[coset - 1].clone(),
        })
        .collect();
    Necklace::new(values)
}

/// What the restriction of a family member looks like.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyAnalysis {
    pub necklace: String,
    pub rank: usize,
    /// Generator of `Aut(c)` in `Z/e`; equal to `e` when trivial.
    pub aut_generator: usize,
    pub mult2_components: Vec<String>,
    /// `⌊(u-1)/2⌋`.
    pub guaranteed: usize,
}

impl FamilyAnalysis {
    pub fn meets_guarantee(&self) -> bool {
        self.mult2_components.len() >= self.guaranteed
    }
}

pub fn analyze_mult2_family(e: usize, u: usize, c: &MultiPartition) -> Result<FamilyAnalysis> {
    let rank = c.total_size();
    let p = GroupParams::new(1, e, rank)?;
    let orbit = OrbitLabel::of(c, &p);
    let lower = p.with_rank(rank.saturating_sub(1));
    let lower_orbits: HashMap<MultiPartition, OrbitLabel> = enumerate_orbits(&lower)
        .into_iter()
        .map(|o| (o.canonical.clone(), o))
        .collect();
    let mut mult2: Vec<String> = Vec::new();
    for (key, mult) in orbit_row(&orbit, &p)? {
        if mult == 2 {
            let o = &lower_orbits[&key];
            for j in 0..o.stabilizer_order {
                mult2.push(
                    IrrepLabel {
                        orbit: o.clone(),
                        j,
                    }
                    .to_string(),
                );
            }
        }
    }
    mult2.sort();
    Ok(FamilyAnalysis {
        necklace: c.to_string(),
        rank,
        aut_generator: c.aut().generator(),
        mult2_components: mult2,
        guaranteed: u.saturating_sub(1) / 2,
    })
}

/// Whether `c` (on `Z/e`) has the family shape for some `u ≥ 5`, up to
/// rotation.
pub fn matches_family_shape(c: &MultiPartition, e: usize) -> Option<usize> {
    (5..=e).filter(|u| e.is_multiple_of(*u)).find(|&u| {
        let index = e / u;
        (0..e).any(|t| {
            let x = c.rotate(-(t as i64));
            let v = x.values();
            let lambda0 = &v[index % e];
            let subgroup_ok = (1..u).all(|k| v[k * index] == *lambda0) && v[0].covers(lambda0);
            let cosets_ok = (1..index).all(|i| (0..u).all(|k| v[i + k * index] == v[i]));
            subgroup_ok && cosets_ok
        })
    })
}

/// Rows with at least two multiplicity-2 entries come from the family with
/// `u ≥ 5` (for `d = 1`).
pub fn verify_mult2_classification(e: usize, r_max: usize) -> Result<LawReport> {
    let mut bad = Vec::new();
    let mut space = 0u64;
    for t in tables_up_to(1, e, r_max)? {
        for (i, row) in t.entries.iter().enumerate() {
            space += 1;
            if row.iter().filter(|&&x| x == 2).count() >= 2
                && matches_family_shape(&t.rows[i].orbit.canonical, e).is_none()
            {
                bad.push(table_witness(
                    &t,
                    i,
                    None,
                    "several multiplicity-2 entries outside the family".into(),
                ));
            }
        }
    }
    Ok(LawReport::from_parts(
        "mult2_classification",
        format!("d=1 e={e} rmax={r_max}"),
        space,
        bad,
    ))
}

/// Rows with at least two multiplicity-2 entries, across ranks up to `r_max`.
pub fn multi_mult2_rows(e: usize, r_max: usize) -> Result<Vec<(GroupParams, IrrepLabel)>> {
    let mut out = Vec::new();
    for t in tables_up_to(1, e, r_max)? {
        for (i, row) in t.entries.iter().enumerate() {
            if row.iter().filter(|&&x| x == 2).count() >= 2 {
                out.push((t.upper, t.rows[i].clone()));
            }
        }
    }
    Ok(out)
}
