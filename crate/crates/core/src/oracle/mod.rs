//! An independent route to the branching tables: character tables of the
//! explicit monomial groups over `F_p`, and restriction multiplicities by
//! inner products.

pub mod chartab;
pub mod compare;
pub mod modp;

use serde::{Deserialize, Serialize};

pub use chartab::{character_table_of, CharacterTableModP};
pub use compare::{compare_canonical, compare_tables, DegreeTable, Verdict};

use crate::error::{Error, Result};
use crate::irrep::GroupParams;
use crate::monomial::MonomialGroup;

/// Restriction multiplicities with irreducibles identified by degree only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTable {
    pub upper: GroupParams,
    pub lower: GroupParams,
    pub prime: u64,
    pub row_degrees: Vec<u64>,
    pub col_degrees: Vec<u64>,
    pub entries: Vec<Vec<u32>>,
}

impl OracleTable {
    pub fn as_degree_table(&self) -> DegreeTable {
        DegreeTable {
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            entries: self.entries.clone(),
        }
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Rows whose weighted sum of column degrees differs from their degree.
    pub fn dimension_defects(&self) -> Vec<usize> {
        (0..self.row_degrees.len())
            .filter(|&i| {
                let sum: u64 = self.entries[i]
                    .iter()
                    .zip(&self.col_degrees)
                    .map(|(&x, &d)| x as u64 * d)
                    .sum();
                sum != self.row_degrees[i]
            })
            .collect()
    }
}

/// Both groups of a parabolic pair with their tables over a shared prime.
pub struct ParabolicPair {
    pub upper: MonomialGroup,
    pub lower: MonomialGroup,
    pub upper_table: CharacterTableModP,
    pub lower_table: CharacterTableModP,
    /// Index in `upper` of each element of `lower`.
    pub embedding: Vec<usize>,
}

impl ParabolicPair {
    pub fn new(p_upper: &GroupParams) -> Result<Self> {
        if p_upper.r == 0 {
            return Err(Error::Precondition(
                "the upper rank must be at least 1".into(),
            ));
        }
        let upper = MonomialGroup::new(p_upper)?;
        let lower = MonomialGroup::new(&p_upper.with_rank(p_upper.r - 1))?;
        let upper_table = character_table_of(&upper, None)?;
        let lower_table = character_table_of(&lower, Some(upper_table.p))?;
        let embedding = upper.embedding_of(&lower)?;
        Ok(ParabolicPair {
            upper,
            lower,
            upper_table,
            lower_table,
            embedding,
        })
    }

    fn lift(&self, x: u64) -> Result<u32> {
        let p = self.upper_table.p;
        if x > p / 2 {
            return Err(Error::Oracle(format!(
                "multiplicity residue {x} mod {p} is not small"
            )));
        }
        Ok(x as u32)
    }

    fn finish(&self, entries: Vec<Vec<u32>>) -> OracleTable {
        OracleTable {
            upper: *self.upper.params(),
            lower: *self.lower.params(),
            prime: self.upper_table.p,
            row_degrees: self.upper_table.degrees.clone(),
            col_degrees: self.lower_table.degrees.clone(),
            entries,
        }
    }

    /// `⟨Res χ, ψ⟩ = |H|⁻¹ Σ_c |c| χ(c) ψ(c⁻¹)` over classes `c` of `H`.
    pub fn restriction(&self) -> Result<OracleTable> {
        let (tu, tl) = (&self.upper_table, &self.lower_table);
        let f = tu.field();
        let upper_class: Vec<usize> = tl
            .classes
            .iter()
            .map(|c| tu.class_of[self.embedding[c[0]]])
            .collect();
        let inv_h = f.inv(tl.order % f.p);
        let entries = tu
            .table
            .iter()
            .map(|chi| {
                tl.table
                    .iter()
                    .map(|psi| {
                        let s = tl.classes.iter().enumerate().fold(0, |acc, (c, members)| {
                            let term = f.mul(
                                members.len() as u64 % f.p,
                                f.mul(chi[upper_class[c]], psi[tl.inverse_class[c]]),
                            );
                            f.add(acc, term)
                        });
                        self.lift(f.mul(s, inv_h))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Ok(self.finish(entries))
    }

    /// The same table computed from induced characters,
    /// `Ind ψ(g) = |G| / (|H| |C_g|) Σ_{h ∈ H ∩ C_g} ψ(h)`, and inner
    /// products in the upper group.
    pub fn induction(&self) -> Result<OracleTable> {
        let (tu, tl) = (&self.upper_table, &self.lower_table);
        let f = tu.field();
        let ku = tu.classes.len();
        let sizes = tu.class_sizes();
        let ratio = f.mul(tu.order % f.p, f.inv(tl.order % f.p));
        let induced: Vec<Vec<u64>> = tl
            .table
            .iter()
            .map(|psi| {
                let mut acc = vec![0u64; ku];
                for (h, &g) in self.embedding.iter().enumerate() {
                    let c = tu.class_of[g];
                    acc[c] = f.add(acc[c], psi[tl.class_of[h]]);
                }
                (0..ku)
                    .map(|c| f.mul(f.mul(ratio, acc[c]), f.inv(sizes[c] % f.p)))
                    .collect()
            })
            .collect();
        let inv_g = f.inv(tu.order % f.p);
        let entries = tu
            .table
            .iter()
            .map(|chi| {
                induced
                    .iter()
                    .map(|ind| {
                        let s = (0..ku).fold(0, |acc, c| {
                            f.add(
                                acc,
                                f.mul(sizes[c] % f.p, f.mul(ind[c], chi[tu.inverse_class[c]])),
                            )
                        });
                        self.lift(f.mul(s, inv_g))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<_>>()?;
        Ok(self.finish(entries))
    }
}

/// Restriction multiplicities from `G(de,e,r+1)` to `G(de,e,r)`.
pub fn restriction_table_oracle(p_upper: &GroupParams) -> Result<OracleTable> {
    ParabolicPair::new(p_upper)?.restriction()
}

/// The character table of `G(de,e,r)`.
pub fn character_table(p: &GroupParams) -> Result<CharacterTableModP> {
    character_table_of(&MonomialGroup::new(p)?, None)
}
