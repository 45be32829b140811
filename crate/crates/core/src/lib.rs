//! Branching rules between the imprimitive complex reflection groups
//! `G(de,e,r+1)` and their maximal parabolic subgroups `G(de,e,r)`.
//!
//! Irreducible representations are indexed by necklaces of partitions
//! (multipartitions modulo a cyclic rotation), and restriction multiplicities
//! are counted combinatorially in [`branching`]. The [`laws`] and
//! [`symbreak`] modules exhaustively check the necklace combinatorics behind
//! those counts at bounded size, and [`oracle`] recomputes the same tables
//! from character tables of explicit monomial groups ([`monomial`]).

pub mod branching;
pub mod cli;
pub mod error;
pub mod group;
pub mod irrep;
pub mod laws;
pub mod monomial;
pub mod necklace;
pub mod oracle;
pub mod partition;
pub mod symbreak;

pub use error::{Error, Result};

/// Environment variable overriding the enumeration caps.
pub const CAP_ENV_VAR: &str = "REFLECT_BRANCH_CAP";

/// Reads [`CAP_ENV_VAR`], if set to a positive integer.
pub fn cap_override() -> Option<u128> {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<u128>().ok())
        .filter(|&c| c > 0)
}
