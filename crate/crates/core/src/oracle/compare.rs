//! Matching two branching tables whose rows and columns are labelled
//! independently: find row and column permutations, preserving degrees,
//! that carry one matrix onto the other.
//!
//! Colours are refined jointly on both tables, then ambiguous colour
//! classes are resolved by individualisation and backtracking.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::branching::BranchingTable;
use crate::error::Result;
use crate::oracle::OracleTable;

/// Search nodes allowed before falling back to a weak comparison.
pub const NODE_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeTable {
    pub row_degrees: Vec<u64>,
    pub col_degrees: Vec<u64>,
    pub entries: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// An explicit pair of permutations maps one table onto the other.
    Match,
    /// The search budget ran out; only the multisets of degree-tagged rows
    /// and columns agree.
    WeakMatch,
    Mismatch(String),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

impl BranchingTable {
    pub fn as_degree_table(&self) -> Result<DegreeTable> {
        let narrow = |v: Vec<u128>| v.into_iter().map(|x| x as u64).collect();
        Ok(DegreeTable {
            row_degrees: narrow(self.row_dims()?),
            col_degrees: narrow(self.col_dims()?),
            entries: self.entries.clone(),
        })
    }
}

pub fn compare_canonical(a: &BranchingTable, b: &OracleTable) -> Result<Verdict> {
    Ok(compare_tables(&a.as_degree_table()?, &b.as_degree_table()))
}

/// Vertices of the disjoint union of both tables: rows of `a`, columns of
/// `a`, rows of `b`, columns of `b`.
struct Union<'t> {
    a: &'t DegreeTable,
    b: &'t DegreeTable,
    ra: usize,
    ca: usize,
    rb: usize,
}

impl Union<'_> {
    fn len(&self) -> usize {
        self.ra + self.ca + self.rb + self.b.col_degrees.len()
    }

    fn in_a(&self, v: usize) -> bool {
        v < self.ra + self.ca
    }

    /// `(entry, neighbour)` pairs with nonzero entries.
    fn neighbours(&self, v: usize) -> Vec<(u32, usize)> {
        let (t, base, is_row, idx) = if v < self.ra {
            (self.a, 0, true, v)
        } else if v < self.ra + self.ca {
            (self.a, 0, false, v - self.ra)
        } else if v < self.ra + self.ca + self.rb {
            (self.b, self.ra + self.ca, true, v - self.ra - self.ca)
        } else {
            (
                self.b,
                self.ra + self.ca,
                false,
                v - self.ra - self.ca - self.rb,
            )
        };
        let rows = t.row_degrees.len();
        if is_row {
            t.entries[idx]
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(j, &x)| (x, base + rows + j))
                .collect()
        } else {
            t.entries
                .iter()
                .enumerate()
                .filter(|(_, r)| r[idx] != 0)
                .map(|(i, r)| (r[idx], base + i))
                .collect()
        }
    }

    fn initial_colours(&self) -> Vec<usize> {
        let key = |v: usize| -> (bool, u64) {
            if v < self.ra {
                (true, self.a.row_degrees[v])
            } else if v < self.ra + self.ca {
                (false, self.a.col_degrees[v - self.ra])
            } else if v < self.ra + self.ca + self.rb {
                (true, self.b.row_degrees[v - self.ra - self.ca])
            } else {
                (false, self.b.col_degrees[v - self.ra - self.ca - self.rb])
            }
        };
        let keys: Vec<(bool, u64)> = (0..self.len()).map(key).collect();
        relabel(&keys)
    }

    fn refine(&self, adj: &[Vec<(u32, usize)>], mut colours: Vec<usize>) -> Vec<usize> {
        loop {
            let count = distinct(&colours);
            let sigs: Vec<(usize, Vec<(u32, usize)>)> = (0..self.len())
                .map(|v| {
                    let mut s: Vec<(u32, usize)> =
                        adj[v].iter().map(|&(x, w)| (x, colours[w])).collect();
                    s.sort_unstable();
                    (colours[v], s)
                })
                .collect();
            let next = relabel(&sigs);
            if distinct(&next) == count {
                return next;
            }
            colours = next;
        }
    }

    /// Every colour occurs equally often on both sides.
    fn balanced(&self, colours: &[usize]) -> bool {
        let mut diff: BTreeMap<usize, i64> = BTreeMap::new();
        for (v, &c) in colours.iter().enumerate() {
            *diff.entry(c).or_default() += if self.in_a(v) { 1 } else { -1 };
        }
        diff.values().all(|&d| d == 0)
    }
}

fn relabel<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present"))
        .collect()
}

fn distinct(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

enum Search {
    Found,
    Exhausted,
    OutOfBudget,
}

fn search(u: &Union, adj: &[Vec<(u32, usize)>], colours: Vec<usize>, nodes: &mut usize) -> Search {
    *nodes += 1;
    if *nodes > NODE_BUDGET {
        return Search::OutOfBudget;
    }
    if !u.balanced(&colours) {
        return Search::Exhausted;
    }
    let split = u.ra + u.ca;
    // Smallest colour with more than one vertex in `a`.
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        members.entry(c).or_default().push(v);
    }
    let ambiguous = members.values().find(|vs| vs.len() > 2);
    let Some(class) = ambiguous else {
        return if discrete_match(u, adj, &colours) {
            Search::Found
        } else {
            Search::Exhausted
        };
    };
    let v = class[0];
    let fresh = members.len();
    let mut out_of_budget = false;
    for &w in class.iter().filter(|&&w| w >= split) {
        let mut next = colours.clone();
        next[v] = fresh;
        next[w] = fresh;
        let refined = u.refine(adj, next);
        match search(u, adj, refined, nodes) {
            Search::Found => return Search::Found,
            Search::OutOfBudget => out_of_budget = true,
            Search::Exhausted => {}
        }
        if out_of_budget {
            break;
        }
    }
    if out_of_budget {
        Search::OutOfBudget
    } else {
        Search::Exhausted
    }
}

/// With every colour held by one vertex on each side, checks that the
/// induced bijection preserves all entries.
fn discrete_match(u: &Union, adj: &[Vec<(u32, usize)>], colours: &[usize]) -> bool {
    let split = u.ra + u.ca;
    let mut partner = vec![usize::MAX; colours.len().max(1) * 2];
    let mut image = vec![usize::MAX; split];
    for w in split..u.len() {
        partner[colours[w]] = w;
    }
    for (v, slot) in image.iter_mut().enumerate() {
        *slot = partner[colours[v]];
    }
    (0..split).all(|v| {
        let mut mine: Vec<(u32, usize)> = adj[v].iter().map(|&(x, w)| (x, image[w])).collect();
        let mut theirs = adj[image[v]].clone();
        mine.sort_unstable();
        theirs.sort_unstable();
        mine == theirs
    })
}

fn weak_match(a: &DegreeTable, b: &DegreeTable) -> bool {
    let rows = |t: &DegreeTable| {
        let mut v: Vec<(u64, Vec<u32>)> = t
            .entries
            .iter()
            .zip(&t.row_degrees)
            .map(|(r, &d)| {
                let mut r = r.clone();
                r.sort_unstable();
                (d, r)
            })
            .collect();
        v.sort();
        v
    };
    let cols = |t: &DegreeTable| {
        let mut v: Vec<(u64, Vec<u32>)> = (0..t.col_degrees.len())
            .map(|j| {
                let mut c: Vec<u32> = t.entries.iter().map(|r| r[j]).collect();
                c.sort_unstable();
                (t.col_degrees[j], c)
            })
            .collect();
        v.sort();
        v
    };
    rows(a) == rows(b) && cols(a) == cols(b)
}

/// Compares two degree-labelled tables up to row and column permutations.
pub fn compare_tables(a: &DegreeTable, b: &DegreeTable) -> Verdict {
    let shape = |t: &DegreeTable| (t.row_degrees.len(), t.col_degrees.len());
    if shape(a) != shape(b) {
        return Verdict::Mismatch(format!("shapes {:?} and {:?} differ", shape(a), shape(b)));
    }
    let sorted = |v: &[u64]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    if sorted(&a.row_degrees) != sorted(&b.row_degrees) {
        return Verdict::Mismatch("row degree multisets differ".into());
    }
    if sorted(&a.col_degrees) != sorted(&b.col_degrees) {
        return Verdict::Mismatch("column degree multisets differ".into());
    }
    let u = Union {
        a,
        b,
        ra: a.row_degrees.len(),
        ca: a.col_degrees.len(),
        rb: b.row_degrees.len(),
    };
    let adj: Vec<Vec<(u32, usize)>> = (0..u.len()).map(|v| u.neighbours(v)).collect();
    let colours = u.refine(&adj, u.initial_colours());
    let mut nodes = 0;
    match search(&u, &adj, colours, &mut nodes) {
        Search::Found => Verdict::Match,
        Search::Exhausted => {
            Verdict::Mismatch("no degree-preserving permutation matches the entries".into())
        }
        Search::OutOfBudget => {
            if weak_match(a, b) {
                Verdict::WeakMatch
            } else {
                Verdict::Mismatch("row or column patterns differ".into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(rd: &[u64], cd: &[u64], entries: &[&[u32]]) -> DegreeTable {
        DegreeTable {
            row_degrees: rd.to_vec(),
            col_degrees: cd.to_vec(),
            entries: entries.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn permute(t: &DegreeTable, rows: &[usize], cols: &[usize]) -> DegreeTable {
        DegreeTable {
            row_degrees: rows.iter().map(|&i| t.row_degrees[i]).collect(),
            col_degrees: cols.iter().map(|&j| t.col_degrees[j]).collect(),
            entries: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| t.entries[i][j]).collect())
                .collect(),
        }
    }

    #[test]
    fn young_s3() {
        let a = table(&[1, 2, 1], &[1, 1], &[&[1, 0], &[1, 1], &[0, 1]]);
        let b = permute(&a, &[2, 0, 1], &[1, 0]);
        assert_eq!(compare_tables(&a, &b), Verdict::Match);
    }

    #[test]
    fn symmetric_ties_need_search() {
        // A 4-cycle pattern: colour refinement alone cannot separate rows.
        let a = table(
            &[2, 2, 2, 2],
            &[1, 1, 1, 1],
            &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]],
        );
        // Two disjoint 2x2 blocks: same row and column multisets.
        let b = table(
            &[2, 2, 2, 2],
            &[1, 1, 1, 1],
            &[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]],
        );
        assert!(weak_match(&a, &b));
        assert!(matches!(compare_tables(&a, &b), Verdict::Mismatch(_)));
        let c = permute(&a, &[3, 1, 0, 2], &[2, 3, 1, 0]);
        assert_eq!(compare_tables(&a, &c), Verdict::Match);
    }

    #[test]
    fn corrupted_entry() {
        let a = table(&[1, 2, 1], &[1, 1], &[&[1, 0], &[1, 1], &[0, 1]]);
        let mut b = a.clone();
        b.entries[1][0] = 2;
        assert!(matches!(compare_tables(&a, &b), Verdict::Mismatch(_)));
        let mut c = a.clone();
        c.row_degrees[0] = 3;
        assert!(matches!(compare_tables(&a, &c), Verdict::Mismatch(_)));
    }

    fn random_table() -> impl Strategy<Value = DegreeTable> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(1u64..3, r),
                proptest::collection::vec(1u64..3, c),
                proptest::collection::vec(proptest::collection::vec(0u32..3, c), r),
            )
                .prop_map(|(row_degrees, col_degrees, entries)| DegreeTable {
                    row_degrees,
                    col_degrees,
                    entries,
                })
        })
    }

    proptest! {
        #[test]
        fn permuted_copies_match(t in random_table(), seed in any::<u64>()) {
            let mut rows: Vec<usize> = (0..t.row_degrees.len()).collect();
            let mut cols: Vec<usize> = (0..t.col_degrees.len()).collect();
            let mut s = seed;
            for v in [&mut rows, &mut cols] {
                for i in (1..v.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    v.swap(i, (s >> 33) as usize % (i + 1));
                }
            }
            let p = permute(&t, &rows, &cols);
            prop_assert_eq!(compare_tables(&t, &p), Verdict::Match);
        }

        #[test]
        fn changed_sum_never_matches(t in random_table(), i in 0usize..7, j in 0usize..7) {
            let mut p = t.clone();
            let (i, j) = (i % t.row_degrees.len(), j % t.col_degrees.len());
            p.entries[i][j] += 1;
            prop_assert!(matches!(compare_tables(&t, &p), Verdict::Mismatch(_)));
        }
    }
}
