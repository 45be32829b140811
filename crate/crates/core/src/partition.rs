//! Integer partitions: size, lexicographic order, the one-box covering
//! relation, and standard tableau counts.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers, stored without
/// trailing zeros. The empty sequence is the unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} contains a zero part"
            )));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`, or the empty partition when `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part, reading absent parts as 0.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Position-wise comparison with absent parts read as 0.
    pub fn lex_compare(&self, other: &Partition) -> Ordering {
        let len = self.len().max(other.len());
        (0..len)
            .map(|i| self.part(i).cmp(&other.part(i)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// `self ↗ other`: every part of `self` is at most the matching part of
    /// `other`, and `other` has exactly one more box.
    pub fn covers(&self, other: &Partition) -> bool {
        if other.size() != self.size() + 1 {
            return false;
        }
        let len = self.len().max(other.len());
        (0..len).all(|i| self.part(i) <= other.part(i))
    }

    /// Rows whose last box can be removed, leaving a partition.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    /// Rows where a box can be appended, leaving a partition.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .collect()
    }

    /// Removes the last box of row `row`. Panics if that box is not a corner.
    pub fn remove_box(&self, row: usize) -> Partition {
        assert!(
            row < self.len() && self.part(row) > self.part(row + 1),
            "row {row} of {self} has no removable box"
        );
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }

    /// Appends a box to row `row`. Panics if the result is not a partition.
    pub fn add_box(&self, row: usize) -> Partition {
        assert!(
            row == 0 || (row <= self.len() && self.part(row - 1) > self.part(row)),
            "row {row} of {self} is not addable"
        );
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition { parts }
    }

    /// Partitions obtained by removing one box, i.e. all `p` with `p ↗ self`.
    pub fn predecessors(&self) -> Vec<Partition> {
        self.removable_rows()
            .into_iter()
            .map(|i| self.remove_box(i))
            .collect()
    }

    /// Number of standard Young tableaux of this shape, by the hook-length
    /// formula.
    pub fn syt_count(&self) -> u128 {
        let n = self.size();
        let conj: Vec<usize> = (0..self.part(0))
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        let mut hooks: u128 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for (j, &col) in conj.iter().enumerate().take(row) {
                hooks *= (row - j + col - i - 1) as u128;
            }
        }
        factorial(n) / hooks
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, &mut current, &mut out);
        out
    }
}

fn fill_partitions(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        current.push(part);
        fill_partitions(rest - part, part, current, out);
        current.pop();
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_compare(other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidPartition(format!("{s:?} is not bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Counts standard tableaux by placing the largest entry in each corner.
    fn syt_by_enumeration(shape: &Partition) -> u128 {
        if shape.is_empty() {
            return 1;
        }
        shape.predecessors().iter().map(syt_by_enumeration).sum()
    }

    #[test]
    fn sizes() {
        assert_eq!(p(&[]).size(), 0);
        assert_eq!(p(&[2, 1]).size(), 3);
        assert_eq!(p(&[5, 5, 1]).size(), 11);
    }

    #[test]
    fn lex_order() {
        assert_eq!(p(&[]).lex_compare(&p(&[1])), Ordering::Less);
        assert_eq!(p(&[2, 1]).lex_compare(&p(&[2, 1])), Ordering::Equal);
        assert_eq!(p(&[3]).lex_compare(&p(&[2, 2])), Ordering::Greater);
        assert_eq!(p(&[2]).lex_compare(&p(&[2, 1])), Ordering::Less);
    }

    #[test]
    fn covering() {
        assert!(p(&[]).covers(&p(&[1])));
        assert!(p(&[2, 1]).covers(&p(&[2, 2])));
        assert!(!p(&[1]).covers(&p(&[3])));
        assert!(!p(&[2]).covers(&p(&[1, 1, 1])));
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert!("3,2".parse::<Partition>().is_err());
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[3, 2]).to_string(), "[3,2]");
        assert_eq!(p(&[]).to_string(), "[]");
        assert_eq!("[3, 2]".parse::<Partition>().unwrap(), p(&[3, 2]));
        assert_eq!("[]".parse::<Partition>().unwrap(), p(&[]));
    }

    #[test]
    fn syt_examples() {
        assert_eq!(p(&[]).syt_count(), 1);
        assert_eq!(p(&[2, 1]).syt_count(), 2);
        assert_eq!(p(&[3, 2]).syt_count(), 5);
    }

    #[test]
    fn syt_matches_enumeration() {
        for n in 0..=8 {
            for q in Partition::all(n) {
                assert_eq!(q.syt_count(), syt_by_enumeration(&q), "{q}");
            }
        }
    }

    #[test]
    fn syt_squares_sum_to_factorial() {
        for n in 0..=8 {
            let total: u128 = Partition::all(n).iter().map(|q| q.syt_count().pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn covers_count_is_distinct_part_values() {
        for n in 1..=8 {
            let smaller = Partition::all(n - 1);
            for q in Partition::all(n) {
                let below = smaller.iter().filter(|s| s.covers(&q)).count();
                let mut values = q.parts().to_vec();
                values.dedup();
                assert_eq!(below, values.len(), "{q}");
                assert_eq!(q.predecessors().len(), values.len());
            }
        }
    }

    #[test]
    fn covers_implies_less() {
        for n in 1..=7 {
            for q in Partition::all(n) {
                for s in Partition::all(n - 1) {
                    if s.covers(&q) {
                        assert_eq!(s.cmp(&q), Ordering::Less);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
