//! Necklace systems packed into a `u64`, two bits per pearl.
//!
//! Position `p = orbit * n + index` occupies bits `2p..2p+2`. Rotation by `k`
//! shifts every orbit chunk left by `2k` bits, matching
//! `result(i) = orig(i - k)`.

use num_integer::gcd;

use crate::error::{Error, Result};
use crate::necklace::{CyclicSubgroup, Necklace};

pub type Word = u64;

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub n: usize,
    pub orbits: usize,
    pub alphabet: usize,
}

impl Shape {
    pub fn new(n: usize, alphabet: usize, orbits: usize) -> Result<Self> {
        if n == 0 || orbits == 0 {
            return Err(Error::Precondition(
                "need n >= 1 and at least one orbit".into(),
            ));
        }
        if !(1..=4).contains(&alphabet) {
            return Err(Error::Precondition(format!(
                "packed systems support alphabets of size 1..=4, got {alphabet}"
            )));
        }
        if n * orbits > 32 {
            return Err(Error::Precondition(format!(
                "packed systems support at most 32 positions, got {}",
                n * orbits
            )));
        }
        Ok(Shape {
            n,
            orbits,
            alphabet,
        })
    }

    pub fn positions(&self) -> usize {
        self.n * self.orbits
    }

    /// Number of raw systems, `alphabet^(n * orbits)`.
    pub fn raw_count(&self) -> u128 {
        (self.alphabet as u128).pow(self.positions() as u32)
    }

    fn orbit_mask(&self) -> u64 {
        if self.n == 32 {
            u64::MAX
        } else {
            (1u64 << (2 * self.n)) - 1
        }
    }

    #[inline]
    pub fn get(&self, w: Word, p: usize) -> u8 {
        ((w >> (2 * p)) & 3) as u8
    }

    #[inline]
    pub fn set(&self, w: Word, p: usize, v: u8) -> Word {
        (w & !(3u64 << (2 * p))) | ((v as u64) << (2 * p))
    }

    /// Rotation by `k` (taken mod n) of every orbit.
    #[inline]
    pub fn rotate(&self, w: Word, k: usize) -> Word {
        let k = k % self.n;
        if k == 0 {
            return w;
        }
        let mask = self.orbit_mask();
        let width = 2 * self.n;
        let mut out = 0u64;
        for o in 0..self.orbits {
            let chunk = (w >> (width * o)) & mask;
            let rotated = ((chunk << (2 * k)) | (chunk >> (2 * (self.n - k)))) & mask;
            out |= rotated << (width * o);
        }
        out
    }

    /// Number of positions where the words differ.
    #[inline]
    pub fn diff_count(a: Word, b: Word) -> u32 {
        let x = a ^ b;
        ((x | (x >> 1)) & LOW_BITS).count_ones()
    }

    /// The first position where the words differ.
    #[inline]
    pub fn first_diff(a: Word, b: Word) -> Option<usize> {
        let x = a ^ b;
        let bits = (x | (x >> 1)) & LOW_BITS;
        (bits != 0).then(|| bits.trailing_zeros() as usize / 2)
    }

    #[inline]
    pub fn perp(a: Word, b: Word) -> bool {
        Self::diff_count(a, b) == 1
    }

    pub fn aut(&self, w: Word) -> CyclicSubgroup {
        let n = self.n;
        let g = (1..=n)
            .filter(|g| n.is_multiple_of(*g))
            .find(|&g| self.rotate(w, g) == w)
            .unwrap_or(n);
        CyclicSubgroup::generated_by(n, &[g])
    }

    /// All `α ⊥ c`, each with the position where it differs from `c`.
    pub fn perp_neighbors(&self, c: Word) -> Vec<(usize, Word)> {
        let mut out = Vec::with_capacity(self.positions() * (self.alphabet - 1));
        for p in 0..self.positions() {
            let cur = self.get(c, p);
            for y in 0..self.alphabet as u8 {
                if y != cur {
                    out.push((p, self.set(c, p, y)));
                }
            }
        }
        out
    }

    /// All children `α < c` (one pearl faded to a smaller value).
    pub fn children(&self, c: Word) -> Vec<(usize, Word)> {
        let mut out = Vec::new();
        for p in 0..self.positions() {
            let cur = self.get(c, p);
            for y in 0..cur {
                out.push((p, self.set(c, p, y)));
            }
        }
        out
    }

    /// The `⟨step⟩`-orbits on positions, each listed along `step`.
    pub fn suborbits(&self, step: usize) -> Vec<Vec<usize>> {
        let n = self.n;
        let g = gcd(step % n, n);
        let len = n / g;
        let mut out = Vec::with_capacity(self.orbits * g);
        for o in 0..self.orbits {
            for r in 0..g {
                out.push((0..len).map(|j| o * n + (r + j * step) % n).collect());
            }
        }
        out
    }

    pub fn is_constant_on(&self, w: Word, positions: &[usize]) -> bool {
        let first = self.get(w, positions[0]);
        positions.iter().all(|&p| self.get(w, p) == first)
    }

    pub fn value_count_on(&self, w: Word, positions: &[usize]) -> usize {
        let mut seen = 0u8;
        for &p in positions {
            seen |= 1 << self.get(w, p);
        }
        seen.count_ones() as usize
    }

    pub fn from_digits(&self, digits: &[u8]) -> Word {
        digits
            .iter()
            .enumerate()
            .fold(0u64, |w, (p, &d)| self.set(w, p, d))
    }

    pub fn to_necklace(&self, w: Word) -> Necklace<u8> {
        let orbits = (0..self.orbits)
            .map(|o| (0..self.n).map(|i| self.get(w, o * self.n + i)).collect())
            .collect();
        Necklace::from_orbits(orbits).expect("shape is valid")
    }

    /// Text form with pearls written as letters `a < b < c < d`.
    pub fn render(&self, w: Word) -> String {
        let mut s = String::new();
        for o in 0..self.orbits {
            if o > 0 {
                s.push('|');
            }
            for i in 0..self.n {
                if i > 0 {
                    s.push(',');
                }
                s.push((b'a' + self.get(w, o * self.n + i)) as char);
            }
        }
        s
    }

    /// Every system, in base-`alphabet` counting order.
    pub fn all_systems(&self) -> Vec<Word> {
        let total = self.raw_count() as u64;
        let k = self.alphabet as u64;
        (0..total)
            .map(|mut idx| {
                let mut w = 0u64;
                for p in 0..self.positions() {
                    w = self.set(w, p, (idx % k) as u8);
                    idx /= k;
                }
                w
            })
            .collect()
    }

    /// One representative per class of systems under independent rotation
    /// of each orbit and permutation of the orbits. These maps commute with
    /// the diagonal `Z/n`-action, so every law in this crate is invariant
    /// under them.
    pub fn reduced_systems(&self) -> Vec<Word> {
        let single = Shape {
            n: self.n,
            orbits: 1,
            alphabet: self.alphabet,
        };
        let reps: Vec<Word> = single
            .all_systems()
            .into_iter()
            .filter(|&w| (1..self.n).all(|k| single.rotate(w, k) >= w))
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.orbits];
        let width = 2 * self.n;
        loop {
            let w = idx
                .iter()
                .enumerate()
                .fold(0u64, |w, (o, &i)| w | (reps[i] << (width * o)));
            out.push(w);
            // Next non-decreasing index tuple.
            let mut pos = self.orbits;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if idx[pos] + 1 < reps.len() {
                    idx[pos] += 1;
                    let v = idx[pos];
                    for later in idx.iter_mut().skip(pos + 1) {
                        *later = v;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts() {
        let s = Shape::new(4, 2, 1).unwrap();
        assert_eq!(s.all_systems().len(), 16);
        // Binary necklaces of length 4: 6.
        assert_eq!(s.reduced_systems().len(), 6);
        // Ternary necklaces of length 8: 834; unordered pairs with repetition.
        let s = Shape::new(8, 3, 2).unwrap();
        assert_eq!(s.reduced_systems().len(), 834 * 835 / 2);
    }

    #[test]
    fn rejects_oversized() {
        assert!(Shape::new(4, 5, 1).is_err());
        assert!(Shape::new(17, 2, 2).is_err());
        assert!(Shape::new(0, 2, 1).is_err());
    }

    fn digits_strategy() -> impl Strategy<Value = (Shape, Vec<u8>)> {
        (1usize..=8, 1usize..=3, 1usize..=2).prop_flat_map(|(n, k, o)| {
            let shape = Shape::new(n, k, o).unwrap();
            proptest::collection::vec(0u8..k as u8, n * o).prop_map(move |d| (shape, d))
        })
    }

    proptest! {
        #[test]
        fn agrees_with_generic_necklace((shape, digits) in digits_strategy(), k in 0usize..16) {
            let w = shape.from_digits(&digits);
            let c = shape.to_necklace(w);
            prop_assert_eq!(shape.to_necklace(shape.rotate(w, k)), c.rotate(k as i64));
            prop_assert_eq!(shape.aut(w), c.aut());
            let alphabet: Vec<u8> = (0..shape.alphabet as u8).collect();
            let mut packed: Vec<_> = shape.perp_neighbors(w).into_iter().map(|(_, a)| shape.to_necklace(a)).collect();
            let mut generic = c.perp_neighbors(&alphabet);
            packed.sort();
            generic.sort();
            prop_assert_eq!(packed, generic);
            let mut packed: Vec<_> = shape.children(w).into_iter().map(|(_, a)| shape.to_necklace(a)).collect();
            let mut generic = c.children(&alphabet);
            packed.sort();
            generic.sort();
            prop_assert_eq!(packed, generic);
        }

        #[test]
        fn diff_count_matches((shape, a) in digits_strategy(), seed in any::<u64>()) {
            let w = shape.from_digits(&a);
            let k = shape.alphabet as u64;
            let b: Vec<u8> = (0..a.len()).map(|i| ((seed >> (i % 60)) % k) as u8).collect();
            let v = shape.from_digits(&b);
            let expected = a.iter().zip(&b).filter(|(x, y)| x != y).count() as u32;
            prop_assert_eq!(Shape::diff_count(w, v), expected);
        }
    }

    #[test]
    fn reduced_covers_every_class() {
        // Every raw system maps to some representative under per-orbit
        // rotations and orbit swaps.
        let shape = Shape::new(4, 3, 2).unwrap();
        let reps: std::collections::HashSet<Word> = shape.reduced_systems().into_iter().collect();
        let single = Shape::new(4, 3, 1).unwrap();
        let canon = |w: Word| (0..4).map(|k| single.rotate(w, k)).min().unwrap();
        for w in shape.all_systems() {
            let a = canon(w & 0xff);
            let b = canon(w >> 8);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            assert!(reps.contains(&(lo | (hi << 8))));
        }
    }
}
