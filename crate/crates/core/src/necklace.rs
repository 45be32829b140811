//! Necklaces: maps from a free `Z/n`-set to a set of pearls, up to rotation.
//!
//! The `Z/n`-set is always a disjoint union of regular orbits, so a
//! [`Necklace`] is a list of orbits of length `n` that rotate together.
//! Rotation follows `(γ.c)(x) = c(γ⁻¹.x)`: rotating by `k` moves the pearl at
//! position `i` to position `i + k`.

use std::fmt;
use std::str::FromStr;

use num_integer::gcd;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A position in a necklace system: orbit index and index within the orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub orbit: usize,
    pub index: usize,
}

/// A subgroup `gZ/nZ` of `Z/n`, encoded by its least positive element `g`
/// (a divisor of `n`; `g = n` is the trivial subgroup).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicSubgroup {
    n: usize,
    generator: usize,
}

impl CyclicSubgroup {
    /// The subgroup generated by the given residues.
    pub fn generated_by(n: usize, elements: &[usize]) -> Self {
        let generator = elements.iter().fold(n, |g, &k| gcd(g, k % n));
        CyclicSubgroup { n, generator }
    }

    pub fn trivial(n: usize) -> Self {
        CyclicSubgroup { n, generator: n }
    }

    pub fn whole(n: usize) -> Self {
        CyclicSubgroup { n, generator: 1 }
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn order(&self) -> usize {
        self.n / self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.n
    }

    pub fn contains(&self, k: usize) -> bool {
        (k % self.n).is_multiple_of(self.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        (0..self.n).step_by(self.generator)
    }
}

/// The interval `[v,u]_γ` inside the `⟨γ⟩`-orbit of `v` in `Z/n`, where
/// `γ` is rotation by `step`: the points `v, v+step, …, u`.
/// Returns `None` when `u` is not in that orbit.
pub fn interval(n: usize, v: usize, u: usize, step: usize) -> Option<Vec<usize>> {
    let len = n / gcd(n, step % n);
    let mut out = Vec::with_capacity(len);
    let mut x = v % n;
    for _ in 0..len {
        out.push(x);
        if x == u % n {
            return Some(out);
        }
        x = (x + step) % n;
    }
    None
}

/// A necklace system: `orbits` regular `Z/n`-orbits, each carrying `n`
/// pearls. Values are stored orbit-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Clone + Eq> Necklace<T> {
    /// A single-orbit necklace.
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidNecklace("a necklace needs n >= 1".into()));
        }
        Ok(Necklace {
            n: values.len(),
            values,
        })
    }

    pub fn from_orbits(orbits: Vec<Vec<T>>) -> Result<Self> {
        let n = orbits
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidNecklace("no orbits".into()))?;
        if n == 0 {
            return Err(Error::InvalidNecklace("a necklace needs n >= 1".into()));
        }
        if orbits.iter().any(|o| o.len() != n) {
            return Err(Error::InvalidNecklace(
                "all orbits must have the same length".into(),
            ));
        }
        Ok(Necklace {
            n,
            values: orbits.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orbit_count(&self) -> usize {
        self.values.len() / self.n
    }

    pub fn orbit(&self, i: usize) -> &[T] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn get(&self, pos: Position) -> &T {
        &self.values[pos.orbit * self.n + pos.index]
    }

    pub fn positions(&self) -> impl Iterator<Item = Position> + '_ {
        (0..self.orbit_count())
            .flat_map(move |orbit| (0..self.n).map(move |index| Position { orbit, index }))
    }

    /// A copy with the pearl at `pos` replaced.
    pub fn with_value(&self, pos: Position, value: T) -> Self {
        let mut values = self.values.clone();
        values[pos.orbit * self.n + pos.index] = value;
        Necklace { n: self.n, values }
    }

    /// Rotation by `k`: `result(i) = self(i - k mod n)` in every orbit.
    pub fn rotate(&self, k: i64) -> Self {
        let n = self.n;
        let shift = k.rem_euclid(n as i64) as usize;
        let mut values = Vec::with_capacity(self.values.len());
        for orbit in self.values.chunks(n) {
            values.extend((0..n).map(|i| orbit[(i + n - shift) % n].clone()));
        }
        Necklace { n, values }
    }

    /// The stabilizer `Aut(c)` of this necklace in `Z/n`.
    pub fn aut(&self) -> CyclicSubgroup {
        let n = self.n;
        let generator = (1..=n)
            .filter(|g| n.is_multiple_of(*g))
            .find(|&g| {
                self.values
                    .chunks(n)
                    .all(|o| (0..n).all(|i| o[i] == o[(i + g) % n]))
            })
            .unwrap_or(n);
        CyclicSubgroup { n, generator }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.values.len() != other.values.len() {
            return Err(Error::ShapeMismatch(format!(
                "n={} with {} orbits vs n={} with {} orbits",
                self.n,
                self.orbit_count(),
                other.n,
                other.orbit_count()
            )));
        }
        Ok(())
    }

    /// Positions where the two systems differ.
    pub fn diff_positions(&self, other: &Self) -> Result<Vec<Position>> {
        self.check_shape(other)?;
        Ok(self
            .positions()
            .filter(|&p| self.get(p) != other.get(p))
            .collect())
    }

    /// `self ⊥ other`: the systems differ at exactly one position.
    pub fn perp(&self, other: &Self) -> Result<bool> {
        self.check_shape(other)?;
        let mut diffs = self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b);
        Ok(diffs.next().is_some() && diffs.next().is_none())
    }

    /// All systems `α` with `α ⊥ self`, with pearls drawn from `alphabet`.
    pub fn perp_neighbors(&self, alphabet: &[T]) -> Vec<Self> {
        self.positions()
            .flat_map(|pos| {
                alphabet
                    .iter()
                    .filter(move |y| *y != self.get(pos))
                    .map(move |y| self.with_value(pos, y.clone()))
            })
            .collect()
    }

    /// The smallest rotation of `self` by a multiple of `step`, together
    /// with the least such shift reaching it.
    pub fn canonical_rotation(&self, step: usize) -> (Self, usize)
    where
        T: Ord,
    {
        let n = self.n;
        let step = gcd(step % n, n);
        let mut best = (self.clone(), 0usize);
        for k in (step..n).step_by(step) {
            let r = self.rotate(k as i64);
            if r < best.0 {
                best = (r, k);
            }
        }
        best
    }
}

impl<T: Clone + Ord> Necklace<T> {
    /// `α < c`: the systems are `⊥` and `α` is pointwise below `c`, i.e. `α`
    /// is `c` with one pearl faded.
    pub fn is_child(&self, parent: &Self) -> Result<bool> {
        let diffs = self.diff_positions(parent)?;
        Ok(diffs.len() == 1 && self.get(diffs[0]) < parent.get(diffs[0]))
    }

    /// All children of `self` over the ordered `alphabet`.
    pub fn children(&self, alphabet: &[T]) -> Vec<Self> {
        self.positions()
            .flat_map(|pos| {
                alphabet
                    .iter()
                    .filter(move |y| *y < self.get(pos))
                    .map(move |y| self.with_value(pos, y.clone()))
            })
            .collect()
    }

    /// Unordered pairs of distinct children related by a rotation outside
    /// `Aut(self)`, each pair listed smaller-first.
    pub fn twins(&self, alphabet: &[T]) -> Vec<(Self, Self)> {
        twin_pairs(self, &self.children(alphabet))
    }
}

impl Necklace<Partition> {
    /// `α ↗ c`: `α ⊥ c` and at the differing position the pearl of `c` is
    /// obtained from that of `α` by adding one box.
    pub fn step_relation(&self, parent: &Self) -> Result<bool> {
        let diffs = self.diff_positions(parent)?;
        Ok(diffs.len() == 1 && self.get(diffs[0]).covers(parent.get(diffs[0])))
    }

    /// All `α` with `α ↗ self`.
    pub fn step_children(&self) -> Vec<Self> {
        self.positions()
            .flat_map(|pos| {
                self.get(pos)
                    .predecessors()
                    .into_iter()
                    .map(move |q| self.with_value(pos, q))
            })
            .collect()
    }

    /// Twin pairs among the `↗`-children.
    pub fn step_twins(&self) -> Vec<(Self, Self)> {
        twin_pairs(self, &self.step_children())
    }

    /// Total number of boxes `Σ_x |c(x)|`.
    pub fn total_size(&self) -> usize {
        self.values.iter().map(Partition::size).sum()
    }
}

fn twin_pairs<T: Clone + Ord>(
    c: &Necklace<T>,
    children: &[Necklace<T>],
) -> Vec<(Necklace<T>, Necklace<T>)> {
    let aut = c.aut();
    let mut pairs = Vec::new();
    for (i, a) in children.iter().enumerate() {
        for b in &children[i + 1..] {
            let related = (1..c.n)
                .filter(|&k| !aut.contains(k))
                .any(|k| a.rotate(k as i64) == *b);
            if related {
                let pair = if a < b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                pairs.push(pair);
            }
        }
    }
    pairs.sort();
    pairs.dedup();
    pairs
}

impl<T: fmt::Display> fmt::Display for Necklace<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (o, orbit) in self.values.chunks(self.n).enumerate() {
            if o > 0 {
                write!(f, "|")?;
            }
            for (i, v) in orbit.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl Necklace<String> {
    /// Parses `"A,B,A|C,C,C"` with opaque comma-free tokens as pearls.
    pub fn parse_tokens(s: &str) -> Result<Self> {
        let orbits = s
            .split('|')
            .map(|o| o.split(',').map(|t| t.trim().to_string()).collect())
            .collect();
        Necklace::from_orbits(orbits)
    }
}

impl FromStr for Necklace<Partition> {
    type Err = Error;

    /// Parses `"[1],[],[2,1]|…"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut orbits = Vec::new();
        for orbit in s.split('|') {
            let mut parts = Vec::new();
            let mut rest = orbit.trim();
            while !rest.is_empty() {
                let end = rest.find(']').ok_or_else(|| {
                    Error::InvalidNecklace(format!("unbalanced brackets in {s:?}"))
                })?;
                parts.push(rest[..=end].parse::<Partition>()?);
                rest = rest[end + 1..].trim_start();
                if let Some(r) = rest.strip_prefix(',') {
                    rest = r.trim_start();
                    if rest.is_empty() {
                        return Err(Error::InvalidNecklace(format!("trailing comma in {s:?}")));
                    }
                }
            }
            orbits.push(parts);
        }
        Necklace::from_orbits(orbits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn letters(s: &str) -> Necklace<char> {
        let orbits = s.split('|').map(|o| o.chars().collect()).collect();
        Necklace::from_orbits(orbits).unwrap()
    }

    fn mp(s: &str) -> Necklace<Partition> {
        s.parse().unwrap()
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(letters("ABC").rotate(0), letters("ABC"));
        assert_eq!(letters("ABC").rotate(1), letters("CAB"));
        assert_eq!(letters("ABAB").rotate(2), letters("ABAB"));
        assert_eq!(letters("ABC|XYZ").rotate(-1), letters("BCA|YZX"));
    }

    #[test]
    fn stabilizer_examples() {
        let a = letters("ABAB").aut();
        assert_eq!(a.generator(), 2);
        assert_eq!(a.elements().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(letters("AAA").aut(), CyclicSubgroup::whole(3));
        assert!(letters("ABB").aut().is_trivial());
        assert_eq!(letters("ABAB|CCCC").aut().generator(), 2);
        assert!(letters("ABAB|CCDC").aut().is_trivial());
    }

    #[test]
    fn perp_examples() {
        assert!(letters("ABA").perp(&letters("ACA")).unwrap());
        assert!(!letters("ABA").perp(&letters("ABA")).unwrap());
        assert!(!letters("ABA").perp(&letters("CCA")).unwrap());
        assert!(letters("ABA").perp(&letters("ABAB")).is_err());
        assert!(letters("AB|AB").perp(&letters("ABAB")).is_err());
    }

    // '♠' < '♣' as chars, matching the fading order ♠ < ♣.
    #[test]
    fn child_examples() {
        assert!('♠' < '♣');
        assert!(letters("♠♣").is_child(&letters("♣♣")).unwrap());
        assert!(!letters("♣♣").is_child(&letters("♣♣")).unwrap());
        assert!(!letters("♣♠").is_child(&letters("♠♣")).unwrap());
    }

    #[test]
    fn step_relation_examples() {
        assert!(mp("[],[1]").step_relation(&mp("[1],[1]")).unwrap());
        assert!(!mp("[1],[1]").step_relation(&mp("[1],[1]")).unwrap());
        assert!(!mp("[],[]").step_relation(&mp("[1],[1]")).unwrap());
        assert!(!mp("[1],[1]").step_relation(&mp("[1],[3]")).unwrap());
    }

    #[test]
    fn children_examples() {
        let mut kids = mp("[1],[1]").step_children();
        kids.sort();
        assert_eq!(kids, vec![mp("[],[1]"), mp("[1],[]")]);

        assert!(letters("♠♠").children(&['♠', '♣']).is_empty());

        let mut kids = mp("[2,1]").step_children();
        kids.sort();
        assert_eq!(kids, vec![mp("[1,1]"), mp("[2]")]);
    }

    #[test]
    fn twins_examples() {
        let alphabet = ['♠', '♣'];
        assert_eq!(
            letters("♣♣♠").twins(&alphabet),
            vec![(letters("♠♣♠"), letters("♣♠♠"))]
        );
        assert!(letters("♣♣♣♣").twins(&alphabet).is_empty());
        assert_eq!(
            mp("[1],[1],[]").step_twins(),
            vec![(mp("[],[1],[]"), mp("[1],[],[]"))]
        );
    }

    #[test]
    fn intervals() {
        assert_eq!(interval(6, 1, 4, 1), Some(vec![1, 2, 3, 4]));
        assert_eq!(interval(6, 4, 1, 1), Some(vec![4, 5, 0, 1]));
        assert_eq!(interval(6, 0, 4, 2), Some(vec![0, 2, 4]));
        assert_eq!(interval(6, 0, 3, 2), None);
        assert_eq!(interval(5, 0, 0, 2), Some(vec![0]));
    }

    #[test]
    fn text_forms() {
        let s = Necklace::parse_tokens("A,B,A|C,C,C").unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.orbit_count(), 2);
        assert_eq!(s.to_string(), "A,B,A|C,C,C");
        assert_eq!(mp("[1],[1],[]").to_string(), "[1],[1],[]");
        assert_eq!(mp("[2,1], [] | [1],[3]").to_string(), "[2,1],[]|[1],[3]");
        assert!("[1],[".parse::<Necklace<Partition>>().is_err());
        assert!(Necklace::parse_tokens("A,B|C").is_err());
    }

    #[test]
    fn canonical_rotation_is_minimal() {
        let c = letters("BAC");
        let (canon, shift) = c.canonical_rotation(1);
        assert_eq!(canon, letters("ACB"));
        assert_eq!(c.rotate(shift as i64), canon);
        // Only even shifts allowed.
        let (canon, _) = letters("BCAD").canonical_rotation(2);
        assert_eq!(canon, letters("ADBC"));
    }

    fn system() -> impl Strategy<Value = Necklace<u8>> {
        (1usize..=6, 1usize..=2).prop_flat_map(|(n, o)| {
            proptest::collection::vec(0u8..3, n * o).prop_map(move |v| {
                Necklace::from_orbits(v.chunks(n).map(<[u8]>::to_vec).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn aut_constant_along_orbit(c in system(), k in -10i64..10) {
            prop_assert_eq!(c.rotate(k).aut(), c.aut());
        }

        #[test]
        fn aut_matches_definition(c in system()) {
            let aut = c.aut();
            for k in 0..c.n() {
                prop_assert_eq!(aut.contains(k), c.rotate(k as i64) == c);
            }
        }

        #[test]
        fn perp_symmetric_and_children_perp(c in system()) {
            let alphabet = [0u8, 1, 2];
            for a in c.perp_neighbors(&alphabet) {
                prop_assert!(a.perp(&c).unwrap());
                prop_assert!(c.perp(&a).unwrap());
            }
            for a in c.children(&alphabet) {
                prop_assert!(a.is_child(&c).unwrap());
                prop_assert!(a.perp(&c).unwrap());
            }
        }

        #[test]
        fn rotations_compose(c in system(), a in -8i64..8, b in -8i64..8) {
            prop_assert_eq!(c.rotate(a).rotate(b), c.rotate(a + b));
        }
    }

    #[test]
    fn step_relation_implies_child() {
        let shapes: Vec<Partition> = (0..=3).flat_map(Partition::all).collect();
        for x in &shapes {
            for y in &shapes {
                let c = Necklace::new(vec![x.clone(), y.clone()]).unwrap();
                for a in c.step_children() {
                    assert!(a.step_relation(&c).unwrap());
                    assert!(a.is_child(&c).unwrap());
                }
                let expected: usize = [x, y].iter().map(|p| p.removable_rows().len()).sum();
                assert_eq!(c.step_children().len(), expected);
            }
        }
    }
}
