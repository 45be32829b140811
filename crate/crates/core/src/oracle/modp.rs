//! Dense linear algebra over a prime field `F_p` with `p < 2^32`.

pub type Matrix = Vec<Vec<u64>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p) && p < (1 << 32));
        Field { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut k: u64) -> u64 {
        let mut acc = 1 % self.p;
        a %= self.p;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "zero has no inverse");
        self.pow(a, self.p - 2)
    }

    pub fn from_int(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    /// The representative of `a` in `(-p/2, p/2]`.
    pub fn lift_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        row.iter()
                            .zip(b)
                            .fold(0, |acc, (&x, brow)| (acc + x * brow[j]) % self.p)
                    })
                    .collect()
            })
            .collect()
    }

    /// Row-reduces in place and returns the pivot columns.
    pub fn rref(&self, m: &mut Matrix) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(i) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, i);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let v = self.mul(f, m[r][j]);
                        m[i][j] = self.sub(m[i][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// A basis of `{x : m x = 0}`.
    pub fn nullspace(&self, m: &Matrix) -> Vec<Vec<u64>> {
        let cols = m.first().map_or(0, Vec::len);
        let mut a = m.clone();
        let pivots = self.rref(&mut a);
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.sub(0, a[row][f]);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, m: &Matrix) -> Option<Matrix> {
        let n = m.len();
        let mut aug: Matrix = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        let pivots = self.rref(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// Characteristic polynomial `det(xI - m)`, coefficients from degree 0
    /// up to the leading 1, via reduction to Hessenberg form.
    pub fn charpoly(&self, m: &Matrix) -> Vec<u64> {
        let n = m.len();
        let mut h = m.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
                continue;
            };
            if i != j + 1 {
                h.swap(i, j + 1);
                for row in h.iter_mut() {
                    row.swap(i, j + 1);
                }
            }
            let inv = self.inv(h[j + 1][j]);
            for k in j + 2..n {
                let u = self.mul(h[k][j], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = self.mul(u, h[j + 1][c]);
                    h[k][c] = self.sub(h[k][c], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(u, row[k]);
                    row[j + 1] = self.add(row[j + 1], v);
                }
            }
        }
        // polys[k] is the characteristic polynomial of the leading k×k block.
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            let prev = &polys[k];
            let mut next = vec![0u64; k + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[k][k], c));
            }
            let mut sub = 1u64;
            for i in (0..k).rev() {
                sub = self.mul(sub, h[i + 1][i]);
                let coeff = self.mul(h[i][k], sub);
                if coeff == 0 {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coeff, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("nonempty")
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All roots in `F_p`, by exhaustive evaluation.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.p).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// The smallest prime `p > 2·order` with `p ≡ 1 (mod exponent)`.
pub fn choose_prime(order: u64, exponent: u64) -> u64 {
    let k = (2 * order).div_ceil(exponent).max(1);
    let mut p = k * exponent + 1;
    while !is_prime(p) {
        p += exponent;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F: Field = Field { p: 101 };

    /// Determinant by cofactor expansion, for the char-poly oracle.
    fn det(f: &Field, m: &Matrix) -> u64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Matrix = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let term = f.mul(m[0][j], det(f, &minor));
            total = if j % 2 == 0 {
                f.add(total, term)
            } else {
                f.sub(total, term)
            };
        }
        total
    }

    fn square(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(proptest::collection::vec(0u64..101, n), n)
    }

    proptest! {
        #[test]
        fn charpoly_matches_determinant(m in (1usize..=5).prop_flat_map(square), x in 0u64..101) {
            let poly = F.charpoly(&m);
            prop_assert_eq!(poly.len(), m.len() + 1);
            let shifted: Matrix = m.iter().enumerate().map(|(i, r)| {
                r.iter().enumerate().map(|(j, &v)| {
                    let diag = if i == j { x } else { 0 };
                    F.sub(diag, v)
                }).collect()
            }).collect();
            prop_assert_eq!(F.eval(&poly, x), det(&F, &shifted));
        }

        #[test]
        fn nullspace_is_killed(m in (1usize..=5).prop_flat_map(square)) {
            let mut a = m.clone();
            let rank = F.rref(&mut a).len();
            let ns = F.nullspace(&m);
            prop_assert_eq!(ns.len() + rank, m.len());
            for v in ns {
                let col: Matrix = v.iter().map(|&x| vec![x]).collect();
                prop_assert!(F.mat_mul(&m, &col).iter().all(|r| r[0] == 0));
            }
        }

        #[test]
        fn inverse_inverts(m in (1usize..=4).prop_flat_map(square)) {
            if let Some(inv) = F.inverse(&m) {
                let prod = F.mat_mul(&m, &inv);
                for (i, row) in prod.iter().enumerate() {
                    for (j, &x) in row.iter().enumerate() {
                        prop_assert_eq!(x, u64::from(i == j));
                    }
                }
            } else {
                prop_assert_eq!(det(&F, &m), 0);
            }
        }
    }

    #[test]
    fn primes() {
        assert_eq!(choose_prime(6, 6), 13);
        assert_eq!(choose_prime(54, 6), 109);
        assert!(is_prime(109));
        assert!(!is_prime(1));
    }

    #[test]
    fn roots_of_product() {
        // (x - 3)(x - 5) = x^2 - 8x + 15
        let poly = vec![15, F.from_int(-8), 1];
        assert_eq!(F.roots(&poly), vec![3, 5]);
        assert_eq!(F.lift_signed(100), -1);
    }
}
