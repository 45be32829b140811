//! Character tables over `F_p` by simultaneous diagonalisation of the class
//! multiplication matrices.

use rayon::prelude::*;

use super::modp::{choose_prime, Field, Matrix};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, exponent, IndexedGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTableModP {
    pub p: u64,
    pub order: u64,
    /// Conjugacy classes as sorted element lists; the identity class is
    /// first.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Class of the inverses of each class.
    pub inverse_class: Vec<usize>,
    /// `table[i][c]` is `χ_i` on class `c`, reduced mod `p`.
    pub table: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

impl CharacterTableModP {
    pub fn field(&self) -> Field {
        Field::new(self.p)
    }

    pub fn class_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.len() as u64).collect()
    }

    /// `Σ_c |c| χ_i(c) χ_j(c⁻¹) ≡ δ_ij |G|`.
    pub fn rows_orthogonal(&self) -> bool {
        let f = self.field();
        let sizes = self.class_sizes();
        let k = self.classes.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let s = (0..k).fold(0, |acc, c| {
                    let term = f.mul(
                        sizes[c] % f.p,
                        f.mul(self.table[i][c], self.table[j][self.inverse_class[c]]),
                    );
                    f.add(acc, term)
                });
                s == if i == j { self.order % f.p } else { 0 }
            })
        })
    }

    /// `Σ_χ χ(a) χ(b⁻¹) ≡ δ_ab |G| / |a|`.
    pub fn columns_orthogonal(&self) -> bool {
        let f = self.field();
        let k = self.classes.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                let s = self.table.iter().fold(0, |acc, row| {
                    f.add(acc, f.mul(row[a], row[self.inverse_class[b]]))
                });
                let want = if a == b {
                    self.order / self.classes[a].len() as u64 % f.p
                } else {
                    0
                };
                s == want
            })
        })
    }
}

/// `(M_i)[j][l] = #{x ∈ C_i : x⁻¹ z_l ∈ C_j}` with `z_l` the first element
/// of class `l`.
fn class_matrix<G: IndexedGroup + ?Sized>(
    g: &G,
    classes: &[Vec<usize>],
    class_of: &[usize],
    i: usize,
) -> Matrix {
    let k = classes.len();
    let mut m = vec![vec![0u64; k]; k];
    for &x in &classes[i] {
        let xi = g.inv(x);
        for (l, class) in classes.iter().enumerate() {
            m[class_of[g.mul(xi, class[0])]][l] += 1;
        }
    }
    m
}

/// Rows `P` of the `k×t` basis `b` (given as `t` vectors) such that `b_P`
/// is invertible.
fn pivot_rows(f: &Field, basis: &[Vec<u64>]) -> Vec<usize> {
    let mut m: Matrix = basis.to_vec();
    f.rref(&mut m)
}

/// Splits the span of `basis` into eigenspaces of `m`, which must leave it
/// invariant.
fn split(f: &Field, m: &Matrix, basis: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let t = basis.len();
    let rows = pivot_rows(f, basis);
    if rows.len() != t {
        return Err(Error::Oracle("basis vectors are dependent".into()));
    }
    let k = m.len();
    // Columns of the k×t matrix M·B.
    let mb: Vec<Vec<u64>> = basis
        .iter()
        .map(|v| {
            (0..k)
                .map(|r| {
                    m[r].iter()
                        .zip(v)
                        .fold(0, |acc, (&a, &b)| (acc + a * b) % f.p)
                })
                .collect()
        })
        .collect();
    let bp: Matrix = rows
        .iter()
        .map(|&r| basis.iter().map(|v| v[r]).collect())
        .collect();
    let mbp: Matrix = rows
        .iter()
        .map(|&r| mb.iter().map(|v| v[r]).collect())
        .collect();
    let a = f.mat_mul(
        &f.inverse(&bp)
            .ok_or_else(|| Error::Oracle("singular pivot block".into()))?,
        &mbp,
    );
    let roots = f.roots(&f.charpoly(&a));
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Matrix = a
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &x)| if i == j { f.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let coords = f.nullspace(&shifted);
        total += coords.len();
        let space = coords
            .iter()
            .map(|c| {
                (0..k)
                    .map(|r| {
                        basis
                            .iter()
                            .zip(c)
                            .fold(0, |acc, (v, &x)| (acc + v[r] * x) % f.p)
                    })
                    .collect()
            })
            .collect();
        out.push(space);
    }
    if total != t {
        return Err(Error::Oracle(format!(
            "class matrix is not diagonalisable over F_{} on a space of dimension {t}",
            f.p
        )));
    }
    Ok(out)
}

/// The character table of `g`. When `prime` is given it must satisfy the
/// congruence and size conditions for `g`.
pub fn character_table_of<G: IndexedGroup + ?Sized>(
    g: &G,
    prime: Option<u64>,
) -> Result<CharacterTableModP> {
    let order = g.order() as u64;
    let classes = conjugacy_classes(g);
    if !classes[0].contains(&g.identity()) {
        return Err(Error::Oracle("identity class is not first".into()));
    }
    let k = classes.len();
    let mut class_of = vec![0; g.order()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let inverse_class: Vec<usize> = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
    let exp = exponent(g) as u64;
    let p = match prime {
        Some(p) => {
            if (p - 1) % exp != 0 || p <= 2 * order {
                return Err(Error::Oracle(format!(
                    "prime {p} unsuitable for exponent {exp}"
                )));
            }
            p
        }
        None => choose_prime(order, exp),
    };
    let f = Field::new(p);

    let mut order_of_refinement: Vec<usize> = (1..k).collect();
    order_of_refinement.sort_by_key(|&c| (classes[c].len(), c));

    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces = vec![identity];
    for &c in &order_of_refinement {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = class_matrix(g, &classes, &class_of, c);
        let next: Vec<Vec<Vec<Vec<u64>>>> = spaces
            .par_iter()
            .map(|s| {
                if s.len() == 1 {
                    Ok(vec![s.clone()])
                } else {
                    split(&f, &m, s)
                }
            })
            .collect::<Result<_>>()?;
        spaces = next.into_iter().flatten().collect();
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Oracle(format!(
            "eigenspaces did not split into {k} lines"
        )));
    }

    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::with_capacity(k);
    for s in spaces {
        let mut w = s.into_iter().next().expect("one vector");
        if w[0] == 0 {
            return Err(Error::Oracle(
                "central character vanishes at the identity".into(),
            ));
        }
        let scale = f.inv(w[0]);
        for x in w.iter_mut() {
            *x = f.mul(*x, scale);
        }
        // χ(1)² = |G| / Σ_j ω_j ω_{j*} / |C_j|.
        let norm = (0..k).fold(0, |acc, j| {
            f.add(
                acc,
                f.mul(f.mul(w[j], w[inverse_class[j]]), f.inv(sizes[j] % p)),
            )
        });
        if norm == 0 {
            return Err(Error::Oracle("zero norm".into()));
        }
        let square = f.mul(order % p, f.inv(norm));
        let degree = (1..=order)
            .take_while(|x| x * x <= order)
            .find(|x| x * x == square)
            .ok_or_else(|| Error::Oracle(format!("{square} is not the square of a degree")))?;
        let chi: Vec<u64> = (0..k)
            .map(|j| f.mul(f.mul(degree, w[j]), f.inv(sizes[j] % p)))
            .collect();
        rows.push((degree, chi));
    }
    rows.sort();
    let (degrees, table) = rows.into_iter().unzip();
    let t = CharacterTableModP {
        p,
        order,
        classes,
        class_of,
        inverse_class,
        table,
        degrees,
    };
    let deg_sq: u64 = t.degrees.iter().map(|d| d * d).sum();
    if deg_sq != order || !t.rows_orthogonal() {
        return Err(Error::Oracle("table fails orthogonality".into()));
    }
    Ok(t)
}
