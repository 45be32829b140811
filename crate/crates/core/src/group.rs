//! Finite groups given by indexed elements, and the generic computations the
//! oracle needs: conjugacy classes, element orders and the exponent.

use num_integer::lcm;

/// A finite group whose elements are the indices `0..order()`.
pub trait IndexedGroup: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set; conjugacy classes are closed under these only.
    fn generators(&self) -> Vec<usize>;
}

/// Conjugacy classes, each sorted, ordered by smallest element.
pub fn conjugacy_classes<G: IndexedGroup + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let gens: Vec<(usize, usize)> = g.generators().into_iter().map(|s| (s, g.inv(s))).collect();
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[x] = id;
        let mut members = vec![x];
        let mut next = 0;
        while next < members.len() {
            let y = members[next];
            next += 1;
            for &(s, si) in &gens {
                let z = g.mul(g.mul(s, y), si);
                if class_of[z] == usize::MAX {
                    class_of[z] = id;
                    members.push(z);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

pub fn element_order<G: IndexedGroup + ?Sized>(g: &G, a: usize) -> usize {
    let e = g.identity();
    let mut x = a;
    let mut k = 1;
    while x != e {
        x = g.mul(x, a);
        k += 1;
    }
    k
}

/// Least common multiple of the element orders.
pub fn exponent<G: IndexedGroup + ?Sized>(g: &G) -> usize {
    (0..g.order()).fold(1, |acc, a| lcm(acc, element_order(g, a)))
}
