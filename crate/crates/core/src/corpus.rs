//! Bundled finite groups: cyclic `Z/1..Z/8`, Klein four, `S₃`, `D₄` and `Q₈`.
//!
//! The non-cyclic tables are literal Cayley tables with identity `0`.
//! `S₃` lists the permutations of `{0,1,2}` in lexicographic order, `D₄` the
//! symmetries of a square generated by the rotation `(0 1 2 3)` and the
//! reflection `(1 3)`, and `Q₈` the units `1, −1, i, −i, j, −j, k, −k`.

use alloc::vec::Vec;

use crate::group::FiniteGroup;

const KLEIN_FOUR: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

const SYMMETRIC3: [[usize; 6]; 6] = [
    [0, 1, 2, 3, 4, 5],
    [1, 0, 3, 2, 5, 4],
    [2, 4, 0, 5, 1, 3],
    [3, 5, 1, 4, 0, 2],
    [4, 2, 5, 0, 3, 1],
    [5, 3, 4, 1, 2, 0],
];

const DIHEDRAL4: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 3, 4, 6, 7, 2, 0, 5],
    [2, 5, 0, 7, 6, 1, 4, 3],
    [3, 6, 7, 0, 5, 4, 1, 2],
    [4, 2, 1, 5, 0, 3, 7, 6],
    [5, 7, 6, 4, 3, 0, 2, 1],
    [6, 0, 5, 1, 2, 7, 3, 4],
    [7, 4, 3, 2, 1, 6, 5, 0],
];

const QUATERNION8: [[usize; 8]; 8] = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
];

fn from_rows<const N: usize>(rows: &[[usize; N]; N]) -> FiniteGroup {
    let mul = rows.iter().flatten().copied().collect();
    FiniteGroup::new(N, mul, 0).expect("bundled table is a group")
}

/// `Z/n` with addition mod `n`. Panics for `n = 0`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "Z/0 is not a finite group");
    let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::new(n, mul, 0).expect("cyclic table is a group")
}

pub fn klein_four() -> FiniteGroup {
    from_rows(&KLEIN_FOUR)
}

pub fn symmetric3() -> FiniteGroup {
    from_rows(&SYMMETRIC3)
}

pub fn dihedral4() -> FiniteGroup {
    from_rows(&DIHEDRAL4)
}

pub fn quaternion8() -> FiniteGroup {
    from_rows(&QUATERNION8)
}

/// Every bundled group with a short name, ordered by order then name.
pub fn bundled() -> Vec<(&'static str, FiniteGroup)> {
    const CYCLIC: [&str; 8] = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8"];
    let mut out: Vec<(&'static str, FiniteGroup)> =
        CYCLIC.iter().enumerate().map(|(i, &name)| (name, cyclic(i + 1))).collect();
    out.push(("K4", klein_four()));
    out.push(("S3", symmetric3()));
    out.push(("D4", dihedral4()));
    out.push(("Q8", quaternion8()));
    out.sort_by_key(|(name, g)| (g.order(), *name));
    out
}

pub fn by_name(name: &str) -> Option<FiniteGroup> {
    bundled().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn element_orders(g: &FiniteGroup) -> Vec<usize> {
        let mut orders: Vec<usize> = (0..g.order())
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != g.identity() {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        orders.sort_unstable();
        orders
    }

    #[test]
    fn bundled_groups_validate() {
        let all = bundled();
        assert_eq!(all.len(), 12);
        assert!(all.iter().all(|(_, g)| g.order() <= 8));
    }

    #[test]
    fn non_abelian_ones_are_non_abelian() {
        assert!(!symmetric3().is_abelian());
        assert!(!dihedral4().is_abelian());
        assert!(!quaternion8().is_abelian());
        assert!(klein_four().is_abelian());
    }

    #[test]
    fn order_eight_groups_are_distinguished_by_element_orders() {
        // D4 has five involutions, Q8 exactly one, Z8 an element of order 8.
        assert_eq!(element_orders(&dihedral4()), [1, 2, 2, 2, 2, 2, 4, 4]);
        assert_eq!(element_orders(&quaternion8()), [1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(element_orders(&klein_four()), [1, 2, 2, 2]);
        assert_eq!(element_orders(&symmetric3()), [1, 2, 2, 2, 3, 3]);
    }
}
