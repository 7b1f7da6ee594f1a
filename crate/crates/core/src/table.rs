use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A complete ternary operation on the carrier `0..n`, stored row-major in
/// `(i, j, k)` with `i` outermost.
///
/// Construction validates shape and range, so every value of this type is a
/// well-formed table. It carries no law certificate; see
/// [`crate::semiheap::verify_para_associative`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TernaryTable {
    n: usize,
    entries: Vec<usize>,
}

impl TernaryTable {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        let expected = n * n * n;
        if entries.len() != expected {
            return Err(Error::Length { expected, found: entries.len() });
        }
        if let Some((position, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::EntryOutOfRange { position, value, bound: n });
        }
        Ok(TernaryTable { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(f(i, j, k));
                }
            }
        }
        Self::new(n, entries)
    }

    /// `[x, y, z] = c` for all arguments.
    pub fn constant(n: usize, c: usize) -> Result<Self> {
        Self::from_fn(n, |_, _, _| c)
    }

    /// Carrier size.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.n + y) * self.n + z
    }

    /// `[x, y, z]`. Arguments must be in range; this is the hot path of every
    /// exhaustive check and does no validation of its own.
    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.entries[self.index(x, y, z)]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }

    pub fn set(&mut self, x: usize, y: usize, z: usize, value: usize) -> Result<()> {
        for index in [x, y, z, value] {
            self.check_index(index)?;
        }
        let at = self.index(x, y, z);
        self.entries[at] = value;
        Ok(())
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, bound: self.n })
        }
    }

    /// The table conjugated by the swap `(x, y, z) ↦ (z, y, x)`.
    pub fn swap_outer(&self) -> TernaryTable {
        let n = self.n;
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push(self.get(k, j, i));
                }
            }
        }
        TernaryTable { n, entries }
    }

    /// Transport along the relabeling `old ↦ perm[old]`:
    /// `new[perm i, perm j, perm k] = perm[old[i, j, k]]`.
    ///
    /// `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> TernaryTable {
        let n = self.n;
        debug_assert_eq!(perm.len(), n);
        let mut entries = alloc::vec![0; self.entries.len()];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let at = (perm[i] * n + perm[j]) * n + perm[k];
                    entries[at] = perm[self.get(i, j, k)];
                }
            }
        }
        TernaryTable { n, entries }
    }

    /// True iff the table is invariant under [`TernaryTable::swap_outer`].
    pub fn is_swap_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(k, j, i))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_wrong_length_and_range() {
        assert_eq!(
            TernaryTable::new(2, vec![0; 7]),
            Err(Error::Length { expected: 8, found: 7 })
        );
        let mut entries = vec![0; 8];
        entries[5] = 2;
        assert_eq!(
            TernaryTable::new(2, entries),
            Err(Error::EntryOutOfRange { position: 5, value: 2, bound: 2 })
        );
    }

    #[test]
    fn empty_table_is_legal() {
        let t = TernaryTable::new(0, vec![]).unwrap();
        assert_eq!(t.order(), 0);
        assert!(t.is_swap_symmetric());
    }

    #[test]
    fn swap_outer_is_involutive() {
        let t = TernaryTable::from_fn(3, |x, y, z| (2 * x + y) % 3 * z % 3).unwrap();
        assert_eq!(t.swap_outer().swap_outer(), t);
        assert_eq!(t.swap_outer().get(0, 1, 2), t.get(2, 1, 0));
    }

    #[test]
    fn relabel_moves_entries() {
        let t = TernaryTable::from_fn(2, |x, _, _| x).unwrap();
        let r = t.relabel(&[1, 0]);
        // [x,y,z] = x is invariant under any relabeling.
        assert_eq!(r, t);
        let c = TernaryTable::constant(2, 0).unwrap().relabel(&[1, 0]);
        assert_eq!(c, TernaryTable::constant(2, 1).unwrap());
    }
}
