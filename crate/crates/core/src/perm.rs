//! Small combinatorial helpers: permutations and all maps between finite sets.

use alloc::vec::Vec;

/// Advance `perm` to the next permutation in lexicographic order, returning
/// false once the last one has been passed (the slice is then reset to the
/// identity order).
pub fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = alloc::vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

pub fn inverse_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = alloc::vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

pub fn is_permutation(map: &[usize]) -> bool {
    let mut seen = alloc::vec![false; map.len()];
    for &v in map {
        if v >= map.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Iterates every map `0..domain → 0..codomain` as a value array, in
/// lexicographic order with the first position most significant.
#[derive(Debug, Clone)]
pub struct AllMaps {
    codomain: usize,
    current: Option<Vec<usize>>,
}

impl AllMaps {
    pub fn new(domain: usize, codomain: usize) -> Self {
        let current = if domain > 0 && codomain == 0 { None } else { Some(alloc::vec![0; domain]) };
        AllMaps { codomain, current }
    }
}

impl Iterator for AllMaps {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut pos = next.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            next[pos] += 1;
            if next[pos] < self.codomain {
                self.current = Some(next);
                break;
            }
            next[pos] = 0;
        }
        Some(out)
    }
}

/// `codomain^domain`, or `None` on overflow.
pub fn map_count(domain: usize, codomain: usize) -> Option<u64> {
    (codomain as u64).checked_pow(u32::try_from(domain).ok()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(3)[1], alloc::vec![0, 2, 1]);
    }

    #[test]
    fn all_maps_enumerates_every_map_once() {
        let maps: Vec<_> = AllMaps::new(2, 3).collect();
        assert_eq!(maps.len(), 9);
        assert_eq!(maps[0], alloc::vec![0, 0]);
        assert_eq!(maps[8], alloc::vec![2, 2]);
        assert_eq!(AllMaps::new(0, 5).count(), 1);
        assert_eq!(AllMaps::new(3, 0).count(), 0);
        assert_eq!(map_count(4, 2), Some(16));
    }

    #[test]
    fn inverse_roundtrip() {
        let p = alloc::vec![2, 0, 3, 1];
        let q = inverse_permutation(&p);
        for i in 0..4 {
            assert_eq!(q[p[i]], i);
        }
        assert!(is_permutation(&p));
        assert!(!is_permutation(&[0, 0]));
    }
}
