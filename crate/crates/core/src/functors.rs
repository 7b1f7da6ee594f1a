//! Heapification `G ↦ (G, g₁g₂⁻¹g₃, e)` and groupification
//! `(H, e) ↦ (H, [x, e, y], [e, x, e])`, plus an enumerative check that
//! heapification is fully faithful on pointed heaps.

use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::group::{group_axiom_witness, is_group_hom, FiniteGroup};
use crate::perm::{map_count, AllMaps};
use crate::semiheap::{homomorphism_witness, FiniteSemiheap, PointedSemiheap};
use crate::table::TernaryTable;

/// The heap `[x, y, z] = x y⁻¹ z` pointed at the identity.
pub fn heapify(g: &FiniteGroup) -> PointedSemiheap {
    let table = TernaryTable::from_fn(g.order(), |x, y, z| g.mul(g.mul(x, g.inv(y)), z))
        .expect("group products stay in range");
    PointedSemiheap::new(FiniteSemiheap::trusted(table), g.identity())
        .expect("groups are non-empty")
}

/// The group `x · y = [x, e, y]`, `x⁻¹ = [e, x, e]` with identity the
/// basepoint `e`.
///
/// With `require_heap` the input must be a heap, which guarantees a group.
/// Without it the construction runs on any pointed semiheap and the first
/// failing group axiom comes back as a violation; an invalid group is never
/// returned.
pub fn groupify(h: &PointedSemiheap, require_heap: bool) -> Result<FiniteGroup> {
    let s = h.semiheap();
    if require_heap {
        if let Some(v) = s.heap_witness() {
            return Err(v.into());
        }
    }
    let (n, e) = (s.order(), h.basepoint());
    let mul: Vec<usize> = (0..n * n).map(|i| s.get(i / n, e, i % n)).collect();
    let inv: Vec<usize> = (0..n).map(|x| s.get(e, x, e)).collect();
    if let Some(axiom) = group_axiom_witness(n, &mul, e, &inv) {
        return Err(Violation::Group(axiom).into());
    }
    FiniteGroup::from_parts(n, mul, e, inv)
}

/// Outcome of [`check_fully_faithful`]: every map `G → G′`, sorted into the
/// three classes of interest, each list in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullFaithfulness {
    pub maps_examined: u64,
    pub group_homs: Vec<Vec<usize>>,
    /// Semiheap homs between the heapifications that send `e` to `e′`.
    pub pointed_heap_homs: Vec<Vec<usize>>,
    /// All semiheap homs between the heapifications, pointed or not.
    pub semiheap_homs: Vec<Vec<usize>>,
}

impl FullFaithfulness {
    /// Pointed heap homs and group homs are the same set of maps.
    pub fn coincide(&self) -> bool {
        self.group_homs == self.pointed_heap_homs
    }

    /// Semiheap homs that forget the basepoint.
    pub fn unpointed_homs(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.semiheap_homs.iter().filter(move |m| !self.pointed_heap_homs.contains(m))
    }
}

/// Enumerate all `|G′|^|G|` maps and classify them. Refuses outright when the
/// map count exceeds `max_maps`.
pub fn check_fully_faithful(g: &FiniteGroup, h: &FiniteGroup, max_maps: u64) -> Result<FullFaithfulness> {
    let total = map_count(g.order(), h.order()).unwrap_or(u64::MAX);
    if total > max_maps {
        return Err(Error::BudgetExceeded { explored: 0 });
    }
    let (sg, sh) = (heapify(g), heapify(h));
    let mut report = FullFaithfulness {
        maps_examined: 0,
        group_homs: Vec::new(),
        pointed_heap_homs: Vec::new(),
        semiheap_homs: Vec::new(),
    };
    for map in AllMaps::new(g.order(), h.order()) {
        report.maps_examined += 1;
        if is_group_hom(&map, g, h)? {
            report.group_homs.push(map.clone());
        }
        if homomorphism_witness(&map, sg.semiheap(), sh.semiheap())?.is_none() {
            if map[sg.basepoint()] == sh.basepoint() {
                report.pointed_heap_homs.push(map.clone());
            }
            report.semiheap_homs.push(map);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semiheap::verify_para_associative;

    #[test]
    fn heapify_z2_is_sum_mod_two() {
        let h = heapify(&corpus::cyclic(2));
        let expected = TernaryTable::from_fn(2, |x, y, z| (x + y + z) % 2).unwrap();
        assert_eq!(h.semiheap().table(), &expected);
        assert_eq!(h.basepoint(), 0);
    }

    #[test]
    fn heapify_z4_spot_value() {
        let h = heapify(&corpus::cyclic(4));
        assert_eq!(h.semiheap().get(1, 2, 3), 2);
    }

    #[test]
    fn heapify_s3_is_a_non_abelian_heap() {
        let h = heapify(&corpus::symmetric3());
        assert!(h.semiheap().is_heap());
        assert!(!h.semiheap().is_abelian());
        assert!(verify_para_associative(h.semiheap().table().clone()).is_ok());
    }

    #[test]
    fn groupify_inverts_heapify_on_cyclic_groups() {
        for n in 1..=8 {
            let g = corpus::cyclic(n);
            assert_eq!(groupify(&heapify(&g), true).unwrap(), g);
        }
    }

    #[test]
    fn groupify_at_another_basepoint() {
        let h = heapify(&corpus::cyclic(3)).into_parts().0.with_basepoint(1).unwrap();
        let g = groupify(&h, true).unwrap();
        assert_eq!(g.identity(), 1);
        // x·y = x − 1 + y, isomorphic to Z/3 via x ↦ x − 1.
        let shift = [2, 0, 1];
        assert!(is_group_hom(&shift, &g, &corpus::cyclic(3)).unwrap());
    }

    #[test]
    fn groupify_diagnoses_non_heaps() {
        let c = FiniteSemiheap::constant(2, 0).unwrap().with_basepoint(0).unwrap();
        assert!(groupify(&c, true).unwrap_err().is_violation());
        let err = groupify(&c, false).unwrap_err();
        assert!(matches!(err, Error::Violation(Violation::Group(_))));
    }

    #[test]
    fn fully_faithful_small_cases() {
        let z2 = corpus::cyclic(2);
        let r = check_fully_faithful(&z2, &z2, 1 << 10).unwrap();
        assert_eq!(r.maps_examined, 4);
        assert_eq!(r.group_homs.len(), 2);
        assert!(r.coincide());
        assert!(r.unpointed_homs().any(|m| m == &alloc::vec![1, 1]));
        assert!(matches!(
            check_fully_faithful(&corpus::cyclic(8), &corpus::cyclic(8), 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
