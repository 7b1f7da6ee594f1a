//! Right semiheap actions `M × S × S → M`, `(p, x, y) ↦ p ◁ (x, y)`, on
//! finite sets.
//!
//! Compatibility: `σ_{x3x4} ∘ σ_{x1x2} = σ_{x1,[x2,x3,x4]}` as endomaps of `M`.

use alloc::vec::Vec;

use crate::error::{Error, Result, Violation};
use crate::functors::heapify;
use crate::group::{FiniteGroup, GroupAction};
use crate::semiheap::{validate_map, FiniteSemiheap, SemiheapHom};

/// Dense action table with `m · n²` entries, row-major in `(point, x, y)`.
/// Shape and range are validated; the compatibility law is not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ActionTable {
    points: usize,
    order: usize,
    entries: Vec<usize>,
}

impl ActionTable {
    pub fn new(points: usize, order: usize, entries: Vec<usize>) -> Result<Self> {
        validate_map(&entries, points * order * order, points)?;
        Ok(ActionTable { points, order, entries })
    }

    pub fn from_fn(points: usize, order: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(points * order * order);
        for p in 0..points {
            for x in 0..order {
                for y in 0..order {
                    entries.push(f(p, x, y));
                }
            }
        }
        Self::new(points, order, entries)
    }

    /// `p ◁ (x, y) = p`.
    pub fn trivial(points: usize, order: usize) -> Self {
        Self::from_fn(points, order, |p, _, _| p).expect("identity stays in range")
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Size of the acting semiheap.
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn index(&self, p: usize, x: usize, y: usize) -> usize {
        (p * self.order + x) * self.order + y
    }

    #[inline]
    pub fn act(&self, p: usize, x: usize, y: usize) -> usize {
        self.entries[self.index(p, x, y)]
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn set(&mut self, p: usize, x: usize, y: usize, value: usize) -> Result<()> {
        if p >= self.points || value >= self.points {
            return Err(Error::IndexOutOfRange { index: p.max(value), bound: self.points });
        }
        if x >= self.order || y >= self.order {
            return Err(Error::IndexOutOfRange { index: x.max(y), bound: self.order });
        }
        let at = self.index(p, x, y);
        self.entries[at] = value;
        Ok(())
    }
}

/// First `(point, x1, x2, x3, x4)` violating compatibility.
pub fn action_witness(table: &ActionTable, s: &FiniteSemiheap) -> Result<Option<Violation>> {
    if table.order != s.order() {
        return Err(Error::Malformed(alloc::format!(
            "action table is for a semiheap of order {}, got order {}",
            table.order,
            s.order()
        )));
    }
    let n = s.order();
    for p in 0..table.points {
        for x1 in 0..n {
            for x2 in 0..n {
                let q = table.act(p, x1, x2);
                for x3 in 0..n {
                    for x4 in 0..n {
                        let lhs = table.act(q, x3, x4);
                        let rhs = table.act(p, x1, s.get(x2, x3, x4));
                        if lhs != rhs {
                            return Ok(Some(Violation::ActionCompatibility {
                                point: p,
                                params: [x1, x2, x3, x4],
                                lhs,
                                rhs,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive compatibility check over all `m · n⁴` tuples.
pub fn verify_action(table: ActionTable, semiheap: FiniteSemiheap) -> Result<FiniteAction> {
    match action_witness(&table, &semiheap)? {
        Some(v) => Err(v.into()),
        None => Ok(FiniteAction { table, semiheap }),
    }
}

/// A certified right action of a semiheap on `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    table: ActionTable,
    semiheap: FiniteSemiheap,
}

impl FiniteAction {
    pub fn table(&self) -> &ActionTable {
        &self.table
    }

    pub fn semiheap(&self) -> &FiniteSemiheap {
        &self.semiheap
    }

    pub fn points(&self) -> usize {
        self.table.points
    }

    #[inline]
    pub fn act(&self, p: usize, x: usize, y: usize) -> usize {
        self.table.act(p, x, y)
    }

    pub fn into_parts(self) -> (ActionTable, FiniteSemiheap) {
        (self.table, self.semiheap)
    }
}

/// `S` acting on itself by right translations, `p ◁ (x, y) = [p, x, y]`.
pub fn translation_action(s: &FiniteSemiheap) -> Result<FiniteAction> {
    let n = s.order();
    let table = ActionTable::from_fn(n, n, |p, x, y| s.get(p, x, y))?;
    verify_action(table, s.clone())
}

/// `S` acting on `S′` through a homomorphism, `y ◁ (x1, x2) = [y, ψx1, ψx2]′`.
pub fn action_from_hom(hom: &SemiheapHom) -> Result<FiniteAction> {
    let target = hom.target();
    let table = ActionTable::from_fn(target.order(), hom.source().order(), |y, x1, x2| {
        target.get(y, hom.apply(x1), hom.apply(x2))
    })?;
    verify_action(table, hom.source().clone())
}

/// The heapified group acting through a right group action,
/// `p ◁ (g1, g2) = a_{g1⁻¹ g2}(p)`.
pub fn action_from_group_action(g: &FiniteGroup, a: &GroupAction) -> Result<FiniteAction> {
    if a.group() != g {
        return Err(Error::Malformed("group action is by a different group".into()));
    }
    let table = ActionTable::from_fn(a.points(), g.order(), |p, g1, g2| a.act(p, g.mul(g.inv(g1), g2)))?;
    verify_action(table, heapify(g).into_parts().0)
}

/// An additive flow `φ: M × Z/k → M` given as a dense table row-major in
/// `(point, step)`. Validated: `φ(p, 0) = p` and `φ(φ(p, s), t) = φ(p, s + t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFlow {
    points: usize,
    steps: usize,
    table: Vec<usize>,
}

impl CyclicFlow {
    pub fn new(points: usize, steps: usize, table: Vec<usize>) -> Result<Self> {
        if steps == 0 {
            return Err(Error::Malformed("a flow needs at least one step".into()));
        }
        validate_map(&table, points * steps, points)?;
        let phi = |p: usize, t: usize| table[p * steps + t];
        for p in 0..points {
            if phi(p, 0) != p {
                return Err(Violation::Flow { point: p, steps: [0, 0] }.into());
            }
            for s in 0..steps {
                for t in 0..steps {
                    if phi(phi(p, s), t) != phi(p, (s + t) % steps) {
                        return Err(Violation::Flow { point: p, steps: [s, t] }.into());
                    }
                }
            }
        }
        Ok(CyclicFlow { points, steps, table })
    }

    /// Rotation of a `k`-cycle, `φ(p, t) = p + t mod k`.
    pub fn rotation(k: usize) -> Result<Self> {
        Self::new(k, k, (0..k * k).map(|i| (i / k + i % k) % k).collect())
    }

    /// `φ(p, t) = p` on `m` points with `k` steps.
    pub fn identity(points: usize, steps: usize) -> Result<Self> {
        Self::new(points, steps, (0..points * steps).map(|i| i / steps).collect())
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn apply(&self, p: usize, t: usize) -> usize {
        self.table[p * self.steps + t]
    }
}

/// The step heap `(Z/k, t1 − t2 + t3)` acting by `p ◁ (t1, t2) = φ(p, −t1 + t2)`.
pub fn discretized_flow_action(flow: &CyclicFlow) -> Result<FiniteAction> {
    let k = flow.steps;
    let steps = heapify(&crate::corpus::cyclic(k)).into_parts().0;
    let table = ActionTable::from_fn(flow.points, k, |p, t1, t2| flow.apply(p, (k - t1 + t2) % k))?;
    verify_action(table, steps)
}

/// `Ok(())` iff `ψ(p ◁ (x, y)) = ψ(p) ◁ (x, y)` everywhere; otherwise the
/// first failing `(p, x, y)`.
pub fn is_equivariant(map: &[usize], source: &FiniteAction, target: &FiniteAction) -> Result<()> {
    if source.semiheap != target.semiheap {
        return Err(Error::Malformed("actions are by different semiheaps".into()));
    }
    validate_map(map, source.points(), target.points())?;
    let n = source.semiheap.order();
    for p in 0..source.points() {
        for x in 0..n {
            for y in 0..n {
                let lhs = map[source.act(p, x, y)];
                let rhs = target.act(map[p], x, y);
                if lhs != rhs {
                    return Err(Violation::Equivariance { point: p, params: [x, y], lhs, rhs }.into());
                }
            }
        }
    }
    Ok(())
}

/// `m ◁ S⁽²⁾` together with a symmetry diagnostic. Reachability under a
/// semiheap action need not be symmetric, so no quotient is ever formed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub point: usize,
    /// Sorted, deduplicated.
    pub points: Vec<usize>,
    /// Some `q` in the orbit of `point` whose own orbit misses `point`.
    pub asymmetric_witness: Option<usize>,
}

impl Orbit {
    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_witness.is_none()
    }
}

fn reachable(a: &FiniteAction, m: usize) -> Vec<usize> {
    let n = a.semiheap.order();
    let mut points: Vec<usize> = (0..n * n).map(|i| a.act(m, i / n, i % n)).collect();
    points.sort_unstable();
    points.dedup();
    points
}

pub fn orbit(a: &FiniteAction, m: usize) -> Result<Orbit> {
    if m >= a.points() {
        return Err(Error::IndexOutOfRange { index: m, bound: a.points() });
    }
    let points = reachable(a, m);
    let asymmetric_witness = points.iter().copied().find(|&q| reachable(a, q).binary_search(&m).is_err());
    Ok(Orbit { point: m, points, asymmetric_witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::translations::right_compose_law;

    #[test]
    fn trivial_action_is_certified() {
        let s = heapify(&corpus::cyclic(3)).into_parts().0;
        let a = verify_action(ActionTable::trivial(4, 3), s).unwrap();
        assert_eq!(orbit(&a, 2).unwrap().points, [2]);
    }

    #[test]
    fn translation_action_agrees_with_right_law() {
        for s in [
            heapify(&corpus::cyclic(3)).into_parts().0,
            FiniteSemiheap::constant(3, 1).unwrap(),
            FiniteSemiheap::trivial(),
        ] {
            assert_eq!(translation_action(&s).is_ok(), right_compose_law(&s).is_ok());
        }
    }

    #[test]
    fn corrupted_entry_is_reported() {
        let s = heapify(&corpus::cyclic(3)).into_parts().0;
        let mut t = translation_action(&s).unwrap().into_parts().0;
        t.set(1, 0, 0, 2).unwrap();
        let err = verify_action(t, s).unwrap_err();
        assert!(matches!(err, Error::Violation(Violation::ActionCompatibility { .. })));
    }

    #[test]
    fn hom_actions() {
        let z4 = heapify(&corpus::cyclic(4)).into_parts().0;
        let z2 = heapify(&corpus::cyclic(2)).into_parts().0;
        let id = SemiheapHom::identity(&z4);
        assert_eq!(action_from_hom(&id).unwrap(), translation_action(&z4).unwrap());
        let reduce = SemiheapHom::new(alloc::vec![0, 1, 0, 1], z4.clone(), z2).unwrap();
        let a = action_from_hom(&reduce).unwrap();
        assert_eq!(a.points(), 2);
        assert_eq!(a.act(1, 3, 2), 0);
    }

    #[test]
    fn group_actions() {
        let g = corpus::symmetric3();
        let regular = action_from_group_action(&g, &GroupAction::right_regular(&g)).unwrap();
        assert_eq!(regular, translation_action(&heapify(&g).into_parts().0).unwrap());
        let trivial = action_from_group_action(&g, &GroupAction::trivial(2, &g)).unwrap();
        assert_eq!(trivial.table(), &ActionTable::trivial(2, 6));
    }

    #[test]
    fn flows() {
        for k in 1..6 {
            let a = discretized_flow_action(&CyclicFlow::rotation(k).unwrap()).unwrap();
            assert_eq!(orbit(&a, 0).unwrap().points.len(), k);
        }
        let id = discretized_flow_action(&CyclicFlow::identity(3, 4).unwrap()).unwrap();
        assert_eq!(id.table(), &ActionTable::trivial(3, 4));
        assert!(CyclicFlow::new(2, 2, alloc::vec![1, 0, 0, 1]).unwrap_err().is_violation());
    }

    #[test]
    fn equivariance() {
        let r4 = discretized_flow_action(&CyclicFlow::rotation(4).unwrap()).unwrap();
        assert!(is_equivariant(&[0, 1, 2, 3], &r4, &r4).is_ok());
        let err = is_equivariant(&[0, 0, 1, 1], &r4, &r4).unwrap_err();
        assert!(err.is_violation());
    }

    #[test]
    fn constant_semiheap_orbits_are_asymmetric() {
        let c = FiniteSemiheap::constant(3, 0).unwrap();
        let a = translation_action(&c).unwrap();
        let o = orbit(&a, 1).unwrap();
        assert_eq!(o.points, [0]);
        assert_eq!(o.asymmetric_witness, Some(0));
        assert!(orbit(&a, 0).unwrap().is_symmetric());
    }
}
