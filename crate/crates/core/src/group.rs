//! Finite groups as Cayley tables, group homomorphisms and right group actions.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, GroupAxiom, Result, Violation};
use crate::semiheap::validate_map;

/// A validated finite group: associative Cayley table with two-sided identity
/// and inverse table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

fn check_table(n: usize, mul: &[usize], identity: usize) -> Result<()> {
    validate_map(mul, n * n, n)?;
    if identity >= n {
        return Err(Error::IndexOutOfRange { index: identity, bound: n });
    }
    Ok(())
}

/// First failing group axiom for the data `(mul, identity, inv)`, checked in
/// the order identity, inverse, associativity.
pub fn group_axiom_witness(n: usize, mul: &[usize], identity: usize, inv: &[usize]) -> Option<GroupAxiom> {
    let m = |a: usize, b: usize| mul[a * n + b];
    if let Some(x) = (0..n).find(|&x| m(identity, x) != x || m(x, identity) != x) {
        return Some(GroupAxiom::Identity { x });
    }
    if let Some(x) = (0..n).find(|&x| m(x, inv[x]) != identity || m(inv[x], x) != identity) {
        return Some(GroupAxiom::Inverse { x });
    }
    for a in 0..n {
        for b in 0..n {
            let ab = m(a, b);
            for c in 0..n {
                if m(ab, c) != m(a, m(b, c)) {
                    return Some(GroupAxiom::Associativity { a, b, c });
                }
            }
        }
    }
    None
}

impl FiniteGroup {
    /// Validate a Cayley table with the given identity; inverses are derived.
    pub fn new(n: usize, mul: Vec<usize>, identity: usize) -> Result<Self> {
        check_table(n, &mul, identity)?;
        let mut inv = Vec::with_capacity(n);
        for x in 0..n {
            match (0..n).find(|&y| mul[x * n + y] == identity) {
                Some(y) => inv.push(y),
                None => return Err(Error::InvalidGroup(GroupAxiom::Inverse { x })),
            }
        }
        Self::from_parts(n, mul, identity, inv)
    }

    /// Validate a full `(mul, identity, inv)` triple.
    pub fn from_parts(n: usize, mul: Vec<usize>, identity: usize, inv: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPointed);
        }
        check_table(n, &mul, identity)?;
        validate_map(&inv, n, n)?;
        match group_axiom_witness(n, &mul, identity, &inv) {
            Some(axiom) => Err(Error::InvalidGroup(axiom)),
            None => Ok(FiniteGroup { n, mul, identity, inv }),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.mul
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Transport along `old ↦ perm[old]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.n;
        let mut mul = alloc::vec![0; n * n];
        let mut inv = alloc::vec![0; n];
        for a in 0..n {
            inv[perm[a]] = perm[self.inv[a]];
            for b in 0..n {
                mul[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteGroup { n, mul, identity: perm[self.identity], inv }
    }

    /// Cartesian product with pair encoding `a · n′ + b`.
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.n;
        let n = self.n * m;
        let mul = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
            .collect();
        let inv = (0..n).map(|x| self.inv(x / m) * m + other.inv(x % m)).collect();
        FiniteGroup { n, mul, identity: self.identity * m + other.identity, inv }
    }
}

/// First pair violating `ψ(ab) = ψ(a)ψ(b)`.
pub fn group_hom_witness(map: &[usize], g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Violation>> {
    validate_map(map, g.order(), h.order())?;
    for a in 0..g.order() {
        for b in 0..g.order() {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return Ok(Some(Violation::GroupHomomorphism { pair: [a, b] }));
            }
        }
    }
    Ok(None)
}

pub fn is_group_hom(map: &[usize], g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    Ok(group_hom_witness(map, g, h)?.is_none())
}

/// A right action `M × G → M`, `(p, g) ↦ a_g(p)`, stored row-major in `(p, g)`.
///
/// Validated on construction: `a_e = id` and `a_h ∘ a_g = a_{gh}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    points: usize,
    group: FiniteGroup,
    table: Vec<usize>,
}

impl GroupAction {
    pub fn new(points: usize, group: FiniteGroup, table: Vec<usize>) -> Result<Self> {
        let n = group.order();
        validate_map(&table, points * n, points)?;
        let act = |p: usize, g: usize| table[p * n + g];
        for p in 0..points {
            if act(p, group.identity()) != p {
                return Err(Error::InvalidGroupAction(format!("identity moves point {p}")));
            }
            for g in 0..n {
                for h in 0..n {
                    if act(act(p, g), h) != act(p, group.mul(g, h)) {
                        return Err(Error::InvalidGroupAction(format!(
                            "not a right action at point={p} g={g} h={h}"
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { points, group, table })
    }

    /// `G` acting on itself by right multiplication.
    pub fn right_regular(group: &FiniteGroup) -> Self {
        let n = group.order();
        let table = (0..n).flat_map(|p| (0..n).map(move |g| (p, g))).map(|(p, g)| group.mul(p, g)).collect();
        GroupAction { points: n, group: group.clone(), table }
    }

    /// Every group element acts as the identity.
    pub fn trivial(points: usize, group: &FiniteGroup) -> Self {
        let n = group.order();
        let table = (0..points).flat_map(|p| core::iter::repeat_n(p, n)).collect();
        GroupAction { points, group: group.clone(), table }
    }

    /// `G` acting on the points of `H` through a homomorphism `ψ: G → H`,
    /// `a_g(p) = p · ψ(g)`.
    pub fn via_hom(group: &FiniteGroup, target: &FiniteGroup, hom: &[usize]) -> Result<Self> {
        if let Some(v) = group_hom_witness(hom, group, target)? {
            return Err(Error::InvalidGroupAction(format!("map is not a group hom ({v})")));
        }
        let n = group.order();
        let table = (0..target.order())
            .flat_map(|p| (0..n).map(move |g| (p, g)))
            .map(|(p, g)| target.mul(p, hom[g]))
            .collect();
        Ok(GroupAction { points: target.order(), group: group.clone(), table })
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn act(&self, p: usize, g: usize) -> usize {
        self.table[p * self.group.order() + g]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }
}

/// True iff `map(a_g(p)) = b_g(map(p))` for all `p, g`. Both actions must be
/// by the same group.
pub fn is_group_equivariant(map: &[usize], a: &GroupAction, b: &GroupAction) -> Result<bool> {
    if a.group != b.group {
        return Err(Error::Malformed("actions are by different groups".into()));
    }
    validate_map(map, a.points, b.points)?;
    let n = a.group.order();
    Ok((0..a.points).all(|p| (0..n).all(|g| map[a.act(p, g)] == b.act(map[p], g))))
}
