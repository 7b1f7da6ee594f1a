//! Certified semiheaps and heaps on finite carriers, their homomorphisms and
//! the basic constructions (opposite, product, images, induced structures).

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result, Violation};
use crate::perm;
use crate::table::TernaryTable;

/// Scan `x1 ∈ range` (all other arguments over the full carrier) for the
/// lexicographically first para-associativity failure.
///
/// Exposed so that callers can partition the quintuple space; the global
/// first failure is the minimum of the per-range results.
pub fn first_para_associativity_failure(t: &TernaryTable, range: Range<usize>) -> Option<Violation> {
    let n = t.order();
    for x1 in range {
        for x2 in 0..n {
            for x3 in 0..n {
                let left_inner = t.get(x1, x2, x3);
                for x4 in 0..n {
                    let middle_inner = t.get(x4, x3, x2);
                    for x5 in 0..n {
                        let left = t.get(left_inner, x4, x5);
                        let middle = t.get(x1, middle_inner, x5);
                        let right = t.get(x1, x2, t.get(x3, x4, x5));
                        if left != middle || middle != right {
                            return Some(Violation::ParaAssociativity {
                                quintuple: [x1, x2, x3, x4, x5],
                                values: [left, middle, right],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Check all `n⁵` quintuples and certify the table as a semiheap.
pub fn verify_para_associative(table: TernaryTable) -> Result<FiniteSemiheap> {
    match first_para_associativity_failure(&table, 0..table.order()) {
        Some(v) => Err(v.into()),
        None => Ok(FiniteSemiheap { table }),
    }
}

/// A ternary table that has passed the para-associativity check.
///
/// The only ways to obtain one are [`verify_para_associative`] and
/// constructions that preserve the law, so holding a value is the
/// certificate. There is no mutation API; [`FiniteSemiheap::into_table`]
/// hands the raw table back and drops the certificate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSemiheap {
    table: TernaryTable,
}

impl FiniteSemiheap {
    /// Only for constructions whose output is para-associative by theorem.
    pub(crate) fn trusted(table: TernaryTable) -> Self {
        debug_assert!(first_para_associativity_failure(&table, 0..table.order()).is_none());
        FiniteSemiheap { table }
    }

    pub fn empty() -> Self {
        FiniteSemiheap { table: TernaryTable::new(0, Vec::new()).expect("empty table") }
    }

    /// The one-element semiheap.
    pub fn trivial() -> Self {
        FiniteSemiheap { table: TernaryTable::constant(1, 0).expect("1-element table") }
    }

    /// `[x, y, z] = c`; para-associative because all three sides equal `c`.
    pub fn constant(n: usize, c: usize) -> Result<Self> {
        Ok(FiniteSemiheap { table: TernaryTable::constant(n, c)? })
    }

    pub fn table(&self) -> &TernaryTable {
        &self.table
    }

    pub fn into_table(self) -> TernaryTable {
        self.table
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.table.get(x, y, z)
    }

    /// First `y` with `[y,x,x] ≠ y` or `[x,x,y] ≠ y`.
    pub fn biunitarity_witness(&self, x: usize) -> Result<Option<Violation>> {
        self.table.check_index(x)?;
        Ok((0..self.order()).find_map(|y| {
            let values = [self.get(y, x, x), self.get(x, x, y)];
            (values[0] != y || values[1] != y).then_some(Violation::Biunitarity { x, y, values })
        }))
    }

    pub fn is_biunitary(&self, x: usize) -> Result<bool> {
        Ok(self.biunitarity_witness(x)?.is_none())
    }

    /// First non-biunitary element, if any.
    pub fn heap_witness(&self) -> Option<Violation> {
        (0..self.order()).find_map(|x| self.biunitarity_witness(x).expect("index in range"))
    }

    pub fn is_heap(&self) -> bool {
        self.heap_witness().is_none()
    }

    /// `[x1, x2, x3] = [x3, x2, x1]` everywhere.
    pub fn is_abelian(&self) -> bool {
        self.table.is_swap_symmetric()
    }

    /// `[x, y, z]ᵒᵖ = [z, y, x]`. The swap maps each of the three bracketings
    /// onto another one, so the certificate carries over.
    pub fn opposite(&self) -> FiniteSemiheap {
        FiniteSemiheap { table: self.table.swap_outer() }
    }

    /// Componentwise product on pairs encoded as `x · n′ + y`.
    pub fn product(&self, other: &FiniteSemiheap) -> FiniteSemiheap {
        let (n, m) = (self.order(), other.order());
        let table = TernaryTable::from_fn(n * m, |a, b, c| {
            let x = self.get(a / m, b / m, c / m);
            let y = other.get(a % m, b % m, c % m);
            x * m + y
        })
        .expect("pair encoding stays in range");
        FiniteSemiheap::trusted(table)
    }

    /// The projections `S × S′ → S` and `S × S′ → S′` for `self = S × S′`
    /// built by [`FiniteSemiheap::product`] from `left` and `right`.
    pub fn product_projections(
        left: &FiniteSemiheap,
        right: &FiniteSemiheap,
    ) -> (SemiheapHom, SemiheapHom) {
        let product = left.product(right);
        let m = right.order();
        let first = (0..product.order()).map(|p| p / m).collect();
        let second = (0..product.order()).map(|p| p % m).collect();
        (
            SemiheapHom::new(first, product.clone(), left.clone()).expect("projection is a hom"),
            SemiheapHom::new(second, product, right.clone()).expect("projection is a hom"),
        )
    }

    /// First triple in `subset³` whose product leaves `subset`.
    pub fn subsemiheap_witness(&self, subset: &[usize]) -> Result<Option<([usize; 3], usize)>> {
        let mut member = alloc::vec![false; self.order()];
        for &x in subset {
            self.table.check_index(x)?;
            member[x] = true;
        }
        let mut sorted: Vec<usize> = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &x in &sorted {
            for &y in &sorted {
                for &z in &sorted {
                    let v = self.get(x, y, z);
                    if !member[v] {
                        return Ok(Some(([x, y, z], v)));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_subsemiheap(&self, subset: &[usize]) -> Result<bool> {
        Ok(self.subsemiheap_witness(subset)?.is_none())
    }

    /// The structure restricted to a closed subset, re-indexed in increasing
    /// order of the original labels.
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteSemiheap> {
        let mut points: Vec<usize> = subset.to_vec();
        points.sort_unstable();
        points.dedup();
        if let Some((triple, v)) = self.subsemiheap_witness(&points)? {
            return Err(Error::Malformed(alloc::format!(
                "subset is not closed: [{},{},{}] = {v}",
                triple[0],
                triple[1],
                triple[2]
            )));
        }
        let mut position = alloc::vec![usize::MAX; self.order()];
        for (i, &p) in points.iter().enumerate() {
            position[p] = i;
        }
        let table = TernaryTable::from_fn(points.len(), |a, b, c| {
            position[self.get(points[a], points[b], points[c])]
        })?;
        Ok(FiniteSemiheap::trusted(table))
    }

    pub fn with_basepoint(self, basepoint: usize) -> Result<PointedSemiheap> {
        PointedSemiheap::new(self, basepoint)
    }

    pub fn into_heap(self) -> Result<FiniteHeap> {
        FiniteHeap::new(self)
    }
}

/// A semiheap with a distinguished point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointedSemiheap {
    semiheap: FiniteSemiheap,
    basepoint: usize,
}

impl PointedSemiheap {
    pub fn new(semiheap: FiniteSemiheap, basepoint: usize) -> Result<Self> {
        if semiheap.order() == 0 {
            return Err(Error::EmptyPointed);
        }
        semiheap.table.check_index(basepoint)?;
        Ok(PointedSemiheap { semiheap, basepoint })
    }

    pub fn semiheap(&self) -> &FiniteSemiheap {
        &self.semiheap
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn order(&self) -> usize {
        self.semiheap.order()
    }

    pub fn into_parts(self) -> (FiniteSemiheap, usize) {
        (self.semiheap, self.basepoint)
    }
}

/// A semiheap in which every element is biunitary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteHeap {
    semiheap: FiniteSemiheap,
}

impl FiniteHeap {
    pub fn new(semiheap: FiniteSemiheap) -> Result<Self> {
        match semiheap.heap_witness() {
            Some(v) => Err(v.into()),
            None => Ok(FiniteHeap { semiheap }),
        }
    }

    pub fn semiheap(&self) -> &FiniteSemiheap {
        &self.semiheap
    }

    pub fn into_semiheap(self) -> FiniteSemiheap {
        self.semiheap
    }
}

/// First triple violating `φ[x,y,z] = [φx, φy, φz]′`, after validating the
/// map's shape.
pub fn homomorphism_witness(
    map: &[usize],
    source: &FiniteSemiheap,
    target: &FiniteSemiheap,
) -> Result<Option<Violation>> {
    validate_map(map, source.order(), target.order())?;
    let n = source.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = map[source.get(x, y, z)];
                let rhs = target.get(map[x], map[y], map[z]);
                if lhs != rhs {
                    return Ok(Some(Violation::Homomorphism {
                        triple: [x, y, z],
                        image_of_product: lhs,
                        product_of_images: rhs,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// `Ok(())` if `map` is a semiheap homomorphism, otherwise the first failing
/// triple as a violation. Malformed maps are reported as input errors.
pub fn is_homomorphism(map: &[usize], source: &FiniteSemiheap, target: &FiniteSemiheap) -> Result<()> {
    match homomorphism_witness(map, source, target)? {
        Some(v) => Err(v.into()),
        None => Ok(()),
    }
}

pub(crate) fn validate_map(map: &[usize], domain: usize, codomain: usize) -> Result<()> {
    if map.len() != domain {
        return Err(Error::Length { expected: domain, found: map.len() });
    }
    if let Some((position, &value)) = map.iter().enumerate().find(|(_, &v)| v >= codomain) {
        return Err(Error::EntryOutOfRange { position, value, bound: codomain });
    }
    Ok(())
}

/// A verified homomorphism together with its endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiheapHom {
    source: FiniteSemiheap,
    target: FiniteSemiheap,
    map: Vec<usize>,
}

impl SemiheapHom {
    pub fn new(map: Vec<usize>, source: FiniteSemiheap, target: FiniteSemiheap) -> Result<Self> {
        is_homomorphism(&map, &source, &target)?;
        Ok(SemiheapHom { source, target, map })
    }

    pub fn identity(s: &FiniteSemiheap) -> Self {
        SemiheapHom { source: s.clone(), target: s.clone(), map: (0..s.order()).collect() }
    }

    pub fn source(&self) -> &FiniteSemiheap {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemiheap {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SemiheapHom) -> Result<SemiheapHom> {
        if other.source != self.target {
            return Err(Error::Malformed("composable homs need matching endpoints".into()));
        }
        let map = self.map.iter().map(|&x| other.map[x]).collect();
        Ok(SemiheapHom { source: self.source.clone(), target: other.target.clone(), map })
    }

    /// The sorted image subset `φ(S)`.
    pub fn image_points(&self) -> Vec<usize> {
        let mut points = self.map.clone();
        points.sort_unstable();
        points.dedup();
        points
    }

    /// The image `φ(S) ⊆ S′` with the restricted product, re-indexed in
    /// increasing label order. Closure holds for every verified hom, so a
    /// failure here is a bug.
    pub fn homomorphic_image(&self) -> (Vec<usize>, FiniteSemiheap) {
        let points = self.image_points();
        let image = self
            .target
            .restrict(&points)
            .expect("the image of a verified homomorphism is closed");
        (points, image)
    }

    /// The pairing `(φ, φ′): T → S × S′` into [`FiniteSemiheap::product`];
    /// the unique map commuting with both projections.
    pub fn pairing(first: &SemiheapHom, second: &SemiheapHom) -> Result<SemiheapHom> {
        if first.source != second.source {
            return Err(Error::Malformed("pairing needs homs with a common source".into()));
        }
        let product = first.target.product(&second.target);
        let m = second.target.order();
        let map = first.map.iter().zip(&second.map).map(|(&a, &b)| a * m + b).collect();
        SemiheapHom::new(map, first.source.clone(), product)
    }
}

fn invert_bijection(phi: &[usize], n: usize) -> Result<Vec<usize>> {
    if phi.len() != n {
        return Err(Error::NotBijective(alloc::format!(
            "domain has {} points, target carrier has {n}",
            phi.len()
        )));
    }
    if !perm::is_permutation(phi) {
        return Err(Error::NotBijective(alloc::format!("{phi:?} is not a bijection onto 0..{n}")));
    }
    Ok(perm::inverse_permutation(phi))
}

/// The structure `[m1, m2, m3]_φ := φ⁻¹[φm1, φm2, φm3]` on a set `M` with a
/// bijection `φ: M → S`, given as the value array of `φ`.
pub fn induce_via_bijection(phi: &[usize], s: &FiniteSemiheap) -> Result<FiniteSemiheap> {
    let inv = invert_bijection(phi, s.order())?;
    let table = TernaryTable::from_fn(s.order(), |a, b, c| inv[s.get(phi[a], phi[b], phi[c])])?;
    Ok(FiniteSemiheap::trusted(table))
}

/// Pointed version: the basepoint of `M` is `φ⁻¹(pt)`.
pub fn induce_pointed_via_bijection(phi: &[usize], s: &PointedSemiheap) -> Result<PointedSemiheap> {
    let induced = induce_via_bijection(phi, s.semiheap())?;
    let inv = perm::inverse_permutation(phi);
    PointedSemiheap::new(induced, inv[s.basepoint()])
}

/// The canonical isomorphism `ψ⁻¹ ∘ φ` between the structures induced by two
/// bijections onto the same semiheap, verified as a homomorphism.
pub fn canonical_isomorphism(phi: &[usize], psi: &[usize], s: &FiniteSemiheap) -> Result<SemiheapHom> {
    let by_phi = induce_via_bijection(phi, s)?;
    let by_psi = induce_via_bijection(psi, s)?;
    let psi_inv = perm::inverse_permutation(psi);
    let map = phi.iter().map(|&x| psi_inv[x]).collect();
    SemiheapHom::new(map, by_phi, by_psi)
}
