//! Semiheap bundles over finite bases.
//!
//! A bundle is a surjection `π: P → M`, a semiheap `S` acting on `P` so that
//! the induced action on `M` is trivial, and a cover of `M` by charts
//! `t_i: π⁻¹(U_i) → U_i × S` that commute with the projections and turn the
//! action into right translation: `t_i(p ◁ (x, y)) = (m, [s, x, y])` where
//! `t_i(p) = (m, s)`. Transitivity of the fiber action is not required.
//!
//! Charts are arbitrary base subsets; there is no topology on a finite base.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::actions::{action_witness, ActionTable};
use crate::error::{BundleAxiom, BundleHomAxiom, Error, PrincipalAxiom, Result, Violation};
use crate::functors::heapify;
use crate::group::{is_group_hom, FiniteGroup, GroupAction};
use crate::perm::AllMaps;
use crate::semiheap::{
    canonical_isomorphism, homomorphism_witness, induce_via_bijection, validate_map, FiniteSemiheap,
    SemiheapHom,
};

/// A local trivialization: a base subset and the point map `p ↦ (m, s)` on
/// its preimage, listed as triples `(p, m, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub domain: Vec<usize>,
    pub map: Vec<(usize, usize, usize)>,
}

impl Chart {
    pub fn new(domain: Vec<usize>, map: Vec<(usize, usize, usize)>) -> Self {
        Chart { domain, map }
    }

    pub fn contains(&self, m: usize) -> bool {
        self.domain.contains(&m)
    }
}

/// Raw bundle data; shapes and index ranges are validated on construction,
/// the bundle axioms by [`verify_bundle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSemiheapBundle {
    base: usize,
    projection: Vec<usize>,
    structure: FiniteSemiheap,
    action: ActionTable,
    charts: Vec<Chart>,
}

fn check_charts(charts: &[Chart], total: usize, base: usize, fiber: usize) -> Result<()> {
    for chart in charts {
        validate_map(&chart.domain, chart.domain.len(), base)?;
        for &(p, m, s) in &chart.map {
            if p >= total {
                return Err(Error::IndexOutOfRange { index: p, bound: total });
            }
            if m >= base {
                return Err(Error::IndexOutOfRange { index: m, bound: base });
            }
            if s >= fiber {
                return Err(Error::IndexOutOfRange { index: s, bound: fiber });
            }
        }
    }
    Ok(())
}

impl DiscreteSemiheapBundle {
    pub fn new(
        base: usize,
        projection: Vec<usize>,
        structure: FiniteSemiheap,
        action: ActionTable,
        charts: Vec<Chart>,
    ) -> Result<Self> {
        let total = projection.len();
        validate_map(&projection, total, base)?;
        if action.points() != total || action.order() != structure.order() {
            return Err(Error::Malformed(alloc::format!(
                "action table has shape m={} n={}, bundle needs m={} n={}",
                action.points(),
                action.order(),
                total,
                structure.order()
            )));
        }
        check_charts(&charts, total, base, structure.order())?;
        Ok(DiscreteSemiheapBundle { base, projection, structure, action, charts })
    }

    pub fn total(&self) -> usize {
        self.projection.len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn structure(&self) -> &FiniteSemiheap {
        &self.structure
    }

    pub fn action(&self) -> &ActionTable {
        &self.action
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn action_mut(&mut self) -> &mut ActionTable {
        &mut self.action
    }

    pub fn charts_mut(&mut self) -> &mut Vec<Chart> {
        &mut self.charts
    }

    /// Points over `m`, sorted.
    pub fn fiber(&self, m: usize) -> Vec<usize> {
        (0..self.total()).filter(|&p| self.projection[p] == m).collect()
    }
}

/// Dense lookup for a verified chart.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ChartTable {
    forward: Vec<Option<(usize, usize)>>,
    inverse: Vec<Option<usize>>,
}

/// A bundle that passed [`verify_bundle`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifiedBundle {
    bundle: DiscreteSemiheapBundle,
    tables: Vec<ChartTable>,
}

impl VerifiedBundle {
    pub fn bundle(&self) -> &DiscreteSemiheapBundle {
        &self.bundle
    }

    pub fn into_bundle(self) -> DiscreteSemiheapBundle {
        self.bundle
    }

    /// `t_i(p)` for `p` over the chart's domain.
    pub fn chart_apply(&self, chart: usize, p: usize) -> Option<(usize, usize)> {
        self.tables.get(chart)?.forward.get(p).copied().flatten()
    }

    /// `t_i⁻¹(m, s)`.
    pub fn chart_inverse(&self, chart: usize, m: usize, s: usize) -> Option<usize> {
        let n = self.bundle.structure.order();
        self.tables.get(chart)?.inverse.get(m * n + s).copied().flatten()
    }
}

fn bundle_err(axiom: BundleAxiom) -> Error {
    Violation::Bundle(axiom).into()
}

/// Check every bundle axiom in order: action compatibility, surjectivity,
/// fiber preservation, cover, and per chart its domain, the commuting
/// triangle, bijectivity onto `U_i × S` and equivariance.
pub fn verify_bundle(bundle: DiscreteSemiheapBundle) -> Result<VerifiedBundle> {
    let b = &bundle;
    let n = b.structure.order();
    if let Some(v) = action_witness(&b.action, &b.structure)? {
        return Err(bundle_err(BundleAxiom::Action(Box::new(v))));
    }
    let mut hit = alloc::vec![false; b.base];
    for &m in &b.projection {
        hit[m] = true;
    }
    if let Some(base_point) = hit.iter().position(|&h| !h) {
        return Err(bundle_err(BundleAxiom::Surjectivity { base_point }));
    }
    for p in 0..b.total() {
        for x in 0..n {
            for y in 0..n {
                let image = b.action.act(p, x, y);
                if b.projection[image] != b.projection[p] {
                    return Err(bundle_err(BundleAxiom::FiberPreservation { point: p, params: [x, y], image }));
                }
            }
        }
    }
    let mut covered = alloc::vec![false; b.base];
    for chart in &b.charts {
        for &m in &chart.domain {
            covered[m] = true;
        }
    }
    if let Some(base_point) = covered.iter().position(|&c| !c) {
        return Err(bundle_err(BundleAxiom::Cover { base_point }));
    }
    let mut tables = Vec::with_capacity(b.charts.len());
    for (i, chart) in b.charts.iter().enumerate() {
        tables.push(verify_chart(b, i, chart)?);
    }
    Ok(VerifiedBundle { bundle, tables })
}

fn verify_chart(b: &DiscreteSemiheapBundle, i: usize, chart: &Chart) -> Result<ChartTable> {
    let n = b.structure.order();
    let mut in_domain = alloc::vec![false; b.base];
    for &m in &chart.domain {
        in_domain[m] = true;
    }
    let mut forward: Vec<Option<(usize, usize)>> = alloc::vec![None; b.total()];
    for &(p, m, s) in &chart.map {
        if !in_domain[b.projection[p]] || forward[p].is_some() {
            return Err(bundle_err(BundleAxiom::ChartDomain { chart: i, point: p }));
        }
        forward[p] = Some((m, s));
    }
    if let Some(p) = (0..b.total()).find(|&p| in_domain[b.projection[p]] && forward[p].is_none()) {
        return Err(bundle_err(BundleAxiom::ChartDomain { chart: i, point: p }));
    }
    for &(p, m, _) in &chart.map {
        if m != b.projection[p] {
            return Err(bundle_err(BundleAxiom::Triangle { chart: i, point: p }));
        }
    }
    let mut inverse: Vec<Option<usize>> = alloc::vec![None; b.base * n];
    for &(p, m, s) in &chart.map {
        if inverse[m * n + s].is_some() {
            return Err(bundle_err(BundleAxiom::ChartBijectivity { chart: i, base_point: m, fiber_element: s }));
        }
        inverse[m * n + s] = Some(p);
    }
    for &m in &chart.domain {
        if let Some(s) = (0..n).find(|&s| inverse[m * n + s].is_none()) {
            return Err(bundle_err(BundleAxiom::ChartBijectivity { chart: i, base_point: m, fiber_element: s }));
        }
    }
    let mut points: Vec<usize> = chart.map.iter().map(|&(p, _, _)| p).collect();
    points.sort_unstable();
    for p in points {
        let (m, s) = forward[p].expect("domain checked");
        for x in 0..n {
            for y in 0..n {
                let q = b.action.act(p, x, y);
                if forward[q] != Some((m, b.structure.get(s, x, y))) {
                    return Err(bundle_err(BundleAxiom::ChartEquivariance { chart: i, point: p, params: [x, y] }));
                }
            }
        }
    }
    Ok(ChartTable { forward, inverse })
}

/// `M × S` with `(m, x) ◁ (x1, x2) = (m, [x, x1, x2])` and the identity chart
/// over all of `M`. Points are encoded `m · n + x`.
pub fn trivial_bundle(base: usize, s: &FiniteSemiheap) -> Result<VerifiedBundle> {
    let n = s.order();
    if n == 0 && base > 0 {
        return Err(Error::Malformed("bundle fibers must be non-empty".into()));
    }
    let total = base * n;
    let projection = (0..total).map(|p| p / n).collect();
    let action = ActionTable::from_fn(total, n, |p, x, y| (p / n) * n + s.get(p % n, x, y))?;
    let chart = Chart::new((0..base).collect(), (0..total).map(|p| (p, p / n, p % n)).collect());
    verify_bundle(DiscreteSemiheapBundle::new(base, projection, s.clone(), action, alloc::vec![chart])?)
}

/// The semiheap structure a chart induces on one fiber,
/// `[p, q, r]_i = t_i⁻¹(m, [s_p, s_q, s_r])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberStructure {
    pub base_point: usize,
    pub chart: usize,
    /// Fiber points in increasing order; local index `k` is `points[k]`.
    pub points: Vec<usize>,
    /// Local index to fiber coordinate under the chart.
    pub coordinates: Vec<usize>,
    /// Induced structure on local indices.
    pub semiheap: FiniteSemiheap,
}

pub fn fiber_semiheap(vb: &VerifiedBundle, m: usize, chart: usize) -> Result<FiberStructure> {
    let b = &vb.bundle;
    if m >= b.base {
        return Err(Error::IndexOutOfRange { index: m, bound: b.base });
    }
    let c = b.charts.get(chart).ok_or(Error::IndexOutOfRange { index: chart, bound: b.charts.len() })?;
    if !c.contains(m) {
        return Err(Error::Malformed(alloc::format!("base point {m} is not in chart {chart}")));
    }
    let points = b.fiber(m);
    let coordinates: Vec<usize> =
        points.iter().map(|&p| vb.chart_apply(chart, p).expect("fiber lies in the chart").1).collect();
    let semiheap = induce_via_bijection(&coordinates, &b.structure)?;
    Ok(FiberStructure { base_point: m, chart, points, coordinates, semiheap })
}

/// For every ordered pair of charts containing `m`, the transition
/// `t_j⁻¹ ∘ t_i` on the fiber verified as an isomorphism of the induced
/// structures. Returns `(i, j, hom)` triples.
pub fn fiber_transitions(vb: &VerifiedBundle, m: usize) -> Result<Vec<(usize, usize, SemiheapHom)>> {
    let charts: Vec<usize> = (0..vb.bundle.charts.len()).filter(|&i| vb.bundle.charts[i].contains(m)).collect();
    let mut out = Vec::new();
    for &i in &charts {
        let fi = fiber_semiheap(vb, m, i)?;
        for &j in &charts {
            if i == j {
                continue;
            }
            let fj = fiber_semiheap(vb, m, j)?;
            let iso = canonical_isomorphism(&fi.coordinates, &fj.coordinates, &vb.bundle.structure)?;
            out.push((i, j, iso));
        }
    }
    Ok(out)
}

/// A finite principal bundle: a right `G`-action on `P` that is free and
/// transitive on fibers, with `G`-equivariant charts `t_i(a_h p) = (m, g h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalBundle {
    base: usize,
    projection: Vec<usize>,
    action: GroupAction,
    charts: Vec<Chart>,
}

fn principal_err(axiom: PrincipalAxiom) -> Error {
    Violation::Principal(axiom).into()
}

impl PrincipalBundle {
    pub fn new(base: usize, projection: Vec<usize>, action: GroupAction, charts: Vec<Chart>) -> Result<Self> {
        let total = projection.len();
        validate_map(&projection, total, base)?;
        if action.points() != total {
            return Err(Error::Malformed("group action is on the wrong number of points".into()));
        }
        check_charts(&charts, total, base, action.group().order())?;
        Ok(PrincipalBundle { base, projection, action, charts })
    }

    /// `M × G` with right multiplication on the second factor, one chart.
    pub fn trivial(base: usize, g: &FiniteGroup) -> Result<Self> {
        Self::twisted(base, g, g.identity(), false)
    }

    /// `M × G` over a discretized circle with two charts; the second chart
    /// is `(m, x) ↦ (m, twist · x)` over base point `0` and the identity
    /// elsewhere, so the transition on that overlap is left multiplication
    /// by `twist`.
    pub fn two_chart(base: usize, g: &FiniteGroup, twist: usize) -> Result<Self> {
        Self::twisted(base, g, twist, true)
    }

    fn twisted(base: usize, g: &FiniteGroup, twist: usize, two_charts: bool) -> Result<Self> {
        if base == 0 {
            return Err(Error::Malformed("a principal bundle needs a non-empty base".into()));
        }
        if twist >= g.order() {
            return Err(Error::IndexOutOfRange { index: twist, bound: g.order() });
        }
        let n = g.order();
        let total = base * n;
        let projection: Vec<usize> = (0..total).map(|p| p / n).collect();
        let table = (0..total).flat_map(|p| (0..n).map(move |h| (p, h))).map(|(p, h)| (p / n) * n + g.mul(p % n, h)).collect();
        let action = GroupAction::new(total, g.clone(), table)?;
        let chart_over = |domain: Vec<usize>, twisted_at_zero: bool| {
            let map = domain
                .iter()
                .flat_map(|&m| (0..n).map(move |x| (m, x)))
                .map(|(m, x)| {
                    let s = if twisted_at_zero && m == 0 { g.mul(twist, x) } else { x };
                    (m * n + x, m, s)
                })
                .collect();
            Chart::new(domain, map)
        };
        let charts = if two_charts {
            let half = base / 2;
            let first: Vec<usize> = (0..=half).collect();
            let mut second: Vec<usize> = (half..base).collect();
            if !second.contains(&0) {
                second.push(0);
            }
            alloc::vec![chart_over(first, false), chart_over(second, true)]
        } else {
            alloc::vec![chart_over((0..base).collect(), false)]
        };
        PrincipalBundle::new(base, projection, action, charts)
    }

    pub fn total(&self) -> usize {
        self.projection.len()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Check the principal axioms: surjectivity, fiber preservation,
    /// freeness, fiberwise transitivity, cover and equivariant charts.
    pub fn verify(&self) -> Result<()> {
        let g = self.group();
        let (total, n) = (self.total(), g.order());
        let mut hit = alloc::vec![false; self.base];
        for &m in &self.projection {
            hit[m] = true;
        }
        if let Some(base_point) = hit.iter().position(|&h| !h) {
            return Err(principal_err(PrincipalAxiom::Surjectivity { base_point }));
        }
        for p in 0..total {
            for h in 0..n {
                let q = self.action.act(p, h);
                if self.projection[q] != self.projection[p] {
                    return Err(principal_err(PrincipalAxiom::FiberPreservation { point: p, element: h }));
                }
                if q == p && h != g.identity() {
                    return Err(principal_err(PrincipalAxiom::Freeness { point: p, element: h }));
                }
            }
        }
        for p in 0..total {
            for q in 0..total {
                if self.projection[p] == self.projection[q] && (0..n).all(|h| self.action.act(p, h) != q) {
                    return Err(principal_err(PrincipalAxiom::Transitivity { from: p, to: q }));
                }
            }
        }
        let mut covered = alloc::vec![false; self.base];
        for chart in &self.charts {
            for &m in &chart.domain {
                covered[m] = true;
            }
        }
        if let Some(base_point) = covered.iter().position(|&c| !c) {
            return Err(principal_err(PrincipalAxiom::Cover { base_point }));
        }
        for (i, chart) in self.charts.iter().enumerate() {
            let mut in_domain = alloc::vec![false; self.base];
            for &m in &chart.domain {
                in_domain[m] = true;
            }
            let mut forward: Vec<Option<(usize, usize)>> = alloc::vec![None; total];
            for &(p, m, x) in &chart.map {
                if !in_domain[self.projection[p]] || forward[p].is_some() {
                    return Err(principal_err(PrincipalAxiom::ChartDomain { chart: i, point: p }));
                }
                forward[p] = Some((m, x));
            }
            if let Some(p) = (0..total).find(|&p| in_domain[self.projection[p]] && forward[p].is_none()) {
                return Err(principal_err(PrincipalAxiom::ChartDomain { chart: i, point: p }));
            }
            for &(p, m, _) in &chart.map {
                if m != self.projection[p] {
                    return Err(principal_err(PrincipalAxiom::Triangle { chart: i, point: p }));
                }
            }
            let mut seen = alloc::vec![false; self.base * n];
            for &(_, m, x) in &chart.map {
                if seen[m * n + x] {
                    return Err(principal_err(PrincipalAxiom::ChartBijectivity { chart: i, base_point: m, element: x }));
                }
                seen[m * n + x] = true;
            }
            for &m in &chart.domain {
                if let Some(x) = (0..n).find(|&x| !seen[m * n + x]) {
                    return Err(principal_err(PrincipalAxiom::ChartBijectivity { chart: i, base_point: m, element: x }));
                }
            }
            for &(p, m, x) in &chart.map {
                for h in 0..n {
                    if forward[self.action.act(p, h)] != Some((m, g.mul(x, h))) {
                        return Err(principal_err(PrincipalAxiom::ChartEquivariance { chart: i, point: p, element: h }));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The semiheap bundle `(P, M, S_G)` with `p ◁ (g1, g2) = a_{g1⁻¹ g2}(p)` and
/// the same charts. The output of a verified principal bundle always
/// verifies; a failure there is a bug and panics.
pub fn heapify_principal(pb: &PrincipalBundle) -> Result<VerifiedBundle> {
    pb.verify()?;
    let g = pb.group();
    let table = ActionTable::from_fn(pb.total(), g.order(), |p, g1, g2| pb.action.act(p, g.mul(g.inv(g1), g2)))?;
    let bundle = DiscreteSemiheapBundle::new(
        pb.base,
        pb.projection.clone(),
        heapify(g).into_parts().0,
        table,
        pb.charts.clone(),
    )?;
    Ok(verify_bundle(bundle).expect("heapification of a principal bundle is a semiheap bundle"))
}

/// `(Φ, φ, ψ)` between semiheap bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleHom {
    pub total_map: Vec<usize>,
    pub base_map: Vec<usize>,
    pub structure_map: Vec<usize>,
}

impl BundleHom {
    pub fn identity(b: &DiscreteSemiheapBundle) -> Self {
        BundleHom {
            total_map: (0..b.total()).collect(),
            base_map: (0..b.base()).collect(),
            structure_map: (0..b.structure().order()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BundleHom) -> BundleHom {
        let comp = |f: &[usize], g: &[usize]| f.iter().map(|&x| g[x]).collect();
        BundleHom {
            total_map: comp(&self.total_map, &other.total_map),
            base_map: comp(&self.base_map, &other.base_map),
            structure_map: comp(&self.structure_map, &other.structure_map),
        }
    }
}

fn bundle_hom_err(axiom: BundleHomAxiom) -> Error {
    Violation::BundleHom(axiom).into()
}

/// `ψ` is a semiheap hom, `π′ ∘ Φ = φ ∘ π` and
/// `Φ(p ◁ (x, y)) = Φ(p) ◁ (ψx, ψy)`.
pub fn verify_bundle_hom(h: &BundleHom, source: &VerifiedBundle, target: &VerifiedBundle) -> Result<()> {
    let (b, c) = (&source.bundle, &target.bundle);
    validate_map(&h.total_map, b.total(), c.total())?;
    validate_map(&h.base_map, b.base(), c.base())?;
    if let Some(v) = homomorphism_witness(&h.structure_map, &b.structure, &c.structure)? {
        return Err(bundle_hom_err(BundleHomAxiom::Structure(Box::new(v))));
    }
    if let Some(point) = (0..b.total()).find(|&p| c.projection[h.total_map[p]] != h.base_map[b.projection[p]]) {
        return Err(bundle_hom_err(BundleHomAxiom::Projection { point }));
    }
    let n = b.structure.order();
    for p in 0..b.total() {
        for x in 0..n {
            for y in 0..n {
                let lhs = h.total_map[b.action.act(p, x, y)];
                let rhs = c.action.act(h.total_map[p], h.structure_map[x], h.structure_map[y]);
                if lhs != rhs {
                    return Err(bundle_hom_err(BundleHomAxiom::Equivariance { point: p, params: [x, y] }));
                }
            }
        }
    }
    Ok(())
}

/// `(Φ, φ, ψ)` between principal bundles with `ψ` a group hom and
/// `Φ(a_g p) = a′_{ψ g}(Φ p)`.
pub fn verify_principal_hom(h: &BundleHom, source: &PrincipalBundle, target: &PrincipalBundle) -> Result<()> {
    validate_map(&h.total_map, source.total(), target.total())?;
    validate_map(&h.base_map, source.base, target.base)?;
    if !is_group_hom(&h.structure_map, source.group(), target.group())? {
        return Err(Error::Malformed("structure map is not a group homomorphism".into()));
    }
    if let Some(point) =
        (0..source.total()).find(|&p| target.projection[h.total_map[p]] != h.base_map[source.projection[p]])
    {
        return Err(bundle_hom_err(BundleHomAxiom::Projection { point }));
    }
    for p in 0..source.total() {
        for g in 0..source.group().order() {
            if h.total_map[source.action.act(p, g)] != target.action.act(h.total_map[p], h.structure_map[g]) {
                return Err(bundle_hom_err(BundleHomAxiom::GroupEquivariance { point: p, element: g }));
            }
        }
    }
    Ok(())
}

/// Transport a principal-bundle hom to the heapified bundles; the same maps
/// serve, and the result is verified.
pub fn heapify_principal_hom(
    h: &BundleHom,
    source: &PrincipalBundle,
    target: &PrincipalBundle,
) -> Result<(VerifiedBundle, VerifiedBundle)> {
    verify_principal_hom(h, source, target)?;
    let (hs, ht) = (heapify_principal(source)?, heapify_principal(target)?);
    verify_bundle_hom(h, &hs, &ht)?;
    Ok((hs, ht))
}

/// Search for a semiheap-bundle hom between two heapified principal bundles
/// that no principal-bundle hom induces. The base map is read off from `Φ`;
/// every `(Φ, ψ)` pair is tried, up to `max_candidates` of them.
pub fn find_uninduced_bundle_hom(
    source: &PrincipalBundle,
    target: &PrincipalBundle,
    max_candidates: u64,
) -> Result<Option<BundleHom>> {
    let (hs, ht) = (heapify_principal(source)?, heapify_principal(target)?);
    let mut examined = 0u64;
    for total_map in AllMaps::new(source.total(), target.total()) {
        let mut base_map = alloc::vec![usize::MAX; source.base];
        let consistent = (0..source.total()).all(|p| {
            let m = source.projection[p];
            let image = target.projection[total_map[p]];
            let ok = base_map[m] == usize::MAX || base_map[m] == image;
            base_map[m] = image;
            ok
        });
        if !consistent {
            continue;
        }
        for structure_map in AllMaps::new(source.group().order(), target.group().order()) {
            examined += 1;
            if examined > max_candidates {
                return Err(Error::BudgetExceeded { explored: examined - 1 });
            }
            let h = BundleHom { total_map: total_map.clone(), base_map: base_map.clone(), structure_map };
            if verify_bundle_hom(&h, &hs, &ht).is_ok() && verify_principal_hom(&h, source, target).is_err() {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn trivial_bundles_verify() {
        let z3 = heapify(&corpus::cyclic(3)).into_parts().0;
        let single = trivial_bundle(1, &z3).unwrap();
        assert_eq!(single.bundle().total(), 3);
        let three = trivial_bundle(3, &z3).unwrap();
        assert_eq!(three.chart_apply(0, 7), Some((2, 1)));
        assert_eq!(three.chart_inverse(0, 2, 1), Some(7));
        assert!(trivial_bundle(4, &FiniteSemiheap::trivial()).is_ok());
        assert!(trivial_bundle(2, &FiniteSemiheap::empty()).is_err());
    }

    #[test]
    fn twisted_z2_over_two_points() {
        let pb = PrincipalBundle::two_chart(2, &corpus::cyclic(2), 1).unwrap();
        assert_eq!(pb.total(), 4);
        let vb = heapify_principal(&pb).unwrap();
        let transitions = fiber_transitions(&vb, 0).unwrap();
        assert_eq!(transitions.len(), 2);
        assert_eq!(transitions[0].2.map(), &[1, 0]);
    }

    #[test]
    fn fiber_structure_of_trivial_bundle_is_the_structure() {
        let s = heapify(&corpus::symmetric3()).into_parts().0;
        let vb = trivial_bundle(2, &s).unwrap();
        let f = fiber_semiheap(&vb, 1, 0).unwrap();
        assert_eq!(f.points, [6, 7, 8, 9, 10, 11]);
        assert_eq!(f.semiheap, s);
        assert!(fiber_transitions(&vb, 1).unwrap().is_empty());
        assert!(fiber_semiheap(&vb, 2, 0).is_err());
    }

    #[test]
    fn broken_chart_is_reported() {
        let z2 = heapify(&corpus::cyclic(2)).into_parts().0;
        let mut b = trivial_bundle(2, &z2).unwrap().into_bundle();
        b.charts_mut()[0].map[1].2 = 0;
        let err = verify_bundle(b).unwrap_err();
        assert_eq!(
            err,
            Error::Violation(Violation::Bundle(BundleAxiom::ChartBijectivity { chart: 0, base_point: 0, fiber_element: 0 }))
        );
    }

    #[test]
    fn principal_axioms() {
        let z2 = corpus::cyclic(2);
        let trivial_action = GroupAction::trivial(2, &z2);
        let chart = Chart::new(alloc::vec![0], alloc::vec![(0, 0, 0), (1, 0, 1)]);
        let pb = PrincipalBundle::new(1, alloc::vec![0, 0], trivial_action, alloc::vec![chart]).unwrap();
        assert_eq!(
            pb.verify().unwrap_err(),
            Error::Violation(Violation::Principal(PrincipalAxiom::Freeness { point: 0, element: 1 }))
        );
    }

    #[test]
    fn uninduced_hom_over_a_point() {
        let pb = PrincipalBundle::trivial(1, &corpus::cyclic(2)).unwrap();
        let h = find_uninduced_bundle_hom(&pb, &pb, 1 << 10).unwrap().unwrap();
        assert!(!is_group_hom(&h.structure_map, pb.group(), pb.group()).unwrap()
            || verify_principal_hom(&h, &pb, &pb).is_err());
    }
}
