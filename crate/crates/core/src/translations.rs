//! Left, right and centric translations materialized as endomap tables.
//!
//! `R_{ab}(x) = [x, a, b]`, `L_{ab}(x) = [a, b, x]`, `C_{ab}(x) = [a, x, b]`.
//! The composition laws checked here are
//!
//! * right: `R_{x3x4} ∘ R_{x1x2} = R_{x1,[x2,x3,x4]}`
//! * left: `L_{x1x2} ∘ L_{x3x4} = L_{[x1,x2,x3],x4}`
//! * commutation: `L_{x1x2} ∘ R_{x3x4} = R_{x3x4} ∘ L_{x1x2}`

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result, Violation};
use crate::semiheap::{FiniteSemiheap, PointedSemiheap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Right,
    Left,
    Commute,
}

impl Law {
    pub fn name(self) -> &'static str {
        match self {
            Law::Right => "right",
            Law::Left => "left",
            Law::Commute => "commute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TranslationKind {
    Left,
    Right,
    Centric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Translation {
    pub kind: TranslationKind,
    pub params: (usize, usize),
}

impl Translation {
    pub fn left(a: usize, b: usize) -> Self {
        Translation { kind: TranslationKind::Left, params: (a, b) }
    }

    pub fn right(a: usize, b: usize) -> Self {
        Translation { kind: TranslationKind::Right, params: (a, b) }
    }

    pub fn centric(a: usize, b: usize) -> Self {
        Translation { kind: TranslationKind::Centric, params: (a, b) }
    }

    #[inline]
    pub fn apply(&self, s: &FiniteSemiheap, x: usize) -> usize {
        let (a, b) = self.params;
        match self.kind {
            TranslationKind::Left => s.get(a, b, x),
            TranslationKind::Right => s.get(x, a, b),
            TranslationKind::Centric => s.get(a, x, b),
        }
    }

    pub fn endomap(&self, s: &FiniteSemiheap) -> Vec<usize> {
        (0..s.order()).map(|x| self.apply(s, x)).collect()
    }
}

/// `(g ∘ f)` on endomap tables.
pub fn compose(g: &[usize], f: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

fn first_difference(lhs: &[usize], rhs: &[usize]) -> Option<usize> {
    lhs.iter().zip(rhs).position(|(a, b)| a != b)
}

fn all_endomaps(s: &FiniteSemiheap, kind: TranslationKind) -> Vec<Vec<usize>> {
    let n = s.order();
    (0..n * n).map(|i| Translation { kind, params: (i / n, i % n) }.endomap(s)).collect()
}

/// Check `R_{x3x4} ∘ R_{x1x2} = R_{x1,[x2,x3,x4]}` for every quadruple and the
/// two parameter bracketings of a triple composite,
/// `R_{x1,[x2,x3,[x4,x5,x6]]} = R_{x1,[[x2,x3,x4],x5,x6]}`.
pub fn right_compose_law(s: &FiniteSemiheap) -> Result<()> {
    let n = s.order();
    let right = all_endomaps(s, TranslationKind::Right);
    let at = |a: usize, b: usize| &right[a * n + b];
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                for x4 in 0..n {
                    let lhs = compose(at(x3, x4), at(x1, x2));
                    let rhs = at(x1, s.get(x2, x3, x4));
                    if let Some(point) = first_difference(&lhs, rhs) {
                        return Err(Violation::Translation {
                            law: Law::Right,
                            params: [x1, x2, x3, x4],
                            point,
                            lhs: lhs[point],
                            rhs: rhs[point],
                        }
                        .into());
                    }
                }
            }
        }
    }
    six_parameter_associativity(s, Law::Right, |x| {
        let [x1, x2, x3, x4, x5, x6] = x;
        (
            (x1, s.get(x2, x3, s.get(x4, x5, x6))),
            (x1, s.get(s.get(x2, x3, x4), x5, x6)),
        )
    })
}

/// Check `L_{x1x2} ∘ L_{x3x4} = L_{[x1,x2,x3],x4}` for every quadruple, and
/// `L_{[[x1,x2,x3],x4,x5],x6} = L_{[x1,x2,[x3,x4,x5]],x6}` for the two ways
/// of composing three left translations.
pub fn left_compose_law(s: &FiniteSemiheap) -> Result<()> {
    let n = s.order();
    let left = all_endomaps(s, TranslationKind::Left);
    let at = |a: usize, b: usize| &left[a * n + b];
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                for x4 in 0..n {
                    let lhs = compose(at(x1, x2), at(x3, x4));
                    let rhs = at(s.get(x1, x2, x3), x4);
                    if let Some(point) = first_difference(&lhs, rhs) {
                        return Err(Violation::Translation {
                            law: Law::Left,
                            params: [x1, x2, x3, x4],
                            point,
                            lhs: lhs[point],
                            rhs: rhs[point],
                        }
                        .into());
                    }
                }
            }
        }
    }
    six_parameter_associativity(s, Law::Left, |x| {
        let [x1, x2, x3, x4, x5, x6] = x;
        (
            (s.get(s.get(x1, x2, x3), x4, x5), x6),
            (s.get(x1, x2, s.get(x3, x4, x5)), x6),
        )
    })
}

fn six_parameter_associativity(
    s: &FiniteSemiheap,
    law: Law,
    params: impl Fn([usize; 6]) -> ((usize, usize), (usize, usize)),
) -> Result<()> {
    let n = s.order();
    let kind = if law == Law::Left { TranslationKind::Left } else { TranslationKind::Right };
    let maps = all_endomaps(s, kind);
    let mut x = [0usize; 6];
    let total = n.pow(6);
    for code in 0..total {
        let mut c = code;
        for slot in x.iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        let ((a, b), (c, d)) = params(x);
        if a * n + b != c * n + d && maps[a * n + b] != maps[c * n + d] {
            return Err(Violation::TranslationAssociativity { law, params: x }.into());
        }
    }
    Ok(())
}

/// Check `L_{x1x2} ∘ R_{x3x4} = R_{x3x4} ∘ L_{x1x2}` for every quadruple.
pub fn lr_commute(s: &FiniteSemiheap) -> Result<()> {
    let n = s.order();
    let left = all_endomaps(s, TranslationKind::Left);
    let right = all_endomaps(s, TranslationKind::Right);
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                for x4 in 0..n {
                    let l = &left[x1 * n + x2];
                    let r = &right[x3 * n + x4];
                    let lhs = compose(l, r);
                    let rhs = compose(r, l);
                    if let Some(point) = first_difference(&lhs, &rhs) {
                        return Err(Violation::Translation {
                            law: Law::Commute,
                            params: [x1, x2, x3, x4],
                            point,
                            lhs: lhs[point],
                            rhs: rhs[point],
                        }
                        .into());
                    }
                }
            }
        }
    }
    Ok(())
}

/// A composite of two centric translations that is not itself centric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentricWitness {
    /// Position of the semiheap in the searched corpus.
    pub index: usize,
    pub order: usize,
    /// `C_{ab} ∘ C_{cd}` with `outer = (a, b)`, `inner = (c, d)`.
    pub outer: (usize, usize),
    pub inner: (usize, usize),
    pub composite: Vec<usize>,
}

/// `(outer, inner, composite)` for a composite of centric translations.
pub type CentricComposite = ((usize, usize), (usize, usize), Vec<usize>);

/// First `(a, b, c, d)` in lexicographic order with `C_{ab} ∘ C_{cd}` outside
/// the set of centric translations.
pub fn centric_composite_outside(s: &FiniteSemiheap) -> Option<CentricComposite> {
    let n = s.order();
    let centrics = all_endomaps(s, TranslationKind::Centric);
    let set: BTreeSet<&Vec<usize>> = centrics.iter().collect();
    for outer in 0..n * n {
        for inner in 0..n * n {
            let composite = compose(&centrics[outer], &centrics[inner]);
            if !set.contains(&composite) {
                return Some(((outer / n, outer % n), (inner / n, inner % n), composite));
            }
        }
    }
    None
}

/// Scan a corpus (in the given order) for the first semiheap whose centric
/// translations are not closed under composition. One budget tick per
/// semiheap examined; running out is an error, never a claim of absence.
pub fn centric_nonclosure_witness<B: Budget>(
    corpus: &[FiniteSemiheap],
    mut budget: B,
) -> Result<Option<CentricWitness>> {
    for (index, s) in corpus.iter().enumerate() {
        if !budget.tick() {
            return Err(Error::BudgetExceeded { explored: index as u64 });
        }
        if let Some((outer, inner, composite)) = centric_composite_outside(s) {
            return Ok(Some(CentricWitness { index, order: s.order(), outer, inner, composite }));
        }
    }
    Ok(None)
}

/// `[x, x0, x0] = x = [x0, x0, x]` for all `x`.
pub fn is_biunital(s: &PointedSemiheap) -> bool {
    biunital_witness(s).is_none()
}

fn biunital_witness(s: &PointedSemiheap) -> Option<usize> {
    let (h, e) = (s.semiheap(), s.basepoint());
    (0..s.order()).find(|&x| h.get(x, e, e) != x || h.get(e, e, x) != x)
}

/// `L_{x0x0}` and `R_{x0x0}` are the identity and `L_{x0x0}` is a two-sided
/// unit for the left composition law.
pub fn left_monoid_check(s: &PointedSemiheap) -> Result<()> {
    if let Some(x) = biunital_witness(s) {
        return Err(Violation::Biunital { x }.into());
    }
    let (h, e) = (s.semiheap(), s.basepoint());
    let n = h.order();
    let unit = Translation::left(e, e).endomap(h);
    let identity: Vec<usize> = (0..n).collect();
    if unit != identity || Translation::right(e, e).endomap(h) != identity {
        return Err(Violation::LeftUnit { params: [e, e] }.into());
    }
    for a in 0..n {
        for b in 0..n {
            let l = Translation::left(a, b).endomap(h);
            if compose(&unit, &l) != l || compose(&l, &unit) != l {
                return Err(Violation::LeftUnit { params: [a, b] }.into());
            }
            // Composite parameters through the left law land on L_{ab} again.
            if Translation::left(h.get(e, e, a), b).endomap(h) != l
                || Translation::left(h.get(a, b, e), e).endomap(h) != l
            {
                return Err(Violation::LeftUnit { params: [a, b] }.into());
            }
        }
    }
    Ok(())
}

/// `L_{x x0}(x0) = x` for all `x`.
pub fn reachability_check(s: &PointedSemiheap) -> Result<()> {
    let (h, e) = (s.semiheap(), s.basepoint());
    match (0..s.order()).find(|&x| h.get(x, e, e) != x) {
        Some(x) => Err(Violation::Reachability { x }.into()),
        None => Ok(()),
    }
}

/// Functions `f: S → ℚ` with `f ∘ L_{ab} = f` for every left translation.
///
/// The constraints `f(x) = f(L_{ab}(x))` only identify values, so the
/// solution space is spanned by the indicator functions of the connected
/// components of the graph `x -- L_{ab}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFunctions {
    /// Component label of each element, numbered by first occurrence.
    pub component_of: Vec<usize>,
    pub dimension: usize,
}

impl InvariantFunctions {
    /// Indicator functions of the components, one basis vector each.
    pub fn basis(&self) -> Vec<Vec<i64>> {
        (0..self.dimension)
            .map(|c| self.component_of.iter().map(|&k| i64::from(k == c)).collect())
            .collect()
    }

    pub fn is_constants_only(&self) -> bool {
        self.dimension == 1
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

pub fn left_invariant_functions(s: &FiniteSemiheap) -> InvariantFunctions {
    let n = s.order();
    let mut parent: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, s.get(a, b, x)));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let mut label = alloc::vec![usize::MAX; n];
    let mut component_of = Vec::with_capacity(n);
    let mut dimension = 0;
    for x in 0..n {
        let root = find(&mut parent, x);
        if label[root] == usize::MAX {
            label[root] = dimension;
            dimension += 1;
        }
        component_of.push(label[root]);
    }
    InvariantFunctions { component_of, dimension }
}
