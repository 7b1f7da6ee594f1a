//! Enumeration of semiheaps and heaps on small carriers, and isomorphism
//! reduction by canonical forms.
//!
//! The search fills the table cube cell by cell in `(i, j, k)` order. After
//! each assignment every para-associativity instance whose cells are all
//! assigned is evaluated, and the branch is dropped on the first mismatch.
//! With symmetry breaking on, a branch is also dropped as soon as some
//! relabeling provably yields a lexicographically smaller table, so the
//! leaves are exactly the canonical representatives.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::functors::heapify;
use crate::group::FiniteGroup;
use crate::perm::{self, permutations};
use crate::semiheap::{verify_para_associative, FiniteSemiheap};
use crate::table::TernaryTable;

/// The lexicographically smallest table among all relabelings.
pub fn canonical_form(table: &TernaryTable) -> TernaryTable {
    let perms = permutations(table.order());
    canonical_form_with(table, &perms)
}

fn canonical_form_with(table: &TernaryTable, perms: &[Vec<usize>]) -> TernaryTable {
    perms
        .iter()
        .map(|p| table.relabel(p))
        .min()
        .expect("there is always the identity permutation")
}

pub fn are_isomorphic(a: &TernaryTable, b: &TernaryTable) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// Number of relabelings fixing the table.
pub fn automorphism_count(table: &TernaryTable) -> usize {
    permutations(table.order()).iter().filter(|p| &table.relabel(p) == table).count()
}

/// A permutation `π` with `table.relabel(π) == other`, if one exists.
pub fn find_isomorphism(table: &TernaryTable, other: &TernaryTable) -> Option<Vec<usize>> {
    if table.order() != other.order() {
        return None;
    }
    permutations(table.order()).into_iter().find(|p| &table.relabel(p) == other)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Semiheap,
    Heap,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Semiheap => "semiheap",
            Kind::Heap => "heap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub kind: Kind,
    /// Keep only canonical representatives during the search.
    pub symmetry_breaking: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { kind: Kind::Semiheap, symmetry_breaking: true }
    }
}

/// Result of a search. `tables` holds canonical representatives when the
/// search broke symmetry and every labeled table otherwise; either way it is
/// sorted by `(canonical form, table)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub order: usize,
    pub kind: Kind,
    pub representatives_only: bool,
    pub tables: Vec<FiniteSemiheap>,
    /// Labeled structures found.
    pub count: u64,
    /// Isomorphism classes found.
    pub iso_count: u64,
    pub complete: bool,
    pub nodes: u64,
}

impl Enumeration {
    /// Every labeled table, expanding representatives along all relabelings.
    pub fn labeled_tables(&self) -> Vec<TernaryTable> {
        let mut out: Vec<TernaryTable> = if self.representatives_only {
            let perms = permutations(self.order);
            let set: BTreeSet<TernaryTable> =
                self.tables.iter().flat_map(|s| perms.iter().map(move |p| s.table().relabel(p))).collect();
            set.into_iter().collect()
        } else {
            self.tables.iter().map(|s| s.table().clone()).collect()
        };
        out.sort();
        out
    }

    /// One line summary in the `key=value` report style.
    pub fn summary(&self) -> alloc::string::String {
        alloc::format!(
            "n={} kind={} count={} iso_count={} complete={}",
            self.order,
            self.kind.name(),
            self.count,
            self.iso_count,
            self.complete
        )
    }
}

const UNSET: usize = usize::MAX;

struct Search<'a, B: Budget> {
    n: usize,
    cells: Vec<usize>,
    /// Cells in fill order; pre-assigned cells are absent.
    order: Vec<usize>,
    perms: Vec<Vec<usize>>,
    inverse_perms: Vec<Vec<usize>>,
    symmetry_breaking: bool,
    found: Vec<TernaryTable>,
    nodes: u64,
    exhausted: bool,
    budget: &'a mut B,
}

impl<B: Budget> Search<'_, B> {
    #[inline]
    fn get(&self, x: usize, y: usize, z: usize) -> usize {
        self.cells[(x * self.n + y) * self.n + z]
    }

    #[inline]
    fn get_opt(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        if x == UNSET || y == UNSET || z == UNSET {
            return None;
        }
        let v = self.get(x, y, z);
        (v != UNSET).then_some(v)
    }

    /// No assigned instance of the law is violated.
    fn consistent(&self) -> bool {
        let n = self.n;
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    let left_inner = self.get(x1, x2, x3);
                    for x4 in 0..n {
                        let middle_inner = self.get(x4, x3, x2);
                        for x5 in 0..n {
                            let left = self.get_opt(left_inner, x4, x5);
                            let middle = self.get_opt(x1, middle_inner, x5);
                            let right = self.get_opt(x1, x2, self.get(x3, x4, x5));
                            let mut seen = None;
                            for v in [left, middle, right].into_iter().flatten() {
                                match seen {
                                    None => seen = Some(v),
                                    Some(w) if w != v => return false,
                                    _ => {}
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// False if some relabeling of every completion is lexicographically
    /// smaller than the completion itself.
    fn possibly_minimal(&self) -> bool {
        let n = self.n;
        let total = self.cells.len();
        for (p, inv) in self.perms.iter().zip(&self.inverse_perms).skip(1) {
            for c in 0..total {
                let original = self.cells[c];
                if original == UNSET {
                    break;
                }
                let (i, j, k) = (c / (n * n), (c / n) % n, c % n);
                let source = self.get(inv[i], inv[j], inv[k]);
                if source == UNSET {
                    break;
                }
                let relabeled = p[source];
                if relabeled < original {
                    return false;
                }
                if relabeled > original {
                    break;
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if self.exhausted {
            return;
        }
        if !self.budget.tick() {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        if depth == self.order.len() {
            self.found.push(TernaryTable::new(self.n, self.cells.clone()).expect("complete table"));
            return;
        }
        let cell = self.order[depth];
        for v in 0..self.n {
            self.cells[cell] = v;
            if self.consistent() && (!self.symmetry_breaking || self.possibly_minimal()) {
                self.run(depth + 1);
            }
        }
        self.cells[cell] = UNSET;
    }
}

fn search<B: Budget>(
    n: usize,
    options: SearchOptions,
    first_value: Option<usize>,
    budget: &mut B,
) -> (Vec<TernaryTable>, u64, bool) {
    let mut cells = alloc::vec![UNSET; n * n * n];
    if options.kind == Kind::Heap {
        for x in 0..n {
            for y in 0..n {
                cells[(y * n + x) * n + x] = y;
                cells[(x * n + x) * n + y] = y;
            }
        }
    }
    let order: Vec<usize> = (0..cells.len()).filter(|&c| cells[c] == UNSET).collect();
    let perms = if options.symmetry_breaking { permutations(n) } else { alloc::vec![(0..n).collect()] };
    let inverse_perms = perms.iter().map(|p| perm::inverse_permutation(p)).collect();
    let mut s = Search {
        n,
        cells,
        order,
        perms,
        inverse_perms,
        symmetry_breaking: options.symmetry_breaking,
        found: Vec::new(),
        nodes: 0,
        exhausted: false,
        budget,
    };
    match (first_value, s.order.first().copied()) {
        (Some(v), Some(cell)) => {
            s.cells[cell] = v;
            if v < n && s.consistent() && (!s.symmetry_breaking || s.possibly_minimal()) {
                s.run(1);
            }
        }
        _ => s.run(0),
    }
    let complete = !s.exhausted;
    (s.found, s.nodes, complete)
}

/// Number of independent branches the search splits into at the first free
/// cell, for callers that distribute work.
pub fn branch_count(n: usize, kind: Kind) -> usize {
    let free = match kind {
        Kind::Semiheap => n * n * n,
        Kind::Heap => n * n * n - (2 * n * n - n),
    };
    if free == 0 {
        0
    } else {
        n
    }
}

/// Search only the branch where the first free cell takes `value`.
pub fn enumerate_branch<B: Budget>(n: usize, options: SearchOptions, value: usize, budget: &mut B) -> Enumeration {
    let (tables, nodes, complete) = search(n, options, Some(value), budget);
    finish(n, options, tables, nodes, complete)
}

/// Combine branch results (in any order) into one deterministic result.
pub fn merge(n: usize, options: SearchOptions, parts: Vec<Enumeration>) -> Enumeration {
    let mut tables = Vec::new();
    let mut nodes = 0;
    let mut complete = true;
    for part in parts {
        nodes += part.nodes;
        complete &= part.complete;
        tables.extend(part.tables.into_iter().map(FiniteSemiheap::into_table));
    }
    finish(n, options, tables, nodes, complete)
}

fn finish(n: usize, options: SearchOptions, tables: Vec<TernaryTable>, nodes: u64, complete: bool) -> Enumeration {
    let perms = permutations(n);
    let factorial = perms.len() as u64;
    let mut keyed: Vec<(TernaryTable, TernaryTable)> =
        tables.into_iter().map(|t| (canonical_form_with(&t, &perms), t)).collect();
    keyed.sort();
    keyed.dedup();
    let (count, iso_count) = if options.symmetry_breaking {
        let count = keyed
            .iter()
            .map(|(_, t)| factorial / perms.iter().filter(|p| &t.relabel(p) == t).count() as u64)
            .sum();
        (count, keyed.len() as u64)
    } else {
        let mut classes: Vec<&TernaryTable> = keyed.iter().map(|(c, _)| c).collect();
        classes.dedup();
        (keyed.len() as u64, classes.len() as u64)
    };
    let tables = keyed
        .into_iter()
        .map(|(_, t)| verify_para_associative(t).expect("search output satisfies the law"))
        .collect();
    Enumeration {
        order: n,
        kind: options.kind,
        representatives_only: options.symmetry_breaking,
        tables,
        count,
        iso_count,
        complete,
        nodes,
    }
}

/// Backtracking enumeration. An exhausted budget yields `complete = false`
/// and the counts cover only what was found.
pub fn enumerate_semiheaps<B: Budget>(n: usize, options: SearchOptions, budget: &mut B) -> Enumeration {
    let (tables, nodes, complete) = search(n, options, None, budget);
    finish(n, options, tables, nodes, complete)
}

/// Run the verifier over all `n^(n³)` tables. Only for `n ≤ 2`.
pub fn exhaustive_semiheaps(n: usize) -> Result<Vec<TernaryTable>> {
    if n > 2 {
        return Err(Error::Malformed(alloc::format!("exhaustive mode is limited to n <= 2, got {n}")));
    }
    let cells = n * n * n;
    let mut out = Vec::new();
    for entries in perm::AllMaps::new(cells, n) {
        let t = TernaryTable::new(n, entries)?;
        if let Ok(s) = verify_para_associative(t) {
            out.push(s.into_table());
        }
    }
    out.sort();
    Ok(out)
}

/// Every group Cayley table on the labeled carrier `0..n`, found by
/// Latin-square backtracking with associativity checked at the leaves.
pub fn group_tables<B: Budget>(n: usize, budget: &mut B) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    let mut explored = 0u64;
    for e in 0..n {
        let mut cells = alloc::vec![UNSET; n * n];
        for x in 0..n {
            cells[e * n + x] = x;
            cells[x * n + e] = x;
        }
        latin_fill(n, e, &mut cells, 0, &mut out, budget, &mut explored)?;
    }
    Ok(out)
}

fn latin_fill<B: Budget>(
    n: usize,
    e: usize,
    cells: &mut Vec<usize>,
    from: usize,
    out: &mut Vec<FiniteGroup>,
    budget: &mut B,
    explored: &mut u64,
) -> Result<()> {
    if !budget.tick() {
        return Err(Error::BudgetExceeded { explored: *explored });
    }
    *explored += 1;
    let Some(cell) = (from..n * n).find(|&c| cells[c] == UNSET) else {
        if let Ok(g) = FiniteGroup::new(n, cells.clone(), e) {
            out.push(g);
        }
        return Ok(());
    };
    let (row, col) = (cell / n, cell % n);
    for v in 0..n {
        let clash = (0..n).any(|k| cells[row * n + k] == v || cells[k * n + col] == v);
        if !clash {
            cells[cell] = v;
            latin_fill(n, e, cells, cell + 1, out, budget, explored)?;
        }
    }
    cells[cell] = UNSET;
    Ok(())
}

/// Heaps generated two ways: as semiheaps that pass the biunitarity check,
/// and as heapifications of every labeled group table. Both lists are
/// sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapEnumeration {
    pub order: usize,
    pub via_semiheaps: Vec<TernaryTable>,
    pub via_groups: Vec<TernaryTable>,
    pub complete: bool,
}

impl HeapEnumeration {
    pub fn agree(&self) -> bool {
        self.complete && self.via_semiheaps == self.via_groups
    }
}

/// Dual-route heap enumeration for `n ≥ 1`. The semiheap route runs the
/// full semiheap search for `n ≤ 2` and the heap-constrained search (forced
/// biunitary cells pre-assigned) above that; both are filtered by
/// [`FiniteSemiheap::is_heap`].
pub fn enumerate_heaps<B: Budget>(n: usize, budget: &mut B) -> Result<HeapEnumeration> {
    let kind = if n <= 2 { Kind::Semiheap } else { Kind::Heap };
    let found = enumerate_semiheaps(n, SearchOptions { kind, symmetry_breaking: true }, &mut *budget);
    let mut via_semiheaps: Vec<TernaryTable> = found
        .labeled_tables()
        .into_iter()
        .filter(|t| verify_para_associative(t.clone()).map(|s| s.is_heap()).unwrap_or(false))
        .collect();
    via_semiheaps.dedup();
    let groups = group_tables(n, budget)?;
    let set: BTreeSet<TernaryTable> = groups.iter().map(|g| heapify(g).into_parts().0.into_table()).collect();
    Ok(HeapEnumeration { order: n, via_semiheaps, via_groups: set.into_iter().collect(), complete: found.complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::{StepLimit, Unlimited};
    use crate::corpus;

    #[test]
    fn tiny_carriers() {
        let e0 = enumerate_semiheaps(0, SearchOptions::default(), &mut Unlimited);
        assert_eq!((e0.count, e0.iso_count, e0.complete), (1, 1, true));
        let e1 = enumerate_semiheaps(1, SearchOptions::default(), &mut Unlimited);
        assert_eq!((e1.count, e1.iso_count), (1, 1));
    }

    #[test]
    fn backtracking_matches_exhaustive_at_two() {
        let brute = exhaustive_semiheaps(2).unwrap();
        let labeled = enumerate_semiheaps(2, SearchOptions { kind: Kind::Semiheap, symmetry_breaking: false }, &mut Unlimited);
        assert_eq!(labeled.labeled_tables(), brute);
        let reps = enumerate_semiheaps(2, SearchOptions::default(), &mut Unlimited);
        assert_eq!(reps.labeled_tables(), brute);
        assert_eq!(reps.count, brute.len() as u64);
        assert_eq!(reps.iso_count, labeled.iso_count);
    }

    #[test]
    fn budget_exhaustion_is_partial() {
        let e = enumerate_semiheaps(3, SearchOptions::default(), &mut StepLimit::new(50));
        assert!(!e.complete);
    }

    #[test]
    fn canonical_forms() {
        let z4 = heapify(&corpus::cyclic(4)).into_parts().0.into_table();
        let k4 = heapify(&corpus::klein_four()).into_parts().0.into_table();
        assert!(!are_isomorphic(&z4, &k4));
        assert!(are_isomorphic(&z4, &z4.relabel(&[2, 0, 3, 1])));
        let c = canonical_form(&z4);
        assert_eq!(canonical_form(&c), c);
        assert_eq!(find_isomorphism(&z4, &z4.relabel(&[1, 2, 3, 0])).map(|p| z4.relabel(&p)), Some(z4.relabel(&[1, 2, 3, 0])));
    }

    #[test]
    fn group_tables_small() {
        assert_eq!(group_tables(1, &mut Unlimited).unwrap().len(), 1);
        // Either point may be the identity.
        assert_eq!(group_tables(2, &mut Unlimited).unwrap().len(), 2);
        // Z/3 on three labeled points: 3! / |Aut Z/3| = 3 tables.
        assert_eq!(group_tables(3, &mut Unlimited).unwrap().len(), 3);
    }

    #[test]
    fn heap_routes_agree() {
        for n in 1..=3 {
            let h = enumerate_heaps(n, &mut Unlimited).unwrap();
            assert!(h.agree(), "n={n}");
        }
    }
}
